#pragma once

#include <stdexcept>
#include <string>

namespace shear {

enum class ErrorKind {
    precision_exhausted,
    stream_exhausted,
    ambiguous_quotient,
    enclosure_too_wide,
    overflow_budget,
    outside_domain,
    tail_not_certifiable,
    search_exhausted,
    gap_violation,
    config,
    missing_input,
};

const char *error_kind_name(ErrorKind kind);

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string &what)
        : std::runtime_error(std::string(error_kind_name(kind)) + ": " + what), kind_(kind) {}

    ErrorKind kind() const { return kind_; }

private:
    ErrorKind kind_;
};

} // namespace shear
