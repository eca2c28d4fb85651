#pragma once

// Run configuration: one key = value file (TOML/INI syntax, dotted keys or
// [sections]), overridden by --set key=value. Every key has a documented
// default; `orbitlab config show` prints them.

#include "shear/automorphism.hpp"
#include "shear/constructions.hpp"

#include <map>
#include <string>
#include <vector>

namespace shear {

struct ConfigKey {
    std::string key;
    std::string default_value;
    std::string doc;
};

const std::vector<ConfigKey> &config_schema();

// Environment variable naming the default config file.
inline constexpr const char *kConfigEnv = "ORBITLAB_CONFIG";

class RunConfig {
public:
    RunConfig();  // all defaults

    void load_file(const std::string &path);
    void set(const std::string &key, const std::string &value);
    // "key=value"
    void set_assignment(const std::string &assignment);

    const std::string &get(const std::string &key) const;
    long get_long(const std::string &key) const;
    BigRat get_rat(const std::string &key) const;
    // Comma-separated (or `sep`-separated) items, trimmed, empties dropped.
    std::vector<std::string> get_list(const std::string &key, char sep = ',') const;

    // Checks every key parses and numeric fields are positive.
    void validate() const;
    // key = value lines, with docs as comments when `with_docs`.
    std::string show(bool with_docs = true) const;

private:
    std::map<std::string, std::string> values_;
};

// Objects described by a config.
ThetaRef make_theta(const RunConfig &cfg);
CoefficientSeq make_coefficients(const RunConfig &cfg);
std::vector<BigRat> make_eps(const RunConfig &cfg);
// Exponent list such as "q2,q3,q4" (parent entries) or "1,2,4" (plain
// values). "schedule" takes q' from `sched`.
ExponentSubseq make_exponents(const std::string &text, const ThetaRef &theta, const RecurrenceSchedule *sched);
// N list: integers, ranges a..b, q<m>, q<m>/<k>, and "schedule" for N_1..N_p.
std::vector<SymInt> parse_N_list(const std::vector<std::string> &items, const ThetaRef &theta,
                                 const RecurrenceSchedule *sched);
// Points "w_re,w_im,z_re,z_im" separated by ';'.
std::vector<Point2> parse_points(const std::string &text);

} // namespace shear
