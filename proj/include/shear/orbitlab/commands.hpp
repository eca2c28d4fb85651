#pragma once

// orbitlab subcommands. Each writes its files into cfg "output" plus a
// <name>_summary.json read by `report`, and returns an exit code:
//   0 every certified check passed, 1 a certified check failed,
//   2 configuration / usage / missing input, 3 precision or search exhausted.

#include "shear/orbitlab/config.hpp"

#include <ostream>
#include <string>

namespace shear {

enum ExitCode : int { exit_pass = 0, exit_check_failed = 1, exit_config = 2, exit_exhausted = 3 };

int exit_code_for(ErrorKind kind);

int cmd_theta(const RunConfig &cfg, std::ostream &log);
int cmd_orbit(const RunConfig &cfg, std::ostream &log);
int cmd_recurrence(const RunConfig &cfg, std::ostream &log);
int cmd_mu(const RunConfig &cfg, std::ostream &log);
int cmd_derivative_probe(const RunConfig &cfg, std::ostream &log);
int cmd_series(const RunConfig &cfg, std::ostream &log);
int cmd_report(const RunConfig &cfg, std::ostream &log);
// Recomputes the digests listed in manifest.json; 1 on any mismatch.
int cmd_verify_manifest(const RunConfig &cfg, std::ostream &log);

// Runs one command by name, mapping library errors to exit codes and
// printing them to `err`.
int run_command(const std::string &name, const RunConfig &cfg, std::ostream &log, std::ostream &err);

// |c_n| <= 2 pi N / q_{k(n)+1} for phi's coefficient at entry n. Decided with
// rational phase bounds when q_{k(n)+1} is exact; otherwise up to the width of
// the log enclosure of q_{k(n)+1} ("enclosure").
struct CoeffCheck {
    long n = 0;
    std::string mode;  // exact | enclosure | n/a
    Real bound_log10;   // upper
    Real target_log10;  // lower (exact) or upper (enclosure)
    bool pass = false;
};

CoeffCheck coefficient_check(const ThetaRef &theta, const ExponentSubseq &qp, const CoefficientSeq &u, std::size_t n,
                             const SymInt &N);

// log10 |x| of a decimal string such as "1.5e-123456789012"; -inf for 0.
double log10_of_decimal(const std::string &s);

} // namespace shear
