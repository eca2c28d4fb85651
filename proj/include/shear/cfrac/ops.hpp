#pragma once

#include "shear/cfrac/phase.hpp"

#include <functional>
#include <string>
#include <utility>
#include <vector>

namespace shear {

std::vector<std::pair<BigInt, BigInt>> convergents(const ThetaSpec &theta, long n_max);

// Quotients shared by every real in x. Stops early if x is a rational point
// whose expansion terminates.
std::vector<BigInt> quotients_from_real(const RatInterval &x, long n_max);

// Closed interval between p_depth/q_depth and p_{depth+1}/q_{depth+1}.
RatInterval theta_enclosure(const ThetaSpec &theta, long depth);

// Enclosure of dist(q_n N theta, Z) from the rational enclosure at the given
// depth. depth < 0 picks the smallest depth > n with width below 2^-32.
RatInterval frac_qNtheta(const ThetaSpec &theta, long n, const BigInt &N, long depth = -1);

struct BrjunoResult {
    std::vector<RealInterval> terms;         // q_n^{-1} ln q_{n+1}, n = 0..n_max
    std::vector<RealInterval> partial_sums;
    bool grows = false;  // every term n in [1, n_max] exceeds witness(n)
    std::string verdict;
};

std::function<BigRat(long)> default_brjuno_witness();  // n/2
BrjunoResult brjuno_sum(const ThetaSpec &theta, long n_max,
                        const std::function<BigRat(long)> &witness = default_brjuno_witness());

struct GrowthLevel {
    long n = 0;
    RealInterval lhs;  // ln q_{n+1}
    RealInterval rhs;  // g(n) q_n
    bool applies = false;  // n >= rule_start
    bool pass = false;
};

// Certified ln q_{n+1} >= g(n) q_n for rule_start <= n < n_max.
std::vector<GrowthLevel> growth_check(const ThetaSpec &theta, long n_max);

// Default seeds a_0 = 0, a_1 = 1.
ThetaRef build_fast_theta(const GrowthRule &rule, long n_max, std::vector<BigInt> prefix = {0, 1},
                          long digit_cap = ThetaSpec::kDefaultDigitCap);

std::string quotients_to_json(const std::vector<BigInt> &a);
std::vector<BigInt> quotients_from_json(const std::string &text);

} // namespace shear
