#pragma once

// An irrational theta given by its partial-quotient stream.
//
// Quotients come from an explicit prefix followed by one of: nothing (the
// stream ends), a periodic block, or a growth rule a_{n+1} =
// ceil(e^{g(n) q_n} / q_n). Convergents are cached append-only.
//
// Under a growth rule the denominators leave any exact range after a few
// levels. Beyond the digit cap, q_n is tracked through a certified enclosure
// of log q_n that follows from
//     e^{g q_n} + q_{n-1} <= q_{n+1} < e^{g q_n} + q_n + q_{n-1}.

#include "shear/exactarith.hpp"

#include <deque>
#include <memory>
#include <mutex>
#include <string>
#include <vector>

namespace shear {

// Nondecreasing positive g: tabulated values, then slope*n + intercept.
struct GrowthRule {
    std::vector<BigRat> table;
    BigRat slope = 1;
    BigRat intercept = 1;

    BigRat at(long n) const;
    // Throws config errors on a decreasing or non-positive rule.
    void validate() const;
    std::string describe() const;
};

enum class Continuation { none, periodic, growth };

class ThetaSpec : public std::enable_shared_from_this<ThetaSpec> {
public:
    static constexpr long kDefaultDigitCap = 1000000;

    static std::shared_ptr<const ThetaSpec> finite(std::vector<BigInt> quotients);
    static std::shared_ptr<const ThetaSpec> periodic(std::vector<BigInt> prefix, std::vector<BigInt> block);
    static std::shared_ptr<const ThetaSpec> growth(std::vector<BigInt> prefix, GrowthRule rule, long digit_cap = kDefaultDigitCap);
    static std::shared_ptr<const ThetaSpec> golden();

    Continuation continuation() const { return kind_; }
    bool has_growth() const { return kind_ == Continuation::growth; }
    const GrowthRule &rule() const { return rule_; }
    // Index n0 such that a_{n+1} follows the growth rule for n >= n0.
    long rule_start() const { return static_cast<long>(prefix_.size()) - 1; }
    long digit_cap() const { return digit_cap_; }
    const std::vector<BigInt> &prefix() const { return prefix_; }
    const std::vector<BigInt> &block() const { return block_; }
    std::string describe() const;

    // Largest n whose quotient can be materialized exactly (LONG_MAX for
    // periodic streams).
    long exact_limit() const;
    bool is_exact(long n) const { return n <= exact_limit(); }

    // Exact data; throw stream-exhausted or overflow-budget past exact_limit.
    BigInt quotient(long n) const;
    BigInt p(long n) const;
    BigInt q(long n) const;

    // Enclosures valid for every n >= 0; symbolic past exact_limit (growth
    // streams only, otherwise stream-exhausted).
    RealInterval ln_q(long n) const;
    RealInterval log10_q(long n) const;
    // May saturate: the lower end to the largest finite MPFR value, the upper to +inf.
    RealInterval q_real(long n) const;

private:
    ThetaSpec() = default;
    void extend_to(long n) const;  // requires mu_ held
    BigInt next_growth_quotient(long n) const;  // a_{n+1}, requires mu_ held

    Continuation kind_ = Continuation::none;
    std::vector<BigInt> prefix_;
    std::vector<BigInt> block_;
    GrowthRule rule_;
    long digit_cap_ = kDefaultDigitCap;

    mutable std::recursive_mutex mu_;
    mutable std::deque<BigInt> a_, p_, q_;
    mutable long exact_limit_ = -2;  // -2: not yet determined
    mutable std::deque<RealInterval> ln_q_sym_;  // entries for n = exact_limit+1, ...
};

using ThetaRef = std::shared_ptr<const ThetaSpec>;

} // namespace shear
