#pragma once

// Nonnegative integers that may be too large to materialize.
//
// A SymInt is either an exact BigInt or floor(q_m / k) for a convergent
// denominator q_m of some theta, with m past the exact range. Symbolic values
// are only ever handled through log enclosures and the structural identity
// q_m theta = p_m +- delta_m.

#include "shear/cfrac/theta.hpp"

#include <string>

namespace shear {

class SymInt {
public:
    SymInt() = default;
    SymInt(BigInt v) : value_(std::move(v)) {}  // NOLINT: implicit on purpose
    SymInt(long v) : value_(v) {}                // NOLINT

    // floor(q_m / k). Collapses to an exact value when q_m is materializable.
    static SymInt q_over(const ThetaRef &theta, long m, long k = 1);
    // Accepts "123", "q4", "q4/2" (the latter two need theta).
    static SymInt parse(const std::string &text, const ThetaRef &theta = nullptr);

    bool is_exact() const { return theta_ == nullptr; }
    bool is_zero() const { return is_exact() && value_ == 0; }
    const BigInt &value() const;  // throws overflow-budget when symbolic
    const ThetaRef &theta() const { return theta_; }
    long index() const { return m_; }
    long divisor() const { return k_; }
    // Parent index j with this == q_j, if known (exact values are searched
    // among materialized denominators of theta).
    long convergent_index(const ThetaSpec &theta) const;

    // Enclosure of ln N for N >= 1.
    RealInterval ln() const;
    RealInterval log10() const;
    // Enclosure of N itself (may saturate).
    RealInterval real() const;

    std::string to_string() const;

private:
    BigInt value_ = 0;
    ThetaRef theta_;
    long m_ = -1;
    long k_ = 1;
};

// Certified comparisons; false when undecidable from the enclosures.
bool certainly_less(const SymInt &a, const SymInt &b);
bool certainly_equal(const SymInt &a, const SymInt &b);

} // namespace shear
