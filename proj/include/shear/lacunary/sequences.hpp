#pragma once

#include "shear/cfrac.hpp"

#include <optional>
#include <vector>

namespace shear {

// Strictly increasing exponents q'_0 < q'_1 < ..., either parent convergent
// denominators q_{k(n)} of a theta (indices recorded) or a plain list.
class ExponentSubseq {
public:
    static ExponentSubseq from_parent(ThetaRef parent, std::vector<long> indices);
    static ExponentSubseq from_values(std::vector<BigInt> values);

    std::size_t size() const { return parent_ ? indices_.size() : values_.size(); }
    bool has_parent() const { return parent_ != nullptr; }
    const ThetaRef &parent() const { return parent_; }
    long parent_index(std::size_t n) const { return indices_.at(n); }
    const std::vector<long> &parent_indices() const { return indices_; }

    SymInt at(std::size_t n) const;
    bool is_exact(std::size_t n) const;
    // q_{k(n)+1}, the parent denominator after q'_n.
    SymInt parent_next(std::size_t n) const;
    // Smallest exponent any continuation after entry n can have.
    SymInt next_lower_bound(std::size_t n) const;

    // Smallest ratio q'_{n+1}/q'_n over consecutive exact entries (Hadamard
    // gap diagnostics); nullopt with fewer than two exact entries.
    std::optional<BigRat> min_gap_ratio() const;
    std::string describe() const;

private:
    ThetaRef parent_;
    std::vector<long> indices_;
    std::vector<BigInt> values_;
};

// Bounded coefficients u_{q'_n}, listed by position n. Positions past the
// list repeat `fill` (u = 1 is the constant sequence).
class CoefficientSeq {
public:
    static CoefficientSeq constant(const CertifiedComplex &c);
    static CoefficientSeq listed(std::vector<CertifiedComplex> u, const CertifiedComplex &fill);
    // Seeded uniform sample in the disk of radius sup_norm, exact rationals.
    static CoefficientSeq random(unsigned long long seed, std::size_t count, const BigRat &sup_norm);

    CertifiedComplex at(std::size_t n) const;
    // Certified upper bound on every |u_n|.
    const Real &sup_norm() const { return sup_; }
    // Upper bound on |u_k| for k > n only; zero past a list with zero fill.
    Real sup_after(std::size_t n) const;
    std::size_t listed_size() const { return u_.size(); }
    bool is_zero() const;

private:
    std::vector<CertifiedComplex> u_;
    CertifiedComplex fill_;
    Real sup_;
};

} // namespace shear
