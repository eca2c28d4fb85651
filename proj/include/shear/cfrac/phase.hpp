#pragma once

// The angle K theta mod 1 for integers K far too large for float theta.
//
// A known phase is stored as a real lift x (K theta = x mod 1) with a narrow
// enclosure. Tiny angles keep full relative precision, so x = 10^{-10^{11}}
// is representable. When no certified lift exists the phase is unknown and
// only |e^{2 pi i x}| = 1 survives.

#include "shear/cfrac/symint.hpp"

namespace shear {

struct Phase {
    bool known = false;
    RealInterval x;

    static Phase unknown() { return {}; }
    static Phase from_rat(const RatInterval &angle);
    static Phase from_real(const RealInterval &lift);

    // dist(x, Z); [0, 1/2] when unknown.
    RealInterval dist() const;
    // e^{2 pi i x}, or the unit disk when unknown.
    CertifiedComplex rotation() const;
    // 1 - e^{2 pi i x}, or the disk |c - 1| <= 1 when unknown.
    CertifiedComplex one_minus() const;
    // |1 - e^{2 pi i x}| = 2 sin(pi dist); [0, 2] when unknown.
    RealInterval one_minus_abs() const;
    std::string to_string() const;
};

// Kth multiple of theta for exact K, via the fine enclosure at the deepest
// useful convergent.
Phase phase_exact(const ThetaSpec &theta, const BigInt &K);
// a*b*theta for possibly symbolic factors.
Phase phase_of(const ThetaRef &theta, const SymInt &a, const SymInt &b = SymInt(1));
// a*b*mu for an enclosure of a rotation number; unknown for symbolic factors.
Phase phase_of(const RatInterval &mu, const SymInt &a, const SymInt &b = SymInt(1));

// delta_j = |q_j theta - p_j| in [1/(q_{j+1} + q_j), 1/q_{j+1}].
RealInterval delta_enclosure(const ThetaSpec &theta, long j);

} // namespace shear
