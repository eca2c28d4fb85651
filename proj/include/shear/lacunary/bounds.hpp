#pragma once

// Certified magnitude bounds for lacunary terms, in log10 space.
//
// A term of h, phi or phi' at exponent q = q_m is bounded by
//     sup * C * x^{q+e} * (1+q)^d,
// with x >= |z|, C = 1 for h and C = min(2, 2 pi N / q_{m+1}) for the small
// divisor series. For a growth theta, ln q_{m+1} >= g(m) q_m turns this into
//     sup * 2 pi N * x^e * exp(q (ln x + d - g(m))),
// which halves from one index to the next as soon as g(m) >= ln x + d + ln 2.

#include "shear/lacunary/sequences.hpp"

namespace shear {

// Rotation number source: a ThetaSpec (exact path) or an enclosure of mu.
struct AngleSource {
    ThetaRef theta;
    std::optional<RatInterval> mu;
    bool negated = false;  // the angle -a, as used by inverses

    static AngleSource of(ThetaRef t);
    static AngleSource of(const RatInterval &m);
    bool is_theta() const { return theta != nullptr; }
    AngleSource negative() const;
    // Phase of a * N * angle.
    Phase phase(const SymInt &a, const SymInt &N) const;
    std::string describe() const;
};

struct TermShape {
    int z_offset = 1;           // e: z^{q+1} for h and phi, z^q for phi'
    int degree = 0;             // d: factor (1+q)^d
    bool small_divisor = true;  // coefficient carries (1 - e^{2 pi i q N angle})
};

inline TermShape h_shape() { return {1, 0, false}; }
inline TermShape phi_shape() { return {1, 0, true}; }
inline TermShape phi_prime_shape() { return {0, 1, true}; }

// log10 of an upper bound on sup * |coefficient| for entry n; uses the phase
// when known and, on the theta path, 2 pi N / q_{k(n)+1}.
Real coeff_bound_log10(const AngleSource &angle, const ExponentSubseq &qp, std::size_t n, const SymInt &N,
                       const Real &sup, const TermShape &shape);

// log10 upper bound on one term with exponent q_m of the parent theta (or
// plain exponent q with next == nullopt). May be +inf.
Real term_bound_log10(const AngleSource &angle, const SymInt &q, long parent_index, const SymInt &N,
                      const Real &x, const Real &sup, const TermShape &shape,
                      const Real &coeff_log10_hint = Real::pos_inf());

// Upper bound on the sum of all terms after entry M, valid for every
// continuation of q' past its listed entries. Throws tail-not-certifiable.
Real tail_bound(const AngleSource &angle, const ExponentSubseq &qp, long M, const SymInt &N, const Real &x,
                const Real &sup, const TermShape &shape);

// 10^v rounded up, saturating to +inf.
Real exp10_upper(const Real &v);

} // namespace shear
