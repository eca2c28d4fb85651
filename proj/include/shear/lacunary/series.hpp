#pragma once

// The lacunary series
//     h(z)   = z sum u_n z^{q'_n}
//     phi(z) = z e^{2 pi i N a} sum u_n (1 - e^{2 pi i q'_n N a}) z^{q'_n}
//     phi'(z) =  e^{2 pi i N a} sum u_n (1+q'_n)(1 - e^{2 pi i q'_n N a}) z^{q'_n}
// for a rotation number a (theta or mu), truncated after entry M with a
// certified tail folded into the error radius.

#include "shear/lacunary/bounds.hpp"

namespace shear {

struct SeriesValue {
    CertifiedComplex value;
    // phi and phi' only: the sum without the unit factor e^{2 pi i N a}, and
    // that factor (the unit disk when the phase is unknown).
    CertifiedComplex inner;
    CertifiedComplex rotation = CertifiedComplex::one();
    long M = 0;
    // Tail plus magnitude-only head terms; already included in value.err.
    Real tail_bound;
};

SeriesValue eval_h(const ExponentSubseq &qp, const CoefficientSeq &u, const CertifiedComplex &z, long M);

struct PhiCoeff {
    CertifiedComplex value;  // u_n (1 - e^{2 pi i q'_n N a})
    Real bound;              // certified upper bound on |value|
};

PhiCoeff phi_coeff(const AngleSource &angle, const ExponentSubseq &qp, const CoefficientSeq &u, std::size_t n,
                   const SymInt &N = SymInt(1));

SeriesValue eval_phi(const AngleSource &angle, const ExponentSubseq &qp, const CoefficientSeq &u,
                     const CertifiedComplex &z, long M, const SymInt &N = SymInt(1));
SeriesValue eval_phi_prime(const AngleSource &angle, const ExponentSubseq &qp, const CoefficientSeq &u,
                           const CertifiedComplex &z, long M, const SymInt &N = SymInt(1));

// sum (1+q'_n) |1 - e^{2 pi i q'_n N a}| r^{q'_n} for r in zabs.
RealInterval operator_norm(const AngleSource &angle, const ExponentSubseq &qp, const RealInterval &zabs,
                           const SymInt &N, long M);

// Upper bound on |z| including the ball radius.
Real abs_upper(const CertifiedComplex &z);

} // namespace shear
