#pragma once

#include "shear/lacunary/series.hpp"

#include <ostream>

namespace shear {

// Heuristic Cauchy-Hadamard radius from finitely many coefficients. Not a
// certified quantity: a limsup cannot be read off finite data.
struct RadiusEstimate {
    Real lo;  // 10^{-max tail value}
    Real hi;  // 10^{-last value}
    long window = 0;
    bool certified = false;
};

RadiusEstimate radius_estimate(const std::vector<std::pair<SymInt, LogMag>> &coeffs);

struct DivergenceWitness {
    bool found = false;
    long index = -1;  // smallest N with |sum_{n<=N} u_n| > K
    CertifiedComplex partial_sum;
};

DivergenceWitness divergence_probe(const CoefficientSeq &u, const ExponentSubseq &qp, const BigRat &K, long cap);

struct TermRow {
    long n = 0;
    std::string exponent;  // decimal, or q_m for symbolic entries
    Real coeff_abs_log10;  // midpoint estimate (NaN when the phase is unknown)
    Real term_abs_log10;   // midpoint estimate
    Real upper_log10;      // certified
};

std::vector<TermRow> term_table(const AngleSource &angle, const ExponentSubseq &qp, const CoefficientSeq &u,
                                const Real &zabs, const SymInt &N, long M, const TermShape &shape);
void write_term_csv(std::ostream &os, const std::vector<TermRow> &rows, int digits = 17);

} // namespace shear
