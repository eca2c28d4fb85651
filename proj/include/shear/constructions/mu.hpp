#pragma once

// A rotation number mu with |1 - e^{2 pi i q''_n mu}| >= sqrt 2 along a
// subsequence q'' with q''_{n+1} >= 4 q''_n, from a nest of intervals I_n of
// length 1/q''_n with q''_n I_{n+1} inside [1/4, 3/4] + Z.

#include "shear/lacunary.hpp"

namespace shear {

struct MuCertificate {
    std::vector<BigInt> qpp;
    std::vector<RatInterval> intervals;  // I_0 .. I_{L-1}

    const RatInterval &mu() const { return intervals.back(); }
    // Levels n with I_{n+1} available.
    long certified_levels() const { return static_cast<long>(qpp.size()) - 1; }
};

// Leftmost admissible nest. gap-violation when some ratio is below 4.
MuCertificate build_mu(const std::vector<BigInt> &qpp);
MuCertificate build_mu(const ExponentSubseq &qpp);

// Greedy extraction of `count` entries with ratio >= 4 from exact entries of q'.
std::vector<BigInt> extract_gap_subsequence(const ExponentSubseq &source, std::size_t count);

struct MuLevelCheck {
    long n = 0;
    RatInterval dist;    // dist(q''_n mu, Z), exact
    RatInterval abs_sq;  // |1 - e^{2 pi i q''_n mu}|^2
    RatInterval abs;     // |1 - e^{2 pi i q''_n mu}|
    bool certified = false;  // abs_sq.lo >= 2
    bool boundary = false;   // dist.lo == 1/4: the bound sqrt 2 is attained
};

MuLevelCheck verify_mu(const MuCertificate &cert, long n);

struct E1Witness {
    CoefficientSeq u;
    std::vector<DivergenceWitness> probes;  // K = 1..10
};

// u = 1 has divergent partial sums along any q'.
E1Witness e1_witness(const ExponentSubseq &qp, long cap = 64);

} // namespace shear
