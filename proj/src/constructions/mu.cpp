#include "shear/constructions/mu.hpp"

namespace shear {

namespace {

const BigRat kQuarter(1, 4);
const BigRat kThreeQuarters(3, 4);

BigRat frac(const BigInt &a, const BigInt &b)
{
    BigRat r(a, b);
    r.canonicalize();
    return r;
}

} // namespace

MuCertificate build_mu(const std::vector<BigInt> &qpp)
{
    if (qpp.empty())
        throw Error(ErrorKind::config, "build_mu needs at least one q''");
    if (qpp[0] < 1)
        throw Error(ErrorKind::config, "q'' entries must be positive");
    for (std::size_t n = 0; n + 1 < qpp.size(); ++n) {
        if (qpp[n + 1] < 4 * qpp[n])
            throw Error(ErrorKind::gap_violation, "q''_" + std::to_string(n + 1) + " = " + to_decimal(qpp[n + 1]) +
                                                      " < 4 q''_" + std::to_string(n) + " = " +
                                                      to_decimal(4 * qpp[n]));
    }
    MuCertificate c;
    c.qpp = qpp;
    c.intervals.push_back({BigRat(0), frac(1, qpp[0])});
    for (std::size_t n = 0; n + 1 < qpp.size(); ++n) {
        const RatInterval &I = c.intervals.back();
        BigRat q = qpp[n];
        BigRat len = frac(1, qpp[n + 1]);
        // Windows [(k + 1/4)/q, (k + 3/4)/q]; take the leftmost fit inside I.
        BigInt k = floor_rat(q * I.lo - kThreeQuarters);
        bool placed = false;
        for (int tries = 0; tries < 4 && !placed; ++tries, k += 1) {
            BigRat x = std::max(I.lo, BigRat((BigRat(k) + kQuarter) / q));
            BigRat end = x + len;
            if (end <= I.hi && end <= (BigRat(k) + kThreeQuarters) / q) {
                c.intervals.push_back({x, end});
                placed = true;
            }
        }
        if (!placed)
            throw Error(ErrorKind::gap_violation, "no admissible subinterval at level " + std::to_string(n));
    }
    return c;
}

MuCertificate build_mu(const ExponentSubseq &qpp)
{
    std::vector<BigInt> v;
    for (std::size_t i = 0; i < qpp.size(); ++i)
        v.push_back(qpp.at(i).value());
    return build_mu(v);
}

std::vector<BigInt> extract_gap_subsequence(const ExponentSubseq &source, std::size_t count)
{
    std::vector<BigInt> out;
    for (std::size_t i = 0; i < source.size() && out.size() < count; ++i) {
        SymInt q = source.at(i);
        if (!q.is_exact())
            break;
        if (q.value() < 2)
            continue;
        if (out.empty() || q.value() >= 4 * out.back())
            out.push_back(q.value());
    }
    if (out.size() < count)
        throw Error(ErrorKind::gap_violation, "only " + std::to_string(out.size()) + " of " + std::to_string(count) +
                                                  " entries with ratio >= 4 among the exact entries of q'");
    return out;
}

MuLevelCheck verify_mu(const MuCertificate &cert, long n)
{
    if (n < 0 || n >= cert.certified_levels())
        throw Error(ErrorKind::config, "level " + std::to_string(n) + " is not certified by this nest");
    MuLevelCheck r;
    r.n = n;
    BigRat q = cert.qpp[static_cast<std::size_t>(n)];
    r.dist = dist_to_Z(q * cert.mu());
    r.abs_sq = one_minus_unit_exp_sq_bound(r.dist);
    r.abs = one_minus_unit_exp_bound(r.dist);
    r.certified = r.abs_sq.lo >= 2;
    r.boundary = r.dist.lo == kQuarter;
    return r;
}

E1Witness e1_witness(const ExponentSubseq &qp, long cap)
{
    E1Witness w;
    w.u = CoefficientSeq::constant(CertifiedComplex::one());
    for (long K = 1; K <= 10; ++K)
        w.probes.push_back(divergence_probe(w.u, qp, BigRat(K), cap));
    return w;
}

} // namespace shear
