#include "shear/cfrac/phase.hpp"

#include <optional>

namespace shear {

namespace {

long phase_prec() { return working_precision() + 64; }

bool narrow(const RealInterval &x)
{
    if (!x.is_finite())
        return false;
    return x.width() < Real::from_q(unit_exp_width_ceiling(), MPFR_RNDD, 64);
}

// Nearest-integer recentring of an exact rational.
BigRat recentre(const BigRat &r)
{
    BigRat f = r - BigRat(floor_rat(r));
    if (f > BigRat(1, 2))
        f -= 1;
    return f;
}

long last_index(const ThetaSpec &theta)
{
    return theta.continuation() == Continuation::none ? static_cast<long>(theta.prefix().size()) - 1 : -1;
}

} // namespace

Phase Phase::from_rat(const RatInterval &angle)
{
    BigRat shift = floor_rat(angle.mid() + BigRat(1, 2));
    RatInterval lift(angle.lo - shift, angle.hi - shift);
    if (lift.width() >= unit_exp_width_ceiling())
        return unknown();
    return {true, RealInterval::from_rat(lift, phase_prec())};
}

Phase Phase::from_real(const RealInterval &lift)
{
    if (!narrow(lift))
        return unknown();
    return {true, lift};
}

RealInterval Phase::dist() const
{
    if (!known)
        return {Real::from_si(0), Real::from_q(BigRat(1, 2), MPFR_RNDU)};
    return dist_to_Z(x);
}

CertifiedComplex Phase::rotation() const
{
    if (!known)
        return CertifiedComplex::disk(Real::from_si(1, 64));
    return unit_exp(x);
}

CertifiedComplex Phase::one_minus() const
{
    if (!known)
        return {Real::from_si(1), Real::from_si(0), Real::from_si(1, 64)};
    return one_minus_unit_exp(x);
}

RealInterval Phase::one_minus_abs() const
{
    long prec = phase_prec();
    Real two = Real::from_si(2, prec);
    if (!known)
        return {Real::from_si(0, prec), two};
    RealInterval d = dist();
    Real lo(prec), hi(prec);
    mpfr_mul(lo.get(), d.lo.get(), pi_bound(MPFR_RNDD, prec).get(), MPFR_RNDD);
    mpfr_sin(lo.get(), lo.get(), MPFR_RNDD);
    mpfr_mul_2ui(lo.get(), lo.get(), 1, MPFR_RNDD);
    if (lo.sign() < 0)
        lo = Real::from_si(0, prec);
    Real half_pi = pi_bound(MPFR_RNDD, prec);
    mpfr_div_2ui(half_pi.get(), half_pi.get(), 1, MPFR_RNDD);
    mpfr_mul(hi.get(), d.hi.get(), pi_bound(MPFR_RNDU, prec).get(), MPFR_RNDU);
    if (hi >= half_pi) {
        hi = two;
    } else {
        mpfr_sin(hi.get(), hi.get(), MPFR_RNDU);
        mpfr_mul_2ui(hi.get(), hi.get(), 1, MPFR_RNDU);
        hi = min(hi, two);
    }
    return {lo, hi};
}

std::string Phase::to_string() const
{
    return known ? "lift " + x.to_string() : "unknown";
}

RealInterval delta_enclosure(const ThetaSpec &theta, long j)
{
    long prec = phase_prec();
    if (j == last_index(theta))
        return RealInterval::from_si(0);
    if (theta.is_exact(j + 1)) {
        BigInt qj = theta.q(j), qj1 = theta.q(j + 1);
        return RealInterval::from_rat(RatInterval(BigRat(1) / BigRat(qj1 + qj), BigRat(1) / BigRat(qj1)), prec);
    }
    RealInterval Q = theta.q_real(j + 1);
    RealInterval Qj = theta.q_real(j);
    Real one = Real::from_si(1, prec);
    Real lo = div(one, add(Q.hi, Qj.hi, MPFR_RNDU, prec), MPFR_RNDD, prec);
    Real hi = div(one, Q.lo, MPFR_RNDU, prec);
    return {lo, hi};
}

Phase phase_exact(const ThetaSpec &theta, const BigInt &K)
{
    long prec = phase_prec();
    if (K == 0)
        return {true, RealInterval::from_si(0)};
    BigInt absK = abs(K);
    long end = last_index(theta);
    long limit = theta.exact_limit();
    // Smallest L with q_{L+1} >= |K| 2^{P+32}, or the deepest available one.
    long need_bits = bit_length(absK) + working_precision() + 32;
    long L = end == 0 ? 0 : 1;
    for (; L != end; ++L) {
        if (L == limit)
            break;
        if (theta.is_exact(L + 1)) {
            if (bit_length(theta.q(L + 1)) > need_bits)
                break;
        } else {
            // log2 q_{L+1} = ln q_{L+1} / ln 2 > ln q_{L+1}
            if (theta.ln_q(L + 1).lo > Real::from_si(need_bits))
                break;
        }
    }
    BigInt pL = theta.p(L), qL = theta.q(L);
    BigInt num = K * pL;
    mpz_fdiv_r(num.get_mpz_t(), num.get_mpz_t(), qL.get_mpz_t());
    BigRat r(num, qL);
    r.canonicalize();
    r = recentre(r);
    RealInterval x = RealInterval::from_rat(r, prec);
    if (L != end) {
        RealInterval t = RealInterval::from_int(K, prec) * delta_enclosure(theta, L) / RealInterval::from_int(qL, prec);
        x = (L % 2 == 0) ? x + t : x - t;
    }
    return Phase::from_real(x);
}

Phase phase_of(const ThetaRef &theta, const SymInt &a, const SymInt &b)
{
    if (a.is_zero() || b.is_zero())
        return {true, RealInterval::from_si(0)};
    if (a.is_exact() && b.is_exact())
        return phase_exact(*theta, a.value() * b.value());
    long prec = phase_prec();
    std::optional<RealInterval> best;
    auto consider = [&](const SymInt &anchor, const SymInt &other) {
        long j = anchor.convergent_index(*theta);
        if (j < 0)
            return;
        RealInterval y;
        if (other.is_exact()) {
            y = RealInterval::from_int(other.value(), prec) * delta_enclosure(*theta, j);
        } else if (other.index() == j + 1) {
            // other = (q_m - s)/k with 0 <= s < k, delta_j in [1/(q_m + q_j), 1/q_m].
            long m = other.index();
            RealInterval k = RealInterval::from_si(other.divisor());
            RealInterval Q = RealInterval::point(Real::rounded(theta->q_real(m).lo, MPFR_RNDD, prec));
            RealInterval Qj = RealInterval::point(theta->q_real(j).hi);
            RealInterval one = RealInterval::from_si(1);
            RealInterval lower = (one - (k - one) / Q) / (k * (one + Qj / Q));
            y = {lower.lo, (one / k).hi};
        } else if (other.index() <= j) {
            y = other.real() * delta_enclosure(*theta, j);
        } else {
            return;
        }
        RealInterval x = (j % 2 == 0) ? y : -y;
        if (!narrow(x))
            return;
        if (!best || x.width() < best->width())
            best = x;
    };
    consider(a, b);
    consider(b, a);
    if (!best)
        return Phase::unknown();
    return {true, *best};
}

Phase phase_of(const RatInterval &mu, const SymInt &a, const SymInt &b)
{
    if (a.is_zero() || b.is_zero())
        return {true, RealInterval::from_si(0)};
    if (!a.is_exact() || !b.is_exact())
        return Phase::unknown();
    BigRat K(a.value() * b.value());
    return Phase::from_rat(K * mu);
}

} // namespace shear
