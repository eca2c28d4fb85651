#include "shear/exactarith/real_interval.hpp"
#include "shear/error.hpp"

namespace shear {

namespace {

long prec_of(const RealInterval &a, const RealInterval &b)
{
    return std::max({a.lo.prec(), a.hi.prec(), b.lo.prec(), b.hi.prec(), working_precision()});
}

long prec_of(const RealInterval &a) { return std::max({a.lo.prec(), a.hi.prec(), working_precision()}); }

RealInterval sanitize(RealInterval r)
{
    if (r.lo.is_nan() || r.hi.is_nan())
        return RealInterval::whole();
    return r;
}

template <typename F>
RealInterval monotone(const RealInterval &a, F f)
{
    long p = prec_of(a);
    Real lo(p), hi(p);
    f(lo.get(), a.lo.get(), MPFR_RNDD);
    f(hi.get(), a.hi.get(), MPFR_RNDU);
    return sanitize({std::move(lo), std::move(hi)});
}

} // namespace

RealInterval::RealInterval() : lo(64), hi(64) {}

RealInterval::RealInterval(Real a, Real b) : lo(std::move(a)), hi(std::move(b))
{
    if (!lo.is_nan() && !hi.is_nan() && hi < lo)
        throw std::invalid_argument("RealInterval: lo > hi");
}

RealInterval RealInterval::from_rat(const BigRat &x, long prec)
{
    return {Real::from_q(x, MPFR_RNDD, prec), Real::from_q(x, MPFR_RNDU, prec)};
}

RealInterval RealInterval::from_rat(const RatInterval &x, long prec)
{
    return {Real::from_q(x.lo, MPFR_RNDD, prec), Real::from_q(x.hi, MPFR_RNDU, prec)};
}

RealInterval RealInterval::from_int(const BigInt &x, long prec)
{
    return {Real::from_z(x, MPFR_RNDD, prec), Real::from_z(x, MPFR_RNDU, prec)};
}

RealInterval RealInterval::from_si(long x)
{
    Real r = Real::from_si(x, 64);
    return {r, r};
}

RealInterval RealInterval::whole() { return {Real::neg_inf(), Real::pos_inf()}; }

bool RealInterval::contains(const BigRat &x) const
{
    if (lo.is_nan() || hi.is_nan())
        return false;
    bool above = lo.is_inf() ? lo.sign() < 0 : lo.to_rat() <= x;
    bool below = hi.is_inf() ? hi.sign() > 0 : x <= hi.to_rat();
    return above && below;
}

Real RealInterval::width() const { return sub(hi, lo, MPFR_RNDU, 64); }

Real RealInterval::mid() const
{
    long p = std::max(lo.prec(), hi.prec()) + 2;
    Real m(p);
    mpfr_add(m.get(), lo.get(), hi.get(), MPFR_RNDN);
    mpfr_div_2ui(m.get(), m.get(), 1, MPFR_RNDN);
    return m;
}

Real RealInterval::rad() const
{
    Real w = width();
    mpfr_div_2ui(w.get(), w.get(), 1, MPFR_RNDU);
    return w;
}

std::string RealInterval::to_string(int digits) const
{
    return "[" + lo.to_string(digits, MPFR_RNDD) + ", " + hi.to_string(digits, MPFR_RNDU) + "]";
}

RealInterval operator+(const RealInterval &a, const RealInterval &b)
{
    long p = prec_of(a, b);
    return sanitize({add(a.lo, b.lo, MPFR_RNDD, p), add(a.hi, b.hi, MPFR_RNDU, p)});
}

RealInterval operator-(const RealInterval &a, const RealInterval &b)
{
    long p = prec_of(a, b);
    return sanitize({sub(a.lo, b.hi, MPFR_RNDD, p), sub(a.hi, b.lo, MPFR_RNDU, p)});
}

RealInterval operator-(const RealInterval &a) { return {neg(a.hi), neg(a.lo)}; }

RealInterval operator*(const RealInterval &a, const RealInterval &b)
{
    long p = prec_of(a, b);
    // 0 * inf is treated as 0: an infinite endpoint is a bound, and the zero
    // factor is exact.
    auto prod = [p](const Real &x, const Real &y, mpfr_rnd_t rnd) {
        if (x.is_zero() || y.is_zero())
            return Real(p);
        return mul(x, y, rnd, p);
    };
    Real lo = prod(a.lo, b.lo, MPFR_RNDD);
    Real hi = prod(a.lo, b.lo, MPFR_RNDU);
    const Real *xs[2] = {&a.lo, &a.hi};
    const Real *ys[2] = {&b.lo, &b.hi};
    for (const Real *x : xs)
        for (const Real *y : ys) {
            lo = min(lo, prod(*x, *y, MPFR_RNDD));
            hi = max(hi, prod(*x, *y, MPFR_RNDU));
        }
    return sanitize({std::move(lo), std::move(hi)});
}

RealInterval operator/(const RealInterval &a, const RealInterval &b)
{
    if (b.lo.sign() <= 0 && b.hi.sign() >= 0)
        throw Error(ErrorKind::precision_exhausted, "interval division by an interval containing 0");
    long p = prec_of(a, b);
    Real lo = div(a.lo, b.lo, MPFR_RNDD, p);
    Real hi = div(a.lo, b.lo, MPFR_RNDU, p);
    const Real *xs[2] = {&a.lo, &a.hi};
    const Real *ys[2] = {&b.lo, &b.hi};
    for (const Real *x : xs)
        for (const Real *y : ys) {
            lo = min(lo, div(*x, *y, MPFR_RNDD, p));
            hi = max(hi, div(*x, *y, MPFR_RNDU, p));
        }
    return sanitize({std::move(lo), std::move(hi)});
}

RealInterval hull(const RealInterval &a, const RealInterval &b) { return {min(a.lo, b.lo), max(a.hi, b.hi)}; }

RealInterval intersect(const RealInterval &a, const RealInterval &b)
{
    Real lo = max(a.lo, b.lo);
    Real hi = min(a.hi, b.hi);
    if (hi < lo)
        throw Error(ErrorKind::precision_exhausted, "disjoint enclosures of the same quantity");
    return {std::move(lo), std::move(hi)};
}

RealInterval min(const RealInterval &a, const RealInterval &b) { return {min(a.lo, b.lo), min(a.hi, b.hi)}; }
RealInterval max(const RealInterval &a, const RealInterval &b) { return {max(a.lo, b.lo), max(a.hi, b.hi)}; }

RealInterval abs(const RealInterval &a)
{
    if (a.lo.sign() >= 0)
        return a;
    if (a.hi.sign() <= 0)
        return -a;
    return {Real(64), max(neg(a.lo), a.hi)};
}

RealInterval exp(const RealInterval &a) { return monotone(a, mpfr_exp); }
RealInterval exp10(const RealInterval &a) { return monotone(a, mpfr_exp10); }
RealInterval sqrt(const RealInterval &a) { return monotone(a, mpfr_sqrt); }

RealInterval log(const RealInterval &a)
{
    if (a.lo.sign() < 0)
        throw Error(ErrorKind::precision_exhausted, "log of an interval reaching below 0");
    return monotone(a, mpfr_log);
}

RealInterval log10(const RealInterval &a)
{
    if (a.lo.sign() < 0)
        throw Error(ErrorKind::precision_exhausted, "log10 of an interval reaching below 0");
    return monotone(a, mpfr_log10);
}

RealInterval pi_interval(long prec) { return {pi_bound(MPFR_RNDD, prec), pi_bound(MPFR_RNDU, prec)}; }

RealInterval ln10_interval(long prec)
{
    Real lo(prec), hi(prec);
    mpfr_log_ui(lo.get(), 10, MPFR_RNDD);
    mpfr_log_ui(hi.get(), 10, MPFR_RNDU);
    return {std::move(lo), std::move(hi)};
}

RealInterval dist_to_Z(const RealInterval &a)
{
    if (!a.is_finite())
        return {Real(64), pow2(-1)};
    long p = prec_of(a);
    // Small lifts keep their relative precision.
    if (a.lo >= neg(pow2(-1)) && a.hi <= pow2(-1))
        return abs(a);
    Real fl(p);
    mpfr_floor(fl.get(), a.lo.get());
    Real lo = sub(a.lo, fl, MPFR_RNDD, p);
    Real hi = sub(a.hi, fl, MPFR_RNDU, p);
    if (lo.sign() < 0)
        lo = Real(64);
    Real one = Real::from_si(1, 64);
    Real two = Real::from_si(2, 64);
    if (hi >= two)
        return {Real(64), pow2(-1)};
    // t in [0, 2): distance to the nearest of 0, 1, 2, rounded in direction rnd.
    auto dist_at = [&](const Real &t, mpfr_rnd_t rnd) {
        Real d1 = t <= one ? sub(one, t, rnd, p) : sub(t, one, rnd, p);
        return min(t, min(d1, sub(two, t, rnd, p)));
    };
    Real threehalf = Real::from_d(1.5);
    bool has_int = lo.is_zero() || (lo <= one && one <= hi);
    bool has_half = (lo <= pow2(-1) && pow2(-1) <= hi) || (lo <= threehalf && threehalf <= hi);
    Real dlo = has_int ? Real(64) : min(dist_at(lo, MPFR_RNDD), dist_at(hi, MPFR_RNDD));
    Real dhi = has_half ? pow2(-1) : max(dist_at(lo, MPFR_RNDU), dist_at(hi, MPFR_RNDU));
    return {std::move(dlo), min(dhi, pow2(-1))};
}

} // namespace shear
