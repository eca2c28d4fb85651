#include "shear/exactarith/elementary.hpp"
#include "shear/error.hpp"

#include <mutex>

namespace shear {

namespace {

std::mutex g_ceiling_mutex;
BigRat g_ceiling(1, 4);

constexpr long kGuard = 32;

// frac(m) reduced into [-1/2, 1/2), at precision prec. `rounding` receives an
// upper bound on the absolute error of the reduction.
Real centered_frac(const Real &m, long prec, Real &rounding)
{
    Real t(prec);
    int tern = mpfr_frac(t.get(), m.get(), MPFR_RNDN);
    rounding = rounding_error(t, tern);
    if (t >= pow2(-1)) {
        tern = mpfr_sub_ui(t.get(), t.get(), 1, MPFR_RNDN);
        rounding = add(rounding, rounding_error(t, tern), MPFR_RNDU, 64);
    } else if (t < neg(pow2(-1))) {
        tern = mpfr_add_ui(t.get(), t.get(), 1, MPFR_RNDN);
        rounding = add(rounding, rounding_error(t, tern), MPFR_RNDU, 64);
    }
    return t;
}

// Center m and radius w with [lo,hi] inside [m-w, m+w].
void center_radius(const RealInterval &x, Real &m, Real &w)
{
    if (!x.is_finite())
        throw Error(ErrorKind::precision_exhausted, "unbounded angle enclosure");
    m = x.mid();
    w = max(sub(x.hi, m, MPFR_RNDU, 64), sub(m, x.lo, MPFR_RNDU, 64));
}

void check_width(const Real &width)
{
    BigRat ceiling = unit_exp_width_ceiling();
    if (width > Real::from_q(ceiling, MPFR_RNDD, 64))
        throw Error(ErrorKind::precision_exhausted, "angle enclosure wider than the unit_exp ceiling");
}

CertifiedComplex unit_exp_at(const Real &t, const Real &angle_rad)
{
    long P = working_precision();
    long Pw = P + kGuard;
    Real ang(Pw), c(Pw), s(Pw);
    mpfr_const_pi(ang.get(), MPFR_RNDN);
    mpfr_mul_2ui(ang.get(), ang.get(), 1, MPFR_RNDN);
    mpfr_mul(ang.get(), ang.get(), t.get(), MPFR_RNDN);
    mpfr_sin_cos(s.get(), c.get(), ang.get(), MPFR_RNDN);
    Real re = Real::rounded(c, MPFR_RNDN, P);
    Real im = Real::rounded(s, MPFR_RNDN, P);
    Real two_pi = mul(pi_bound(MPFR_RNDU, 64), Real::from_si(2, 64), MPFR_RNDU, 64);
    Real rad = add(mul(two_pi, angle_rad, MPFR_RNDU, 64), pow2(-(P - 8)), MPFR_RNDU, 64);
    return {std::move(re), std::move(im), std::move(rad)};
}

BigRat poly_sin(const BigRat &y, int terms)
{
    // Sum_{j<terms} (-1)^j y^{2j+1}/(2j+1)!
    BigRat sum = 0, term = y, y2 = y * y;
    for (int j = 0; j < terms; ++j) {
        if (j % 2 == 0)
            sum += term;
        else
            sum -= term;
        term = term * y2 / ((2 * j + 2) * (2 * j + 3));
    }
    return sum;
}

} // namespace

BigRat unit_exp_width_ceiling()
{
    std::lock_guard<std::mutex> lock(g_ceiling_mutex);
    return g_ceiling;
}

void set_unit_exp_width_ceiling(const BigRat &w)
{
    if (w <= 0)
        throw Error(ErrorKind::config, "unit_exp width ceiling must be positive");
    std::lock_guard<std::mutex> lock(g_ceiling_mutex);
    g_ceiling = w;
}

CertifiedComplex unit_exp(const RatInterval &x)
{
    BigRat width = x.width();
    check_width(Real::from_q(width, MPFR_RNDU, 64));
    long Pw = working_precision() + kGuard;
    BigRat m = x.mid();
    BigRat frac = m - BigRat(floor_rat(m));
    Real t(Pw);
    int tern = mpfr_set_q(t.get(), frac.get_mpq_t(), MPFR_RNDN);
    Real w = Real::from_q(width / 2, MPFR_RNDU, 64);
    w = add(w, rounding_error(t, tern), MPFR_RNDU, 64);
    return unit_exp_at(t, w);
}

CertifiedComplex unit_exp(const RealInterval &x)
{
    check_width(x.width());
    Real m, w;
    center_radius(x, m, w);
    Real rounding;
    Real t = centered_frac(m, working_precision() + kGuard, rounding);
    return unit_exp_at(t, add(w, rounding, MPFR_RNDU, 64));
}

CertifiedComplex one_minus_unit_exp(const RealInterval &x)
{
    check_width(x.width());
    long P = working_precision();
    long Pw = P + kGuard;
    Real m, w;
    center_radius(x, m, w);
    Real rounding;
    Real t = centered_frac(m, Pw, rounding);
    Real half(Pw), s(Pw), c(Pw);
    mpfr_const_pi(half.get(), MPFR_RNDN);
    mpfr_mul(half.get(), half.get(), t.get(), MPFR_RNDN);
    mpfr_sin_cos(s.get(), c.get(), half.get(), MPFR_RNDN);
    // 1 - e^{2 pi i t} = 2 s^2 - 2 i s c with s = sin(pi t), c = cos(pi t).
    Real re(Pw), im(Pw);
    mpfr_sqr(re.get(), s.get(), MPFR_RNDN);
    mpfr_mul_2ui(re.get(), re.get(), 1, MPFR_RNDN);
    mpfr_mul(im.get(), s.get(), c.get(), MPFR_RNDN);
    mpfr_mul_2ui(im.get(), im.get(), 1, MPFR_RNDN);
    mpfr_neg(im.get(), im.get(), MPFR_RNDN);
    Real two_pi = mul(pi_bound(MPFR_RNDU, 64), Real::from_si(2, 64), MPFR_RNDU, 64);
    Real mag = abs(s);
    mpfr_mul_2ui(mag.get(), mag.get(), 1, MPFR_RNDU);
    Real rad = mul(two_pi, add(w, rounding, MPFR_RNDU, 64), MPFR_RNDU, 64);
    rad = add(rad, mul(Real::rounded(mag, MPFR_RNDU, 64), pow2(-(P - 8)), MPFR_RNDU, 64), MPFR_RNDU, 64);
    return {Real::rounded(re, MPFR_RNDN, P), Real::rounded(im, MPFR_RNDN, P), std::move(rad)};
}

RatInterval dist_to_Z(const RatInterval &x)
{
    const BigRat half(1, 2);
    if (x.width() >= 1)
        return {0, half};
    RatInterval r = x.reduced_mod1();
    auto d = [](const BigRat &t) {
        // t in [0, 2)
        BigRat a = t, b = abs(t - 1), c = 2 - t;
        return std::min({a, b, c});
    };
    bool has_int = r.lo == 0 || (r.lo <= 1 && 1 <= r.hi);
    bool has_half = (r.lo <= half && half <= r.hi) || (r.lo <= BigRat(3, 2) && BigRat(3, 2) <= r.hi);
    BigRat lo = has_int ? BigRat(0) : std::min(d(r.lo), d(r.hi));
    BigRat hi = has_half ? half : std::max(d(r.lo), d(r.hi));
    return {lo, hi};
}

const BigRat &pi_lower_rat()
{
    static const BigRat v = parse_rational("3.141592653589793238462643383279");
    return v;
}

const BigRat &pi_upper_rat()
{
    static const BigRat v = parse_rational("3.141592653589793238462643383280");
    return v;
}

BigRat sin_lower_rat(const BigRat &y)
{
    if (y <= 0)
        return 0;
    // Alternating Taylor sums ending on a negative term bound sin from below for y >= 0.
    BigRat v = poly_sin(y, 8);
    return v < 0 ? BigRat(0) : v;
}

BigRat sin_upper_rat(const BigRat &y)
{
    if (y <= 0)
        return 0;
    if (y >= BigRat(157, 100))
        return 1;
    BigRat v = poly_sin(y, 7);
    return v > 1 ? BigRat(1) : v;
}

RatInterval one_minus_unit_exp_bound(const RatInterval &d)
{
    BigRat dlo = std::max(BigRat(0), d.lo);
    BigRat dhi = std::min(BigRat(1, 2), d.hi);
    BigRat lo = std::max(BigRat(4 * dlo), BigRat(2 * sin_lower_rat(pi_lower_rat() * dlo)));
    BigRat hi = std::min({BigRat(2), BigRat(2 * pi_upper_rat() * dhi), BigRat(2 * sin_upper_rat(pi_upper_rat() * dhi))});
    return {lo, hi};
}

RatInterval one_minus_unit_exp_sq_bound(const RatInterval &d)
{
    const BigRat quarter(1, 4);
    BigRat dlo = std::max(BigRat(0), d.lo);
    BigRat dhi = std::min(BigRat(1, 2), d.hi);
    BigRat lo, hi;
    if (dlo < quarter) {
        BigRat s = sin_lower_rat(pi_lower_rat() * dlo);
        lo = 4 * s * s;
    } else {
        lo = 2 + 2 * sin_lower_rat(2 * pi_lower_rat() * (dlo - quarter));
    }
    if (dhi < quarter) {
        BigRat s = sin_upper_rat(pi_upper_rat() * dhi);
        hi = 4 * s * s;
    } else {
        hi = 2 + 2 * sin_upper_rat(2 * pi_upper_rat() * (dhi - quarter));
    }
    return {lo, std::min(hi, BigRat(4))};
}

BigRat sqrt_lower_rat(const BigRat &x, int bits)
{
    if (x <= 0)
        return 0;
    BigInt scale = BigInt(1) << (2 * bits);
    BigInt n = floor_rat(x * BigRat(scale));
    BigInt s;
    mpz_sqrt(s.get_mpz_t(), n.get_mpz_t());
    BigRat r(s, BigInt(1) << bits);
    r.canonicalize();
    return r;
}

BigRat sqrt_upper_rat(const BigRat &x, int bits)
{
    if (x <= 0)
        return 0;
    BigInt scale = BigInt(1) << (2 * bits);
    BigInt n = ceil_rat(x * BigRat(scale));
    BigInt s;
    mpz_sqrt(s.get_mpz_t(), n.get_mpz_t());
    if (s * s < n)
        s += 1;
    BigRat r(s, BigInt(1) << bits);
    r.canonicalize();
    return r;
}

} // namespace shear
