#include "shear/exactarith/complex_ball.hpp"
#include "shear/error.hpp"

namespace shear {

namespace {

constexpr long kRadPrec = 64;

Real addu(const Real &a, const Real &b) { return add(a, b, MPFR_RNDU, kRadPrec); }
Real mulu(const Real &a, const Real &b)
{
    if (a.is_zero() || b.is_zero())
        return Real(kRadPrec);
    return mul(a, b, MPFR_RNDU, kRadPrec);
}

Real hypot_dir(const Real &x, const Real &y, mpfr_rnd_t rnd, long prec = kRadPrec)
{
    Real r(prec);
    mpfr_hypot(r.get(), x.get(), y.get(), rnd);
    return r;
}

// Exact sum/difference of two centers rounded once to the working precision.
Real combine(const Real &x, const Real &y, bool subtract, Real &rounding)
{
    Real r(working_precision());
    int t = subtract ? mpfr_sub(r.get(), x.get(), y.get(), MPFR_RNDN) : mpfr_add(r.get(), x.get(), y.get(), MPFR_RNDN);
    rounding = addu(rounding, rounding_error(r, t));
    return r;
}

Real exact_mul(const Real &x, const Real &y)
{
    Real r(x.prec() + y.prec());
    mpfr_mul(r.get(), x.get(), y.get(), MPFR_RNDN);
    return r;
}

BigRat sq(const BigRat &x) { return x * x; }

} // namespace

CertifiedComplex::CertifiedComplex() : re(working_precision()), im(working_precision()), err(kRadPrec) {}

CertifiedComplex::CertifiedComplex(Real re_, Real im_, Real err_) : re(std::move(re_)), im(std::move(im_)), err(std::move(err_))
{
    if (err.sign() < 0 || err.is_nan())
        throw std::invalid_argument("CertifiedComplex: negative radius");
}

CertifiedComplex CertifiedComplex::one() { return {Real::from_si(1, working_precision()), Real(working_precision()), Real(kRadPrec)}; }

CertifiedComplex CertifiedComplex::from_rat(const BigRat &x, const BigRat &y)
{
    long p = working_precision();
    Real a(p), b(p);
    int ta = mpfr_set_q(a.get(), x.get_mpq_t(), MPFR_RNDN);
    int tb = mpfr_set_q(b.get(), y.get_mpq_t(), MPFR_RNDN);
    Real e = addu(rounding_error(a, ta), rounding_error(b, tb));
    return {std::move(a), std::move(b), std::move(e)};
}

CertifiedComplex CertifiedComplex::from_real(const RealInterval &x)
{
    if (!x.is_finite())
        throw Error(ErrorKind::precision_exhausted, "non-finite real enclosure");
    Real m = Real::rounded(x.mid(), MPFR_RNDN, working_precision());
    Real r = max(sub(x.hi, m, MPFR_RNDU, kRadPrec), sub(m, x.lo, MPFR_RNDU, kRadPrec));
    return {std::move(m), Real(working_precision()), std::move(r)};
}

CertifiedComplex CertifiedComplex::ball(const CertifiedComplex &c, const Real &radius)
{
    return {c.re, c.im, addu(c.err, radius)};
}

CertifiedComplex CertifiedComplex::disk(const Real &r)
{
    return {Real(working_precision()), Real(working_precision()), Real::rounded(r, MPFR_RNDU, kRadPrec)};
}

RealInterval CertifiedComplex::abs() const
{
    long p = std::max(re.prec(), im.prec());
    Real lo = sub(hypot_dir(re, im, MPFR_RNDD, p), err, MPFR_RNDD, p);
    if (lo.sign() < 0)
        lo = Real(p);
    return {std::move(lo), add(hypot_dir(re, im, MPFR_RNDU, p), err, MPFR_RNDU, p)};
}

RealInterval CertifiedComplex::real_part() const
{
    long p = re.prec();
    return {sub(re, err, MPFR_RNDD, p), add(re, err, MPFR_RNDU, p)};
}

RealInterval CertifiedComplex::imag_part() const
{
    long p = im.prec();
    return {sub(im, err, MPFR_RNDD, p), add(im, err, MPFR_RNDU, p)};
}

bool CertifiedComplex::contains(const BigRat &x, const BigRat &y) const
{
    if (!is_finite())
        return err.is_inf();
    return sq(re.to_rat() - x) + sq(im.to_rat() - y) <= sq(err.to_rat());
}

bool CertifiedComplex::contains(const CertifiedComplex &inner) const
{
    if (!inner.is_finite())
        return false;
    if (err.is_inf())
        return true;
    if (!is_finite())
        return false;
    BigRat slack = err.to_rat() - inner.err.to_rat();
    if (slack < 0)
        return false;
    return sq(re.to_rat() - inner.re.to_rat()) + sq(im.to_rat() - inner.im.to_rat()) <= sq(slack);
}

CertifiedComplex CertifiedComplex::inflated(const Real &extra) const { return {re, im, addu(err, extra)}; }

CertifiedComplex CertifiedComplex::conj() const { return {re, neg(im), err}; }

std::string CertifiedComplex::to_string(int digits) const
{
    return "(" + re.to_string(digits) + " + " + im.to_string(digits) + "i +/- " + err.to_string(6, MPFR_RNDU) + ")";
}

CertifiedComplex operator+(const CertifiedComplex &a, const CertifiedComplex &b)
{
    Real rounding(kRadPrec);
    Real re = combine(a.re, b.re, false, rounding);
    Real im = combine(a.im, b.im, false, rounding);
    return {std::move(re), std::move(im), addu(addu(a.err, b.err), rounding)};
}

CertifiedComplex operator-(const CertifiedComplex &a, const CertifiedComplex &b)
{
    Real rounding(kRadPrec);
    Real re = combine(a.re, b.re, true, rounding);
    Real im = combine(a.im, b.im, true, rounding);
    return {std::move(re), std::move(im), addu(addu(a.err, b.err), rounding)};
}

CertifiedComplex operator-(const CertifiedComplex &a) { return {neg(a.re), neg(a.im), a.err}; }

CertifiedComplex operator*(const CertifiedComplex &a, const CertifiedComplex &b)
{
    Real rounding(kRadPrec);
    Real re = combine(exact_mul(a.re, b.re), exact_mul(a.im, b.im), true, rounding);
    Real im = combine(exact_mul(a.re, b.im), exact_mul(a.im, b.re), false, rounding);
    Real abs_a = hypot_dir(a.re, a.im, MPFR_RNDU);
    Real abs_b = hypot_dir(b.re, b.im, MPFR_RNDU);
    Real rad = addu(addu(mulu(abs_a, b.err), mulu(abs_b, a.err)), mulu(a.err, b.err));
    return {std::move(re), std::move(im), addu(rad, rounding)};
}

CertifiedComplex operator*(const RealInterval &s, const CertifiedComplex &a)
{
    return CertifiedComplex::from_real(s) * a;
}

CertifiedComplex pow(const CertifiedComplex &a, const BigInt &k)
{
    if (k < 0)
        throw std::invalid_argument("pow: negative exponent");
    if (k == 0)
        return CertifiedComplex::one();
    if (k == 1)
        return a;
    long P = working_precision();
    Real rho_dn = hypot_dir(a.re, a.im, MPFR_RNDD);
    Real rho_up = hypot_dir(a.re, a.im, MPFR_RNDU);
    if (rho_dn <= a.err) {
        Real r = addu(rho_up, a.err);
        Real out(kRadPrec);
        mpfr_pow_z(out.get(), r.get(), k.get_mpz_t(), MPFR_RNDU);
        return CertifiedComplex::disk(out);
    }
    if (k < 16) {
        // Binary powering; radii stay tight for small k.
        CertifiedComplex result = CertifiedComplex::one();
        CertifiedComplex base = a;
        unsigned long e = k.get_ui();
        while (e) {
            if (e & 1)
                result = result * base;
            e >>= 1;
            if (e)
                base = base * base;
        }
        return result;
    }
    long Pw = P + bit_length(k) + 20;
    Real rho(Pw), alpha(Pw), mag(Pw), ang(Pw), c(Pw), s(Pw);
    mpfr_hypot(rho.get(), a.re.get(), a.im.get(), MPFR_RNDN);
    mpfr_atan2(alpha.get(), a.im.get(), a.re.get(), MPFR_RNDN);
    mpfr_pow_z(mag.get(), rho.get(), k.get_mpz_t(), MPFR_RNDN);
    mpfr_mul_z(ang.get(), alpha.get(), k.get_mpz_t(), MPFR_RNDN);
    mpfr_sin_cos(s.get(), c.get(), ang.get(), MPFR_RNDN);
    Real re(P), im(P);
    mpfr_mul(re.get(), mag.get(), c.get(), MPFR_RNDN);
    mpfr_mul(im.get(), mag.get(), s.get(), MPFR_RNDN);
    // Local rounding: relative 2^-(P-8) of the modulus.
    Real mag_up(kRadPrec);
    mpfr_pow_z(mag_up.get(), rho_up.get(), k.get_mpz_t(), MPFR_RNDU);
    Real rad = mulu(mag_up, pow2(-(P - 8)));
    if (!a.err.is_zero()) {
        // (rho + r)^k - rho^k <= rho_up^k * expm1(k * log1p(r / rho_dn)).
        Real t = div(a.err, rho_dn, MPFR_RNDU, kRadPrec);
        mpfr_log1p(t.get(), t.get(), MPFR_RNDU);
        mpfr_mul_z(t.get(), t.get(), k.get_mpz_t(), MPFR_RNDU);
        mpfr_expm1(t.get(), t.get(), MPFR_RNDU);
        rad = addu(rad, mulu(mag_up, t));
    }
    return {std::move(re), std::move(im), std::move(rad)};
}

bool intersects(const CertifiedComplex &a, const CertifiedComplex &b)
{
    if (a.err.is_inf() || b.err.is_inf())
        return true;
    if (!a.is_finite() || !b.is_finite())
        return false;
    BigRat r = a.err.to_rat() + b.err.to_rat();
    return sq(a.re.to_rat() - b.re.to_rat()) + sq(a.im.to_rat() - b.im.to_rat()) <= r * r;
}

Real distance_upper(const CertifiedComplex &a, const CertifiedComplex &b)
{
    Real dr = sub(a.re, b.re, MPFR_RNDN, std::max(a.re.prec(), b.re.prec()) + 64);
    Real di = sub(a.im, b.im, MPFR_RNDN, std::max(a.im.prec(), b.im.prec()) + 64);
    // The extra bits make these differences exact except for wildly different
    // exponents; cover that case with one ulp each.
    Real slack = addu(rounding_error(dr, 1), rounding_error(di, 1));
    return addu(addu(hypot_dir(dr, di, MPFR_RNDU), slack), addu(a.err, b.err));
}

} // namespace shear
