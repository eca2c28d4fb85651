#include "shear/exactarith/logmag.hpp"
#include "shear/error.hpp"

namespace shear {

namespace {

RealInterval log10_of_two()
{
    return log10(RealInterval::from_si(2));
}

} // namespace

LogMag LogMag::one() { return {1, RealInterval::from_si(0)}; }

LogMag LogMag::from_real(const RealInterval &x)
{
    RealInterval a = abs(x);
    if (a.hi.is_zero())
        return zero();
    int s = x.lo.sign() > 0 ? 1 : (x.hi.sign() < 0 ? -1 : 1);
    if (a.lo.is_zero())
        return {s, {Real::neg_inf(), shear::log10(RealInterval::point(a.hi)).hi}};
    return {s, shear::log10(a)};
}

LogMag LogMag::from_int(const BigInt &x)
{
    if (x == 0)
        return zero();
    long p = std::max<long>(working_precision(), bit_length(x) + 8);
    return {x > 0 ? 1 : -1, shear::log10(RealInterval::from_int(BigInt(abs(x)), p))};
}

LogMag LogMag::from_log10(const RealInterval &l, int sign) { return {sign, l}; }

LogMag LogMag::upper(const Real &log10_hi) { return {1, {Real::neg_inf(), log10_hi}}; }

RealInterval LogMag::magnitude() const
{
    if (sign == 0)
        return RealInterval::from_si(0);
    return exp10(log10);
}

Real LogMag::magnitude_upper() const
{
    if (sign == 0)
        return Real(64);
    return exp10(log10).hi;
}

Real LogMag::log10_upper() const
{
    if (sign == 0)
        return Real::neg_inf();
    return log10.hi;
}

std::string LogMag::to_string(int digits) const
{
    if (sign == 0)
        return "0";
    return std::string(sign < 0 ? "-" : "") + "10^" + log10.to_string(digits);
}

LogMag operator*(const LogMag &a, const LogMag &b)
{
    if (a.sign == 0 || b.sign == 0)
        return LogMag::zero();
    return {a.sign * b.sign, a.log10 + b.log10};
}

LogMag operator/(const LogMag &a, const LogMag &b)
{
    if (b.sign == 0)
        throw Error(ErrorKind::precision_exhausted, "LogMag division by zero");
    if (a.sign == 0)
        return LogMag::zero();
    return {a.sign * b.sign, a.log10 - b.log10};
}

LogMag add_magnitudes(const LogMag &a, const LogMag &b)
{
    if (a.sign == 0)
        return b.sign == 0 ? LogMag::zero() : LogMag{1, b.log10};
    if (b.sign == 0)
        return {1, a.log10};
    // max(x,y) <= x+y <= 2*max(x,y).
    RealInterval m = max(a.log10, b.log10);
    return {1, {m.lo, (RealInterval::point(m.hi) + log10_of_two()).hi}};
}

LogMag min_upper(const LogMag &a, const LogMag &b)
{
    if (a.sign == 0 || b.sign == 0)
        return LogMag::zero();
    return {1, min(a.log10, b.log10)};
}

LogMag pow_logmag(const RealInterval &base, const RealInterval &exponent)
{
    if (base.lo.sign() < 0)
        throw std::invalid_argument("pow_logmag: negative base");
    if (exponent.hi.is_zero())
        return LogMag::one();
    if (base.hi.is_zero())
        return LogMag::zero();
    if (base.lo.is_zero()) {
        // Only an upper bound: |base|^e <= hi^e, and hi^e <= hi^e_lo when hi <= 1.
        RealInterval lh = log10(RealInterval::point(base.hi));
        RealInterval prod = lh * exponent;
        return LogMag::upper(prod.hi);
    }
    return {1, log10(base) * exponent};
}

LogMag pow_logmag(const RealInterval &base, const BigInt &exponent)
{
    if (exponent < 0)
        throw std::invalid_argument("pow_logmag: negative exponent");
    if (exponent == 0)
        return LogMag::one();
    long p = std::max<long>(working_precision(), bit_length(exponent) + 16);
    return pow_logmag(base, RealInterval::from_int(exponent, p));
}

bool certainly_le(const LogMag &a, const LogMag &b)
{
    if (a.sign == 0)
        return true;
    if (b.sign == 0)
        return false;
    return a.log10.hi <= b.log10.lo;
}

} // namespace shear
