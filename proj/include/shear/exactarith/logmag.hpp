#pragma once

#include "shear/exactarith/real_interval.hpp"

#include <string>

namespace shear {

// Signed magnitude kept as log10|x|, for quantities far outside any float
// range (|z|^q for q with billions of digits). The log field is an interval;
// its lower end may be -inf when only an upper bound on |x| is known.
struct LogMag {
    int sign = 0;
    RealInterval log10;

    static LogMag zero() { return {}; }
    static LogMag one();
    static LogMag from_real(const RealInterval &x);
    static LogMag from_int(const BigInt &x);
    // Magnitude known only through log10|x| in the given interval.
    static LogMag from_log10(const RealInterval &l, int sign = 1);
    // Magnitude in [0, 10^hi].
    static LogMag upper(const Real &log10_hi);

    bool is_zero() const { return sign == 0; }
    // Enclosure of |x| as an ordinary interval; saturates to the MPFR range.
    RealInterval magnitude() const;
    // Smallest Real not below |x|, possibly +inf.
    Real magnitude_upper() const;
    Real log10_upper() const;
    std::string to_string(int digits = 10) const;
};

LogMag operator*(const LogMag &a, const LogMag &b);
LogMag operator/(const LogMag &a, const LogMag &b);
// |a| + |b|, as a magnitude enclosure (signs are not tracked through sums).
LogMag add_magnitudes(const LogMag &a, const LogMag &b);
// min(|a|, |b|) for magnitude upper-bound use.
LogMag min_upper(const LogMag &a, const LogMag &b);
// base^e for base >= 0 given as an interval and an exponent interval e >= 0.
LogMag pow_logmag(const RealInterval &base, const RealInterval &exponent);
LogMag pow_logmag(const RealInterval &base, const BigInt &exponent);
// True when |a| <= |b| is certified.
bool certainly_le(const LogMag &a, const LogMag &b);

} // namespace shear
