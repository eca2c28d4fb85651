#pragma once

#include "shear/exactarith/rat_interval.hpp"
#include "shear/exactarith/real.hpp"

#include <string>

namespace shear {

// Closed real interval with MPFR endpoints rounded outward. Endpoints may be
// infinite; an operation that would produce NaN widens to the whole line.
struct RealInterval {
    Real lo;
    Real hi;

    RealInterval();
    RealInterval(Real a, Real b);
    static RealInterval point(const Real &x) { return {x, x}; }
    static RealInterval from_rat(const BigRat &x, long prec = working_precision());
    static RealInterval from_rat(const RatInterval &x, long prec = working_precision());
    static RealInterval from_int(const BigInt &x, long prec = working_precision());
    static RealInterval from_si(long x);
    static RealInterval whole();

    bool contains(const Real &x) const { return lo <= x && x <= hi; }
    bool contains(const BigRat &x) const;
    bool contains(const RealInterval &o) const { return lo <= o.lo && o.hi <= hi; }
    bool is_finite() const { return lo.is_finite() && hi.is_finite(); }
    Real width() const;
    Real mid() const;
    // Half-width, rounded up.
    Real rad() const;
    std::string to_string(int digits = 10) const;
};

RealInterval operator+(const RealInterval &a, const RealInterval &b);
RealInterval operator-(const RealInterval &a, const RealInterval &b);
RealInterval operator-(const RealInterval &a);
RealInterval operator*(const RealInterval &a, const RealInterval &b);
RealInterval operator/(const RealInterval &a, const RealInterval &b);
RealInterval hull(const RealInterval &a, const RealInterval &b);
// Throws if the intervals are disjoint.
RealInterval intersect(const RealInterval &a, const RealInterval &b);
RealInterval min(const RealInterval &a, const RealInterval &b);
RealInterval max(const RealInterval &a, const RealInterval &b);
RealInterval abs(const RealInterval &a);

// Monotone elementary functions, enclosed by rounding each endpoint outward.
RealInterval exp(const RealInterval &a);
RealInterval log(const RealInterval &a);
RealInterval log10(const RealInterval &a);
RealInterval exp10(const RealInterval &a);
RealInterval sqrt(const RealInterval &a);
RealInterval pi_interval(long prec = working_precision());
RealInterval ln10_interval(long prec = working_precision());

// dist(x, Z) for every x in a; result is inside [0, 1/2].
RealInterval dist_to_Z(const RealInterval &a);

} // namespace shear
