#pragma once

#include "shear/exactarith/real.hpp"

#include <string>

namespace shear {

// Floor/ceil of a rational, and decimal (de)serialization helpers.
BigInt floor_rat(const BigRat &x);
BigInt ceil_rat(const BigRat &x);
std::string to_decimal(const BigInt &v);
BigInt parse_bigint(const std::string &text);
// Accepts "p/q", integers and finite decimals such as "-0.125" or "1e-9".
BigRat parse_rational(const std::string &text);
std::string to_string(const BigRat &q);
// Number of bits of |v| (0 for v = 0).
long bit_length(const BigInt &v);

// Closed interval with exact rational endpoints.
struct RatInterval {
    BigRat lo;
    BigRat hi;

    RatInterval() = default;
    RatInterval(BigRat a, BigRat b);
    static RatInterval point(const BigRat &x) { return {x, x}; }

    BigRat width() const { return hi - lo; }
    BigRat mid() const { return (lo + hi) / 2; }
    bool contains(const BigRat &x) const { return lo <= x && x <= hi; }
    bool contains(const RatInterval &o) const { return lo <= o.lo && o.hi <= hi; }
    bool is_point() const { return lo == hi; }
    // Shift by the integer floor(lo), so that lo lands in [0,1).
    RatInterval reduced_mod1() const;
    std::string to_string() const;
};

inline bool operator==(const RatInterval &a, const RatInterval &b) { return a.lo == b.lo && a.hi == b.hi; }
RatInterval operator+(const RatInterval &a, const RatInterval &b);
RatInterval operator-(const RatInterval &a, const RatInterval &b);
RatInterval operator-(const RatInterval &a);
RatInterval operator*(const RatInterval &a, const RatInterval &b);
RatInterval operator*(const BigRat &k, const RatInterval &a);
RatInterval hull(const RatInterval &a, const RatInterval &b);

} // namespace shear
