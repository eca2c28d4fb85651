#pragma once

#include "shear/exactarith/real_interval.hpp"

#include <string>

namespace shear {

// Complex ball: every represented value lies within `err` of re + i*im.
// Centers carry the working precision; radii are short and rounded up.
struct CertifiedComplex {
    Real re;
    Real im;
    Real err;

    CertifiedComplex();
    CertifiedComplex(Real re_, Real im_, Real err_);
    static CertifiedComplex exact_zero() { return {}; }
    static CertifiedComplex one();
    static CertifiedComplex from_rat(const BigRat &re, const BigRat &im = 0);
    static CertifiedComplex from_real(const RealInterval &re);
    static CertifiedComplex ball(const CertifiedComplex &center, const Real &radius);
    // Disk of radius r around 0.
    static CertifiedComplex disk(const Real &r);

    RealInterval abs() const;
    RealInterval real_part() const;
    RealInterval imag_part() const;
    bool is_finite() const { return re.is_finite() && im.is_finite() && err.is_finite(); }
    bool contains(const BigRat &x, const BigRat &y) const;
    // Ball inclusion: every point of `inner` lies in *this.
    bool contains(const CertifiedComplex &inner) const;
    CertifiedComplex inflated(const Real &extra) const;
    CertifiedComplex conj() const;
    std::string to_string(int digits = 20) const;
};

CertifiedComplex operator+(const CertifiedComplex &a, const CertifiedComplex &b);
CertifiedComplex operator-(const CertifiedComplex &a, const CertifiedComplex &b);
CertifiedComplex operator-(const CertifiedComplex &a);
CertifiedComplex operator*(const CertifiedComplex &a, const CertifiedComplex &b);
CertifiedComplex operator*(const RealInterval &s, const CertifiedComplex &a);
CertifiedComplex pow(const CertifiedComplex &a, const BigInt &k);
bool intersects(const CertifiedComplex &a, const CertifiedComplex &b);

// Upper bound on |a - b| over all points of both balls.
Real distance_upper(const CertifiedComplex &a, const CertifiedComplex &b);

} // namespace shear
