#pragma once

#include "shear/exactarith/complex_ball.hpp"
#include "shear/exactarith/logmag.hpp"
#include "shear/exactarith/rat_interval.hpp"

namespace shear {

// Widest argument interval unit_exp accepts (default 1/4).
BigRat unit_exp_width_ceiling();
void set_unit_exp_width_ceiling(const BigRat &w);

// e^{2 pi i x} for every x in the interval. err <= 2 pi width/2 + 2^-(P-8).
CertifiedComplex unit_exp(const RatInterval &x);
CertifiedComplex unit_exp(const RealInterval &x);
// 1 - e^{2 pi i x}, evaluated as -2i sin(pi x) e^{i pi x} so that tiny
// arguments keep full relative precision.
CertifiedComplex one_minus_unit_exp(const RealInterval &x);

RatInterval dist_to_Z(const RatInterval &x);
// Enclosure of |1 - e^{2 pi i x}| = 2 sin(pi d) for d = dist(x, Z) in d.
RatInterval one_minus_unit_exp_bound(const RatInterval &d);
// Exact rational enclosure of |1 - e^{2 pi i x}|^2 = 4 sin^2(pi d). At d = 1/4
// the lower end is exactly 2.
RatInterval one_minus_unit_exp_sq_bound(const RatInterval &d);

// Rational bounds on pi and on sin(y) for 0 <= y <= pi/2.
const BigRat &pi_lower_rat();
const BigRat &pi_upper_rat();
BigRat sin_lower_rat(const BigRat &y);
BigRat sin_upper_rat(const BigRat &y);

// Dyadic bounds on sqrt(x) with 2^-bits resolution, via integer square roots.
BigRat sqrt_lower_rat(const BigRat &x, int bits = 96);
BigRat sqrt_upper_rat(const BigRat &x, int bits = 96);

} // namespace shear
