#pragma once

// RAII wrapper over an MPFR number plus the process-wide working precision.
//
// Every thread that touches a Real runs with MPFR's widest exponent range, so
// that quantities like 2^(10^12) are ordinary finite numbers. Overflow past
// that range saturates according to the rounding direction, which keeps
// directed-rounding bounds sound.

#include <gmpxx.h>
#include <mpfr.h>

#include <string>

namespace shear {

using BigInt = mpz_class;
using BigRat = mpq_class;

long working_precision();
void set_working_precision(long bits);

// Restores the previous working precision on scope exit.
class PrecisionScope {
public:
    explicit PrecisionScope(long bits);
    ~PrecisionScope();
    PrecisionScope(const PrecisionScope &) = delete;
    PrecisionScope &operator=(const PrecisionScope &) = delete;

private:
    long saved_;
};

void ensure_extended_range();

class Real {
public:
    explicit Real(long prec = working_precision());
    Real(const Real &other);
    Real(Real &&other) noexcept;
    Real &operator=(const Real &other);
    Real &operator=(Real &&other) noexcept;
    ~Real();

    static Real from_si(long v, long prec = working_precision());
    static Real from_d(double v, long prec = 64);
    static Real from_z(const BigInt &v, mpfr_rnd_t rnd, long prec = working_precision());
    static Real from_q(const BigRat &v, mpfr_rnd_t rnd, long prec = working_precision());
    static Real pos_inf();
    static Real neg_inf();
    // Exact copy at a (possibly) different precision; the value is rounded with rnd.
    static Real rounded(const Real &v, mpfr_rnd_t rnd, long prec);

    mpfr_ptr get() { return value_; }
    mpfr_srcptr get() const { return value_; }
    long prec() const { return mpfr_get_prec(value_); }

    int sign() const { return mpfr_sgn(value_); }
    bool is_zero() const { return mpfr_zero_p(value_) != 0; }
    bool is_inf() const { return mpfr_inf_p(value_) != 0; }
    bool is_nan() const { return mpfr_nan_p(value_) != 0; }
    bool is_finite() const { return mpfr_number_p(value_) != 0; }
    double to_double(mpfr_rnd_t rnd = MPFR_RNDN) const { return mpfr_get_d(value_, rnd); }
    // Exact conversion; requires a finite value.
    BigRat to_rat() const;
    // Scientific notation with the given number of significant digits.
    std::string to_string(int digits = 17, mpfr_rnd_t rnd = MPFR_RNDN) const;

private:
    mpfr_t value_;
};

int cmp(const Real &a, const Real &b);
inline bool operator<(const Real &a, const Real &b) { return cmp(a, b) < 0; }
inline bool operator<=(const Real &a, const Real &b) { return cmp(a, b) <= 0; }
inline bool operator>(const Real &a, const Real &b) { return cmp(a, b) > 0; }
inline bool operator>=(const Real &a, const Real &b) { return cmp(a, b) >= 0; }
inline bool operator==(const Real &a, const Real &b) { return cmp(a, b) == 0; }

// Upper bound on the rounding error of a freshly computed value whose MPFR
// ternary result was `ternary`: half an ulp, or zero for an exact result.
Real rounding_error(const Real &value, int ternary);

// 2^e as a short exact Real.
Real pow2(long e);

// Directed-rounding scalar helpers; results have precision `prec`.
Real add(const Real &a, const Real &b, mpfr_rnd_t rnd, long prec = working_precision());
Real sub(const Real &a, const Real &b, mpfr_rnd_t rnd, long prec = working_precision());
Real mul(const Real &a, const Real &b, mpfr_rnd_t rnd, long prec = working_precision());
Real div(const Real &a, const Real &b, mpfr_rnd_t rnd, long prec = working_precision());
Real max(const Real &a, const Real &b);
Real min(const Real &a, const Real &b);
Real abs(const Real &a);
Real neg(const Real &a);
Real pi_bound(mpfr_rnd_t rnd, long prec = working_precision());

} // namespace shear
