#include "shear/exactarith/real.hpp"
#include "shear/error.hpp"

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <utility>

namespace shear {

namespace {

std::atomic<long> g_precision{256};

} // namespace

const char *error_kind_name(ErrorKind kind)
{
    switch (kind) {
    case ErrorKind::precision_exhausted: return "precision-exhausted";
    case ErrorKind::stream_exhausted: return "stream-exhausted";
    case ErrorKind::ambiguous_quotient: return "ambiguous-quotient";
    case ErrorKind::enclosure_too_wide: return "enclosure-too-wide";
    case ErrorKind::overflow_budget: return "overflow-budget";
    case ErrorKind::outside_domain: return "outside-domain";
    case ErrorKind::tail_not_certifiable: return "tail-not-certifiable";
    case ErrorKind::search_exhausted: return "search-exhausted";
    case ErrorKind::gap_violation: return "gap-violation";
    case ErrorKind::config: return "config";
    case ErrorKind::missing_input: return "missing-input";
    }
    return "unknown";
}

long working_precision() { return g_precision.load(std::memory_order_relaxed); }

void set_working_precision(long bits)
{
    if (bits < 64 || bits > (1L << 24))
        throw Error(ErrorKind::config, "precision must be in [64, 2^24] bits");
    g_precision.store(bits, std::memory_order_relaxed);
}

PrecisionScope::PrecisionScope(long bits) : saved_(working_precision()) { set_working_precision(bits); }
PrecisionScope::~PrecisionScope() { g_precision.store(saved_, std::memory_order_relaxed); }

void ensure_extended_range()
{
    thread_local bool done = false;
    if (!done) {
        mpfr_set_emax(mpfr_get_emax_max());
        mpfr_set_emin(mpfr_get_emin_min());
        done = true;
    }
}

Real::Real(long prec)
{
    ensure_extended_range();
    mpfr_init2(value_, prec);
    mpfr_set_zero(value_, 1);
}

Real::Real(const Real &other)
{
    mpfr_init2(value_, other.prec());
    mpfr_set(value_, other.value_, MPFR_RNDN);
}

Real::Real(Real &&other) noexcept
{
    mpfr_init2(value_, MPFR_PREC_MIN);
    mpfr_swap(value_, other.value_);
}

Real &Real::operator=(const Real &other)
{
    if (this != &other) {
        mpfr_set_prec(value_, other.prec());
        mpfr_set(value_, other.value_, MPFR_RNDN);
    }
    return *this;
}

Real &Real::operator=(Real &&other) noexcept
{
    mpfr_swap(value_, other.value_);
    return *this;
}

Real::~Real() { mpfr_clear(value_); }

Real Real::from_si(long v, long prec)
{
    Real r(std::max<long>(prec, 64));
    mpfr_set_si(r.value_, v, MPFR_RNDN);
    return r;
}

Real Real::from_d(double v, long prec)
{
    Real r(std::max<long>(prec, 53));
    mpfr_set_d(r.value_, v, MPFR_RNDN);
    return r;
}

Real Real::from_z(const BigInt &v, mpfr_rnd_t rnd, long prec)
{
    Real r(prec);
    mpfr_set_z(r.value_, v.get_mpz_t(), rnd);
    return r;
}

Real Real::from_q(const BigRat &v, mpfr_rnd_t rnd, long prec)
{
    Real r(prec);
    mpfr_set_q(r.value_, v.get_mpq_t(), rnd);
    return r;
}

Real Real::pos_inf()
{
    Real r(MPFR_PREC_MIN);
    mpfr_set_inf(r.value_, 1);
    return r;
}

Real Real::neg_inf()
{
    Real r(MPFR_PREC_MIN);
    mpfr_set_inf(r.value_, -1);
    return r;
}

Real Real::rounded(const Real &v, mpfr_rnd_t rnd, long prec)
{
    Real r(prec);
    mpfr_set(r.value_, v.value_, rnd);
    return r;
}

BigRat Real::to_rat() const
{
    if (!is_finite())
        throw Error(ErrorKind::precision_exhausted, "non-finite value has no rational form");
    BigRat q;
    mpfr_get_q(q.get_mpq_t(), value_);
    return q;
}

std::string Real::to_string(int digits, mpfr_rnd_t rnd) const
{
    if (is_nan())
        return "nan";
    if (is_inf())
        return sign() > 0 ? "inf" : "-inf";
    if (is_zero())
        return "0";
    mpfr_exp_t exp10 = 0;
    char *raw = mpfr_get_str(nullptr, &exp10, 10, static_cast<size_t>(digits), value_, rnd);
    std::string mant(raw);
    mpfr_free_str(raw);
    std::string out;
    std::size_t pos = 0;
    if (mant[0] == '-') {
        out += '-';
        pos = 1;
    }
    out += mant[pos];
    if (mant.size() > pos + 1) {
        out += '.';
        out += mant.substr(pos + 1);
    }
    long e = static_cast<long>(exp10) - 1;
    out += e < 0 ? "e-" : "e+";
    out += std::to_string(e < 0 ? -e : e);
    return out;
}

int cmp(const Real &a, const Real &b) { return mpfr_cmp(a.get(), b.get()); }

Real rounding_error(const Real &value, int ternary)
{
    Real err(64);
    if (ternary == 0)
        return err;
    if (value.is_zero()) {
        // Underflow to zero: the lost value is below the smallest normal.
        mpfr_set_ui_2exp(err.get(), 1, mpfr_get_emin(), MPFR_RNDU);
        return err;
    }
    if (value.is_inf()) {
        mpfr_set_inf(err.get(), 1);
        return err;
    }
    mpfr_set_ui_2exp(err.get(), 1, mpfr_get_exp(value.get()) - value.prec() - 1, MPFR_RNDU);
    return err;
}

Real pow2(long e)
{
    Real r(64);
    mpfr_set_ui_2exp(r.get(), 1, e, MPFR_RNDN);
    return r;
}

namespace {

template <typename F>
Real binary(const Real &a, const Real &b, mpfr_rnd_t rnd, long prec, F f)
{
    Real r(prec);
    f(r.get(), a.get(), b.get(), rnd);
    return r;
}

} // namespace

Real add(const Real &a, const Real &b, mpfr_rnd_t rnd, long prec) { return binary(a, b, rnd, prec, mpfr_add); }
Real sub(const Real &a, const Real &b, mpfr_rnd_t rnd, long prec) { return binary(a, b, rnd, prec, mpfr_sub); }
Real mul(const Real &a, const Real &b, mpfr_rnd_t rnd, long prec) { return binary(a, b, rnd, prec, mpfr_mul); }
Real div(const Real &a, const Real &b, mpfr_rnd_t rnd, long prec) { return binary(a, b, rnd, prec, mpfr_div); }

Real max(const Real &a, const Real &b) { return cmp(a, b) >= 0 ? a : b; }
Real min(const Real &a, const Real &b) { return cmp(a, b) <= 0 ? a : b; }

Real abs(const Real &a)
{
    Real r(a.prec());
    mpfr_abs(r.get(), a.get(), MPFR_RNDN);
    return r;
}

Real neg(const Real &a)
{
    Real r(a.prec());
    mpfr_neg(r.get(), a.get(), MPFR_RNDN);
    return r;
}

Real pi_bound(mpfr_rnd_t rnd, long prec)
{
    Real r(prec);
    mpfr_const_pi(r.get(), rnd);
    return r;
}

} // namespace shear
