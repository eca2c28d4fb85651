#include "shear/cfrac/symint.hpp"

#include <regex>

namespace shear {

SymInt SymInt::q_over(const ThetaRef &theta, long m, long k)
{
    if (!theta)
        throw Error(ErrorKind::config, "q_m needs a theta");
    if (m < 0 || k < 1)
        throw Error(ErrorKind::config, "bad symbolic integer q" + std::to_string(m) + "/" + std::to_string(k));
    if (theta->is_exact(m)) {
        BigInt v = theta->q(m) / BigInt(k);
        return SymInt(v);
    }
    theta->ln_q(m);  // fails early on non-growth streams
    SymInt s;
    s.theta_ = theta;
    s.m_ = m;
    s.k_ = k;
    return s;
}

SymInt SymInt::parse(const std::string &text, const ThetaRef &theta)
{
    static const std::regex sym(R"(\s*q(\d+)(?:\s*/\s*(\d+))?\s*)");
    std::smatch match;
    if (std::regex_match(text, match, sym)) {
        if (!theta)
            throw Error(ErrorKind::config, "'" + text + "' refers to a convergent but no theta is given");
        long k = match[2].matched ? std::stol(match[2].str()) : 1;
        return q_over(theta, std::stol(match[1].str()), k);
    }
    BigInt v = parse_bigint(text);
    if (v < 0)
        throw Error(ErrorKind::config, "negative integer '" + text + "'");
    return SymInt(v);
}

const BigInt &SymInt::value() const
{
    if (!is_exact())
        throw Error(ErrorKind::overflow_budget, to_string() + " is beyond the digit cap");
    return value_;
}

long SymInt::convergent_index(const ThetaSpec &theta) const
{
    if (!is_exact())
        return (k_ == 1 && theta_.get() == &theta) ? m_ : -1;
    if (value_ < 1)
        return -1;
    long limit = theta.exact_limit();
    for (long j = 0; j <= limit; ++j) {
        BigInt qj = theta.q(j);
        if (qj == value_) {
            // q_0 = q_1 = 1 when a_1 = 1; report the larger index, whose
            // delta is smaller.
            if (j + 1 <= limit && theta.q(j + 1) == qj)
                continue;
            return j;
        }
        if (qj > value_)
            break;
    }
    return -1;
}

RealInterval SymInt::ln() const
{
    if (is_exact()) {
        if (value_ < 1)
            throw std::domain_error("ln of zero");
        long prec = std::max<long>(working_precision(), bit_length(value_)) + 64;
        return log(RealInterval::from_int(value_, prec));
    }
    RealInterval lq = theta_->ln_q(m_);
    if (k_ == 1)
        return lq;
    // q/k - 1 < N <= q/k, and N >= q/(2k) once q >= 2k. The second form
    // survives when q itself saturates.
    long prec = std::max(lq.lo.prec(), lq.hi.prec());
    RealInterval lk = log(RealInterval::from_si(k_));
    Real q_lo = theta_->q_real(m_).lo;
    Real n_lo = div(q_lo, Real::from_si(k_, 64), MPFR_RNDD, prec);
    n_lo = sub(n_lo, Real::from_si(1, 64), MPFR_RNDD, prec);
    Real lo = n_lo >= Real::from_si(1, 64) ? log(RealInterval(n_lo, n_lo)).lo : Real::from_si(0, prec);
    if (q_lo >= Real::from_si(2 * k_, 64))
        lo = max(lo, sub(lq.lo, log(RealInterval::from_si(2 * k_)).hi, MPFR_RNDD, prec));
    return {lo, sub(lq.hi, lk.lo, MPFR_RNDU, prec)};
}

RealInterval SymInt::log10() const
{
    RealInterval l = ln();
    return l / ln10_interval(std::max(l.lo.prec(), l.hi.prec()));
}

RealInterval SymInt::real() const
{
    if (is_exact())
        return RealInterval::from_int(value_, std::max<long>(working_precision(), 64) + 64);
    return exp(ln());
}

std::string SymInt::to_string() const
{
    if (is_exact())
        return to_decimal(value_);
    std::string s = "q" + std::to_string(m_);
    if (k_ != 1)
        s += "/" + std::to_string(k_);
    return s;
}

bool certainly_less(const SymInt &a, const SymInt &b)
{
    if (a.is_exact() && b.is_exact())
        return a.value() < b.value();
    if (a.is_zero())
        return !b.is_zero();
    if (b.is_zero())
        return false;
    // q_m < q_{m'} for 1 <= m < m'.
    if (!a.is_exact() && !b.is_exact() && a.theta() == b.theta() && a.divisor() == 1 && b.divisor() == 1 &&
        a.index() >= 1 && a.index() < b.index())
        return true;
    return a.ln().hi < b.ln().lo;
}

bool certainly_equal(const SymInt &a, const SymInt &b)
{
    if (a.is_exact() && b.is_exact())
        return a.value() == b.value();
    if (a.is_exact() || b.is_exact())
        return false;
    return a.theta() == b.theta() && a.index() == b.index() && a.divisor() == b.divisor();
}

} // namespace shear
