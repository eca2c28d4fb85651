#include "shear/cfrac/theta.hpp"

#include <climits>
#include <sstream>

namespace shear {

namespace {

using Lock = std::lock_guard<std::recursive_mutex>;

long symbolic_prec() { return std::max<long>(working_precision(), 256) + 64; }

void check_quotients(const std::vector<BigInt> &a, bool is_prefix_start)
{
    for (std::size_t i = 0; i < a.size(); ++i)
        if ((!is_prefix_start || i > 0) && a[i] < 1)
            throw Error(ErrorKind::config, "partial quotient a_" + std::to_string(i) + " must be >= 1");
}

} // namespace

BigRat GrowthRule::at(long n) const
{
    if (n < 0)
        throw std::invalid_argument("GrowthRule::at: negative index");
    if (static_cast<std::size_t>(n) < table.size())
        return table[static_cast<std::size_t>(n)];
    return slope * n + intercept;
}

void GrowthRule::validate() const
{
    if (slope < 0)
        throw Error(ErrorKind::config, "growth rule slope must be >= 0");
    long n_check = static_cast<long>(table.size()) + 1;
    BigRat prev = 0;
    for (long n = 0; n <= n_check; ++n) {
        BigRat g = at(n);
        if (g <= 0)
            throw Error(ErrorKind::config, "growth rule must be positive");
        if (n > 0 && g < prev)
            throw Error(ErrorKind::config, "growth rule must be nondecreasing");
        prev = g;
    }
}

std::string GrowthRule::describe() const
{
    std::ostringstream os;
    os << "g(n)=";
    if (!table.empty()) {
        os << "[";
        for (std::size_t i = 0; i < table.size(); ++i)
            os << (i ? "," : "") << to_string(table[i]);
        os << "] then ";
    }
    os << to_string(slope) << "*n+" << to_string(intercept);
    return os.str();
}

std::shared_ptr<const ThetaSpec> ThetaSpec::finite(std::vector<BigInt> quotients)
{
    if (quotients.empty())
        throw Error(ErrorKind::config, "empty quotient list");
    check_quotients(quotients, true);
    std::shared_ptr<ThetaSpec> t(new ThetaSpec());
    t->kind_ = Continuation::none;
    t->prefix_ = std::move(quotients);
    return t;
}

std::shared_ptr<const ThetaSpec> ThetaSpec::periodic(std::vector<BigInt> prefix, std::vector<BigInt> block)
{
    if (prefix.empty() || block.empty())
        throw Error(ErrorKind::config, "periodic theta needs a nonempty prefix and block");
    check_quotients(prefix, true);
    check_quotients(block, false);
    std::shared_ptr<ThetaSpec> t(new ThetaSpec());
    t->kind_ = Continuation::periodic;
    t->prefix_ = std::move(prefix);
    t->block_ = std::move(block);
    return t;
}

std::shared_ptr<const ThetaSpec> ThetaSpec::growth(std::vector<BigInt> prefix, GrowthRule rule, long digit_cap)
{
    if (prefix.empty())
        throw Error(ErrorKind::config, "growth theta needs at least a_0");
    check_quotients(prefix, true);
    rule.validate();
    if (digit_cap < 1)
        throw Error(ErrorKind::config, "digit cap must be positive");
    std::shared_ptr<ThetaSpec> t(new ThetaSpec());
    t->kind_ = Continuation::growth;
    t->prefix_ = std::move(prefix);
    t->rule_ = std::move(rule);
    t->digit_cap_ = digit_cap;
    return t;
}

std::shared_ptr<const ThetaSpec> ThetaSpec::golden() { return periodic({BigInt(0)}, {BigInt(1)}); }

std::string ThetaSpec::describe() const
{
    std::ostringstream os;
    os << "[";
    for (std::size_t i = 0; i < prefix_.size(); ++i)
        os << (i == 0 ? "" : (i == 1 ? ";" : ",")) << to_decimal(prefix_[i]);
    switch (kind_) {
    case Continuation::none:
        break;
    case Continuation::periodic:
        os << (prefix_.size() == 1 ? ";" : ",") << "(";
        for (std::size_t i = 0; i < block_.size(); ++i)
            os << (i ? "," : "") << to_decimal(block_[i]);
        os << ")*";
        break;
    case Continuation::growth:
        os << (prefix_.size() == 1 ? ";" : ",") << "ceil(e^{g(n)q_n}/q_n) with " << rule_.describe();
        break;
    }
    os << "]";
    return os.str();
}

BigInt ThetaSpec::next_growth_quotient(long n) const
{
    const BigInt &qn = q_[static_cast<std::size_t>(n)];
    BigRat x = rule_.at(n) * BigRat(qn);
    Real xr = Real::from_q(x, MPFR_RNDU, 64);
    long bits = static_cast<long>(xr.to_double(MPFR_RNDU) * 1.4426950408889634) + bit_length(qn) + 96;
    for (int attempt = 0; attempt < 6; ++attempt, bits *= 2) {
        Real xlo = Real::from_q(x, MPFR_RNDD, bits), xhi = Real::from_q(x, MPFR_RNDU, bits);
        Real lo(bits), hi(bits);
        mpfr_exp(lo.get(), xlo.get(), MPFR_RNDD);
        mpfr_exp(hi.get(), xhi.get(), MPFR_RNDU);
        mpfr_div_z(lo.get(), lo.get(), qn.get_mpz_t(), MPFR_RNDD);
        mpfr_div_z(hi.get(), hi.get(), qn.get_mpz_t(), MPFR_RNDU);
        BigInt clo, chi;
        mpfr_get_z(clo.get_mpz_t(), lo.get(), MPFR_RNDU);
        mpfr_get_z(chi.get_mpz_t(), hi.get(), MPFR_RNDU);
        if (clo == chi)
            return clo;
    }
    throw Error(ErrorKind::precision_exhausted, "could not resolve ceil(e^{g q_n}/q_n) at n=" + std::to_string(n));
}

void ThetaSpec::extend_to(long n) const
{
    while (static_cast<long>(a_.size()) <= n) {
        std::size_t i = a_.size();
        BigInt a;
        if (i < prefix_.size()) {
            a = prefix_[i];
        } else if (kind_ == Continuation::periodic) {
            a = block_[(i - prefix_.size()) % block_.size()];
        } else if (kind_ == Continuation::growth) {
            if (static_cast<long>(i) > exact_limit())
                throw Error(ErrorKind::overflow_budget, "q_" + std::to_string(i) + " exceeds the digit cap of " +
                                                            std::to_string(digit_cap_) + " digits");
            a = next_growth_quotient(static_cast<long>(i) - 1);
        } else {
            throw Error(ErrorKind::stream_exhausted, "quotient stream ends at index " + std::to_string(prefix_.size() - 1));
        }
        // p_{-1} = 1, p_{-2} = 0; q_{-1} = 0, q_{-2} = 1.
        BigInt p1 = i >= 1 ? p_[i - 1] : BigInt(1);
        BigInt p2 = i >= 2 ? p_[i - 2] : (i == 1 ? BigInt(1) : BigInt(0));
        BigInt q1 = i >= 1 ? q_[i - 1] : BigInt(0);
        BigInt q2 = i >= 2 ? q_[i - 2] : (i == 1 ? BigInt(0) : BigInt(1));
        p_.push_back(a * p1 + p2);
        q_.push_back(a * q1 + q2);
        a_.push_back(std::move(a));
    }
}

long ThetaSpec::exact_limit() const
{
    Lock lock(mu_);
    if (exact_limit_ != -2)
        return exact_limit_;
    switch (kind_) {
    case Continuation::none:
        exact_limit_ = static_cast<long>(prefix_.size()) - 1;
        break;
    case Continuation::periodic:
        exact_limit_ = LONG_MAX;
        break;
    case Continuation::growth: {
        // Provisionally allow everything while materializing the prefix and
        // each rule level whose size estimate fits under the cap.
        exact_limit_ = LONG_MAX;
        long n = static_cast<long>(prefix_.size()) - 1;
        extend_to(n);
        for (;; ++n) {
            // digits(q_{n+1}) ~ g(n) q_n / ln 10
            Real digits = Real::from_q(rule_.at(n) * BigRat(q_[static_cast<std::size_t>(n)]), MPFR_RNDD, 64);
            mpfr_div(digits.get(), digits.get(), ln10_interval(64).hi.get(), MPFR_RNDD);
            if (digits > Real::from_si(digit_cap_, 64))
                break;
            extend_to(n + 1);
        }
        exact_limit_ = n;
        break;
    }
    }
    return exact_limit_;
}

BigInt ThetaSpec::quotient(long n) const
{
    if (n < 0)
        throw std::invalid_argument("negative quotient index");
    Lock lock(mu_);
    if (n > exact_limit())
        extend_to(n);  // throws the appropriate error
    extend_to(n);
    return a_[static_cast<std::size_t>(n)];
}

BigInt ThetaSpec::p(long n) const
{
    quotient(n);
    Lock lock(mu_);
    return p_[static_cast<std::size_t>(n)];
}

BigInt ThetaSpec::q(long n) const
{
    quotient(n);
    Lock lock(mu_);
    return q_[static_cast<std::size_t>(n)];
}

RealInterval ThetaSpec::ln_q(long n) const
{
    Lock lock(mu_);
    long L = exact_limit();
    if (n <= L) {
        BigInt qn = q(n);
        return log(RealInterval::from_int(qn, std::max(symbolic_prec(), bit_length(qn) + 64)));
    }
    if (kind_ != Continuation::growth)
        throw Error(ErrorKind::stream_exhausted, "no quotient data at index " + std::to_string(n));
    while (static_cast<long>(ln_q_sym_.size()) < n - L) {
        long m = L + 1 + static_cast<long>(ln_q_sym_.size());
        long prec = symbolic_prec();
        RealInterval Q = q_real(m - 1);
        RealInterval g = RealInterval::from_rat(rule_.at(m - 1), prec);
        RealInterval base = g * Q;
        // Excess of log q_m over g q_{m-1} is at most 2 q e^{-g q} at q = q_{m-1}.lo.
        Real excess(prec);
        mpfr_mul(excess.get(), g.lo.get(), Q.lo.get(), MPFR_RNDD);
        mpfr_neg(excess.get(), excess.get(), MPFR_RNDU);
        mpfr_exp(excess.get(), excess.get(), MPFR_RNDU);
        mpfr_mul(excess.get(), excess.get(), Q.lo.get(), MPFR_RNDU);
        mpfr_mul_2ui(excess.get(), excess.get(), 1, MPFR_RNDU);
        ln_q_sym_.push_back({base.lo, add(base.hi, excess, MPFR_RNDU, prec)});
    }
    return ln_q_sym_[static_cast<std::size_t>(n - L - 1)];
}

RealInterval ThetaSpec::log10_q(long n) const
{
    RealInterval l = ln_q(n);
    return l / ln10_interval(std::max(l.lo.prec(), l.hi.prec()));
}

RealInterval ThetaSpec::q_real(long n) const
{
    Lock lock(mu_);
    if (n <= exact_limit()) {
        BigInt qn = q(n);
        return RealInterval::from_int(qn, symbolic_prec());
    }
    return exp(ln_q(n));
}

} // namespace shear
