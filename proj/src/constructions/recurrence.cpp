#include "shear/constructions/recurrence.hpp"

#include "shear/cfrac/ops.hpp"

namespace shear {

namespace {

long bprec() { return working_precision() + 64; }

Real nan_to_inf(const Real &v) { return v.is_nan() ? Real::pos_inf() : v; }
Real add_up(const Real &a, const Real &b) { return nan_to_inf(add(a, b, MPFR_RNDU, bprec())); }
Real mul_up(const Real &a, const Real &b) { return nan_to_inf(mul(a, b, MPFR_RNDU, bprec())); }

Real log10_up(const Real &v)
{
    if (v.sign() <= 0)
        return Real::neg_inf();
    return log10(RealInterval(v, v)).hi;
}

Real log10_up(const BigRat &v) { return log10(RealInterval::from_rat(v, bprec())).hi; }
Real log10_down(const BigRat &v) { return log10(RealInterval::from_rat(v, bprec())).lo; }

// ln -> log10, rounded up.
Real ln_to_log10_up(const Real &t)
{
    RealInterval ln10 = ln10_interval(bprec());
    return nan_to_inf(div(t, t.sign() >= 0 ? ln10.lo : ln10.hi, MPFR_RNDU, bprec()));
}

// log10(10^a + 10^b), rounded up; stays meaningful far below the MPFR range.
Real logsum_up(const Real &a, const Real &b)
{
    if (a.is_inf() && a.sign() < 0)
        return b;
    if (b.is_inf() && b.sign() < 0)
        return a;
    const Real &hi = a >= b ? a : b;
    const Real &lo = a >= b ? b : a;
    if (!hi.is_finite())
        return hi;
    Real d = nan_to_inf(sub(lo, hi, MPFR_RNDU, bprec()));
    Real one_plus = add(Real::from_si(1, 64), exp10_upper(d), MPFR_RNDU, 64);
    return add_up(hi, log10_up(one_plus));
}

Real two_pi_up() { return mul(pi_bound(MPFR_RNDU, 64), Real::from_si(2, 64), MPFR_RNDU, 64); }

TermShape master_shape() { return {0, 0, true}; }

Real phase_hint_log10(const AngleSource &angle, const SymInt &a, const SymInt &N)
{
    Phase ph = angle.phase(a, N);
    if (!ph.known)
        return log10_up(Real::from_si(2, 64));
    return log10_up(Real::rounded(ph.one_minus_abs().hi, MPFR_RNDU, 64));
}

// log10 of |1 - e(q N theta)| p^q, upper bound.
Real pair_term_log10(const AngleSource &angle, const SymInt &q, long k, const SymInt &N, long p)
{
    Real hint = phase_hint_log10(angle, q, N);
    return term_bound_log10(angle, q, k, N, Real::from_si(p, 64), Real::from_si(1, 64), master_shape(), hint);
}

// a >= 2 b, certified.
bool certainly_ge_twice(const SymInt &a, const SymInt &b)
{
    if (a.is_exact() && b.is_exact())
        return a.value() >= 2 * b.value();
    Real rhs = add_up(b.ln().hi, log(RealInterval::from_si(2)).hi);
    return a.ln().lo >= rhs;
}

bool le_rat(const Real &v, const BigRat &r) { return v <= Real::from_q(r, MPFR_RNDD, bprec()); }

struct Search {
    RecurrenceLevel level;
    std::string failure;
};

Search build_level(const ThetaRef &theta, long p, const BigRat &eps, const SymInt &prevN, long prevN_index,
                   const std::vector<SymInt> &qps, const std::vector<long> &qidx, long span)
{
    Search s;
    RecurrenceLevel &L = s.level;
    L.p = p;
    L.eps = eps;
    AngleSource angle = AngleSource::of(theta);
    std::string where = "p=" + std::to_string(p) + ": ";

    // (i) + (ii): N_p among q_m, m > index of N_{p-1}.
    BigRat half = eps / 2;
    bool found = false;
    for (long m = prevN_index + 1; m <= prevN_index + span && !found; ++m) {
        SymInt qm;
        try {
            qm = SymInt::q_over(theta, m);
        } catch (const Error &) {
            break;
        }
        if (!certainly_less(prevN, qm))
            continue;
        Real sum = exp10_upper(phase_hint_log10(angle, SymInt(1), qm));
        for (std::size_t n = 0; n < qps.size() && sum.is_finite(); ++n)
            sum = add_up(sum, exp10_upper(pair_term_log10(angle, qps[n], qidx[n], qm, p)));
        if (le_rat(sum, half)) {
            L.N = qm;
            L.N_index = m;
            L.cond_ii_log10 = Real::rounded(log10_up(sum), MPFR_RNDU, 64);
            found = true;
        }
    }
    if (!found) {
        s.failure = where + "condition (ii) not met by q_m for m <= " + std::to_string(prevN_index + span);
        return s;
    }

    // (iii) + (iv): q'_p among q_k, k > index of q'_{p-1}.
    RealInterval four_pi = RealInterval::from_si(4) * pi_interval(bprec());
    Real target = nan_to_inf(sub(sub(log10_down(eps), log10(four_pi).hi, MPFR_RNDD, bprec()), L.N.log10().hi,
                                 MPFR_RNDD, bprec()));
    bool any_iii = false;
    found = false;
    for (long k = qidx.back() + 1; k <= qidx.back() + span && !found; ++k) {
        SymInt qk;
        try {
            qk = SymInt::q_over(theta, k);
        } catch (const Error &) {
            break;
        }
        if (!certainly_less(qps.back(), qk) || !certainly_ge_twice(qk, L.N))
            continue;
        any_iii = true;
        Real iv = convergent_tail_log10(*theta, k, p);
        if (iv <= target) {
            L.qprime = qk;
            L.qprime_index = k;
            L.cond_iv_log10 = Real::rounded(iv, MPFR_RNDU, 64);
            found = true;
        }
    }
    if (!found) {
        s.failure = where + (any_iii ? "condition (iv)" : "condition (iii)") + " not met by q_k for k <= " +
                    std::to_string(qidx.back() + span);
        return s;
    }
    Real tail = exp10_upper(add_up(add_up(log10_up(two_pi_up()), L.N.log10().hi), L.cond_iv_log10));
    L.certificate = Real::rounded(add_up(exp10_upper(L.cond_ii_log10), tail), MPFR_RNDU, 64);
    if (!le_rat(L.certificate, eps))
        s.failure = where + "certificate exceeds eps";
    return s;
}

} // namespace

std::vector<long> RecurrenceSchedule::qprime_indices() const
{
    std::vector<long> v{0};
    for (const auto &L : levels)
        v.push_back(L.qprime_index);
    return v;
}

ExponentSubseq RecurrenceSchedule::qprime() const { return ExponentSubseq::from_parent(theta, qprime_indices()); }

std::vector<SymInt> RecurrenceSchedule::Ns() const
{
    std::vector<SymInt> v{SymInt(1)};
    for (const auto &L : levels)
        v.push_back(L.N);
    return v;
}

const RecurrenceLevel &RecurrenceSchedule::level(long p) const
{
    if (p < 1 || p > p_max())
        throw Error(ErrorKind::config, "schedule has no level p=" + std::to_string(p));
    return levels[static_cast<std::size_t>(p - 1)];
}

std::vector<BigRat> default_eps(long p_max)
{
    std::vector<BigRat> v;
    for (long p = 1; p <= p_max; ++p)
        v.emplace_back(BigRat(1, BigInt(1) << p));
    return v;
}

Real convergent_tail_log10(const ThetaSpec &theta, long k, long p)
{
    long prec = bprec();
    Real lnp = log(RealInterval::from_si(p)).hi;
    Real margin = add_up(lnp, Real::from_si(1, 64));
    Real total = Real::neg_inf();
    try {
        if (!theta.has_growth()) {
            if (p != 1)
                return Real::pos_inf();
            // q_{j+2} >= 2 q_j: two geometric chains of ratio 1/2.
            Real a = div(Real::from_si(2, 64), theta.q_real(k + 1).lo, MPFR_RNDU, prec);
            Real b = div(Real::from_si(2, 64), theta.q_real(k + 2).lo, MPFR_RNDU, prec);
            return log10_up(add_up(a, b));
        }
        for (long j = k; j < k + 64; ++j) {
            RealInterval qj = theta.q_real(j);
            bool rule = j >= theta.rule_start() && j >= 1;
            Real g = rule ? Real::from_q(theta.rule().at(j), MPFR_RNDD, prec) : Real::neg_inf();
            if (rule && g >= margin) {
                // p^{q_j}/q_{j+1} <= e^{-q_j} from here on and q_j increases by
                // at least 1 per step, so the rest sums to < 2 e^{-q_J}.
                Real t = nan_to_inf(sub(log(RealInterval::from_si(2)).hi, qj.lo, MPFR_RNDU, prec));
                return logsum_up(total, ln_to_log10_up(t));
            }
            Real t1 = nan_to_inf(sub(mul_up(qj.hi, lnp), theta.ln_q(j + 1).lo, MPFR_RNDU, prec));
            Real t = t1;
            if (rule) {
                Real c = nan_to_inf(sub(lnp, g, MPFR_RNDU, prec));
                t = min(t, mul_up(c.sign() <= 0 ? qj.lo : qj.hi, c));
            }
            total = logsum_up(total, ln_to_log10_up(t));
            if (!total.is_finite())
                return Real::pos_inf();
        }
    } catch (const Error &) {
        return Real::pos_inf();
    }
    return Real::pos_inf();
}

RecurrenceSchedule build_recurrence_prefix(const ThetaRef &theta, const std::vector<BigRat> &eps, long p_max,
                                           std::string *failure, long span)
{
    if (!theta)
        throw Error(ErrorKind::config, "build_recurrence needs a theta");
    if (p_max < 0 || static_cast<long>(eps.size()) < p_max)
        throw Error(ErrorKind::config, "need eps_p for p = 1.." + std::to_string(p_max));
    for (std::size_t i = 0; i < static_cast<std::size_t>(p_max); ++i) {
        if (eps[i] <= 0)
            throw Error(ErrorKind::config, "eps_p must be positive");
        if (i > 0 && eps[i] > eps[i - 1])
            throw Error(ErrorKind::config, "eps_p must be nonincreasing");
    }
    RecurrenceSchedule sched;
    sched.theta = theta;
    std::vector<SymInt> qps{SymInt::q_over(theta, 0)};
    std::vector<long> qidx{0};
    SymInt N(1);
    long N_index = 0;
    if (failure)
        failure->clear();
    for (long p = 1; p <= p_max; ++p) {
        Search s = build_level(theta, p, eps[static_cast<std::size_t>(p - 1)], N, N_index, qps, qidx, span);
        if (!s.failure.empty()) {
            if (failure)
                *failure = s.failure;
            break;
        }
        N = s.level.N;
        N_index = s.level.N_index;
        qps.push_back(s.level.qprime);
        qidx.push_back(s.level.qprime_index);
        sched.levels.push_back(std::move(s.level));
    }
    return sched;
}

RecurrenceSchedule build_recurrence(const ThetaRef &theta, const std::vector<BigRat> &eps, long p_max, long span)
{
    std::string failure;
    RecurrenceSchedule s = build_recurrence_prefix(theta, eps, p_max, &failure, span);
    if (!failure.empty())
        throw Error(ErrorKind::search_exhausted, failure + "; grow theta further or relax eps");
    return s;
}

RecurrenceCheck verify_recurrence(const RecurrenceSchedule &sched, long p, long M)
{
    const RecurrenceLevel &L = sched.level(p);
    const ThetaSpec &theta = *sched.theta;
    AngleSource angle = AngleSource::of(sched.theta);
    ExponentSubseq qp = sched.qprime();
    std::vector<long> idx = sched.qprime_indices();
    RecurrenceCheck c;
    c.p = p;
    c.M = M;
    c.eps = L.eps;
    Real lp = log10(RealInterval::from_si(p)).hi;

    // |1 - e(K theta)| from the rational enclosure when K is exact.
    auto exact_log10 = [&](long k, const BigInt &N) -> std::optional<Real> {
        try {
            RatInterval d = dist_to_Z(frac_qNtheta(theta, k, N));
            return log10_up(one_minus_unit_exp_bound(d).hi);
        } catch (const Error &) {
            return std::nullopt;
        }
    };

    Real nt = L.N.is_exact() ? exact_log10(0, L.N.value()).value_or(Real::pos_inf()) : Real::pos_inf();
    nt = min(nt, phase_hint_log10(angle, SymInt(1), L.N));
    c.head_log10.push_back(nt);
    long last = std::min<long>(M, static_cast<long>(idx.size()) - 1);
    for (long n = 0; n <= last; ++n) {
        long k = idx[static_cast<std::size_t>(n)];
        SymInt q = SymInt::q_over(sched.theta, k);
        Real t = Real::pos_inf();
        if (q.is_exact() && L.N.is_exact()) {
            if (auto e = exact_log10(k, L.N.value()))
                t = add_up(*e, mul_up(Real::from_z(q.value(), MPFR_RNDU, bprec()), lp));
        }
        t = min(t, pair_term_log10(angle, q, k, L.N, p));
        c.head_log10.push_back(t);
    }
    c.head = Real::from_si(0, bprec());
    for (const auto &t : c.head_log10)
        c.head = add_up(c.head, exp10_upper(t));
    try {
        c.tail = tail_bound(angle, qp, M, L.N, Real::from_si(p, 64), Real::from_si(1, 64), master_shape());
    } catch (const Error &e) {
        if (e.kind() != ErrorKind::tail_not_certifiable)
            throw;
        c.tail = Real::pos_inf();
    }
    // Convergent route: |1 - e(q_j N theta)| <= 2 pi N / q_{j+1} over all later q_j.
    long after = idx[static_cast<std::size_t>(last)] + 1;
    Real est = convergent_tail_log10(theta, after, p);
    if (est.is_finite())
        c.tail = min(c.tail, exp10_upper(add_up(add_up(log10_up(two_pi_up()), L.N.log10().hi), est)));
    c.bound = add_up(c.head, c.tail);
    c.pass = le_rat(c.bound, c.eps);
    return c;
}

} // namespace shear
