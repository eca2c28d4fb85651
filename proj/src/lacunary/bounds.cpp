#include "shear/lacunary/bounds.hpp"

namespace shear {

namespace {

long bound_prec() { return working_precision() + 64; }

Real log10_up(const Real &v)
{
    if (v.sign() <= 0)
        return Real::neg_inf();
    return log10(RealInterval(v, v)).hi;
}

Real log10_of(long v)
{
    return log10(RealInterval::from_si(v)).hi;
}

Real nan_to_inf(const Real &v) { return v.is_nan() ? Real::pos_inf() : v; }

Real add_up(const Real &a, const Real &b) { return nan_to_inf(add(a, b, MPFR_RNDU, bound_prec())); }

Real mul_up(const Real &a, const Real &b) { return nan_to_inf(mul(a, b, MPFR_RNDU, bound_prec())); }

bool same_theta(const AngleSource &angle, const ExponentSubseq &qp)
{
    return angle.is_theta() && qp.has_parent() && qp.parent() == angle.theta;
}

// log10(2 pi N / q_{m+1}), upper bound. When N = q_j with j > m the
// other factor gives the sharper 2 pi q_m / q_{j+1}.
Real small_divisor_log10(const ThetaSpec &theta, long m, const SymInt &N)
{
    Real two_pi = mul(pi_bound(MPFR_RNDU, 64), Real::from_si(2, 64), MPFR_RNDU, 64);
    Real l = add_up(log10_up(two_pi), N.log10().hi);
    Real best = nan_to_inf(sub(l, theta.log10_q(m + 1).lo, MPFR_RNDU, bound_prec()));
    long j = N.convergent_index(theta);
    if (j > m) {
        Real o = add_up(log10_up(two_pi), theta.log10_q(m).hi);
        best = min(best, nan_to_inf(sub(o, theta.log10_q(j + 1).lo, MPFR_RNDU, bound_prec())));
    }
    return best;
}

// q * c with q in qI, rounded up.
Real scaled_up(const RealInterval &qI, const Real &c)
{
    return mul_up(c.sign() <= 0 ? qI.lo : qI.hi, c);
}

// ln q_{m+1} >= g(m) q_m and ln(1+q) <= q give
// sup 2 pi N x^e exp(q (ln x + d - g(m))); +inf when not applicable.
Real growth_form_log10(const AngleSource &angle, const SymInt &q, long m, const SymInt &N, const Real &x,
                       const Real &sup, const TermShape &shape)
{
    long prec = bound_prec();
    if (!(shape.small_divisor && angle.is_theta() && angle.theta->has_growth() && m >= angle.theta->rule_start()))
        return Real::pos_inf();
    Real ls = log10_up(sup);
    Real lx = log10_up(x);
    RealInterval qI = q.real();
    Real e = Real::from_si(shape.z_offset, 64);
    RealInterval ln10 = ln10_interval(prec);
    Real g = Real::from_q(angle.theta->rule().at(m), MPFR_RNDD, prec);
    Real c = add_up(lx, div(Real::from_si(shape.degree, 64), ln10.lo, MPFR_RNDU, prec));
    c = nan_to_inf(sub(c, div(g, ln10.hi, MPFR_RNDD, prec), MPFR_RNDU, prec));
    Real two_pi = mul(pi_bound(MPFR_RNDU, 64), Real::from_si(2, 64), MPFR_RNDU, 64);
    Real head = add_up(add_up(ls, log10_up(two_pi)), add_up(N.log10().hi, mul_up(e, lx)));
    return add_up(head, scaled_up(qI, c));
}

} // namespace

AngleSource AngleSource::of(ThetaRef t)
{
    AngleSource a;
    a.theta = std::move(t);
    return a;
}

AngleSource AngleSource::of(const RatInterval &m)
{
    AngleSource a;
    a.mu = m;
    return a;
}

AngleSource AngleSource::negative() const
{
    AngleSource a = *this;
    a.negated = !negated;
    return a;
}

Phase AngleSource::phase(const SymInt &a, const SymInt &N) const
{
    Phase ph;
    if (theta)
        ph = phase_of(theta, a, N);
    else if (mu)
        ph = phase_of(*mu, a, N);
    else
        throw Error(ErrorKind::config, "angle source is empty");
    if (negated && ph.known)
        ph.x = -ph.x;
    return ph;
}

std::string AngleSource::describe() const
{
    std::string sign = negated ? "-" : "";
    if (theta)
        return sign + "theta=" + theta->describe();
    if (mu)
        return sign + "mu=" + mu->to_string();
    return "none";
}

Real exp10_upper(const Real &v)
{
    if (v.is_inf() && v.sign() < 0)
        return Real::from_si(0, 64);
    Real r(64);
    mpfr_exp10(r.get(), v.get(), MPFR_RNDU);
    return r;
}

Real coeff_bound_log10(const AngleSource &angle, const ExponentSubseq &qp, std::size_t n, const SymInt &N,
                       const Real &sup, const TermShape &shape)
{
    Real ls = log10_up(sup);
    if (!shape.small_divisor)
        return ls;
    if (N.is_zero())
        return Real::neg_inf();
    Real c = log10_of(2);
    Phase ph = angle.phase(qp.at(n), N);
    if (ph.known)
        c = min(c, log10_up(ph.one_minus_abs().hi));
    if (same_theta(angle, qp))
        c = min(c, small_divisor_log10(*angle.theta, qp.parent_index(n), N));
    return add_up(ls, c);
}

Real term_bound_log10(const AngleSource &angle, const SymInt &q, long m, const SymInt &N, const Real &x,
                      const Real &sup, const TermShape &shape, const Real &coeff_log10_hint)
{
    long prec = bound_prec();
    if (sup.is_zero() || (shape.small_divisor && N.is_zero()) || x.is_zero())
        return Real::neg_inf();
    Real ls = log10_up(sup);
    Real lx = log10_up(x);
    RealInterval qI = q.real();
    RealInterval lq = q.log10();
    Real e = Real::from_si(shape.z_offset, 64);

    // Direct form.
    Real coef = Real::from_si(0, 64);
    if (shape.small_divisor) {
        coef = min(log10_of(2), coeff_log10_hint);
        if (angle.is_theta() && m >= 0)
            coef = min(coef, small_divisor_log10(*angle.theta, m, N));
    }
    Real powpart = mul_up(add(lx.sign() >= 0 ? qI.hi : qI.lo, e, lx.sign() >= 0 ? MPFR_RNDU : MPFR_RNDD, prec), lx);
    Real poly = shape.degree == 0 ? Real::from_si(0, 64)
                                  : mul_up(Real::from_si(shape.degree, 64), add_up(lq.hi, log10_of(2)));
    Real A = add_up(add_up(ls, coef), add_up(powpart, poly));

    return min(A, growth_form_log10(angle, q, m, N, x, sup, shape));
}

Real tail_bound(const AngleSource &angle, const ExponentSubseq &qp, long M, const SymInt &N, const Real &x,
                const Real &sup, const TermShape &shape)
{
    long prec = bound_prec();
    if (sup.is_zero() || (shape.small_divisor && N.is_zero()) || x.is_zero())
        return Real::from_si(0, 64);
    if (qp.size() == 0)
        throw Error(ErrorKind::config, "empty exponent subsequence");
    long last = std::min<long>(M, static_cast<long>(qp.size()) - 1);
    Real best = Real::pos_inf();

    // Growth theta: explicit terms until the ratio margin holds, then 2 V.
    if (shape.small_divisor && same_theta(angle, qp) && angle.theta->has_growth()) {
        const ThetaSpec &th = *angle.theta;
        long m = last >= 0 ? qp.parent_index(static_cast<std::size_t>(last)) + 1 : 0;
        Real margin = add_up(log(RealInterval(x, x)).hi, add_up(Real::from_si(shape.degree, 64), log(RealInterval::from_si(2)).hi));
        Real total = Real::from_si(0, prec);
        for (int count = 0; count < 64 && total.is_finite(); ++count, ++m) {
            SymInt qm = SymInt::q_over(angle.theta, m);
            if (m >= th.rule_start() && Real::from_q(th.rule().at(m), MPFR_RNDD, prec) >= margin) {
                Real V = growth_form_log10(angle, qm, m, N, x, sup, shape);
                total = add_up(total, mul_up(Real::from_si(2, 64), exp10_upper(V)));
                best = min(best, total);
                break;
            }
            total = add_up(total, exp10_upper(term_bound_log10(angle, qm, m, N, x, sup, shape)));
        }
    }

    // |z| < 1: dominate by all integer exponents from the next possible one.
    if (x < Real::from_si(1, 64)) {
        SymInt J = last >= 0 ? qp.next_lower_bound(static_cast<std::size_t>(last)) : SymInt(1);
        RealInterval JI = J.real();
        Real lx = log10_up(x);
        Real one_minus_x = sub(Real::from_si(1, 64), x, MPFR_RNDD, prec);
        Real lc = shape.small_divisor ? log10_of(2) : Real::from_si(0, 64);
        Real powpart = mul_up(add(JI.lo, Real::from_si(shape.z_offset, 64), MPFR_RNDD, prec), lx);
        Real factor;
        Real inv = div(Real::from_si(1, 64), one_minus_x, MPFR_RNDU, prec);
        if (shape.degree == 0) {
            factor = inv;
        } else {
            Real onej = add_up(JI.hi, Real::from_si(1, 64));
            factor = add_up(mul_up(onej, inv), mul_up(inv, inv));
        }
        Real l = add_up(add_up(log10_up(sup), lc), add_up(powpart, log10_up(factor)));
        best = min(best, exp10_upper(l));
    }

    if (!best.is_finite())
        throw Error(ErrorKind::tail_not_certifiable,
                    "no certified tail after entry " + std::to_string(M) + " at |z| <= " + x.to_string(6) +
                        "; increase M or reduce |z|");
    return best;
}

} // namespace shear
