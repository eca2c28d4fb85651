#include "shear/lacunary/series.hpp"

namespace shear {

namespace {

long head_count(const ExponentSubseq &qp, long M)
{
    return std::min<long>(M, static_cast<long>(qp.size()) - 1) + 1;
}

long parent_of(const AngleSource &angle, const ExponentSubseq &qp, std::size_t n)
{
    return angle.is_theta() && qp.has_parent() && qp.parent() == angle.theta ? qp.parent_index(n) : -1;
}

Real log10_up(const Real &v)
{
    if (v.sign() <= 0)
        return Real::neg_inf();
    return log10(RealInterval(v, v)).hi;
}

// Replace a ball by the disk of radius `bound` when that is smaller.
CertifiedComplex clamp(const CertifiedComplex &c, const Real &bound)
{
    if (abs_upper(c) > bound)
        return CertifiedComplex::disk(bound);
    return c;
}

SeriesValue eval_small_divisor_series(const AngleSource &angle, const ExponentSubseq &qp, const CoefficientSeq &u,
                                      const CertifiedComplex &z, long M, const SymInt &N, const TermShape &shape)
{
    SeriesValue out;
    out.M = M;
    out.tail_bound = Real::from_si(0, 64);
    if (N.is_zero() || u.is_zero()) {
        out.rotation = angle.phase(SymInt(1), N).rotation();
        return out;
    }
    Real x = abs_upper(z);
    if (!angle.is_theta() && x >= Real::from_si(1, 64))
        throw Error(ErrorKind::outside_domain, "generic rotation number: series needs |z| < 1, got |z| <= " + x.to_string(6));
    CertifiedComplex S;
    Real extra = Real::from_si(0, 64);
    for (long n = 0; n < head_count(qp, M); ++n) {
        std::size_t i = static_cast<std::size_t>(n);
        SymInt q = qp.at(i);
        Real un = abs_upper(u.at(i));
        long k = parent_of(angle, qp, i);
        Real hint = log10_up(angle.phase(q, N).one_minus_abs().hi);
        Real tb = exp10_upper(term_bound_log10(angle, q, k, N, x, un, shape, hint));
        if (q.is_exact()) {
            PhiCoeff pc = phi_coeff(angle, qp, u, i, N);
            CertifiedComplex term = pc.value * pow(z, q.value() + shape.z_offset);
            if (shape.degree == 1)
                term = RealInterval::from_int(q.value() + 1) * term;
            S = S + clamp(term, tb);
        } else {
            extra = add(extra, tb, MPFR_RNDU, 64);
        }
    }
    Real tail = tail_bound(angle, qp, M, N, x, u.sup_after(static_cast<std::size_t>(M)), shape);
    extra = add(extra, tail, MPFR_RNDU, 64);
    if (!extra.is_finite())
        throw Error(ErrorKind::tail_not_certifiable, "head term magnitudes exceed the representable range");
    out.inner = S.inflated(extra);
    out.tail_bound = extra;
    out.rotation = angle.phase(SymInt(1), N).rotation();
    out.value = out.rotation * out.inner;
    return out;
}

} // namespace

Real abs_upper(const CertifiedComplex &z) { return Real::rounded(z.abs().hi, MPFR_RNDU, 64); }

SeriesValue eval_h(const ExponentSubseq &qp, const CoefficientSeq &u, const CertifiedComplex &z, long M)
{
    Real x = abs_upper(z);
    if (x >= Real::from_si(1, 64))
        throw Error(ErrorKind::outside_domain, "h is defined on |z| < 1, got |z| <= " + x.to_string(6));
    SeriesValue out;
    out.M = M;
    CertifiedComplex S;
    Real extra = Real::from_si(0, 64);
    AngleSource none;
    for (long n = 0; n < head_count(qp, M); ++n) {
        std::size_t i = static_cast<std::size_t>(n);
        SymInt q = qp.at(i);
        if (q.is_exact())
            S = S + u.at(i) * pow(z, q.value() + 1);
        else
            extra = add(extra, exp10_upper(term_bound_log10(none, q, -1, SymInt(1), x, abs_upper(u.at(i)), h_shape())),
                        MPFR_RNDU, 64);
    }
    extra = add(extra, tail_bound(none, qp, M, SymInt(1), x, u.sup_after(static_cast<std::size_t>(M)), h_shape()), MPFR_RNDU, 64);
    out.tail_bound = extra;
    out.value = S.inflated(extra);
    out.inner = out.value;
    return out;
}

PhiCoeff phi_coeff(const AngleSource &angle, const ExponentSubseq &qp, const CoefficientSeq &u, std::size_t n,
                   const SymInt &N)
{
    if (N.is_zero())
        return {CertifiedComplex::exact_zero(), Real::from_si(0, 64)};
    CertifiedComplex un = u.at(n);
    Phase ph = angle.phase(qp.at(n), N);
    CertifiedComplex c = un * ph.one_minus();
    Real bound = exp10_upper(coeff_bound_log10(angle, qp, n, N, abs_upper(un), phi_shape()));
    return {clamp(c, bound), bound};
}

SeriesValue eval_phi(const AngleSource &angle, const ExponentSubseq &qp, const CoefficientSeq &u,
                     const CertifiedComplex &z, long M, const SymInt &N)
{
    return eval_small_divisor_series(angle, qp, u, z, M, N, phi_shape());
}

SeriesValue eval_phi_prime(const AngleSource &angle, const ExponentSubseq &qp, const CoefficientSeq &u,
                           const CertifiedComplex &z, long M, const SymInt &N)
{
    return eval_small_divisor_series(angle, qp, u, z, M, N, phi_prime_shape());
}

RealInterval operator_norm(const AngleSource &angle, const ExponentSubseq &qp, const RealInterval &zabs,
                           const SymInt &N, long M)
{
    long prec = working_precision() + 64;
    Real zero = Real::from_si(0, prec);
    if (N.is_zero() || zabs.hi.is_zero())
        return {zero, zero};
    Real x = zabs.hi;
    if (!angle.is_theta() && x >= Real::from_si(1, 64))
        throw Error(ErrorKind::outside_domain, "generic rotation number: norm needs |z| < 1");
    Real one = Real::from_si(1, 64);
    Real lo = zero, hi = zero;
    RealInterval lz = log(zabs);
    for (long n = 0; n < head_count(qp, M); ++n) {
        std::size_t i = static_cast<std::size_t>(n);
        SymInt q = qp.at(i);
        long k = parent_of(angle, qp, i);
        RealInterval oma = angle.phase(q, N).one_minus_abs();
        Real tb = exp10_upper(term_bound_log10(angle, q, k, N, x, one, phi_prime_shape(), log10_up(oma.hi)));
        if (q.is_exact()) {
            RealInterval qI = RealInterval::from_int(q.value(), prec);
            RealInterval t = (qI + RealInterval::from_si(1)) * oma * exp(qI * lz);
            lo = add(lo, t.lo, MPFR_RNDD, prec);
            hi = add(hi, min(t.hi, tb), MPFR_RNDU, prec);
        } else {
            hi = add(hi, tb, MPFR_RNDU, prec);
        }
    }
    hi = add(hi, tail_bound(angle, qp, M, N, x, one, phi_prime_shape()), MPFR_RNDU, prec);
    if (!hi.is_finite())
        throw Error(ErrorKind::tail_not_certifiable, "operator norm terms exceed the representable range");
    return {lo, hi};
}

} // namespace shear
