#include "shear/automorphism/shear_auto.hpp"

namespace shear {

Point2 Point2::from_rat(const BigRat &w_re, const BigRat &w_im, const BigRat &z_re, const BigRat &z_im)
{
    return {CertifiedComplex::from_rat(w_re, w_im), CertifiedComplex::from_rat(z_re, z_im)};
}

RealInterval Point2::norm() const { return max(w.abs(), z.abs()); }

bool Point2::contains(const Point2 &inner) const { return w.contains(inner.w) && z.contains(inner.z); }

std::string Point2::to_string(int digits) const
{
    return "(" + w.to_string(digits) + ", " + z.to_string(digits) + ")";
}

bool intersects(const Point2 &a, const Point2 &b) { return intersects(a.w, b.w) && intersects(a.z, b.z); }

Real radius(const Point2 &p) { return max(p.w.err, p.z.err); }

ShearAuto::ShearAuto(AngleSource angle, ExponentSubseq qp, CoefficientSeq u, long M)
    : angle_(std::move(angle)), qp_(std::move(qp)), u_(std::move(u)), M_(M)
{
    if (M_ < 0)
        throw Error(ErrorKind::config, "truncation M must be >= 0");
}

bool ShearAuto::entire() const
{
    return angle_.is_theta() && angle_.theta->has_growth();
}

void ShearAuto::check_domain(const CertifiedComplex &z) const
{
    if (entire())
        return;
    Real x = abs_upper(z);
    if (x >= Real::from_si(1, 64))
        throw Error(ErrorKind::outside_domain,
                    "rotation number without growth certificate: need |z| < 1, got |z| <= " + x.to_string(6));
}

Iterate ShearAuto::iterate_with(const AngleSource &angle, const Point2 &p, const SymInt &N) const
{
    check_domain(p.z);
    Iterate out;
    out.w_abs = p.w.abs();
    out.z_abs = p.z.abs();
    out.tail_bound = Real::from_si(0, 64);
    if (N.is_zero()) {
        out.p = p;
        return out;
    }
    SeriesValue sv = eval_phi(angle, qp_, u_, p.z, M_, N);
    // w_N = e (w + S), z_N = e z with S the inner sum.
    CertifiedComplex ws = p.w + sv.inner;
    out.p.w = sv.rotation * ws;
    out.p.z = sv.rotation * p.z;
    out.w_abs = ws.abs();
    out.phase_known = angle.phase(SymInt(1), N).known;
    out.tail_bound = sv.tail_bound;
    return out;
}

Iterate ShearAuto::iterate_closed(const Point2 &p, const SymInt &N) const { return iterate_with(angle_, p, N); }

Point2 ShearAuto::apply(const Point2 &p) const { return iterate_with(angle_, p, SymInt(1)).p; }

Point2 ShearAuto::iterate_steps(const Point2 &p, long N) const
{
    Point2 cur = p;
    for (long i = 0; i < N; ++i)
        cur = apply(cur);
    return cur;
}

Point2 ShearAuto::inverse_apply(const Point2 &p) const { return iterate_with(angle_.negative(), p, SymInt(1)).p; }

Point2 ShearAuto::apply_conjugate(const Point2 &p) const
{
    // S_{-h} R S_h with S_h(w, z) = (w + h(z), z).
    CertifiedComplex e = angle_.phase(SymInt(1), SymInt(1)).rotation();
    CertifiedComplex hz = eval_h(qp_, u_, p.z, M_).value;
    CertifiedComplex ez = e * p.z;
    CertifiedComplex hez = eval_h(qp_, u_, ez, M_).value;
    return {e * (p.w + hz) - hez, ez};
}

DerivativeReport ShearAuto::derivative(const Point2 &p, const SymInt &N) const
{
    check_domain(p.z);
    DerivativeReport r;
    r.phi_prime = eval_phi_prime(angle_, qp_, u_, p.z, M_, N);
    CertifiedComplex e = angle_.phase(SymInt(1), N).rotation();
    r.m = {e, r.phi_prime.value, CertifiedComplex::exact_zero(), e};
    r.det_abs = (e * e).abs();
    // |phi'| = |inner| since |e| = 1, even when e itself is only known as a disk.
    Real lo = r.phi_prime.inner.abs().lo;
    r.norm_lower = lo.sign() > 0 ? Real::rounded(lo, MPFR_RNDD, 64) : Real::from_si(0, 64);
    return r;
}

Real ShearAuto::displacement_upper(const Point2 &p, const SymInt &N) const
{
    check_domain(p.z);
    if (N.is_zero())
        return Real::from_si(0, 64);
    // w_N - w = (e - 1) w + e S, z_N - z = (e - 1) z.
    Real oma = Real::rounded(angle_.phase(SymInt(1), N).one_minus_abs().hi, MPFR_RNDU, 64);
    SeriesValue sv = eval_phi(angle_, qp_, u_, p.z, M_, N);
    Real dw = add(mul(oma, abs_upper(p.w), MPFR_RNDU, 64), abs_upper(sv.inner), MPFR_RNDU, 64);
    Real dz = mul(oma, abs_upper(p.z), MPFR_RNDU, 64);
    return max(dw, dz);
}

} // namespace shear
