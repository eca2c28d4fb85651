#include "shear/lacunary/probes.hpp"

#include <algorithm>

namespace shear {

namespace {

Real log10_up(const Real &v)
{
    if (v.sign() <= 0)
        return Real::neg_inf();
    return log10(RealInterval(v, v)).hi;
}

Real neg10(const Real &v)
{
    Real r(64);
    mpfr_neg(r.get(), v.get(), MPFR_RNDN);
    mpfr_exp10(r.get(), r.get(), MPFR_RNDN);
    return r;
}

} // namespace

RadiusEstimate radius_estimate(const std::vector<std::pair<SymInt, LogMag>> &coeffs)
{
    if (coeffs.size() < 2)
        throw std::invalid_argument("radius_estimate needs at least two coefficients");
    std::vector<Real> v;
    for (const auto &[k, c] : coeffs) {
        // Exponents past the MPFR range carry no usable ratio.
        if (!k.real().is_finite())
            continue;
        if (c.is_zero()) {
            v.push_back(Real::neg_inf());
            continue;
        }
        RealInterval r = c.log10 / k.real();
        v.push_back(r.lo.is_finite() ? r.mid() : r.hi);
    }
    std::size_t n = v.size();
    if (n < 2)
        throw std::invalid_argument("radius_estimate needs at least two representable exponents");
    std::size_t start = n / 2;
    // Tail maxima s_j = max_{i >= j} v_i over the last half.
    std::vector<Real> s(n);
    s[n - 1] = v[n - 1];
    for (std::size_t j = n - 1; j-- > start;)
        s[j] = max(v[j], s[j + 1]);
    RadiusEstimate out;
    out.window = static_cast<long>(n - start);
    out.lo = neg10(s[start]);
    out.hi = neg10(s[n - 1]);
    return out;
}

DivergenceWitness divergence_probe(const CoefficientSeq &u, const ExponentSubseq &qp, const BigRat &K, long cap)
{
    if (!qp.has_parent())
        cap = std::min<long>(cap, static_cast<long>(qp.size()));
    DivergenceWitness out;
    Real k = Real::from_q(K, MPFR_RNDU);
    for (long n = 0; n < cap; ++n) {
        out.partial_sum = out.partial_sum + u.at(static_cast<std::size_t>(n));
        const Real &lower = out.partial_sum.abs().lo;
        if (lower > k) {
            out.found = true;
            out.index = n;
            return out;
        }
    }
    return out;
}

std::vector<TermRow> term_table(const AngleSource &angle, const ExponentSubseq &qp, const CoefficientSeq &u,
                                const Real &zabs, const SymInt &N, long M, const TermShape &shape)
{
    std::vector<TermRow> rows;
    long count = std::min<long>(M, static_cast<long>(qp.size()) - 1) + 1;
    RealInterval lz = log10(RealInterval(zabs, zabs));
    for (long n = 0; n < count; ++n) {
        std::size_t i = static_cast<std::size_t>(n);
        SymInt q = qp.at(i);
        TermRow row;
        row.n = n;
        row.exponent = q.to_string();
        Real uabs = abs_upper(u.at(i));
        RealInterval coef = RealInterval(uabs, uabs);
        Real hint = Real::pos_inf();
        bool known = true;
        if (shape.small_divisor) {
            Phase ph = angle.phase(q, N);
            known = ph.known;
            RealInterval oma = ph.one_minus_abs();
            hint = log10_up(oma.hi);
            coef = coef * oma;
        }
        if (known && coef.mid().sign() > 0) {
            row.coeff_abs_log10 = log10_up(coef.mid());
            RealInterval e = RealInterval::from_si(shape.z_offset);
            RealInterval t = (q.real() + e) * lz;
            if (shape.degree == 1)
                t = t + log10(q.real() + RealInterval::from_si(1));
            row.term_abs_log10 = add(row.coeff_abs_log10, t.mid(), MPFR_RNDN);
        } else {
            Real nan(64);
            mpfr_set_nan(nan.get());
            row.coeff_abs_log10 = known ? Real::neg_inf() : nan;
            row.term_abs_log10 = row.coeff_abs_log10;
        }
        long k = angle.is_theta() && qp.has_parent() && qp.parent() == angle.theta ? qp.parent_index(i) : -1;
        row.upper_log10 = term_bound_log10(angle, q, k, N, zabs, uabs, shape, hint);
        // Midpoints of saturated enclosures can overshoot; the certified
        // bounds cap the estimates.
        if (!row.coeff_abs_log10.is_nan()) {
            row.coeff_abs_log10 = min(row.coeff_abs_log10, coeff_bound_log10(angle, qp, i, N, uabs, shape));
            row.term_abs_log10 = min(row.term_abs_log10, row.upper_log10);
        }
        rows.push_back(std::move(row));
    }
    return rows;
}

void write_term_csv(std::ostream &os, const std::vector<TermRow> &rows, int digits)
{
    os << "# precision_digits=" << digits << "\n";
    os << "n,q_prime,coeff_abs_log10,term_abs_log10,certified_upper_bound_log10\n";
    for (const auto &r : rows)
        os << r.n << "," << r.exponent << "," << r.coeff_abs_log10.to_string(digits) << ","
           << r.term_abs_log10.to_string(digits) << "," << r.upper_log10.to_string(digits, MPFR_RNDU) << "\n";
}

} // namespace shear
