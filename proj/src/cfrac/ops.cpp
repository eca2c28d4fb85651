#include "shear/cfrac/ops.hpp"

#include <nlohmann/json.hpp>

namespace shear {

std::vector<std::pair<BigInt, BigInt>> convergents(const ThetaSpec &theta, long n_max)
{
    if (n_max < 0)
        throw std::invalid_argument("convergents: n_max < 0");
    std::vector<std::pair<BigInt, BigInt>> out;
    out.reserve(static_cast<std::size_t>(n_max) + 1);
    for (long n = 0; n <= n_max; ++n)
        out.emplace_back(theta.p(n), theta.q(n));
    return out;
}

std::vector<BigInt> quotients_from_real(const RatInterval &x, long n_max)
{
    std::vector<BigInt> out;
    RatInterval cur = x;
    for (long k = 0; k <= n_max; ++k) {
        BigInt a = floor_rat(cur.lo);
        // An integer upper end a+1 also reads as [a; 1].
        bool hi_is_next = cur.hi == BigRat(a + 1) && cur.lo != cur.hi;
        if (floor_rat(cur.hi) != a && !hi_is_next)
            throw Error(ErrorKind::ambiguous_quotient,
                        "a_" + std::to_string(k) + " differs across " + cur.to_string() + "; supply a tighter enclosure");
        out.push_back(a);
        if (k == n_max)
            break;
        RatInterval frac(cur.lo - a, hi_is_next ? BigRat(1) : BigRat(cur.hi - a));
        if (frac.lo == 0) {
            if (frac.hi == 0)
                break;  // rational point, expansion ends
            throw Error(ErrorKind::ambiguous_quotient,
                        "a_" + std::to_string(k + 1) + " is unbounded on the enclosure; supply a tighter enclosure");
        }
        cur = RatInterval(1 / frac.hi, 1 / frac.lo);
    }
    return out;
}

RatInterval theta_enclosure(const ThetaSpec &theta, long depth)
{
    if (depth < 1)
        throw std::invalid_argument("theta_enclosure: depth must be >= 1");
    BigRat a(theta.p(depth), theta.q(depth));
    BigRat b(theta.p(depth + 1), theta.q(depth + 1));
    a.canonicalize();
    b.canonicalize();
    return a <= b ? RatInterval(a, b) : RatInterval(b, a);
}

RatInterval frac_qNtheta(const ThetaSpec &theta, long n, const BigInt &N, long depth)
{
    if (N == 0)
        return RatInterval::point(0);
    BigInt Kq = abs(N) * theta.q(n);
    if (depth < 0) {
        const BigRat target = BigRat(1) / BigRat(BigInt(1) << 32);
        long best = -1;
        for (long d = std::max(n + 1, 1L);; ++d) {
            try {
                theta_enclosure(theta, d);
            } catch (const Error &) {
                break;  // deepest available enclosure
            }
            best = d;
            BigRat w(Kq, theta.q(d) * theta.q(d + 1));
            if (w < target)
                break;
        }
        if (best < 0)
            theta_enclosure(theta, std::max(n + 1, 1L));  // rethrows
        depth = best;
    } else if (depth <= n) {
        throw std::invalid_argument("frac_qNtheta: depth must exceed n");
    }
    RatInterval J = BigRat(Kq) * theta_enclosure(theta, depth);
    if (J.width() >= BigRat(1, 2))
        throw Error(ErrorKind::enclosure_too_wide, "q_" + std::to_string(n) + "*N*theta at depth " +
                                                       std::to_string(depth) + " has width " + to_string(J.width()));
    return dist_to_Z(J);
}

std::function<BigRat(long)> default_brjuno_witness()
{
    return [](long n) { return BigRat(n, 2); };
}

BrjunoResult brjuno_sum(const ThetaSpec &theta, long n_max, const std::function<BigRat(long)> &witness)
{
    if (n_max < 1)
        throw std::invalid_argument("brjuno_sum: n_max must be >= 1");
    BrjunoResult out;
    long prec = working_precision() + 64;
    long limit = theta.exact_limit();
    RealInterval sum = RealInterval::from_si(0);
    bool grows = true;
    for (long n = 0; n <= n_max; ++n) {
        RealInterval term;
        if (n <= limit) {
            BigInt qn = theta.q(n);
            term = theta.ln_q(n + 1) / RealInterval::from_int(qn, std::max(prec, bit_length(qn) + 64));
        } else {
            // ln q_{n+1} in [g q_n, g q_n + 2 q_n e^{-g q_n}]
            BigRat g = theta.rule().at(n);
            RealInterval gi = RealInterval::from_rat(g, prec);
            Real e(prec);
            mpfr_mul(e.get(), gi.lo.get(), theta.q_real(n).lo.get(), MPFR_RNDD);
            mpfr_neg(e.get(), e.get(), MPFR_RNDU);
            mpfr_exp(e.get(), e.get(), MPFR_RNDU);
            mpfr_mul_2ui(e.get(), e.get(), 1, MPFR_RNDU);
            term = {gi.lo, add(gi.hi, e, MPFR_RNDU, prec)};
        }
        sum = sum + term;
        if (n >= 1 && !(term.lo > Real::from_q(witness(n), MPFR_RNDU, prec)))
            grows = false;
        out.terms.push_back(term);
        out.partial_sums.push_back(sum);
    }
    out.grows = grows;
    out.verdict = grows ? "grows-unboundedly" : "no-growth-witness";
    return out;
}

std::vector<GrowthLevel> growth_check(const ThetaSpec &theta, long n_max)
{
    std::vector<GrowthLevel> out;
    long prec = working_precision() + 64;
    for (long n = 0; n < n_max; ++n) {
        GrowthLevel lvl;
        lvl.n = n;
        lvl.applies = theta.has_growth() && n >= theta.rule_start();
        BigRat g = theta.has_growth() ? theta.rule().at(n) : BigRat(0);
        lvl.lhs = theta.ln_q(n + 1);
        if (theta.is_exact(n + 1)) {
            BigRat x = g * BigRat(theta.q(n));
            lvl.rhs = RealInterval::from_rat(x, prec);
            // q_{n+1} >= e^{g q_n}, compared on the integer q_{n+1}.
            long bits = static_cast<long>(Real::from_q(x, MPFR_RNDU, 64).to_double(MPFR_RNDU) * 1.45) + 64;
            Real ex(std::max(bits, prec));
            Real xr = Real::from_q(x, MPFR_RNDU, ex.prec());
            mpfr_exp(ex.get(), xr.get(), MPFR_RNDU);
            lvl.pass = theta.has_growth() && mpfr_cmp_z(ex.get(), theta.q(n + 1).get_mpz_t()) <= 0;
        } else {
            // Symbolic levels hold by construction: a_{n+1} q_n >= e^{g q_n}.
            lvl.rhs = RealInterval::from_rat(g, prec) * theta.q_real(n);
            lvl.pass = lvl.applies;
        }
        out.push_back(std::move(lvl));
    }
    return out;
}

ThetaRef build_fast_theta(const GrowthRule &rule, long n_max, std::vector<BigInt> prefix, long digit_cap)
{
    if (n_max < 0)
        throw std::invalid_argument("build_fast_theta: n_max < 0");
    if (static_cast<long>(prefix.size()) > n_max + 1)
        prefix.resize(static_cast<std::size_t>(n_max) + 1);
    ThetaRef t = ThetaSpec::growth(std::move(prefix), rule, digit_cap);
    if (n_max > t->exact_limit())
        throw Error(ErrorKind::overflow_budget, "q_" + std::to_string(n_max) + " would exceed " +
                                                    std::to_string(digit_cap) + " digits (exact up to n=" +
                                                    std::to_string(t->exact_limit()) + ")");
    t->quotient(n_max);
    for (const GrowthLevel &lvl : growth_check(*t, n_max))
        if (lvl.applies && !lvl.pass)
            throw Error(ErrorKind::precision_exhausted, "growth check failed at n=" + std::to_string(lvl.n));
    return t;
}

std::string quotients_to_json(const std::vector<BigInt> &a)
{
    nlohmann::json j = nlohmann::json::array();
    for (const auto &v : a)
        j.push_back(to_decimal(v));
    return j.dump();
}

std::vector<BigInt> quotients_from_json(const std::string &text)
{
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception &e) {
        throw Error(ErrorKind::config, std::string("quotient JSON: ") + e.what());
    }
    if (!j.is_array())
        throw Error(ErrorKind::config, "quotient JSON must be an array");
    std::vector<BigInt> out;
    for (const auto &v : j) {
        if (v.is_string())
            out.push_back(parse_bigint(v.get<std::string>()));
        else if (v.is_number_integer())
            out.emplace_back(v.get<long>());
        else
            throw Error(ErrorKind::config, "quotients must be decimal strings or integers");
    }
    return out;
}

} // namespace shear
