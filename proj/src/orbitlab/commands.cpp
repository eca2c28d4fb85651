#include "shear/orbitlab/commands.hpp"
#include "shear/orbitlab/format.hpp"
#include "shear/orbitlab/manifest.hpp"
#include "shear/orbitlab/svg.hpp"

#include <nlohmann/json.hpp>

#include <cmath>
#include <filesystem>
#include <map>
#include <optional>

namespace shear {

namespace fs = std::filesystem;
using ojson = nlohmann::ordered_json;

namespace {

std::string out_dir(const RunConfig &cfg)
{
    std::string dir = cfg.get("output");
    fs::create_directories(dir);
    return dir;
}

std::string path_in(const RunConfig &cfg, const std::string &name) { return out_dir(cfg) + "/" + name; }

int digits_of(const RunConfig &cfg) { return static_cast<int>(cfg.get_long("digits")); }

void write_summary(const RunConfig &cfg, const std::string &name, ojson j)
{
    write_text(path_in(cfg, name + "_summary.json"), j.dump(2) + "\n");
}

const char *check_word(bool applies, bool pass) { return !applies ? "n/a" : pass ? "pass" : "fail"; }

Real log10_point(const Real &v)
{
    if (v.sign() <= 0)
        return Real::neg_inf();
    return log10(RealInterval(v, v)).mid();
}

// Largest certified lower bound on some |u_n|, for the right-hand side of the
// recurrence inequality.
Real coeff_sup_lower(const CoefficientSeq &u)
{
    Real best = Real::from_si(0, 64);
    for (std::size_t n = 0; n <= u.listed_size(); ++n) {
        Real lo = u.at(n).abs().lo;
        if (lo > best)
            best = lo;
    }
    return best;
}

RecurrenceSchedule schedule_for(const RunConfig &cfg, const ThetaRef &theta, std::string *failure)
{
    return build_recurrence_prefix(theta, make_eps(cfg), cfg.get_long("eps.p_max"), failure,
                                   cfg.get_long("search.span"));
}

CertifiedComplex real_point(const BigRat &x) { return CertifiedComplex::from_rat(x); }

} // namespace

int exit_code_for(ErrorKind kind)
{
    switch (kind) {
    case ErrorKind::config:
    case ErrorKind::missing_input:
    case ErrorKind::gap_violation:
    case ErrorKind::outside_domain: return exit_config;
    default: return exit_exhausted;
    }
}

double log10_of_decimal(const std::string &s)
{
    if (s.empty() || s == "nan")
        return std::nan("");
    if (s == "inf" || s == "-inf")
        return std::numeric_limits<double>::infinity();
    auto e = s.find_first_of("eE");
    double mant = std::fabs(std::stod(s.substr(0, e)));
    if (mant == 0)
        return -std::numeric_limits<double>::infinity();
    double ex = e == std::string::npos ? 0.0 : std::stod(s.substr(e + 1));
    return std::log10(mant) + ex;
}

namespace {

// signed_log10 for decimals far outside the double range.
double signed_log10_decimal(const std::string &s)
{
    double l = log10_of_decimal(s);
    if (std::isnan(l) || l < -300)
        return 0.0;
    if (l < 15)
        return signed_log10(std::stod(s));
    return s[0] == '-' ? -l : l;
}

// Rational enclosure of dist(q_k N theta, Z) when q_{k+1} and N are exact.
std::optional<RatInterval> exact_dist(const ThetaSpec &theta, long k, const SymInt &N)
{
    if (!theta.is_exact(k + 1) || !N.is_exact())
        return std::nullopt;
    try {
        return dist_to_Z(frac_qNtheta(theta, k, N.value()));
    } catch (const Error &) {
    }
    if (N.value() != 1 || k < 1)
        return std::nullopt;
    // dist(q_k theta, Z) lies in [1/(q_{k+1} + q_k), 1/q_{k+1}].
    BigRat lo(BigInt(1), theta.q(k + 1) + theta.q(k)), hi(BigInt(1), theta.q(k + 1));
    lo.canonicalize();
    hi.canonicalize();
    return RatInterval{lo, hi};
}

} // namespace

CoeffCheck coefficient_check(const ThetaRef &theta, const ExponentSubseq &qp, const CoefficientSeq &u, std::size_t n,
                             const SymInt &N)
{
    CoeffCheck c;
    c.n = static_cast<long>(n);
    c.bound_log10 = Real::pos_inf();
    c.target_log10 = Real::neg_inf();
    if (!qp.has_parent() || !theta) {
        c.mode = "n/a";
        return c;
    }
    long k = qp.parent_index(n);
    Real uhi = u.at(n).abs().hi;
    if (std::optional<RatInterval> d = exact_dist(*theta, k, N)) {
        c.mode = "exact";
        Real one_minus = Real::from_q(one_minus_unit_exp_bound(*d).hi, MPFR_RNDU);
        Real bound = mul(one_minus, uhi, MPFR_RNDU);
        BigRat tgt = BigRat(2 * pi_lower_rat() * N.value()) / BigRat(theta->q(k + 1));
        tgt.canonicalize();
        Real target = Real::from_q(tgt, MPFR_RNDD);
        c.pass = bound <= target;
        c.bound_log10 = log10_point(bound);
        c.target_log10 = log10_point(target);
        return c;
    }
    c.mode = "enclosure";
    AngleSource angle = AngleSource::of(theta);
    c.bound_log10 = coeff_bound_log10(angle, qp, n, N, uhi, phi_shape());
    RealInterval two_pi = RealInterval::from_si(2) * pi_interval();
    c.target_log10 = sub(add(log10(two_pi).hi, N.log10().hi, MPFR_RNDU), theta->log10_q(k + 1).lo, MPFR_RNDU);
    c.pass = c.bound_log10 <= c.target_log10;
    return c;
}

int cmd_theta(const RunConfig &cfg, std::ostream &log)
{
    ThetaRef theta = make_theta(cfg);
    int D = digits_of(cfg);
    long depth = cfg.get_long("theta.depth");
    CsvTable t({"n", "a_n", "p_n", "q_n", "log10_q_lo", "log10_q_hi", "determinant", "approximation", "q_lower",
                "brjuno_term_lo", "brjuno_term_hi", "brjuno_partial_lo", "brjuno_partial_hi", "growth"},
               D);

    long last = depth;
    if (theta->continuation() == Continuation::none)
        last = std::min<long>(last, static_cast<long>(theta->prefix().size()) - 1);

    BrjunoResult br;
    bool have_brjuno = true;
    try {
        br = brjuno_sum(*theta, std::max<long>(last - 1, 0));
    } catch (const Error &) {
        have_brjuno = false;
    }
    std::map<long, GrowthLevel> growth;
    if (theta->has_growth())
        for (auto &g : growth_check(*theta, last))
            growth[g.n] = g;

    bool all_det = true, all_approx = true, all_lower = true, all_growth = true;
    long det_checked = 0, approx_checked = 0;
    Real log10_2 = log10(RealInterval::from_si(2)).hi;
    for (long n = 0; n <= last; ++n) {
        bool exact = theta->is_exact(n);
        RealInterval lq = theta->log10_q(n);
        std::string a = "symbolic", p = "symbolic", q = "symbolic";
        if (exact) {
            a = to_decimal(theta->quotient(n));
            p = to_decimal(theta->p(n));
            q = to_decimal(theta->q(n));
        }

        bool det_applies = exact && n >= 1, det_ok = false;
        if (det_applies) {
            BigInt lhs = theta->q(n) * theta->p(n - 1) - theta->p(n) * theta->q(n - 1);
            det_ok = lhs == (n % 2 == 0 ? 1 : -1);
            all_det = all_det && det_ok;
            ++det_checked;
        }

        // |theta - p_n/q_n| <= 1/(q_n q_{n+1}) against the enclosure at depth n+1.
        bool approx_applies = theta->is_exact(n + 2) && (theta->continuation() != Continuation::none || n + 2 <= last);
        bool approx_ok = false;
        if (approx_applies) {
            BigRat c(theta->p(n), theta->q(n));
            c.canonicalize();
            BigRat r(BigInt(1), theta->q(n) * theta->q(n + 1));
            r.canonicalize();
            RatInterval enc = theta_enclosure(*theta, n + 1);
            approx_ok = c - r <= enc.lo && enc.hi <= c + r;
            all_approx = all_approx && approx_ok;
            ++approx_checked;
        }

        // q_n >= 2^{(n-1)/2}
        bool lower_ok;
        if (exact) {
            BigInt q2 = theta->q(n) * theta->q(n);
            lower_ok = n == 0 || q2 * 2 >= (BigInt(1) << static_cast<mp_bitcnt_t>(n));
        } else {
            Real need = mul(Real::from_si(n - 1), log10_2, MPFR_RNDU);
            need = div(need, Real::from_si(2), MPFR_RNDU);
            lower_ok = lq.lo >= need;
        }
        all_lower = all_lower && lower_ok;

        std::string bt_lo, bt_hi, bp_lo, bp_hi;
        if (have_brjuno && n < static_cast<long>(br.terms.size())) {
            bt_lo = fmt_down(br.terms[n].lo, D);
            bt_hi = fmt_up(br.terms[n].hi, D);
            bp_lo = fmt_down(br.partial_sums[n].lo, D);
            bp_hi = fmt_up(br.partial_sums[n].hi, D);
        }
        std::string g = "n/a";
        if (auto it = growth.find(n); it != growth.end() && it->second.applies) {
            g = it->second.pass ? "pass" : "fail";
            all_growth = all_growth && it->second.pass;
        }
        t.add_row({std::to_string(n), a, p, q, fmt_down(lq.lo, D), fmt_up(lq.hi, D), check_word(det_applies, det_ok),
                   check_word(approx_applies, approx_ok), lower_ok ? "pass" : "fail", bt_lo, bt_hi, bp_lo, bp_hi, g});
    }
    t.write(path_in(cfg, "convergents.csv"));
    write_text(path_in(cfg, "theta.json"), theta_to_json(*theta) + "\n");

    bool pass = all_det && all_approx && all_lower;
    ojson s;
    s["experiment"] = "theta";
    s["pass"] = pass;
    s["theta"] = theta->describe();
    s["levels"] = last + 1;
    s["determinant_checked"] = det_checked;
    s["determinant_pass"] = all_det;
    s["approximation_checked"] = approx_checked;
    s["approximation_pass"] = all_approx;
    s["q_lower_pass"] = all_lower;
    s["growth_pass"] = theta->has_growth() ? ojson(all_growth) : ojson("n/a");
    if (have_brjuno)
        s["brjuno_verdict"] = br.verdict;
    write_summary(cfg, "theta", s);
    log << "theta: " << theta->describe() << ", " << last + 1 << " levels, determinant " << (all_det ? "pass" : "FAIL")
        << ", approximation " << (all_approx ? "pass" : "FAIL") << ", growth "
        << (theta->has_growth() ? (all_growth ? "pass" : "fail") : "n/a") << "\n";
    return pass ? exit_pass : exit_check_failed;
}

int cmd_orbit(const RunConfig &cfg, std::ostream &log)
{
    ThetaRef theta = make_theta(cfg);
    int D = digits_of(cfg);
    std::string failure;
    RecurrenceSchedule sched = schedule_for(cfg, theta, &failure);
    ExponentSubseq qp = make_exponents(cfg.get("qprime"), theta, &sched);
    CoefficientSeq u = make_coefficients(cfg);
    ShearAuto A(AngleSource::of(theta), qp, u, cfg.get_long("M"));
    std::vector<Point2> points = parse_points(cfg.get("points"));
    std::vector<SymInt> Ns = parse_N_list(cfg.get_list("orbit.N"), theta, &sched);
    Real ulo = coeff_sup_lower(u);

    // Schedule level of each N, 0 when N is not some N_p.
    std::vector<long> level_of(Ns.size(), 0);
    for (std::size_t i = 0; i < Ns.size(); ++i)
        for (const auto &L : sched.levels)
            if (certainly_equal(Ns[i], L.N))
                level_of[i] = L.p;

    CsvTable t({"point", "step", "N", "re_w", "im_w", "re_z", "im_z", "err", "dist_to_start", "sup_so_far", "p",
                "recurrence_bound", "status"},
               D);
    long checks = 0, check_fail = 0, uncertified = 0;
    ojson pts = ojson::array();
    for (std::size_t i = 0; i < points.size(); ++i) {
        const Point2 &start = points[i];
        RealInterval zabs = start.z.abs();
        RealInterval norm0 = start.norm();
        Real sup = Real::from_si(0, 64);
        Real sup_small_hi = Real::from_si(0, 64);  // sup of the upper norms over N <= 10
        bool witness = false;
        std::string witness_N;
        long point_checks = 0, point_fail = 0;
        for (std::size_t s = 0; s < Ns.size(); ++s) {
            const SymInt &N = Ns[s];
            std::string p_cell, bound_cell, status;
            std::vector<std::string> row = {std::to_string(i), std::to_string(s), N.to_string()};
            try {
                Iterate it = A.iterate_closed(start, N);
                Real dist = min(A.displacement_upper(start, N),
                                max(distance_upper(it.p.w, start.w), distance_upper(it.p.z, start.z)));
                RealInterval nrm = it.norm();
                if (nrm.lo > sup)
                    sup = nrm.lo;
                bool small = N.is_exact() && N.value() <= 10;
                if (small && nrm.hi > sup_small_hi)
                    sup_small_hi = nrm.hi;
                if (!small && !witness && sup_small_hi.sign() > 0 &&
                    nrm.lo > mul(sup_small_hi, Real::from_si(10), MPFR_RNDU)) {
                    witness = true;
                    witness_N = N.to_string();
                }
                status = it.phase_known ? "ok" : "phase-unknown";
                long p = level_of[s];
                if (p > 0 && Real::from_si(p) >= zabs.hi) {
                    const RecurrenceLevel &L = sched.level(p);
                    Real rhs = add(norm0.lo, mul(zabs.lo, ulo, MPFR_RNDD), MPFR_RNDD);
                    rhs = mul(rhs, Real::from_q(L.eps, MPFR_RNDD), MPFR_RNDD);
                    bool ok = dist <= rhs;
                    p_cell = std::to_string(p);
                    bound_cell = fmt_down(rhs, D);
                    status = ok ? "recurrence-pass" : "recurrence-fail";
                    ++checks;
                    ++point_checks;
                    if (!ok) {
                        ++check_fail;
                        ++point_fail;
                    }
                } else if (p > 0) {
                    p_cell = std::to_string(p);
                }
                Real err = max(it.p.w.err, it.p.z.err);
                row.insert(row.end(), {fmt_near(it.p.w.re, D), fmt_near(it.p.w.im, D), fmt_near(it.p.z.re, D),
                                       fmt_near(it.p.z.im, D), fmt_up(err, D), fmt_up(dist, D), fmt_down(sup, D),
                                       p_cell, bound_cell, status});
            } catch (const Error &e) {
                if (e.kind() != ErrorKind::tail_not_certifiable && e.kind() != ErrorKind::outside_domain)
                    throw;
                ++uncertified;
                row.insert(row.end(), {"", "", "", "", "", "", fmt_down(sup, D), "", "", error_kind_name(e.kind())});
            }
            t.add_row(row);
        }
        ojson pj;
        pj["point"] = start.to_string(D);
        pj["abs_z_hi"] = fmt_up(zabs.hi, D);
        pj["recurrence_checks"] = point_checks;
        pj["recurrence_failures"] = point_fail;
        pj["sup_lower"] = fmt_down(sup, D);
        pj["sup_upper_N_le_10"] = fmt_up(sup_small_hi, D);
        pj["unbounded_witness"] = witness;
        if (witness)
            pj["witness_N"] = witness_N;
        pts.push_back(pj);
    }
    t.write(path_in(cfg, "orbit.csv"));

    ojson s;
    s["experiment"] = "orbit";
    s["pass"] = check_fail == 0;
    s["schedule_levels"] = sched.p_max();
    if (!failure.empty())
        s["schedule_failure"] = failure;
    s["recurrence_checks"] = checks;
    s["recurrence_failures"] = check_fail;
    s["uncertified_rows"] = uncertified;
    s["points"] = pts;
    write_summary(cfg, "orbit", s);
    log << "orbit: " << points.size() << " points x " << Ns.size() << " N, recurrence checks " << checks - check_fail
        << "/" << checks << " pass, " << uncertified << " uncertified rows\n";
    return check_fail == 0 ? exit_pass : exit_check_failed;
}

int cmd_recurrence(const RunConfig &cfg, std::ostream &log)
{
    ThetaRef theta = make_theta(cfg);
    int D = digits_of(cfg);
    std::string failure;
    RecurrenceSchedule sched = schedule_for(cfg, theta, &failure);
    write_text(path_in(cfg, "schedule.json"), schedule_to_json(sched) + "\n");

    long M = cfg.get_long("M");
    CsvTable t({"p", "eps", "N", "N_index", "qprime", "qprime_index", "M", "builder_certificate", "head", "tail",
                "bound", "pass"},
               D);
    bool all = true;
    for (const auto &L : sched.levels) {
        RecurrenceCheck c = verify_recurrence(sched, L.p, M);
        all = all && c.pass;
        t.add_row({std::to_string(L.p), fmt_rat(L.eps), L.N.to_string(), std::to_string(L.N_index),
                   L.qprime.to_string(), std::to_string(L.qprime_index), std::to_string(M), fmt_up(L.certificate, D),
                   fmt_up(c.head, D), fmt_up(c.tail, D), fmt_up(c.bound, D), c.pass ? "pass" : "fail"});
    }
    t.write(path_in(cfg, "verification.csv"));

    ojson s;
    s["experiment"] = "recurrence";
    s["pass"] = all && failure.empty();
    s["levels"] = sched.p_max();
    s["requested_levels"] = cfg.get_long("eps.p_max");
    s["verified"] = all;
    if (!failure.empty())
        s["failure"] = failure;
    write_summary(cfg, "recurrence", s);
    log << "recurrence: " << sched.p_max() << " level(s) built, verification " << (all ? "pass" : "FAIL") << "\n";
    if (!failure.empty()) {
        log << "recurrence: search exhausted: " << failure << "\n";
        return exit_exhausted;
    }
    return all ? exit_pass : exit_check_failed;
}

int cmd_mu(const RunConfig &cfg, std::ostream &log)
{
    std::vector<BigInt> qpp;
    for (const auto &x : cfg.get_list("mu.qpp"))
        qpp.push_back(parse_bigint(x));
    MuCertificate cert = build_mu(qpp);
    write_text(path_in(cfg, "mu.json"), mu_to_json(cert) + "\n");

    CsvTable t({"n", "qpp", "I_lo", "I_hi", "dist_lo", "dist_hi", "abs_sq_lo", "abs_sq_hi", "abs_lo", "abs_hi",
                "certified", "boundary"},
               digits_of(cfg));
    bool all = true;
    for (long n = 0; n < static_cast<long>(cert.intervals.size()); ++n) {
        const RatInterval &I = cert.intervals[n];
        std::vector<std::string> row = {std::to_string(n), to_decimal(cert.qpp[n]), fmt_rat(I.lo), fmt_rat(I.hi)};
        if (n < cert.certified_levels()) {
            MuLevelCheck c = verify_mu(cert, n);
            all = all && c.certified;
            row.insert(row.end(), {fmt_rat(c.dist.lo), fmt_rat(c.dist.hi), fmt_rat(c.abs_sq.lo), fmt_rat(c.abs_sq.hi),
                                   fmt_rat(c.abs.lo), fmt_rat(c.abs.hi), c.certified ? "pass" : "fail",
                                   c.boundary ? "yes" : "no"});
        } else {
            row.insert(row.end(), {"", "", "", "", "", "", "n/a", ""});
        }
        t.add_row(row);
    }
    t.write(path_in(cfg, "mu_levels.csv"));

    E1Witness e1 = e1_witness(ExponentSubseq::from_values(qpp));
    ojson probes = ojson::array();
    for (std::size_t k = 0; k < e1.probes.size(); ++k)
        probes.push_back({{"K", k + 1}, {"found", e1.probes[k].found}, {"index", e1.probes[k].index}});

    ojson s;
    s["experiment"] = "mu";
    s["pass"] = all;
    s["levels"] = cert.certified_levels();
    s["mu_lo"] = fmt_rat(cert.mu().lo);
    s["mu_hi"] = fmt_rat(cert.mu().hi);
    s["e1_divergence_probes"] = probes;
    write_summary(cfg, "mu", s);
    log << "mu: " << cert.certified_levels() << " level(s), sqrt 2 bound " << (all ? "pass" : "FAIL") << ", mu in ["
        << fmt_rat(cert.mu().lo) << ", " << fmt_rat(cert.mu().hi) << "]\n";
    return all ? exit_pass : exit_check_failed;
}

int cmd_derivative_probe(const RunConfig &cfg, std::ostream &log)
{
    ThetaRef theta = make_theta(cfg);
    int D = digits_of(cfg);
    ExponentSubseq qp = make_exponents(cfg.get("probe.qprime"), theta, nullptr);
    CoefficientSeq u = make_coefficients(cfg);
    ShearAuto A(AngleSource::of(theta), qp, u, cfg.get_long("M"));
    std::vector<SymInt> Ns = parse_N_list(cfg.get_list("probe.N"), theta, nullptr);

    CsvTable t({"z", "N", "log10_N", "phi_prime_lower", "log10_phi_prime_lower", "record", "status"}, D);
    ojson zs = ojson::array();
    for (const auto &zt : cfg.get_list("probe.z")) {
        BigRat zr = parse_rational(zt);
        Point2 pt{CertifiedComplex::exact_zero(), real_point(zr)};
        ojson zj;
        zj["z"] = zt;
        Real baseline_hi = Real::pos_inf();
        try {
            baseline_hi = A.derivative(pt, SymInt(1)).phi_prime.inner.abs().hi;
        } catch (const Error &e) {
            if (e.kind() != ErrorKind::outside_domain && e.kind() != ErrorKind::tail_not_certifiable)
                throw;
        }
        Real record = Real::from_si(0, 64);
        std::string record_N;
        long records = 0;
        for (const auto &N : Ns) {
            std::string status = "ok", lower_cell, log_cell, rec = "no";
            try {
                Real lo = A.derivative(pt, N).norm_lower;
                lower_cell = fmt_down(lo, D);
                log_cell = lo.sign() > 0 ? fmt_down(log10(RealInterval(lo, lo)).lo, D) : "-inf";
                if (lo > record) {
                    record = lo;
                    record_N = N.to_string();
                    ++records;
                    rec = "yes";
                }
            } catch (const Error &e) {
                if (e.kind() != ErrorKind::outside_domain && e.kind() != ErrorKind::tail_not_certifiable)
                    throw;
                status = error_kind_name(e.kind());
            }
            t.add_row({zt, N.to_string(), fmt_near(N.log10().mid(), D), lower_cell, log_cell, rec, status});
        }
        zj["baseline_upper"] = fmt_up(baseline_hi, D);
        zj["best_lower"] = fmt_down(record, D);
        zj["best_N"] = record_N;
        zj["records"] = records;
        bool factor = baseline_hi.is_finite() && baseline_hi.sign() > 0 &&
                      record >= mul(baseline_hi, Real::from_si(1000), MPFR_RNDU);
        zj["factor_1e3"] = factor;
        if (baseline_hi.sign() > 0 && baseline_hi.is_finite() && record.sign() > 0)
            zj["log10_ratio_lower"] = fmt_down(sub(log10(RealInterval(record, record)).lo,
                                                   log10(RealInterval(baseline_hi, baseline_hi)).hi, MPFR_RNDD),
                                               D);
        zs.push_back(zj);
        log << "derivative-probe: z=" << zt << " records " << records << ", best " << fmt_down(record, 6) << " at N="
            << (record_N.empty() ? "-" : record_N) << (factor ? ", >= 1e3 x baseline" : "") << "\n";
    }
    t.write(path_in(cfg, "derivative.csv"));

    // Not finding growth is an outcome, not a failed check.
    ojson s;
    s["experiment"] = "derivative-probe";
    s["pass"] = true;
    s["samples"] = zs;
    write_summary(cfg, "derivative", s);
    return exit_pass;
}

int cmd_series(const RunConfig &cfg, std::ostream &log)
{
    ThetaRef theta = make_theta(cfg);
    int D = digits_of(cfg);
    std::string failure;
    RecurrenceSchedule sched;
    if (cfg.get("qprime") == "schedule")
        sched = schedule_for(cfg, theta, &failure);
    ExponentSubseq qp = make_exponents(cfg.get("qprime"), theta, &sched);
    CoefficientSeq u = make_coefficients(cfg);
    long M = cfg.get_long("M");
    SymInt N = SymInt::parse(cfg.get("series.N"), theta);
    AngleSource angle = AngleSource::of(theta);

    CsvTable terms({"z", "n", "exponent", "coeff_abs_log10", "term_abs_log10", "upper_log10"}, D);
    CsvTable values({"z", "re", "im", "err", "tail_bound", "relative_tail_upper", "status"}, D);
    ojson zs = ojson::array();
    Real worst_rel = Real::from_si(0, 64);
    bool all_cert = true;
    for (const auto &zt : cfg.get_list("series.z")) {
        BigRat zr = parse_rational(zt);
        Real zhi = Real::from_q(zr, MPFR_RNDU);
        ojson zj;
        zj["z"] = zt;
        try {
            SeriesValue sv = eval_phi(angle, qp, u, real_point(zr), M, N);
            Real vlo = sv.value.abs().lo;
            Real rel = vlo.sign() > 0 ? div(sv.tail_bound, vlo, MPFR_RNDU) : Real::pos_inf();
            if (sv.tail_bound.sign() == 0)
                rel = Real::from_si(0, 64);
            worst_rel = max(worst_rel, rel);
            values.add_row({zt, fmt_near(sv.value.re, D), fmt_near(sv.value.im, D), fmt_up(sv.value.err, D),
                            fmt_up(sv.tail_bound, D), fmt_up(rel, D), "ok"});
            zj["tail_bound"] = fmt_up(sv.tail_bound, D);
            zj["relative_tail_upper"] = fmt_up(rel, D);
            for (const auto &r : term_table(angle, qp, u, zhi, N, M, phi_shape()))
                terms.add_row({zt, std::to_string(r.n), r.exponent, fmt_near(r.coeff_abs_log10, D),
                               fmt_near(r.term_abs_log10, D), fmt_up(r.upper_log10, D)});
        } catch (const Error &e) {
            if (e.kind() != ErrorKind::tail_not_certifiable && e.kind() != ErrorKind::outside_domain)
                throw;
            all_cert = false;
            values.add_row({zt, "", "", "", "", "", error_kind_name(e.kind())});
            zj["status"] = error_kind_name(e.kind());
        }
        zs.push_back(zj);
    }
    terms.write(path_in(cfg, "series_terms.csv"));
    values.write(path_in(cfg, "series_values.csv"));

    CsvTable coeffs({"n", "exponent", "mode", "bound_log10", "target_log10", "pass"}, D);
    bool coeff_ok = true;
    for (std::size_t n = 0; n < qp.size(); ++n) {
        CoeffCheck c = coefficient_check(theta, qp, u, n, N);
        if (c.mode != "n/a")
            coeff_ok = coeff_ok && c.pass;
        coeffs.add_row({std::to_string(n), qp.at(n).to_string(), c.mode, fmt_up(c.bound_log10, D),
                        c.mode == "exact" ? fmt_down(c.target_log10, D) : fmt_up(c.target_log10, D),
                        check_word(c.mode != "n/a", c.pass)});
    }
    coeffs.write(path_in(cfg, "series_coefficients.csv"));

    ojson s;
    s["experiment"] = "series";
    s["pass"] = coeff_ok && all_cert;
    s["exponents"] = qp.describe();
    s["M"] = M;
    s["samples"] = zs;
    s["worst_relative_tail_upper"] = fmt_up(worst_rel, D);
    s["coefficient_bounds_pass"] = coeff_ok;
    write_summary(cfg, "series", s);
    log << "series: " << zs.size() << " |z| sample(s), worst relative tail " << fmt_up(worst_rel, 4)
        << ", coefficient bounds " << (coeff_ok ? "pass" : "FAIL") << "\n";
    return s["pass"].get<bool>() ? exit_pass : exit_check_failed;
}

int cmd_report(const RunConfig &cfg, std::ostream &log)
{
    std::string dir = cfg.get("output");
    for (const char *need : {"orbit.csv", "derivative.csv", "verification.csv"})
        if (!fs::exists(dir + "/" + need))
            throw Error(ErrorKind::missing_input, std::string(need) + " not found in " + dir +
                                                      "; run orbit, derivative-probe and recurrence first");
    static const char *palette[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b", "#e377c2",
                                    "#17becf", "#7f7f7f", "#bcbd22"};
    auto color = [&](std::size_t i) { return std::string(palette[i % 10]); };

    CsvData orbit = read_csv(dir + "/orbit.csv");
    long c_pt = orbit.column("point"), c_rw = orbit.column("re_w"), c_iw = orbit.column("im_w"),
         c_st = orbit.column("status"), c_p = orbit.column("p"), c_d = orbit.column("dist_to_start"),
         c_b = orbit.column("recurrence_bound");
    std::map<std::string, SvgSeries> scatter, dist, bound;
    for (const auto &r : orbit.rows) {
        const std::string &pt = r[c_pt];
        const std::string &st = r[c_st];
        if (st == "ok" || st.rfind("recurrence", 0) == 0)
            scatter[pt].points.emplace_back(signed_log10_decimal(r[c_rw]), signed_log10_decimal(r[c_iw]));
        if (st.rfind("recurrence", 0) == 0) {
            double p = std::stod(r[c_p]);
            dist[pt].points.emplace_back(p, log10_of_decimal(r[c_d]));
            bound[pt].points.emplace_back(p, log10_of_decimal(r[c_b]));
        }
    }
    SvgPlot p1{"Orbit sample in the w-plane", "sign(Re w) log10(1+|Re w|)", "sign(Im w) log10(1+|Im w|)", {}};
    SvgPlot p2{"Distance to start at N_p", "p", "log10 distance (upper) / bound (lower)", {}};
    for (auto &[pt, s] : scatter) {
        s.label = "point " + pt;
        s.color = color(std::stoul(pt));
        p1.series.push_back(s);
    }
    for (auto &[pt, s] : dist) {
        s.label = "dist, point " + pt;
        s.color = color(std::stoul(pt));
        s.line = true;
        p2.series.push_back(s);
        SvgSeries b = bound[pt];
        b.label = "bound, point " + pt;
        b.color = color(std::stoul(pt));
        b.markers = false;
        b.line = true;
        p2.series.push_back(b);
    }
    write_text(dir + "/orbit_w.svg", p1.render());
    write_text(dir + "/recurrence_distance.svg", p2.render());

    CsvData der = read_csv(dir + "/derivative.csv");
    long c_z = der.column("z"), c_ln = der.column("log10_N"), c_lv = der.column("log10_phi_prime_lower"),
         c_rec = der.column("record");
    std::map<std::string, SvgSeries> recs;
    std::vector<std::string> order;
    for (const auto &r : der.rows) {
        if (r[c_rec] != "yes")
            continue;
        if (!recs.count(r[c_z]))
            order.push_back(r[c_z]);
        recs[r[c_z]].points.emplace_back(std::stod(r[c_ln]), std::stod(r[c_lv]));
    }
    SvgPlot p3{"Derivative records", "log10 N", "log10 |phi'_{N theta}(z)| (lower bound)", {}};
    for (std::size_t k = 0; k < order.size(); ++k) {
        SvgSeries s = recs[order[k]];
        s.label = "|z| = " + order[k];
        s.color = color(k);
        s.line = true;
        p3.series.push_back(s);
    }
    write_text(dir + "/derivative_records.svg", p3.render());

    RunManifest m;
    for (const auto &k : config_schema())
        if (k.key != "output")
            m.config[k.key] = cfg.get(k.key);
    for (const auto &name : run_files(dir)) {
        if (name.size() > 13 && name.substr(name.size() - 13) == "_summary.json") {
            auto j = nlohmann::json::parse(read_text(dir + "/" + name));
            m.experiments[j.at("experiment").get<std::string>()] = j.at("pass").get<bool>();
        }
        m.files[name] = sha256_file(dir + "/" + name);
    }
    write_text(dir + "/manifest.json", m.to_json());
    log << "report: 3 SVGs, manifest with " << m.files.size() << " file digests\n";
    for (const auto &[name, ok] : m.experiments)
        log << "  " << name << ": " << (ok ? "pass" : "FAIL") << "\n";
    return m.all_pass() ? exit_pass : exit_check_failed;
}

int cmd_verify_manifest(const RunConfig &cfg, std::ostream &log)
{
    std::string dir = cfg.get("output");
    RunManifest m = RunManifest::from_json(read_text(dir + "/manifest.json"));
    std::vector<std::string> bad = verify_manifest(dir, m);
    for (const auto &b : bad)
        log << "digest mismatch: " << b << "\n";
    log << "manifest: " << m.files.size() - bad.size() << "/" << m.files.size() << " digests match\n";
    return bad.empty() ? exit_pass : exit_check_failed;
}

int run_command(const std::string &name, const RunConfig &cfg, std::ostream &log, std::ostream &err)
{
    static const std::map<std::string, int (*)(const RunConfig &, std::ostream &)> table = {
        {"theta", cmd_theta},           {"orbit", cmd_orbit},
        {"recurrence", cmd_recurrence}, {"mu", cmd_mu},
        {"derivative-probe", cmd_derivative_probe}, {"series", cmd_series},
        {"report", cmd_report},         {"verify-manifest", cmd_verify_manifest},
    };
    auto it = table.find(name);
    if (it == table.end()) {
        err << "unknown command '" << name << "'\n";
        return exit_config;
    }
    try {
        cfg.validate();
        PrecisionScope prec(cfg.get_long("precision"));
        return it->second(cfg, log);
    } catch (const Error &e) {
        err << name << ": " << e.what() << "\n";
        return exit_code_for(e.kind());
    } catch (const fs::filesystem_error &e) {
        err << name << ": " << e.what() << "\n";
        return exit_config;
    }
}

} // namespace shear
