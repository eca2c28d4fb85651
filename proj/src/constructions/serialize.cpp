#include "shear/constructions/serialize.hpp"

#include <nlohmann/json.hpp>

namespace shear {

using nlohmann::json;

namespace {

json parse_json(const std::string &text, const char *what)
{
    try {
        return json::parse(text);
    } catch (const json::exception &e) {
        throw Error(ErrorKind::config, std::string(what) + " JSON: " + e.what());
    }
}

json ints(const std::vector<BigInt> &v)
{
    json a = json::array();
    for (const auto &x : v)
        a.push_back(to_decimal(x));
    return a;
}

std::vector<BigInt> ints_from(const json &a)
{
    std::vector<BigInt> v;
    for (const auto &x : a)
        v.push_back(parse_bigint(x.get<std::string>()));
    return v;
}

json rat_pair(const RatInterval &r) { return json::array({to_string(r.lo), to_string(r.hi)}); }

RatInterval rat_pair_from(const json &a)
{
    if (!a.is_array() || a.size() != 2)
        throw Error(ErrorKind::config, "interval must be a [lo, hi] pair");
    return {parse_rational(a[0].get<std::string>()), parse_rational(a[1].get<std::string>())};
}

// Stored values are 64-bit and already rounded up; print enough digits to
// read back the same value.
std::string real_up(const Real &v) { return Real::rounded(v, MPFR_RNDU, 64).to_string(0, MPFR_RNDN); }

Real real_from(const std::string &s)
{
    Real r(64);
    if (mpfr_set_str(r.get(), s.c_str(), 10, MPFR_RNDN) != 0)
        throw Error(ErrorKind::config, "bad real '" + s + "'");
    return r;
}

json theta_json(const ThetaSpec &t)
{
    json j;
    switch (t.continuation()) {
    case Continuation::none: j["kind"] = "finite"; break;
    case Continuation::periodic: j["kind"] = "periodic"; break;
    case Continuation::growth: j["kind"] = "growth"; break;
    }
    j["prefix"] = ints(t.prefix());
    if (t.continuation() == Continuation::periodic)
        j["block"] = ints(t.block());
    if (t.has_growth()) {
        json table = json::array();
        for (const auto &g : t.rule().table)
            table.push_back(to_string(g));
        j["rule"] = {{"table", table}, {"slope", to_string(t.rule().slope)}, {"intercept", to_string(t.rule().intercept)}};
        j["digit_cap"] = t.digit_cap();
    }
    return j;
}

ThetaRef theta_from(const json &j)
{
    try {
        std::string kind = j.at("kind").get<std::string>();
        std::vector<BigInt> prefix = ints_from(j.at("prefix"));
        if (kind == "finite")
            return ThetaSpec::finite(prefix);
        if (kind == "periodic")
            return ThetaSpec::periodic(prefix, ints_from(j.at("block")));
        if (kind == "growth") {
            GrowthRule rule;
            for (const auto &g : j.at("rule").at("table"))
                rule.table.push_back(parse_rational(g.get<std::string>()));
            rule.slope = parse_rational(j.at("rule").at("slope").get<std::string>());
            rule.intercept = parse_rational(j.at("rule").at("intercept").get<std::string>());
            return ThetaSpec::growth(prefix, rule, j.value("digit_cap", ThetaSpec::kDefaultDigitCap));
        }
        throw Error(ErrorKind::config, "unknown theta kind '" + kind + "'");
    } catch (const json::exception &e) {
        throw Error(ErrorKind::config, std::string("theta JSON: ") + e.what());
    }
}

} // namespace

std::string theta_to_json(const ThetaSpec &theta) { return theta_json(theta).dump(2); }

ThetaRef theta_from_json(const std::string &text) { return theta_from(parse_json(text, "theta")); }

std::string schedule_to_json(const RecurrenceSchedule &sched)
{
    json j;
    j["theta"] = theta_json(*sched.theta);
    j["seed"] = {{"N0", "1"}, {"qprime0_index", 0}};
    json levels = json::array();
    for (const auto &L : sched.levels) {
        levels.push_back({{"p", L.p},
                          {"eps", to_string(L.eps)},
                          {"N", L.N.to_string()},
                          {"N_index", L.N_index},
                          {"qprime", L.qprime.to_string()},
                          {"qprime_index", L.qprime_index},
                          {"cond_ii_log10", real_up(L.cond_ii_log10)},
                          {"cond_iv_log10", real_up(L.cond_iv_log10)},
                          {"certificate", real_up(L.certificate)}});
    }
    j["levels"] = levels;
    return j.dump(2);
}

RecurrenceSchedule schedule_from_json(const std::string &text)
{
    json j = parse_json(text, "schedule");
    RecurrenceSchedule s;
    try {
        s.theta = theta_from(j.at("theta"));
        for (const auto &l : j.at("levels")) {
            RecurrenceLevel L;
            L.p = l.at("p").get<long>();
            L.eps = parse_rational(l.at("eps").get<std::string>());
            L.N_index = l.at("N_index").get<long>();
            L.N = SymInt::q_over(s.theta, L.N_index);
            L.qprime_index = l.at("qprime_index").get<long>();
            L.qprime = SymInt::q_over(s.theta, L.qprime_index);
            if (L.N.to_string() != l.at("N").get<std::string>() || L.qprime.to_string() != l.at("qprime").get<std::string>())
                throw Error(ErrorKind::config, "schedule level p=" + std::to_string(L.p) + " does not match its theta");
            L.cond_ii_log10 = real_from(l.at("cond_ii_log10").get<std::string>());
            L.cond_iv_log10 = real_from(l.at("cond_iv_log10").get<std::string>());
            L.certificate = real_from(l.at("certificate").get<std::string>());
            if (L.p != s.p_max() + 1)
                throw Error(ErrorKind::config, "schedule levels must be p = 1, 2, ... in order");
            s.levels.push_back(std::move(L));
        }
    } catch (const json::exception &e) {
        throw Error(ErrorKind::config, std::string("schedule JSON: ") + e.what());
    }
    return s;
}

std::string mu_to_json(const MuCertificate &cert)
{
    json j;
    j["qpp"] = ints(cert.qpp);
    json iv = json::array();
    for (const auto &I : cert.intervals)
        iv.push_back(rat_pair(I));
    j["intervals"] = iv;
    j["mu"] = rat_pair(cert.mu());
    return j.dump(2);
}

MuCertificate mu_from_json(const std::string &text)
{
    json j = parse_json(text, "mu certificate");
    MuCertificate c;
    try {
        c.qpp = ints_from(j.at("qpp"));
        for (const auto &I : j.at("intervals"))
            c.intervals.push_back(rat_pair_from(I));
    } catch (const json::exception &e) {
        throw Error(ErrorKind::config, std::string("mu certificate JSON: ") + e.what());
    }
    if (c.intervals.size() != c.qpp.size() || c.qpp.empty())
        throw Error(ErrorKind::config, "mu certificate needs one interval per q''");
    return c;
}

} // namespace shear
