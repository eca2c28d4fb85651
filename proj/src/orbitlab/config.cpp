#include "shear/orbitlab/config.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <regex>
#include <sstream>

namespace shear {

namespace {

std::string trim(const std::string &s)
{
    auto b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos)
        return "";
    auto e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

std::vector<std::string> split(const std::string &s, char sep)
{
    std::vector<std::string> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, sep)) {
        item = trim(item);
        if (!item.empty())
            out.push_back(item);
    }
    return out;
}

const ConfigKey *find_key(const std::string &key)
{
    for (const auto &k : config_schema())
        if (k.key == key)
            return &k;
    return nullptr;
}

std::vector<BigInt> int_list(const std::string &s)
{
    std::vector<BigInt> v;
    for (const auto &x : split(s, ','))
        v.push_back(parse_bigint(x));
    return v;
}

} // namespace

const std::vector<ConfigKey> &config_schema()
{
    static const std::vector<ConfigKey> schema = {
        {"precision", "256", "working precision in bits"},
        {"digits", "17", "significant digits in CSV output"},
        {"seed", "1", "seed for random coefficient sequences"},
        {"output", "out", "output directory"},
        {"theta.kind", "growth", "growth | periodic | finite"},
        {"theta.prefix", "0,1", "leading partial quotients a_0,a_1,..."},
        {"theta.block", "1", "repeating block (periodic theta)"},
        {"theta.rule.table", "", "tabulated g(0),g(1),... before the linear part (growth theta)"},
        {"theta.rule.slope", "1", "g(n) = slope*n + intercept past the table"},
        {"theta.rule.intercept", "1", "see theta.rule.slope"},
        {"theta.digit_cap", "1000000", "largest exact denominator, in decimal digits"},
        {"theta.depth", "6", "levels reported by `theta`"},
        {"qprime", "schedule", "exponents q': schedule | q<m> list | integer list"},
        {"u", "constant:1", "coefficients: constant:<c> | random:<count>:<sup>"},
        {"M", "5", "series truncation index"},
        {"eps.base", "2", "eps_p = base^-p"},
        {"eps.p_max", "3", "levels of the recurrence schedule"},
        {"search.span", "12", "convergent indices searched per schedule level"},
        {"points", "0,0,0,0; 1,0,0.5,0; 1,0,1.5,0; 0.5,0.5,1.2,0.6; -1,0.25,0,1.8; 0,1,-1.1,-0.9; 2,0,1.4,-1.4",
         "orbit start points w_re,w_im,z_re,z_im separated by ';' (finite stand-in for the dense set S)"},
        {"orbit.N", "1..10,schedule,q3/2,q4/2", "iterates: integers, a..b, q<m>, q<m>/<k>, schedule"},
        {"probe.z", "0,0.5,1.5", "|z| samples for derivative-probe (z real, positive)"},
        {"probe.N", "1..10000,q3/2,q4/2", "N sweep for derivative-probe"},
        {"probe.qprime", "q2,q3,q4,q5", "exponents used by derivative-probe"},
        {"series.z", "1.5,3,10", "|z| samples for `series`"},
        {"series.N", "1", "angle multiple for `series`"},
        {"mu.qpp", "2,8,32", "q'' for `mu` (ratio >= 4)"},
    };
    return schema;
}

RunConfig::RunConfig()
{
    for (const auto &k : config_schema())
        values_[k.key] = k.default_value;
}

void RunConfig::set(const std::string &key, const std::string &value)
{
    if (!find_key(key))
        throw Error(ErrorKind::config, "unknown config key '" + key + "'");
    values_[key] = trim(value);
}

void RunConfig::set_assignment(const std::string &assignment)
{
    auto eq = assignment.find('=');
    if (eq == std::string::npos)
        throw Error(ErrorKind::config, "--set expects key=value, got '" + assignment + "'");
    set(trim(assignment.substr(0, eq)), assignment.substr(eq + 1));
}

void RunConfig::load_file(const std::string &path)
{
    std::vector<CLI::ConfigItem> items;
    try {
        items = CLI::ConfigTOML().from_file(path);
    } catch (const CLI::Error &e) {
        throw Error(ErrorKind::config, "cannot read config '" + path + "': " + e.what());
    }
    for (const auto &item : items) {
        if (item.name == "++" || item.name == "--")  // section markers
            continue;
        std::string value;
        for (std::size_t i = 0; i < item.inputs.size(); ++i)
            value += (i ? "," : "") + item.inputs[i];
        set(item.fullname(), value);
    }
}

const std::string &RunConfig::get(const std::string &key) const
{
    auto it = values_.find(key);
    if (it == values_.end())
        throw Error(ErrorKind::config, "unknown config key '" + key + "'");
    return it->second;
}

long RunConfig::get_long(const std::string &key) const
{
    const std::string &v = get(key);
    try {
        std::size_t used = 0;
        long r = std::stol(v, &used);
        if (used != v.size())
            throw std::invalid_argument(v);
        return r;
    } catch (const std::exception &) {
        throw Error(ErrorKind::config, key + " must be an integer, got '" + v + "'");
    }
}

BigRat RunConfig::get_rat(const std::string &key) const
{
    try {
        return parse_rational(get(key));
    } catch (const Error &) {
        throw;
    } catch (const std::exception &) {
        throw Error(ErrorKind::config, key + " must be a rational number, got '" + get(key) + "'");
    }
}

std::vector<std::string> RunConfig::get_list(const std::string &key, char sep) const { return split(get(key), sep); }

void RunConfig::validate() const
{
    for (const char *k : {"precision", "digits", "M", "eps.p_max", "search.span", "theta.digit_cap", "theta.depth"}) {
        long v = get_long(k);
        if (v < (std::string(k) == "M" || std::string(k) == "eps.p_max" ? 0 : 1))
            throw Error(ErrorKind::config, std::string(k) + " must be positive");
    }
    if (get_long("precision") < 64)
        throw Error(ErrorKind::config, "precision must be at least 64 bits");
    if (get_rat("eps.base") <= 1)
        throw Error(ErrorKind::config, "eps.base must exceed 1");
    get_long("seed");
    make_theta(*this);
    make_coefficients(*this);
    parse_points(get("points"));
}

std::string RunConfig::show(bool with_docs) const
{
    std::ostringstream os;
    for (const auto &k : config_schema()) {
        if (with_docs)
            os << "# " << k.doc << "\n";
        os << k.key << " = \"" << get(k.key) << "\"\n";
    }
    return os.str();
}

ThetaRef make_theta(const RunConfig &cfg)
{
    std::string kind = cfg.get("theta.kind");
    std::vector<BigInt> prefix = int_list(cfg.get("theta.prefix"));
    if (kind == "finite")
        return ThetaSpec::finite(prefix);
    if (kind == "periodic")
        return ThetaSpec::periodic(prefix, int_list(cfg.get("theta.block")));
    if (kind == "growth") {
        GrowthRule rule;
        for (const auto &x : cfg.get_list("theta.rule.table"))
            rule.table.push_back(parse_rational(x));
        rule.slope = cfg.get_rat("theta.rule.slope");
        rule.intercept = cfg.get_rat("theta.rule.intercept");
        return ThetaSpec::growth(prefix, rule, cfg.get_long("theta.digit_cap"));
    }
    throw Error(ErrorKind::config, "theta.kind must be growth, periodic or finite");
}

CoefficientSeq make_coefficients(const RunConfig &cfg)
{
    std::vector<std::string> parts = cfg.get_list("u", ':');
    if (parts.size() == 2 && parts[0] == "constant") {
        CertifiedComplex c = CertifiedComplex::from_rat(parse_rational(parts[1]));
        return CoefficientSeq::constant(c);
    }
    if (parts.size() == 3 && parts[0] == "random") {
        long count = std::stol(parts[1]);
        if (count < 1)
            throw Error(ErrorKind::config, "random coefficient count must be positive");
        return CoefficientSeq::random(static_cast<unsigned long long>(cfg.get_long("seed")),
                                      static_cast<std::size_t>(count), parse_rational(parts[2]));
    }
    throw Error(ErrorKind::config, "u must be constant:<c> or random:<count>:<sup>");
}

std::vector<BigRat> make_eps(const RunConfig &cfg)
{
    BigRat base = cfg.get_rat("eps.base");
    std::vector<BigRat> v;
    BigRat e = 1;
    for (long p = 1; p <= cfg.get_long("eps.p_max"); ++p) {
        e /= base;
        e.canonicalize();
        v.push_back(e);
    }
    return v;
}

ExponentSubseq make_exponents(const std::string &text, const ThetaRef &theta, const RecurrenceSchedule *sched)
{
    if (trim(text) == "schedule") {
        if (!sched)
            throw Error(ErrorKind::config, "qprime = schedule needs a recurrence schedule");
        return sched->qprime();
    }
    std::vector<std::string> items = split(text, ',');
    if (items.empty())
        throw Error(ErrorKind::config, "empty exponent list");
    static const std::regex parent(R"(q(\d+))");
    std::smatch m;
    if (std::regex_match(items[0], m, parent)) {
        std::vector<long> idx;
        for (const auto &x : items) {
            if (!std::regex_match(x, m, parent))
                throw Error(ErrorKind::config, "mixed exponent list '" + text + "'");
            idx.push_back(std::stol(m[1].str()));
        }
        return ExponentSubseq::from_parent(theta, idx);
    }
    std::vector<BigInt> vals;
    for (const auto &x : items)
        vals.push_back(parse_bigint(x));
    return ExponentSubseq::from_values(vals);
}

std::vector<SymInt> parse_N_list(const std::vector<std::string> &items, const ThetaRef &theta,
                                 const RecurrenceSchedule *sched)
{
    static const std::regex range(R"((\d+)\.\.(\d+))");
    std::vector<SymInt> out;
    for (const auto &x : items) {
        std::smatch m;
        if (x == "schedule") {
            if (!sched)
                throw Error(ErrorKind::config, "N list uses 'schedule' but no schedule was built");
            std::vector<SymInt> Ns = sched->Ns();
            out.insert(out.end(), Ns.begin() + 1, Ns.end());
        } else if (std::regex_match(x, m, range)) {
            long a = std::stol(m[1].str()), b = std::stol(m[2].str());
            if (b < a || b - a > 10000000)
                throw Error(ErrorKind::config, "bad N range '" + x + "'");
            for (long n = a; n <= b; ++n)
                out.emplace_back(n);
        } else {
            out.push_back(SymInt::parse(x, theta));
        }
    }
    return out;
}

std::vector<Point2> parse_points(const std::string &text)
{
    std::vector<Point2> pts;
    for (const auto &p : split(text, ';')) {
        std::vector<std::string> c = split(p, ',');
        if (c.size() != 4)
            throw Error(ErrorKind::config, "point '" + p + "' needs w_re,w_im,z_re,z_im");
        pts.push_back(Point2::from_rat(parse_rational(c[0]), parse_rational(c[1]), parse_rational(c[2]),
                                       parse_rational(c[3])));
    }
    return pts;
}

} // namespace shear
