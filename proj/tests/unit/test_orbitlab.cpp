#include <doctest.h>

#include "shear/orbitlab/commands.hpp"
#include "shear/orbitlab/format.hpp"
#include "shear/orbitlab/manifest.hpp"
#include "shear/orbitlab/svg.hpp"

#include <cmath>
#include <filesystem>
#include <sstream>
#include <unistd.h>

using namespace shear;
namespace fs = std::filesystem;

namespace {

std::string scratch(const std::string &name)
{
    fs::path p = fs::temp_directory_path() / ("orbitlab_unit_" + std::to_string(getpid())) / name;
    fs::remove_all(p);
    fs::create_directories(p);
    return p.string();
}

int run(const std::string &cmd, const RunConfig &cfg)
{
    std::ostringstream log, err;
    return run_command(cmd, cfg, log, err);
}

// Decimal cells below the double range read as 0.
double num(const std::string &s) { return log10_of_decimal(s) < -300 ? 0.0 : std::stod(s); }

// Small, fast pipeline config.
RunConfig small_config(const std::string &dir)
{
    RunConfig c;
    c.set("output", dir);
    c.set("orbit.N", "1..4,schedule,q4/2");
    c.set("probe.N", "1..30,q3/2");
    c.set("probe.z", "0,1.5");
    return c;
}

} // namespace

TEST_CASE("config defaults, overrides and files")
{
    RunConfig c;
    CHECK(c.get("precision") == "256");
    CHECK(c.get_long("M") == 5);
    c.set_assignment("M = 7");
    CHECK(c.get_long("M") == 7);
    CHECK_THROWS_AS(c.set("nope", "1"), Error);
    CHECK_THROWS_AS(c.set_assignment("M7"), Error);
    c.set("M", "x");
    CHECK_THROWS_AS(c.get_long("M"), Error);

    std::string dir = scratch("cfg");
    write_text(dir + "/a.toml", "precision = 128\ntheta.prefix = 0,1\n[eps]\np_max = 2\n");
    RunConfig f;
    f.load_file(dir + "/a.toml");
    CHECK(f.get_long("precision") == 128);
    CHECK(f.get_long("eps.p_max") == 2);
    CHECK(f.get("theta.prefix") == "0,1");

    // `config show` output is itself a loadable config.
    write_text(dir + "/b.toml", f.show());
    RunConfig g;
    g.load_file(dir + "/b.toml");
    CHECK(g.show() == f.show());
    CHECK_THROWS_AS(g.load_file(dir + "/missing.toml"), Error);
}

TEST_CASE("config object builders")
{
    RunConfig c;
    ThetaRef t = make_theta(c);
    CHECK(t->has_growth());
    CHECK(to_decimal(t->q(3)) == "532048240603");
    std::vector<SymInt> Ns = parse_N_list({"1..3", "q3", "q4/2"}, t, nullptr);
    REQUIRE(Ns.size() == 5);
    CHECK(Ns[2].value() == 3);
    CHECK(Ns[3].value() == t->q(3));
    CHECK(!Ns[4].is_exact());
    CHECK_THROWS_AS(parse_N_list({"schedule"}, t, nullptr), Error);
    CHECK(parse_points("0,0,0,0; 1,0,1.5,0").size() == 2);
    CHECK_THROWS_AS(parse_points("1,2,3"), Error);
    ExponentSubseq e = make_exponents("q2,q3", t, nullptr);
    CHECK(e.parent_indices() == std::vector<long>{2, 3});
    CHECK(make_exponents("1,4,16", t, nullptr).at(2).value() == 16);
    CHECK(make_eps(c).size() == 3);

    c.set("u", "random:4:1");
    CHECK(make_coefficients(c).listed_size() == 4);
    c.set("u", "weird");
    CHECK_THROWS_AS(make_coefficients(c), Error);
    c.set("u", "constant:1");
    c.set("theta.kind", "finite");
    c.set("theta.prefix", "0,1,0,2");
    CHECK_THROWS_AS(make_theta(c), Error);
}

TEST_CASE("csv format")
{
    CsvTable t({"a", "b"}, 5);
    t.add_row({"1", "2.5e-3"});
    CHECK(t.str() == "# precision_digits=5\na,b\n1,2.5e-3\n");
    CHECK_THROWS(t.add_row({"1"}));
    CHECK_THROWS(t.add_row({"1,2", "3"}));
    std::string dir = scratch("csv");
    t.write(dir + "/t.csv");
    CsvData d = read_csv(dir + "/t.csv");
    CHECK(d.digits == 5);
    CHECK(d.column("b") == 1);
    CHECK(d.rows.at(0).at(1) == "2.5e-3");

    CHECK(fmt_up(Real::from_si(1), 3) == "1.00e+0");
    CHECK(log10_of_decimal("1.0e-123456789012") == doctest::Approx(-123456789012.0));
    CHECK(log10_of_decimal("100") == doctest::Approx(2.0));
}

TEST_CASE("sha256 and manifest")
{
    CHECK(sha256_hex("abc") == "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
    std::string dir = scratch("manifest");
    write_text(dir + "/x.csv", "1\n");
    write_text(dir + "/notes.txt", "ignored\n");
    CHECK(run_files(dir) == std::vector<std::string>{"x.csv"});
    RunManifest m;
    m.experiments["x"] = true;
    m.files["x.csv"] = sha256_file(dir + "/x.csv");
    RunManifest back = RunManifest::from_json(m.to_json());
    CHECK(back.to_json() == m.to_json());
    CHECK(verify_manifest(dir, back).empty());
    write_text(dir + "/x.csv", "2\n");
    CHECK(verify_manifest(dir, back) == std::vector<std::string>{"x.csv"});
}

TEST_CASE("svg is self-contained and deterministic")
{
    SvgPlot p{"t", "x", "y", {{"s<1>", "#000000", {{0, 0}, {1, 2}}, true, true}}};
    std::string a = p.render();
    CHECK(a == p.render());
    CHECK(a.find("<svg xmlns=\"http://www.w3.org/2000/svg\"") == 0);
    CHECK(a.find("s&lt;1&gt;") != std::string::npos);
    CHECK(a.find("href") == std::string::npos);
    CHECK(signed_log10(-99.0) == doctest::Approx(-2.0));
}

TEST_CASE("exit codes")
{
    std::string dir = scratch("codes");
    RunConfig c;
    c.set("output", dir);
    CHECK(run("bogus", c) == exit_config);
    CHECK(run("report", c) == exit_config);  // missing inputs
    RunConfig gap = c;
    gap.set("mu.qpp", "2,4");
    CHECK(run("mu", gap) == exit_config);
    RunConfig bad = c;
    bad.set("theta.kind", "finite");
    bad.set("theta.prefix", "0,1,0");
    CHECK(run("theta", bad) == exit_config);
    RunConfig golden = c;
    golden.set("theta.kind", "periodic");
    golden.set("theta.prefix", "0");
    golden.set("eps.p_max", "2");
    CHECK(run("recurrence", golden) == exit_exhausted);
    CHECK(run("mu", c) == exit_pass);
}

TEST_CASE("pipeline on a small config")
{
    std::string dir = scratch("pipeline");
    RunConfig c = small_config(dir);
    for (const char *cmd : {"theta", "recurrence", "mu", "series", "orbit", "derivative-probe"})
        CHECK_MESSAGE(run(cmd, c) == exit_pass, cmd);
    CHECK(run("report", c) == exit_pass);
    for (const char *f : {"orbit_w.svg", "recurrence_distance.svg", "derivative_records.svg", "manifest.json"})
        CHECK(fs::exists(dir + "/" + f));
    CHECK(run("verify-manifest", c) == exit_pass);

    CsvData orbit = read_csv(dir + "/orbit.csv");
    long cp = orbit.column("point"), cd = orbit.column("dist_to_start"), cz = orbit.column("re_z"),
         cs = orbit.column("status");
    for (const auto &r : orbit.rows) {
        if (r[cp] == "0")  // the origin is fixed
            CHECK(r[cd] == "0");
        CHECK(r[cs] != "recurrence-fail");
    }
    // |z| is preserved: the (1, 0.5) orbit keeps z on the circle of radius 0.5.
    for (const auto &r : orbit.rows)
        if (r[cp] == "1" && r[cs] != "phase-unknown")
            CHECK(std::fabs(std::hypot(num(r[cz]), num(r[cz + 1])) - 0.5) < 1e-12);

    CsvData der = read_csv(dir + "/derivative.csv");
    for (const auto &r : der.rows)
        if (r[0] == "0")
            CHECK(r[der.column("phi_prime_lower")] == "0");

    // Tampering is detected.
    write_text(dir + "/mu.json", read_text(dir + "/mu.json") + " ");
    CHECK(run("verify-manifest", c) == exit_check_failed);
}
