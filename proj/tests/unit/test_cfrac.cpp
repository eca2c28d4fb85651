#include <doctest.h>

#include "shear/cfrac.hpp"

#include <climits>
#include <random>

using namespace shear;

namespace {

BigRat rat(long p, long q)
{
    BigRat r(p, q);
    r.canonicalize();
    return r;
}

std::vector<BigInt> ints(std::initializer_list<long> xs)
{
    std::vector<BigInt> out;
    for (long x : xs)
        out.emplace_back(x);
    return out;
}

ThetaRef fast_theta()
{
    GrowthRule g;  // g(n) = n + 1
    return ThetaSpec::growth(ints({0, 1}), g);
}

// (sqrt(5) - 1)/2 to the given precision.
Real golden_real(long prec)
{
    Real r(prec);
    mpfr_sqrt_ui(r.get(), 5, MPFR_RNDN);
    mpfr_sub_ui(r.get(), r.get(), 1, MPFR_RNDN);
    mpfr_div_2ui(r.get(), r.get(), 1, MPFR_RNDN);
    return r;
}

// K*x mod 1 in [0, 1) at high precision.
double frac_mul(const Real &x, const BigInt &K)
{
    Real r(x.prec());
    mpfr_mul_z(r.get(), x.get(), K.get_mpz_t(), MPFR_RNDN);
    mpfr_frac(r.get(), r.get(), MPFR_RNDN);
    double d = r.to_double();
    return d < 0 ? d + 1 : d;
}

} // namespace

TEST_CASE("convergents of small expansions")
{
    auto golden = convergents(*ThetaSpec::finite(ints({0, 1, 1, 1, 1, 1})), 5);
    std::vector<std::pair<long, long>> want = {{0, 1}, {1, 1}, {1, 2}, {2, 3}, {3, 5}, {5, 8}};
    REQUIRE(golden.size() == want.size());
    for (std::size_t i = 0; i < want.size(); ++i) {
        CHECK(golden[i].first == want[i].first);
        CHECK(golden[i].second == want[i].second);
    }

    auto c = convergents(*ThetaSpec::finite(ints({0, 2, 3})), 2);
    CHECK(c[1].first == 1);
    CHECK(c[1].second == 2);
    CHECK(c[2].first == 3);
    CHECK(c[2].second == 7);

    auto five = convergents(*ThetaSpec::finite(ints({5})), 0);
    CHECK(five[0].first == 5);
    CHECK(five[0].second == 1);

    CHECK_THROWS_AS(convergents(*ThetaSpec::finite(ints({0, 2, 3})), 3), Error);
    CHECK_THROWS_AS(ThetaSpec::finite(ints({0, 0, 1})), Error);
}

TEST_CASE("golden convergents match a Euclidean expansion of a float")
{
    Real x = golden_real(400);
    auto q = quotients_from_real(RatInterval(x.to_rat() - BigRat(1, 1) / BigRat(BigInt(1) << 300),
                                             x.to_rat() + BigRat(1, 1) / BigRat(BigInt(1) << 300)),
                                 40);
    REQUIRE(q.size() == 41);
    CHECK(q[0] == 0);
    for (std::size_t i = 1; i < q.size(); ++i)
        CHECK(q[i] == 1);
}

TEST_CASE("determinant identity and exponential growth")
{
    std::mt19937_64 rng(7);
    std::vector<ThetaRef> thetas = {ThetaSpec::golden(), ThetaSpec::periodic(ints({0, 2}), ints({3})),
                                    ThetaSpec::periodic(ints({1}), ints({2}))};
    for (int r = 0; r < 3; ++r) {
        std::vector<BigInt> a = {BigInt(0)};
        for (int i = 0; i < 45; ++i)
            a.emplace_back(static_cast<long>(1 + rng() % 50));
        thetas.push_back(ThetaSpec::finite(a));
    }
    for (const auto &t : thetas) {
        auto c = convergents(*t, 40);
        for (long n = 0; n + 1 <= 40; ++n) {
            BigInt det = c[n + 1].first * c[n].second - c[n].first * c[n + 1].second;
            CHECK(det == (n % 2 == 0 ? 1 : -1));
        }
        for (long n = 1; n <= 40; ++n) {
            // q_n^2 >= 2^{n-1}
            CHECK(c[n].second * c[n].second >= BigInt(1) << (n - 1));
            CHECK(gcd(c[n].first, c[n].second) == 1);
        }
    }
}

TEST_CASE("quotients_from_real")
{
    auto third = quotients_from_real(RatInterval::point(rat(1, 3)), 1);
    REQUIRE(third.size() == 2);
    CHECK(third[0] == 0);
    CHECK(third[1] == 3);
    CHECK_THROWS_WITH_AS(quotients_from_real(RatInterval(rat(49, 100), rat(51, 100)), 2),
                         doctest::Contains("ambiguous-quotient"), Error);

    // Round trip through theta_enclosure.
    auto t = ThetaSpec::periodic(ints({0, 2}), ints({3, 1, 4}));
    for (long depth = 2; depth < 15; ++depth) {
        auto a = quotients_from_real(theta_enclosure(*t, depth), depth - 1);
        for (long i = 0; i < depth; ++i)
            CHECK(a[i] == t->quotient(i));
    }
}

TEST_CASE("theta_enclosure brackets theta")
{
    auto g = ThetaSpec::golden();
    RatInterval e2 = theta_enclosure(*g, 2);
    CHECK(e2.lo == rat(1, 2));
    CHECK(e2.hi == rat(2, 3));

    RatInterval e1 = theta_enclosure(*ThetaSpec::periodic(ints({0, 2}), ints({3})), 1);
    CHECK(e1.lo == rat(3, 7));
    CHECK(e1.hi == rat(1, 2));

    Real x = golden_real(400);
    BigRat xr = x.to_rat();
    for (long n = 1; n < 60; ++n) {
        RatInterval e = theta_enclosure(*g, n);
        CHECK(e.width() == BigRat(1) / BigRat(g->q(n) * g->q(n + 1)));
        CHECK(e.contains(xr));
    }
    CHECK_THROWS_AS(theta_enclosure(*g, 0), std::invalid_argument);
}

TEST_CASE("frac_qNtheta")
{
    auto g = ThetaSpec::golden();
    RatInterval d = frac_qNtheta(*g, 1, 1, 12);
    // 1 - theta = 0.38196601125...
    CHECK(d.lo <= parse_rational("0.38196601126"));
    CHECK(d.hi >= parse_rational("0.38196601124"));
    CHECK(d.hi <= rat(1, 2));
    CHECK(frac_qNtheta(*g, 3, 0) == RatInterval::point(0));

    // Classical sandwich for N = 1.
    auto t = ThetaSpec::periodic(ints({0, 2}), ints({3, 1, 4}));
    for (long n = 0; n < 20; ++n) {
        RatInterval dn = frac_qNtheta(*t, n, 1);
        BigRat qn(t->q(n)), qn1(t->q(n + 1));
        CHECK(dn.lo >= 1 / (qn1 + qn));
        CHECK(dn.hi <= 1 / qn1);
    }

    // dist(q_n N theta) <= N/q_{n+1} when a_{n+1} is huge.
    auto big = ThetaSpec::finite(ints({0, 3, 1000000, 2, 5, 1, 1}));
    for (long N = 1; N < 50; ++N) {
        RatInterval dn = frac_qNtheta(*big, 1, N, 4);
        CHECK(dn.hi <= BigRat(N) / BigRat(big->q(2)));
    }
    CHECK_THROWS_WITH_AS(frac_qNtheta(*g, 1, BigInt(1) << 200, 5), doctest::Contains("enclosure-too-wide"), Error);
}

TEST_CASE("brjuno sums")
{
    auto small = brjuno_sum(*ThetaSpec::finite(ints({0, 1, 1})), 1);
    RealInterval ln2 = log(RealInterval::from_si(2));
    RealInterval s1 = small.partial_sums.back();
    CHECK(s1.lo <= ln2.hi);
    CHECK(s1.hi >= ln2.lo);
    CHECK(s1.width() < Real::from_d(1e-70));

    auto golden = brjuno_sum(*ThetaSpec::golden(), 40);
    CHECK(golden.partial_sums.back().hi < Real::from_si(4));
    CHECK_FALSE(golden.grows);
    CHECK(golden.terms[40].hi < Real::from_d(1e-6));

    auto fast = brjuno_sum(*fast_theta(), 6);
    CHECK(fast.grows);
    CHECK(fast.verdict == "grows-unboundedly");
    for (long n = 1; n <= 6; ++n)
        CHECK(fast.terms[n].lo >= Real::from_d(n + 1 - 1e-9));
    // ln 9 / 1 at n = 1; the excess over g(n) vanishes from n = 2 on.
    for (long n = 2; n <= 6; ++n)
        CHECK(fast.terms[n].hi <= Real::from_d(n + 1 + 1e-9));
}

TEST_CASE("fast theta construction")
{
    GrowthRule one;
    one.slope = 0;
    one.intercept = 1;
    auto t1 = build_fast_theta(one, 2);
    CHECK(t1->quotient(2) == 3);
    CHECK(t1->q(2) == 4);
    CHECK(build_fast_theta(one, 0)->quotient(0) == 0);

    auto t = build_fast_theta(GrowthRule{}, 3);
    CHECK(t->q(2) == 9);
    CHECK(t->quotient(3) == parse_bigint("59116471178"));
    CHECK(t->q(3) == parse_bigint("532048240603"));
    CHECK(t->exact_limit() == 3);
    for (const auto &lvl : growth_check(*t, 6))
        CHECK(lvl.pass == lvl.applies);
    CHECK_THROWS_WITH_AS(build_fast_theta(GrowthRule{}, 4), doctest::Contains("overflow-budget"), Error);

    // ln q_4 in [4 q_3, 4 q_3 + tiny]; q_4 has about 9.2426e11 digits.
    RealInterval l4 = t->ln_q(4);
    RealInterval want = RealInterval::from_int(4 * t->q(3));
    CHECK(l4.lo >= want.lo);
    CHECK(sub(l4.hi, want.hi, MPFR_RNDU) < Real::from_d(1e-70));
    RealInterval d4 = t->log10_q(4);
    CHECK(d4.lo > Real::from_d(924262460000.86));
    CHECK(d4.hi < Real::from_d(924262460000.87));
    // q_5 is a double exponential: representable only as a log.
    CHECK(t->log10_q(5).lo > Real::from_d(1e100));
    CHECK(t->q_real(6).hi.is_inf());
    CHECK(t->q_real(6).lo.is_finite());
}

TEST_CASE("symbolic integers")
{
    auto t = fast_theta();
    CHECK(SymInt::parse("17").value() == 17);
    CHECK(SymInt::parse("q2", t).value() == 9);
    CHECK(SymInt::parse("q3/2", t).value() == parse_bigint("266024120301"));
    SymInt h = SymInt::parse("q4/2", t);
    CHECK_FALSE(h.is_exact());
    CHECK(h.to_string() == "q4/2");
    CHECK_THROWS_AS(h.value(), Error);
    CHECK(certainly_less(SymInt::parse("q3", t), h));
    CHECK(certainly_less(h, SymInt::parse("q4", t)));
    CHECK_FALSE(certainly_less(h, h));
    CHECK(SymInt::parse("q3", t).convergent_index(*t) == 3);
    CHECK(SymInt::parse("q5", t).convergent_index(*t) == 5);
    CHECK(SymInt(10).convergent_index(*t) == -1);
    RealInterval lh = h.log10();
    RealInterval l4 = t->log10_q(4);
    RealInterval diff = l4 - lh;
    CHECK(diff.contains(log10(RealInterval::from_si(2)).lo));
    CHECK_THROWS_AS(SymInt::parse("q4"), Error);
    CHECK_THROWS_AS(SymInt::parse("x"), Error);
}

TEST_CASE("phases of exact multiples agree with high-precision theta")
{
    auto g = ThetaSpec::golden();
    Real x = golden_real(2000);
    std::mt19937_64 rng(11);
    for (int i = 0; i < 200; ++i) {
        BigInt K = BigInt(static_cast<unsigned long>(rng() >> 1));
        if (i % 3 == 0)
            K *= BigInt(static_cast<unsigned long>(rng() >> 1));
        Phase ph = phase_exact(*g, K);
        REQUIRE(ph.known);
        double want = frac_mul(x, K);
        double got = ph.x.mid().to_double();
        double diff = std::abs(want - got);
        diff = std::min(diff, std::abs(1 - diff));
        CHECK(diff < 1e-12);
        CHECK(ph.x.width() < Real::from_d(1e-60));
    }
    // Agreement with the rational dist path.
    for (long K = 1; K < 100; ++K) {
        RatInterval d = frac_qNtheta(*g, 0, K, 40);
        RealInterval pd = phase_exact(*g, K).dist();
        CHECK(pd.lo <= Real::from_q(d.hi, MPFR_RNDU));
        CHECK(pd.hi >= Real::from_q(d.lo, MPFR_RNDD));
    }
}

TEST_CASE("phases along a fast theta")
{
    auto t = fast_theta();
    t->exact_limit();
    // q_3 theta is within 1/q_4 of an integer.
    Phase p3 = phase_of(t, SymInt::parse("q3", t));
    REQUIRE(p3.known);
    CHECK(p3.x.hi < Real::from_si(0));
    CHECK(log10(abs(p3.x)).hi < Real::from_d(-924262460000.8));
    CHECK(log10(abs(p3.x)).lo > Real::from_d(-924262460001.0));

    // q_4 theta: symbolic factor, anchor j = 4.
    Phase p4 = phase_of(t, SymInt::parse("q4", t));
    REQUIRE(p4.known);
    CHECK(p4.x.lo >= Real::from_si(0));
    // 1/q_5 is below the smallest MPFR magnitude, so the lift saturates.
    CHECK(log10(p4.x).hi < Real::from_d(-1e18));

    // q_3 * floor(q_4/2) theta sits next to 1/2.
    Phase ph = phase_of(t, SymInt::parse("q3", t), SymInt::parse("q4/2", t));
    REQUIRE(ph.known);
    RealInterval d = ph.dist();
    CHECK(d.lo > Real::from_d(0.5 - 1e-9));
    RealInterval m = ph.one_minus_abs();
    CHECK(m.lo > Real::from_d(2 - 1e-9));

    // floor(q_4/2) theta alone has no certified lift.
    CHECK_FALSE(phase_of(t, SymInt::parse("q4/2", t)).known);
    Phase unk = phase_of(t, SymInt::parse("q4/2", t));
    CHECK(unk.one_minus_abs().hi == Real::from_si(2));
    CHECK(unk.rotation().contains(1, 0));
    CHECK(unk.rotation().contains(-1, 0));

    // q_2 theta via the exact path, then q_2 * q_3 via an anchor.
    Phase p2 = phase_of(t, SymInt(9));
    REQUIRE(p2.known);
    RealInterval d2 = p2.dist();
    CHECK(d2.hi <= Real::from_d(1.0 / 532048240603.0 * 1.0000001));
    Phase p23 = phase_of(t, SymInt(9), SymInt::parse("q3", t));
    REQUIRE(p23.known);
    CHECK(p23.dist().hi < Real::from_d(1e-20));
}

TEST_CASE("phases for a rational rotation number")
{
    Phase z = phase_of(RatInterval::point(rat(1, 3)), SymInt(3));
    REQUIRE(z.known);
    CHECK(z.one_minus_abs().hi < Real::from_d(1e-70));
    CHECK(z.one_minus().contains(0, 0));
    Phase h = phase_of(RatInterval::point(rat(1, 4)), SymInt(2));
    CHECK(h.rotation().contains(-1, 0));
    CHECK_FALSE(phase_of(RatInterval(rat(1, 4), rat(1, 4) + rat(1, 1000)), SymInt(1000)).known);
}

TEST_CASE("quotient JSON round trip")
{
    std::vector<BigInt> a = {BigInt(0), parse_bigint("123456789012345678901234567890"), BigInt(7)};
    std::string js = quotients_to_json(a);
    CHECK(js == "[\"0\",\"123456789012345678901234567890\",\"7\"]");
    CHECK(quotients_from_json(js) == a);
    CHECK_THROWS_AS(quotients_from_json("[1,2]x"), Error);
}
