#include <doctest.h>

#include "shear/constructions.hpp"

#include <cmath>

using namespace shear;

namespace {

BigRat rat(long p, long q)
{
    BigRat r(p, q);
    r.canonicalize();
    return r;
}

ThetaRef fast_theta()
{
    static ThetaRef t = ThetaSpec::growth({BigInt(0), BigInt(1)}, GrowthRule{});
    return t;
}

RecurrenceSchedule fast_schedule()
{
    static RecurrenceSchedule s = build_recurrence(fast_theta(), default_eps(3), 3);
    return s;
}

} // namespace

TEST_CASE("seed-only schedule")
{
    RecurrenceSchedule s = build_recurrence(fast_theta(), {}, 0);
    CHECK(s.p_max() == 0);
    REQUIRE(s.Ns().size() == 1);
    CHECK(s.Ns()[0].value() == 1);
    CHECK(s.qprime_indices() == std::vector<long>{0});
    CHECK_THROWS_AS(s.level(1), Error);
}

TEST_CASE("fast theta schedule for p <= 3")
{
    RecurrenceSchedule s = fast_schedule();
    REQUIRE(s.p_max() == 3);
    CHECK(s.level(1).N.value() == 9);
    CHECK(s.level(1).N_index == 2);
    CHECK(s.level(2).N.value() == BigInt("532048240603"));
    CHECK(s.level(3).N_index == 4);
    CHECK_FALSE(s.level(3).N.is_exact());
    CHECK(s.qprime_indices() == std::vector<long>{0, 3, 4, 5});

    std::vector<SymInt> N = s.Ns();
    for (std::size_t i = 0; i + 1 < N.size(); ++i)
        CHECK(certainly_less(N[i], N[i + 1]));
    // q'_1 = q_3 >= 2 N_1 = 18, exactly.
    CHECK(s.level(1).qprime.value() >= 2 * s.level(1).N.value());

    for (long p = 1; p <= 3; ++p) {
        const RecurrenceLevel &L = s.level(p);
        CHECK(L.certificate <= Real::from_q(L.eps, MPFR_RNDD));
        for (long M : {p, p + 2}) {
            RecurrenceCheck c = verify_recurrence(s, p, M);
            CAPTURE(p);
            CAPTURE(M);
            CHECK(c.pass);
            CHECK(c.bound <= Real::from_q(L.eps, MPFR_RNDD));
        }
    }
    // The first level is far below its budget: |1 - e(9 theta)| ~ 2 pi / q_3.
    RecurrenceCheck c1 = verify_recurrence(s, 1, 3);
    CHECK(c1.bound.to_double() < 1e-10);
}

TEST_CASE("slack budget picks the next denominator")
{
    RecurrenceSchedule s = build_recurrence(fast_theta(), {BigRat(10), BigRat(10)}, 2);
    CHECK(s.level(1).N.value() == 9);
    CHECK(s.level(2).N_index == 3);
}

TEST_CASE("golden theta: p = 1 works, p = 2 runs out")
{
    ThetaRef g = ThetaSpec::golden();
    RecurrenceSchedule s = build_recurrence(g, {BigRat(10)}, 1);
    CHECK(verify_recurrence(s, 1, 2).pass);
    // 2^{q'_1} outweighs every reachable 1/q_{m+1} without fast growth.
    CHECK_THROWS_WITH_AS(build_recurrence(g, default_eps(2), 2, 40), doctest::Contains("p=2: condition (ii)"), Error);
    std::string failure;
    RecurrenceSchedule partial = build_recurrence_prefix(g, default_eps(2), 2, &failure, 40);
    CHECK(partial.p_max() == 1);
    CHECK(failure.find("p=2") != std::string::npos);
}

TEST_CASE("adversarial schedule fails verification")
{
    ThetaRef g = ThetaSpec::golden();
    RecurrenceSchedule s;
    s.theta = g;
    RecurrenceLevel L;
    L.p = 1;
    L.eps = rat(1, 1000000);
    L.N = SymInt(1);
    L.N_index = 1;
    L.qprime = SymInt::q_over(g, 3);
    L.qprime_index = 3;
    s.levels.push_back(L);
    RecurrenceCheck c = verify_recurrence(s, 1, 1);
    CHECK_FALSE(c.pass);
    // |1 - e^{2 pi i theta}| = 2 sin(pi (1 - theta)) ~ 1.86 for theta = 0.618...
    CHECK(exp10_upper(c.head_log10[0]).to_double() == doctest::Approx(1.8649).epsilon(1e-3));
}

TEST_CASE("convergent tail bound")
{
    // p = 1 along the fast theta: sum_{j >= 3} 1/q_{j+1} is about 1/q_4.
    Real t = convergent_tail_log10(*fast_theta(), 3, 1);
    CHECK(t.to_double() < -1e11);
    CHECK(convergent_tail_log10(*ThetaSpec::golden(), 3, 2).is_inf());
    Real gold = convergent_tail_log10(*ThetaSpec::golden(), 3, 1);
    // 1/5 + 1/8 + 1/13 + ... < 2/5 + 2/8.
    CHECK(gold.to_double() <= std::log10(0.65) + 1e-12);
}

TEST_CASE("mu nest for q'' = (2, 8, 32)")
{
    MuCertificate c = build_mu({BigInt(2), BigInt(8), BigInt(32)});
    REQUIRE(c.intervals.size() == 3);
    CHECK(c.intervals[0] == RatInterval(BigRat(0), rat(1, 2)));
    CHECK(c.intervals[1] == RatInterval(rat(1, 8), rat(1, 4)));
    CHECK(c.intervals[2] == RatInterval(rat(5, 32), rat(6, 32)));
    for (std::size_t n = 0; n < c.intervals.size(); ++n) {
        CHECK(c.intervals[n].width() == BigRat(1) / BigRat(c.qpp[n]));
        if (n > 0)
            CHECK(c.intervals[n - 1].contains(c.intervals[n]));
    }
    MuLevelCheck l0 = verify_mu(c, 0);
    CHECK(l0.dist == RatInterval(rat(5, 16), rat(3, 8)));
    CHECK(l0.certified);
    CHECK_FALSE(l0.boundary);
    CHECK(l0.abs.lo * l0.abs.lo >= 2);
    CHECK(l0.abs.hi <= 2);

    MuLevelCheck l1 = verify_mu(c, 1);
    CHECK(l1.certified);
    CHECK(l1.boundary);
    CHECK(l1.abs_sq.lo == 2);
    CHECK_THROWS_AS(verify_mu(c, 2), Error);
}

TEST_CASE("mu nest edge cases")
{
    CHECK_THROWS_WITH_AS(build_mu({BigInt(2), BigInt(4)}), doctest::Contains("< 4"), Error);
    MuCertificate one = build_mu({BigInt(3)});
    CHECK(one.certified_levels() == 0);
    CHECK(one.mu().width() == rat(1, 3));

    ExponentSubseq src = ExponentSubseq::from_values({BigInt(1), BigInt(2), BigInt(3), BigInt(5), BigInt(8),
                                                      BigInt(13), BigInt(21), BigInt(34), BigInt(55)});
    std::vector<BigInt> q = extract_gap_subsequence(src, 3);
    CHECK(q == std::vector<BigInt>{BigInt(2), BigInt(8), BigInt(34)});
    MuCertificate c = build_mu(q);
    for (long n = 0; n < c.certified_levels(); ++n)
        CHECK(verify_mu(c, n).certified);
    CHECK_THROWS_AS(extract_gap_subsequence(src, 4), Error);
}

TEST_CASE("E1 witness")
{
    E1Witness w = e1_witness(ExponentSubseq::from_parent(fast_theta(), {1, 2, 3}));
    CHECK(w.u.sup_norm() == Real::from_si(1));
    REQUIRE(w.probes.size() == 10);
    CHECK(w.probes[2].found);
    CHECK(w.probes[2].index == 3);
    CHECK(w.probes[2].partial_sum.contains(4, 0));
    CHECK(w.probes[9].index == 10);
}

TEST_CASE("JSON round trips")
{
    RecurrenceSchedule s = fast_schedule();
    std::string js = schedule_to_json(s);
    RecurrenceSchedule back = schedule_from_json(js);
    CHECK(schedule_to_json(back) == js);
    CHECK(back.qprime_indices() == s.qprime_indices());
    CHECK(verify_recurrence(back, 3, 5).pass);
    CHECK_THROWS_AS(schedule_from_json("{\"levels\": 3}"), Error);

    MuCertificate c = build_mu({BigInt(2), BigInt(8), BigInt(32)});
    MuCertificate cb = mu_from_json(mu_to_json(c));
    CHECK(cb.intervals == c.intervals);
    CHECK(cb.qpp == c.qpp);

    ThetaRef g = theta_from_json(theta_to_json(*ThetaSpec::golden()));
    CHECK(g->q(10) == ThetaSpec::golden()->q(10));
}
