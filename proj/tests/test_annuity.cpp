#include <doctest.h>

#include <random>
#include <stdexcept>

#include "oracles.hpp"
#include "pension/annuity.hpp"
#include "pension/errors.hpp"

using namespace pension;

TEST_CASE("monthly_rate") {
    CHECK(std::fabs(monthly_rate(0.06).value - 0.00486755) <= 1e-8);
    CHECK(monthly_rate(0.0).value == 0.0);
    // (1.01)^12 - 1 inverts back to 1% per month.
    CHECK(std::fabs(monthly_rate(0.12682503013196977).value - 0.01) <= 1e-12);
    CHECK_THROWS_AS(monthly_rate(-1.0), std::domain_error);
    CHECK_THROWS_AS(monthly_rate(-1.5), std::domain_error);
}

TEST_CASE("annuity_pv basics") {
    const MonthlyRate r6 = monthly_rate(0.06);
    CHECK(annuity_pv(0, r6) == 0.0);
    CHECK(annuity_pv(0, MonthlyRate{0.0}) == 0.0);
    CHECK(annuity_pv(12, MonthlyRate{0.0}) == 12.0);

    // Frozen from the explicit discounting loop.
    CHECK(annuity_pv(12, r6) == doctest::Approx(11.628800322676573).epsilon(1e-12));
    CHECK(std::fabs(annuity_pv(12, r6) - 11.6288) <= 1e-4);
    CHECK(std::fabs(annuity_pv(12, r6) - oracle::annuity_sum(12, r6.value)) <= 1e-12);
    CHECK(std::fabs(annuity_pv(46, r6) - oracle::annuity_sum(46, r6.value)) <= 1e-10);
    CHECK_THROWS_AS(annuity_pv(-1, r6), std::domain_error);
}

TEST_CASE("annuity_pv monotonicity") {
    const MonthlyRate r6 = monthly_rate(0.06);
    for (int n = 0; n < 240; ++n) {
        CHECK(annuity_pv(n + 1, r6) > annuity_pv(n, r6));
    }
    for (double r = 0.001; r < 0.02; r += 0.001) {
        CHECK(annuity_pv(120, MonthlyRate{r}) > annuity_pv(120, MonthlyRate{r + 0.001}));
    }
}

TEST_CASE("closed form matches the brute-force sum") {
    std::mt19937_64 rng(12345);
    std::uniform_int_distribution<int> n_dist(0, 2400);
    std::uniform_real_distribution<double> r_dist(0.0, 0.02);
    for (int i = 0; i < 300; ++i) {
        const int n = n_dist(rng);
        const double r = i % 10 == 0 ? 0.0 : r_dist(rng);
        const double closed = annuity_pv(n, MonthlyRate{r});
        const double looped = oracle::annuity_sum(n, r);
        CHECK(std::fabs(closed - looped) <= 1e-9 * std::max(1, n));
    }
}

TEST_CASE("continuity toward zero rate") {
    for (int n : {1, 12, 120, 1200}) {
        CHECK(std::fabs(annuity_pv(n, MonthlyRate{1e-12}) - n) <= 1e-6);
    }
}

TEST_CASE("invert_annuity") {
    const MonthlyRate r6 = monthly_rate(0.06);
    const double b = 954.0;

    CHECK(invert_annuity(0.0, b, r6) == 0);
    CHECK(invert_annuity(b * annuity_pv(46, r6), b, r6) == 46);

    // Two-fifths of the way toward the 47th payment still rounds to 46;
    // the oracle comparison |PV(46)-t| < |PV(47)-t| agrees.
    const double t = b * annuity_pv(46, r6) + 0.4 * b * std::pow(1.0 + r6.value, -47);
    CHECK(std::fabs(b * annuity_pv(46, r6) - t) < std::fabs(b * annuity_pv(47, r6) - t));
    CHECK(invert_annuity(t, b, r6) == 46);

    SUBCASE("round-trip identity on sampled terms") {
        std::mt19937_64 rng(99);
        std::uniform_real_distribution<double> r_dist(1e-5, 0.02);
        for (int k = 0; k < 5; ++k) {
            const MonthlyRate r{r_dist(rng)};
            for (int n = 0; n <= 1200; n += 7) {
                CHECK(invert_annuity(b * annuity_pv(n, r), b, r) == n);
            }
        }
        for (int n = 0; n <= 1200; n += 11) {
            CHECK(invert_annuity(b * annuity_pv(n, MonthlyRate{0.0}), b, MonthlyRate{0.0}) == n);
        }
    }

    SUBCASE("rounding policies") {
        // Exact half months round toward zero under the default policy.
        CHECK(invert_annuity(5.5, 1.0, MonthlyRate{0.0}) == 5);
        CHECK(invert_annuity(5.5, 1.0, MonthlyRate{0.0}, TermRounding::Up) == 6);
        CHECK(invert_annuity(5.9, 1.0, MonthlyRate{0.0}, TermRounding::Down) == 5);
        CHECK(invert_annuity(5.9, 1.0, MonthlyRate{0.0}) == 6);
    }

    SUBCASE("round-trip lands within one discounted payment") {
        const double target = 0.37 * b / r6.value;  // not an integer-term value
        const int z = invert_annuity(target, b, r6);
        const double back = b * annuity_pv(z, r6);
        CHECK(std::fabs(back - target) <= b * std::pow(1.0 + r6.value, -z));
    }

    SUBCASE("domain and feasibility errors") {
        CHECK_THROWS_AS(invert_annuity(-1.0, b, r6), std::domain_error);
        CHECK_THROWS_AS(invert_annuity(b / r6.value, b, r6), InfeasibleTargetError);
        CHECK_THROWS_AS(invert_annuity(2.0 * b / r6.value, b, r6), InfeasibleTargetError);
        CHECK_THROWS_AS(invert_annuity(1.0, 0.0, r6), std::domain_error);
    }
}
