#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>

#include "availsim/estimate.hpp"

using namespace availsim;

namespace {

double total_variation(const std::vector<double> &p, const std::vector<double> &q) {
    double tv = 0.0;
    for (std::size_t i = 0; i < p.size(); ++i) {
        tv += std::abs(p[i] - q[i]);
    }
    return 0.5 * tv;
}

GuessPrep random_prep(std::size_t n, SeededRng &rng) {
    std::vector<double> w(n);
    for (double &v : w) {
        v = rng.uniform() + 1e-3;
    }
    return GuessPrep::weighted(std::move(w));
}

} // namespace

TEST_CASE("est_amp_distribution: exact eigenphase N=4, t=1, M=6") {
    // theta = pi/6, phase fraction 1/6: all mass on y in {1, 5}.
    const auto dist = est_amp_distribution({6, GuessPrep::uniform(), Oracle(4, {0})});
    CHECK(dist[1] == doctest::Approx(0.5).epsilon(1e-9));
    CHECK(dist[5] == doctest::Approx(0.5).epsilon(1e-9));
    CHECK(dist[0] + dist[2] + dist[3] + dist[4] < 1e-9);
}

TEST_CASE("est_amp_distribution: t = 0 gives a point mass at y = 0") {
    for (std::size_t m : {1UL, 4UL, 9UL}) {
        const auto dist = est_amp_distribution({m, GuessPrep::uniform(), Oracle(8, {})});
        CHECK(dist[0] == doctest::Approx(1.0).epsilon(1e-9));
    }
}

TEST_CASE("est_amp_distribution: t = N concentrates on phase fraction 1/2") {
    const auto dist = est_amp_distribution({8, GuessPrep::uniform(), Oracle(4, {0, 1, 2, 3})});
    CHECK(dist[4] == doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("est_amp: exact-phase sampling is deterministic in a_hat") {
    const EstimationConfig cfg{6, GuessPrep::uniform(), Oracle(4, {0})};
    for (std::uint64_t seed : {0ULL, 3ULL, 77ULL, 123456ULL}) {
        const EstimationOutcome out = est_amp(cfg, seed);
        CHECK((out.y == 1 || out.y == 5));
        CHECK(out.a_hat == doctest::Approx(0.25).epsilon(1e-12));
    }
}

TEST_CASE("est_amp: t = 0 estimates zero") {
    const EstimationOutcome out = est_amp({8, GuessPrep::uniform(), Oracle(4, {})}, 9);
    CHECK(out.y == 0);
    CHECK(out.a_hat == 0.0);
}

TEST_CASE("est_amp: weighted modal outcome, N=4, M=16") {
    // eigenphase fraction arcsin(0.8)/pi ~ 0.29517; 16 * 0.29517 rounds to 5.
    const EstimationConfig cfg{16, GuessPrep::weighted({0.64, 0.12, 0.12, 0.12}),
                               Oracle(4, {0})};
    const auto dist = est_amp_distribution(cfg);
    std::size_t modal = 0;
    for (std::size_t y = 1; y < 16; ++y) {
        if (dist[y] > dist[modal]) {
            modal = y;
        }
    }
    CHECK(modal == 5);
    CHECK(a_hat_of(5, 16) == doctest::Approx(0.6913417161825449).epsilon(1e-12));
}

TEST_CASE("est_amp accounts M(M-1)/2 oracle applications") {
    const EstimationOutcome out = est_amp({16, GuessPrep::uniform(), Oracle(4, {0})}, 1);
    CHECK(out.q_applications == 120);
}

TEST_CASE("kernel_distribution: exact phase and degenerate cases") {
    // a with theta/pi = 1/6 at M = 6: point masses 1/2 at y = 1 and y = 5.
    const double a = std::pow(std::sin(std::numbers::pi / 6.0), 2);
    const auto exact = kernel_distribution(a, 6);
    CHECK(exact[1] == doctest::Approx(0.5).epsilon(1e-9));
    CHECK(exact[5] == doctest::Approx(0.5).epsilon(1e-9));

    const auto zero = kernel_distribution(0.0, 8);
    CHECK(zero[0] == doctest::Approx(1.0).epsilon(1e-12));

    const auto one = kernel_distribution(1.0, 8);
    CHECK(one[4] == doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("oracle equivalence: joint simulation matches the closed form") {
    SeededRng rng(2718);
    for (std::size_t n : {4UL, 16UL, 64UL}) {
        for (std::size_t m : {4UL, 8UL, 16UL, 32UL}) {
            const EstimationConfig uniform_cfg{m, GuessPrep::uniform(), Oracle(n, {0, 1})};
            const double ua =
                good_probability(prepare(GuessPrep::uniform(), n), uniform_cfg.oracle);
            CHECK(total_variation(est_amp_distribution(uniform_cfg),
                                  kernel_distribution(ua, m)) < 1e-8);

            const GuessPrep prep = random_prep(n, rng);
            const Oracle oracle(n, {0, n / 2});
            const double a = good_probability(prepare(prep, n), oracle);
            CHECK(total_variation(est_amp_distribution({m, prep, oracle}),
                                  kernel_distribution(a, m)) < 1e-8);
        }
    }
}

TEST_CASE("symmetry: distribution[y] == distribution[M-y]") {
    SeededRng rng(31);
    for (int rep = 0; rep < 5; ++rep) {
        const std::size_t n = 4 + static_cast<std::size_t>(rng.uniform() * 28);
        const std::size_t m = 8 + static_cast<std::size_t>(rng.uniform() * 24);
        const auto dist = est_amp_distribution({m, random_prep(n, rng), Oracle(n, {0})});
        double sum = 0.0;
        for (std::size_t y = 1; y < m; ++y) {
            CHECK(dist[y] == doctest::Approx(dist[m - y]).epsilon(1e-9));
        }
        for (double p : dist) {
            CHECK(p >= -1e-12);
            sum += p;
        }
        CHECK(sum == doctest::Approx(1.0).epsilon(1e-9));
    }
}

TEST_CASE("concentration: |a_hat - a| within the phase-estimation bound") {
    // Empirical stand-in for the textbook error bound: relative frequency of
    // |a_hat - a| <= (2 pi sqrt(a(1-a)) + pi^2/M)/M over 1e4 seeded draws.
    for (double a : {0.1, 0.25, 0.5}) {
        for (std::size_t m : {16UL, 32UL, 64UL}) {
            std::vector<double> w = {a, (1 - a) / 3, (1 - a) / 3, (1 - a) / 3};
            const EstimationConfig cfg{m, GuessPrep::weighted(w), Oracle(4, {0})};
            const auto dist = est_amp_distribution(cfg);
            const double md = static_cast<double>(m);
            const double bound =
                (2.0 * std::numbers::pi * std::sqrt(a * (1.0 - a)) +
                 std::numbers::pi * std::numbers::pi / md) /
                md;
            std::size_t hits = 0;
            const std::size_t draws = 10000;
            const auto samples = sample_distribution(dist, 7777, draws);
            for (std::size_t y : samples) {
                hits += std::abs(a_hat_of(y, m) - a) <= bound;
            }
            CHECK(static_cast<double>(hits) / static_cast<double>(draws) >= 0.8);
        }
    }
}

TEST_CASE("choose_m applies the configured minimum") {
    CHECK(choose_m(0.25) == 8);     // paper formula yields 2, floored at min 8
    CHECK(choose_m(0.25, 1) == 2);  // 1/sqrt(0.25)
    CHECK(choose_m(1.0, 1) == 1);
    CHECK(choose_m(1e-4) == 100);
    CHECK_THROWS_AS(choose_m(0.0), std::invalid_argument);
}

TEST_CASE("joint-dimension cap is enforced") {
    SimLimits limits;
    limits.joint_cap = 16;
    CHECK_THROWS_AS(est_amp_distribution({8, GuessPrep::uniform(), Oracle(4, {0})}, limits),
                    CapExceeded);
}
