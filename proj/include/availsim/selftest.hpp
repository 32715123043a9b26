#pragma once

#include <cmath>
#include <cstdint>
#include <sstream>
#include <string>
#include <vector>

#include "availsim/amplify.hpp"
#include "availsim/count.hpp"
#include "availsim/estimate.hpp"
#include "availsim/statevec.hpp"

namespace availsim {

struct CheckResult {
    std::string name;
    bool passed = false;
    std::string detail;
};

namespace detail {

inline GuessPrep random_prep(std::size_t n, SeededRng &rng) {
    std::vector<double> w(n);
    for (double &v : w) {
        v = rng.uniform() + 1e-3;
    }
    return GuessPrep::weighted(std::move(w));
}

inline Oracle random_oracle(std::size_t n, SeededRng &rng) {
    std::vector<std::size_t> good;
    for (std::size_t x = 0; x < n; ++x) {
        if (rng.uniform() < 0.3) {
            good.push_back(x);
        }
    }
    if (good.empty()) {
        good.push_back(0);
    }
    return Oracle(n, good);
}

inline double total_variation(const std::vector<double> &p, const std::vector<double> &q) {
    double tv = 0.0;
    for (std::size_t i = 0; i < p.size(); ++i) {
        tv += std::abs(p[i] - q[i]);
    }
    return 0.5 * tv;
}

} // namespace detail

/// Reduced-size invariant suite (N <= 64, M <= 32). `perturb_kernel` is a
/// test hook that biases the closed-form law so the oracle-equivalence
/// check must fail (negative control for the harness itself).
inline std::vector<CheckResult> run_selftest(bool perturb_kernel = false) {
    std::vector<CheckResult> checks;
    auto record = [&checks](const std::string &name, bool ok, const std::string &detail) {
        checks.push_back({name, ok, detail});
    };

    // Norm preservation under random Q sequences.
    {
        SeededRng rng(12345);
        bool ok = true;
        double worst = 0.0;
        for (int rep = 0; rep < 20 && ok; ++rep) {
            const std::size_t n = 4 + static_cast<std::size_t>(rng.uniform() * 60);
            const GuessPrep prep = detail::random_prep(n, rng);
            const Oracle oracle = detail::random_oracle(n, rng);
            StateVector state = prepare(prep, n);
            for (int it = 0; it < 10; ++it) {
                state = apply_q(state, prep, oracle);
                worst = std::max(worst, std::abs(state.norm_sq() - 1.0));
            }
            ok = worst < kNormTolerance;
        }
        std::ostringstream os;
        os << "max |norm^2 - 1| = " << worst;
        record("norm_preservation", ok, os.str());
    }

    // Rotation closed form: good probability of Q^m|s> is sin^2((2m+1)theta).
    {
        SeededRng rng(777);
        bool ok = true;
        double worst = 0.0;
        for (int rep = 0; rep < 10; ++rep) {
            const std::size_t n = 4 + static_cast<std::size_t>(rng.uniform() * 60);
            const GuessPrep prep = detail::random_prep(n, rng);
            const Oracle oracle = detail::random_oracle(n, rng);
            const double a = good_probability(prepare(prep, n), oracle);
            const double theta = std::asin(std::sqrt(a));
            StateVector state = prepare(prep, n);
            for (std::uint64_t m = 0; m <= 20; ++m) {
                const double expected = std::pow(std::sin((2.0 * m + 1.0) * theta), 2);
                worst = std::max(worst, std::abs(good_probability(state, oracle) - expected));
                state = apply_q(state, prep, oracle);
            }
        }
        ok = worst < kNormTolerance;
        std::ostringstream os;
        os << "max deviation = " << worst;
        record("rotation_closed_form", ok, os.str());
    }

    // QFT round trip.
    {
        SeededRng rng(99);
        StateVector state;
        state.amps.resize(16);
        double norm = 0.0;
        for (Complex &c : state.amps) {
            c = Complex(rng.uniform() - 0.5, rng.uniform() - 0.5);
            norm += std::norm(c);
        }
        for (Complex &c : state.amps) {
            c /= std::sqrt(norm);
        }
        const StateVector back = qft(qft(state, FourierDirection::Forward),
                                     FourierDirection::Inverse);
        double worst = 0.0;
        for (std::size_t x = 0; x < state.dim(); ++x) {
            worst = std::max(worst, std::abs(back.amps[x] - state.amps[x]));
        }
        record("qft_round_trip", worst < kNormTolerance, "max amp deviation = " + std::to_string(worst));
    }

    // Amplification guarantee on a coarse grid.
    {
        bool ok = true;
        double worst_margin = 1.0;
        for (double a = 0.05; a < 1.0; a += 0.05) {
            const std::size_t n = 16;
            std::vector<double> w(n, (1.0 - a) / static_cast<double>(n - 1));
            w[0] = a;
            const GuessPrep prep = GuessPrep::weighted(w);
            const Oracle oracle(n, {0});
            const double p = success_probability(prep, oracle, schedule(a).iterations);
            const double margin = p - std::max(a, 1.0 - a);
            worst_margin = std::min(worst_margin, margin);
            ok = ok && margin >= -kNormTolerance;
        }
        std::ostringstream os;
        os << "min margin over max(a,1-a) = " << worst_margin;
        record("amplification_guarantee", ok, os.str());
    }

    // Oracle equivalence: joint simulation vs closed-form law.
    {
        SeededRng rng(4242);
        double worst_tv = 0.0;
        for (int rep = 0; rep < 8; ++rep) {
            const std::size_t n = 4 + static_cast<std::size_t>(rng.uniform() * 28);
            const std::size_t m = 8 + 4 * static_cast<std::size_t>(rng.uniform() * 6);
            const GuessPrep prep = detail::random_prep(n, rng);
            const Oracle oracle = detail::random_oracle(n, rng);
            const double a = good_probability(prepare(prep, n), oracle);
            std::vector<double> expected = kernel_distribution(a, m);
            if (perturb_kernel) {
                expected[0] += 1e-3; // injected perturbation, must be caught
            }
            worst_tv = std::max(
                worst_tv, detail::total_variation(est_amp_distribution({m, prep, oracle}), expected));
        }
        std::ostringstream os;
        os << "max total variation = " << worst_tv;
        record("estimation_oracle_equivalence", worst_tv < 1e-8, os.str());
    }

    // Exact-phase determinism and counting faithfulness: N=4, t=1, M=6.
    {
        const GuessPrep prep = GuessPrep::uniform();
        const Oracle oracle(4, {0});
        const std::vector<double> dist = est_amp_distribution({6, prep, oracle});
        const double mass = dist[1] + dist[5];
        const CountEstimate ct = count(prep, oracle, 6, 31337);
        const bool ok = mass > 1.0 - kNormTolerance && std::abs(ct.t_hat - 1.0) < 1e-9;
        std::ostringstream os;
        os << "P(y in {1,5}) = " << mass << ", t_hat = " << ct.t_hat;
        record("exact_phase_determinism", ok, os.str());
    }

    // Counting bias direction for an over-weighted good item.
    {
        const GuessPrep prep = GuessPrep::weighted({0.64, 0.12, 0.12, 0.12});
        const Oracle oracle(4, {0});
        const double median = distribution_median(count_distribution(prep, oracle, 16));
        record("counting_bias_direction", median > 1.0,
               "median t_hat = " + std::to_string(median) + " (t = 1)");
    }

    return checks;
}

} // namespace availsim
