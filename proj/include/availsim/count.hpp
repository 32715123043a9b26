#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "availsim/estimate.hpp"

namespace availsim {

/// Result of one counting run, t_hat = N * a_hat. Kept as a real; rounding
/// policy is left to consumers.
struct CountEstimate {
    double t_hat = 0.0;
    double a_hat = 0.0;
    std::size_t y = 0;
    std::uint64_t t_true = 0;
    bool biased = false; ///< prep is not UniformFourier
    std::uint64_t quantum_oracle_calls = 0;   ///< M(M-1)/2
    std::uint64_t classical_oracle_calls = 0; ///< N, the classical sampling budget
};

/// One aggregated count value and its probability.
struct CountBin {
    double t_hat = 0.0;
    double probability = 0.0;
};

/// Count(A, f, M) = N * Est_Amp(A, f, M).
inline CountEstimate count(const GuessPrep &prep, const Oracle &oracle, std::size_t register_dim,
                           std::uint64_t seed, const SimLimits &limits = default_limits()) {
    const EstimationOutcome est = est_amp({register_dim, prep, oracle}, seed, limits);
    CountEstimate out;
    out.a_hat = est.a_hat;
    out.y = est.y;
    out.t_hat = static_cast<double>(oracle.dim()) * est.a_hat;
    out.t_true = oracle.good_count();
    out.biased = !prep.is_uniform();
    out.quantum_oracle_calls = est.q_applications;
    out.classical_oracle_calls = oracle.dim();
    return out;
}

/// Exact law over t_hat values; outcomes y and M-y carry the same estimate
/// and are merged. Bins are ascending in t_hat.
inline std::vector<CountBin> count_distribution(const GuessPrep &prep, const Oracle &oracle,
                                                std::size_t register_dim,
                                                const SimLimits &limits = default_limits()) {
    const std::vector<double> dist = est_amp_distribution({register_dim, prep, oracle}, limits);
    const std::size_t m = register_dim;
    const double n = static_cast<double>(oracle.dim());
    std::vector<CountBin> bins;
    for (std::size_t y = 0; y <= m / 2; ++y) {
        double p = dist[y];
        const std::size_t mirror = (m - y) % m;
        if (mirror != y) {
            p += dist[mirror];
        }
        bins.push_back({n * a_hat_of(y, m), p});
    }
    return bins;
}

/// Smallest t_hat whose cumulative probability reaches 1/2.
inline double distribution_median(const std::vector<CountBin> &bins) {
    double acc = 0.0;
    for (const CountBin &b : bins) {
        acc += b.probability;
        if (acc >= 0.5) {
            return b.t_hat;
        }
    }
    return bins.empty() ? 0.0 : bins.back().t_hat;
}

/// Most probable t_hat value.
inline double distribution_mode(const std::vector<CountBin> &bins) {
    double best_p = -1.0, best_t = 0.0;
    for (const CountBin &b : bins) {
        if (b.probability > best_p) {
            best_p = b.probability;
            best_t = b.t_hat;
        }
    }
    return best_t;
}

} // namespace availsim
