#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>

#include "availsim/statevec.hpp"

namespace availsim {

/// Iteration plan for one amplification run over initial good probability a.
struct AmplificationSchedule {
    double a = 0.0;
    double theta = 0.0; ///< arcsin(sqrt(a)), radians
    std::uint64_t iterations = 0;
};

/// Bookkeeping for one retrieval: prepare, iterate, measure once.
struct RetrievalRun {
    std::size_t item = 0;
    bool is_good = false;
    std::uint64_t iterations_used = 0;
    std::uint64_t oracle_calls = 0; ///< one per Q application
};

/// m = floor(pi / (4 arcsin(sqrt(a)))). Floor (not round-half-up): rounding
/// 1.5 up at a = 0.25 drops the success probability to 0.25, below
/// max(a, 1-a).
inline AmplificationSchedule schedule(double a) {
    if (!(a > 0.0) || a > 1.0) {
        throw NoGoodItems("schedule: requires 0 < a <= 1");
    }
    AmplificationSchedule sched;
    sched.a = a;
    sched.theta = std::asin(std::sqrt(a));
    // Tiny nudge so exactly-representable ratios (a = 0.5 gives ratio 1)
    // are not floored down by one ulp of rounding in asin.
    const double ratio = std::numbers::pi / (4.0 * sched.theta) + 1e-9;
    sched.iterations = static_cast<std::uint64_t>(std::floor(ratio));
    return sched;
}

/// Exact good probability of Q^m |s>, from the statevector (no sampling).
inline double success_probability(const GuessPrep &prep, const Oracle &oracle,
                                  std::uint64_t m) {
    if (oracle.good_count() == 0) {
        throw NoGoodItems("success_probability: oracle has no good items");
    }
    StateVector state = prepare(prep, oracle.dim());
    for (std::uint64_t i = 0; i < m; ++i) {
        state = apply_q(state, prep, oracle);
    }
    return good_probability(state, oracle);
}

/// The three-step procedure: prepare, apply Q schedule(a).iterations times,
/// measure once. Reports failure honestly; no retry loop.
inline RetrievalRun retrieve(const GuessPrep &prep, const Oracle &oracle,
                             std::uint64_t seed) {
    if (oracle.good_count() == 0) {
        throw NoGoodItems("retrieve: oracle has no good items");
    }
    StateVector state = prepare(prep, oracle.dim());
    const double a = good_probability(state, oracle);
    const AmplificationSchedule sched = schedule(a);
    for (std::uint64_t i = 0; i < sched.iterations; ++i) {
        state = apply_q(state, prep, oracle);
    }
    RetrievalRun run;
    run.item = measure(state, seed, 1)[0];
    run.is_good = oracle.is_good(run.item);
    run.iterations_used = sched.iterations;
    run.oracle_calls = sched.iterations;
    return run;
}

/// Retrieval-time proxy: Q applications plus one measurement step,
/// asymptotically (pi/4)/sqrt(a).
inline double availability_by_speed(double a) {
    return static_cast<double>(schedule(a).iterations + 1);
}

/// Complete retrievals fitting a time budget.
inline std::uint64_t availability_by_number(double a, std::uint64_t budget) {
    if (a <= 0.0) {
        return 0;
    }
    return static_cast<std::uint64_t>(
        std::floor(static_cast<double>(budget) / availability_by_speed(a)));
}

} // namespace availsim
