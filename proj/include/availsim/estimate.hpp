#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>
#include <vector>

#include "availsim/amplify.hpp"
#include "availsim/statevec.hpp"

namespace availsim {

/// Inputs for one Est_Amp(A, f, M) run.
struct EstimationConfig {
    std::size_t register_dim; ///< M
    GuessPrep prep;
    Oracle oracle;
};

/// Measured register value, derived estimate and the full outcome law.
struct EstimationOutcome {
    std::size_t y = 0;
    double a_hat = 0.0; ///< sin^2(pi*y/M)
    std::vector<double> distribution;
    std::uint64_t q_applications = 0; ///< M(M-1)/2 for register dimension M
};

inline double a_hat_of(std::size_t y, std::size_t register_dim) {
    // y and M-y denote the conjugate phases and carry the same estimate;
    // evaluating at min(y, M-y) keeps the two bit-identical.
    const std::size_t folded = y <= register_dim - y ? y : register_dim - y;
    // Fractions whose sin^2 is rational (Niven) are returned exactly so
    // that e.g. y=1, M=6 yields 1/4 and not 1/4 minus one ulp.
    if (folded == 0) {
        return 0.0;
    }
    if (2 * folded == register_dim) {
        return 1.0;
    }
    if (3 * folded == register_dim) {
        return 0.75;
    }
    if (4 * folded == register_dim) {
        return 0.5;
    }
    if (6 * folded == register_dim) {
        return 0.25;
    }
    const double s = std::sin(std::numbers::pi * static_cast<double>(folded) /
                              static_cast<double>(register_dim));
    return s * s;
}

/// Exact outcome law of the estimation register.
///
/// Simulates the joint M*N statevector: start F_M|0> (x) A|0>, apply Q^j to
/// register-slice j, inverse Fourier on the register index, return the
/// marginal over register outcomes. Slices are built incrementally (slice j
/// is Q applied to slice j-1), so the whole joint state costs M-1 Q
/// applications; the algorithm's own oracle budget is still M(M-1)/2.
inline std::vector<double> est_amp_distribution(const EstimationConfig &cfg,
                                                const SimLimits &limits = default_limits()) {
    const std::size_t m = cfg.register_dim;
    const std::size_t n = cfg.oracle.dim();
    if (m == 0) {
        throw std::invalid_argument("est_amp_distribution: register_dim must be >= 1");
    }
    if (m > limits.joint_cap / n) {
        throw CapExceeded("est_amp_distribution: M*N exceeds the joint-dimension cap");
    }
    std::vector<Complex> joint(m * n);
    StateVector cur = prepare(cfg.prep, n);
    const double reg_scale = 1.0 / std::sqrt(static_cast<double>(m));
    for (std::size_t j = 0; j < m; ++j) {
        if (j > 0) {
            cur = apply_q(cur, cfg.prep, cfg.oracle);
        }
        for (std::size_t x = 0; x < n; ++x) {
            joint[j * n + x] = cur.amps[x] * reg_scale;
        }
    }
    // Inverse Fourier over the register index, marginalizing the item index.
    std::vector<Complex> twiddle(m);
    const double base = -2.0 * std::numbers::pi / static_cast<double>(m);
    for (std::size_t k = 0; k < m; ++k) {
        twiddle[k] = std::polar(1.0, base * static_cast<double>(k));
    }
    std::vector<double> dist(m, 0.0);
    for (std::size_t x = 0; x < n; ++x) {
        for (std::size_t y = 0; y < m; ++y) {
            Complex acc = 0.0;
            for (std::size_t j = 0; j < m; ++j) {
                acc += joint[j * n + x] * twiddle[(j * y) % m];
            }
            dist[y] += std::norm(acc) / static_cast<double>(m);
        }
    }
    return dist;
}

/// One sampled estimation run against a precomputed outcome law.
inline EstimationOutcome sample_estimation(const std::vector<double> &distribution,
                                           std::uint64_t seed) {
    EstimationOutcome out;
    out.distribution = distribution;
    out.y = sample_distribution(distribution, seed, 1)[0];
    out.a_hat = a_hat_of(out.y, distribution.size());
    const std::uint64_t m = distribution.size();
    out.q_applications = m * (m - 1) / 2;
    return out;
}

/// Est_Amp(A, f, M): sample y from the exact law, report a_hat = sin^2(pi*y/M).
inline EstimationOutcome est_amp(const EstimationConfig &cfg, std::uint64_t seed,
                                 const SimLimits &limits = default_limits()) {
    return sample_estimation(est_amp_distribution(cfg, limits), seed);
}

/// Closed-form phase-estimation law for a state splitting into the two Q
/// eigenvectors with phase fractions +-theta/pi:
///   P(y) = 1/2 [K_M(y/M - theta/pi) + K_M(y/M + theta/pi)]
///   K_M(d) = sin^2(M pi d) / (M^2 sin^2(pi d)), K_M -> 1 at integer d.
/// Independent of the joint simulation; used to cross-validate it.
inline std::vector<double> kernel_distribution(double a, std::size_t register_dim) {
    if (a < 0.0 || a > 1.0) {
        throw std::invalid_argument("kernel_distribution: requires 0 <= a <= 1");
    }
    const std::size_t m = register_dim;
    const double md = static_cast<double>(m);
    const double phase = std::asin(std::sqrt(a)) / std::numbers::pi;
    auto kernel = [md](double delta) {
        // 1-periodic; reduce to the nearest integer for accuracy.
        const double d = delta - std::round(delta);
        const double den = std::sin(std::numbers::pi * d);
        if (std::abs(den) < 1e-14) {
            return 1.0; // removable singularity
        }
        const double num = std::sin(md * std::numbers::pi * d);
        return (num * num) / (md * md * den * den);
    };
    std::vector<double> dist(m);
    for (std::size_t y = 0; y < m; ++y) {
        const double frac = static_cast<double>(y) / md;
        dist[y] = 0.5 * (kernel(frac - phase) + kernel(frac + phase));
    }
    return dist;
}

/// The paper-style default M = floor(1/sqrt(a_prior)), floored at min_m
/// because small a_prior values otherwise give registers too coarse to
/// resolve anything.
inline std::size_t choose_m(double a_prior, std::size_t min_m = SimLimits{}.min_register_dim) {
    if (!(a_prior > 0.0) || a_prior > 1.0) {
        throw std::invalid_argument("choose_m: requires 0 < a_prior <= 1");
    }
    const auto m = static_cast<std::size_t>(std::floor(1.0 / std::sqrt(a_prior) + 1e-9));
    return m > min_m ? m : min_m;
}

} // namespace availsim
