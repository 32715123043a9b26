#pragma once

#include <cmath>
#include <complex>
#include <cstddef>
#include <cstdint>
#include <numbers>
#include <vector>

#include "availsim/config.hpp"
#include "availsim/errors.hpp"
#include "availsim/rng.hpp"

namespace availsim {

using Complex = std::complex<double>;

inline constexpr double kNormTolerance = 1e-9;

/// Dense complex statevector over items 0..dim-1. Values are treated as
/// immutable: all operators below return new vectors.
struct StateVector {
    std::vector<Complex> amps;

    std::size_t dim() const { return amps.size(); }

    double norm_sq() const {
        double s = 0.0;
        for (const Complex &c : amps) {
            s += std::norm(c);
        }
        return s;
    }
};

/// Boolean partition f over {0..N-1}; good means f(x) = 1.
class Oracle {
  public:
    Oracle(std::size_t dim, const std::vector<std::size_t> &good)
        : dim_(dim), mask_(dim, 0), good_count_(0) {
        if (dim == 0) {
            throw std::invalid_argument("Oracle: dim must be >= 1");
        }
        for (std::size_t x : good) {
            if (x >= dim) {
                throw std::invalid_argument("Oracle: good index out of range");
            }
            if (!mask_[x]) {
                mask_[x] = 1;
                ++good_count_;
            }
        }
    }

    std::size_t dim() const { return dim_; }
    std::size_t good_count() const { return good_count_; }
    bool is_good(std::size_t x) const { return mask_[x] != 0; }

    std::vector<std::size_t> good_items() const {
        std::vector<std::size_t> out;
        out.reserve(good_count_);
        for (std::size_t x = 0; x < dim_; ++x) {
            if (mask_[x]) {
                out.push_back(x);
            }
        }
        return out;
    }

  private:
    std::size_t dim_;
    std::vector<std::uint8_t> mask_;
    std::size_t good_count_;
};

/// Specification of the preparation A. UniformFourier is the flat guess
/// state; Weighted carries a probability mass per item.
class GuessPrep {
  public:
    enum class Variant { UniformFourier, Weighted };

    static GuessPrep uniform() { return GuessPrep(Variant::UniformFourier, {}); }

    /// Weights are validated (non-negative, positive total) and normalized
    /// to sum 1.
    static GuessPrep weighted(std::vector<double> w) {
        double total = 0.0;
        for (double v : w) {
            if (v < 0.0 || !std::isfinite(v)) {
                throw std::invalid_argument("GuessPrep: negative or non-finite weight");
            }
            total += v;
        }
        if (total <= 0.0) {
            throw std::invalid_argument("GuessPrep: zero total weight");
        }
        for (double &v : w) {
            v /= total;
        }
        return GuessPrep(Variant::Weighted, std::move(w));
    }

    Variant variant() const { return variant_; }
    bool is_uniform() const { return variant_ == Variant::UniformFourier; }

    /// Only meaningful for Weighted.
    const std::vector<double> &weights() const { return weights_; }

    double weight_at(std::size_t x, std::size_t dim) const {
        return is_uniform() ? 1.0 / static_cast<double>(dim) : weights_[x];
    }

  private:
    GuessPrep(Variant v, std::vector<double> w) : variant_(v), weights_(std::move(w)) {}

    Variant variant_;
    std::vector<double> weights_;
};

/// A|0>: amplitudes are the real non-negative square roots of the weights.
inline StateVector prepare(const GuessPrep &prep, std::size_t dim) {
    if (dim == 0) {
        throw std::invalid_argument("prepare: dim must be >= 1");
    }
    if (!prep.is_uniform() && prep.weights().size() != dim) {
        throw DimensionMismatch("prepare: weight vector length does not match dim");
    }
    StateVector s;
    s.amps.resize(dim);
    if (prep.is_uniform()) {
        const double amp = 1.0 / std::sqrt(static_cast<double>(dim));
        for (std::size_t x = 0; x < dim; ++x) {
            s.amps[x] = amp;
        }
    } else {
        for (std::size_t x = 0; x < dim; ++x) {
            s.amps[x] = std::sqrt(prep.weights()[x]);
        }
    }
    return s;
}

/// a = <psi_1|psi_1>, the mass on the good subspace.
inline double good_probability(const StateVector &state, const Oracle &oracle) {
    if (state.dim() != oracle.dim()) {
        throw DimensionMismatch("good_probability: state/oracle dimension mismatch");
    }
    double a = 0.0;
    for (std::size_t x = 0; x < state.dim(); ++x) {
        if (oracle.is_good(x)) {
            a += std::norm(state.amps[x]);
        }
    }
    return a;
}

/// S_f: flip the sign of good amplitudes.
inline StateVector apply_sf(const StateVector &state, const Oracle &oracle) {
    if (state.dim() != oracle.dim()) {
        throw DimensionMismatch("apply_sf: state/oracle dimension mismatch");
    }
    StateVector out = state;
    for (std::size_t x = 0; x < out.dim(); ++x) {
        if (oracle.is_good(x)) {
            out.amps[x] = -out.amps[x];
        }
    }
    return out;
}

/// One amplification step Q = -A S_0 A^-1 S_f, applied through the
/// reflection identity Q = (2|s><s| - I) S_f with |s> = prepare(prep).
/// Cost O(N); no matrix is materialized.
inline StateVector apply_q(const StateVector &state, const GuessPrep &prep,
                           const Oracle &oracle) {
    if (state.dim() != oracle.dim()) {
        throw DimensionMismatch("apply_q: state/oracle dimension mismatch");
    }
    const StateVector s = prepare(prep, state.dim());
    StateVector v = apply_sf(state, oracle);
    Complex overlap = 0.0;
    for (std::size_t x = 0; x < v.dim(); ++x) {
        overlap += s.amps[x].real() * v.amps[x]; // <s| is real
    }
    StateVector out;
    out.amps.resize(v.dim());
    for (std::size_t x = 0; x < v.dim(); ++x) {
        out.amps[x] = 2.0 * overlap * s.amps[x].real() - v.amps[x];
    }
    return out;
}

enum class FourierDirection { Forward, Inverse };

/// Discrete Fourier transform with the unitary kernel
/// exp(+-2*pi*i*x*y/N) / sqrt(N). O(N^2) dense evaluation.
inline StateVector qft(const StateVector &state, FourierDirection direction) {
    const std::size_t n = state.dim();
    const double sign = direction == FourierDirection::Forward ? 1.0 : -1.0;
    const double base = sign * 2.0 * std::numbers::pi / static_cast<double>(n);
    // Twiddle table indexed by (x*y) mod N keeps the phase argument small.
    std::vector<Complex> twiddle(n);
    for (std::size_t k = 0; k < n; ++k) {
        twiddle[k] = std::polar(1.0, base * static_cast<double>(k));
    }
    StateVector out;
    out.amps.assign(n, Complex{0.0, 0.0});
    const double scale = 1.0 / std::sqrt(static_cast<double>(n));
    for (std::size_t y = 0; y < n; ++y) {
        Complex acc = 0.0;
        for (std::size_t x = 0; x < n; ++x) {
            acc += state.amps[x] * twiddle[(x * y) % n];
        }
        out.amps[y] = acc * scale;
    }
    return out;
}

/// `shots` i.i.d. computational-basis samples from |amps|^2.
inline std::vector<std::size_t> measure(const StateVector &state, std::uint64_t seed,
                                        std::size_t shots) {
    if (shots == 0) {
        throw std::invalid_argument("measure: shots must be >= 1");
    }
    std::vector<double> probs(state.dim());
    for (std::size_t x = 0; x < state.dim(); ++x) {
        probs[x] = std::norm(state.amps[x]);
    }
    return sample_distribution(probs, seed, shots);
}

} // namespace availsim
