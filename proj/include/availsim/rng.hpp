#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "availsim/errors.hpp"

namespace availsim {

/// splitmix64 mixing step; used to derive independent seed streams.
inline std::uint64_t mix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

/// Sub-seed for stream `stream` of a base seed.
inline std::uint64_t derive_seed(std::uint64_t base, std::uint64_t stream) {
    return mix64(base ^ mix64(stream + 1));
}

/// Deterministic uniform stream. uniform() is in [0, 1) and does not go
/// through std::uniform_real_distribution, so the byte sequence is fixed
/// across standard library implementations.
class SeededRng {
  public:
    explicit SeededRng(std::uint64_t seed) : engine_(seed) {}

    double uniform() {
        return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
    }

  private:
    std::mt19937_64 engine_;
};

/// Inverse-CDF sampling of `shots` i.i.d. indices from a probability vector.
/// Tolerates probabilities summing to 1 only within floating slack.
inline std::vector<std::size_t> sample_distribution(const std::vector<double> &probs,
                                                    std::uint64_t seed,
                                                    std::size_t shots) {
    std::vector<double> cdf(probs.size());
    double acc = 0.0;
    for (std::size_t i = 0; i < probs.size(); ++i) {
        acc += probs[i] > 0.0 ? probs[i] : 0.0;
        cdf[i] = acc;
    }
    if (acc <= 0.0) {
        throw std::invalid_argument("sample_distribution: zero total mass");
    }
    SeededRng rng(seed);
    std::vector<std::size_t> out;
    out.reserve(shots);
    for (std::size_t s = 0; s < shots; ++s) {
        const double u = rng.uniform() * acc;
        std::size_t lo = 0, hi = cdf.size() - 1;
        while (lo < hi) {
            const std::size_t mid = (lo + hi) / 2;
            if (cdf[mid] > u) {
                hi = mid;
            } else {
                lo = mid + 1;
            }
        }
        out.push_back(lo);
    }
    return out;
}

} // namespace availsim
