#pragma once

#include <cstddef>
#include <cstdlib>
#include <string>

namespace availsim {

/// Resource caps for dense simulation.
struct SimLimits {
    std::size_t max_dim = std::size_t{1} << 20;   ///< largest single-register N
    std::size_t joint_cap = std::size_t{1} << 24; ///< largest M*N joint dimension
    std::size_t min_register_dim = 8;             ///< floor applied by choose_m
};

/// Default limits; AVAILSIM_JOINT_CAP overrides the joint-dimension cap.
inline SimLimits default_limits() {
    SimLimits lim;
    if (const char *env = std::getenv("AVAILSIM_JOINT_CAP")) {
        char *end = nullptr;
        const unsigned long long v = std::strtoull(env, &end, 10);
        if (end != env && *end == '\0' && v > 0) {
            lim.joint_cap = static_cast<std::size_t>(v);
        }
    }
    return lim;
}

} // namespace availsim
