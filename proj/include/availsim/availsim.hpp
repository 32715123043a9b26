#pragma once

#include "availsim/amplify.hpp"
#include "availsim/cognition.hpp"
#include "availsim/config.hpp"
#include "availsim/count.hpp"
#include "availsim/errors.hpp"
#include "availsim/estimate.hpp"
#include "availsim/rng.hpp"
#include "availsim/selftest.hpp"
#include "availsim/statevec.hpp"
