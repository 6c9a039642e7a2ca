#pragma once

// Umbrella header for the library modules.

#include "cvw/bounds_general.hpp"
#include "cvw/errors.hpp"
#include "cvw/exact_special.hpp"
#include "cvw/fock_core.hpp"
#include "cvw/gaussian_povm.hpp"
#include "cvw/nongauss.hpp"
#include "cvw/ppt_analytics.hpp"
#include "cvw/states.hpp"
#include "cvw/states_io.hpp"
