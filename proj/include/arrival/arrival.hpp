#pragma once

// Umbrella header for the whole library.

#include "arrival/aldous.hpp"    // IWYU pragma: export
#include "arrival/decode.hpp"    // IWYU pragma: export
#include "arrival/eoml.hpp"      // IWYU pragma: export
#include "arrival/errors.hpp"    // IWYU pragma: export
#include "arrival/flow.hpp"      // IWYU pragma: export
#include "arrival/flows.hpp"     // IWYU pragma: export
#include "arrival/graph.hpp"     // IWYU pragma: export
#include "arrival/numeric.hpp"   // IWYU pragma: export
#include "arrival/rng.hpp"       // IWYU pragma: export
#include "arrival/sim.hpp"       // IWYU pragma: export
