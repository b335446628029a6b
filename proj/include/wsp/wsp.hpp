#pragma once

// Umbrella header.

#include "wsp/bench.hpp"      // IWYU pragma: export
#include "wsp/bignat.hpp"     // IWYU pragma: export
#include "wsp/chain.hpp"      // IWYU pragma: export
#include "wsp/error.hpp"      // IWYU pragma: export
#include "wsp/formats.hpp"    // IWYU pragma: export
#include "wsp/generate.hpp"   // IWYU pragma: export
#include "wsp/instances.hpp"  // IWYU pragma: export
#include "wsp/matching.hpp"   // IWYU pragma: export
#include "wsp/model.hpp"      // IWYU pragma: export
#include "wsp/partitions.hpp" // IWYU pragma: export
#include "wsp/recognizers.hpp" // IWYU pragma: export
#include "wsp/reductions.hpp" // IWYU pragma: export
#include "wsp/rng.hpp"        // IWYU pragma: export
#include "wsp/solve.hpp"      // IWYU pragma: export
