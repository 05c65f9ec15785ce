#pragma once

// Umbrella header.

#include "vclab/common.hpp"
#include "vclab/prng.hpp"
#include "vclab/ffield.hpp"
#include "vclab/graph.hpp"
#include "vclab/spectral.hpp"
#include "vclab/builders.hpp"
#include "vclab/pattern.hpp"
#include "vclab/homcount.hpp"
#include "vclab/vcdim.hpp"
#include "vclab/mixing.hpp"
#include "vclab/thresholds.hpp"
#include "vclab/config.hpp"
#include "vclab/cache.hpp"
#include "vclab/report.hpp"
#include "vclab/suites.hpp"
