#pragma once

// Umbrella header: fractal dimensions of IFS attractors via the Moran
// equation, level enumeration, antichain bounds, box counting, and 2-D
// open-set-condition certificates.

#include "fractaldim/antichain.hpp"
#include "fractaldim/boxcount.hpp"
#include "fractaldim/common.hpp"
#include "fractaldim/dimension.hpp"
#include "fractaldim/generate.hpp"
#include "fractaldim/hmeasure.hpp"
#include "fractaldim/ifs.hpp"
#include "fractaldim/level.hpp"
#include "fractaldim/linalg.hpp"
#include "fractaldim/moran.hpp"
#include "fractaldim/osc.hpp"
#include "fractaldim/report.hpp"
#include "fractaldim/report_io.hpp"
#include "fractaldim/similarity.hpp"
#include "fractaldim/spec_io.hpp"
#include "fractaldim/version.hpp"
