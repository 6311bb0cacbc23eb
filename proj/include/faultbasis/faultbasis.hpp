#pragma once

#include "faultbasis/diversity.hpp"
#include "faultbasis/errors.hpp"
#include "faultbasis/gf2.hpp"
#include "faultbasis/matrix.hpp"
#include "faultbasis/metrics.hpp"
#include "faultbasis/pipeline.hpp"
#include "faultbasis/prefilter.hpp"
#include "faultbasis/ratio.hpp"
#include "faultbasis/records.hpp"
#include "faultbasis/reporting.hpp"
#include "faultbasis/rng.hpp"
#include "faultbasis/signature.hpp"
#include "faultbasis/synth.hpp"
#include "faultbasis/verdict.hpp"
#include "faultbasis/wrongselect.hpp"
