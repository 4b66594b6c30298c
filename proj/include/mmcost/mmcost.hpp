#pragma once

#include "mmcost/core.hpp"
#include "mmcost/framework.hpp"
#include "mmcost/geometry.hpp"
#include "mmcost/harness.hpp"
#include "mmcost/io.hpp"
#include "mmcost/learner.hpp"
#include "mmcost/rng.hpp"
#include "mmcost/stats.hpp"
#include "mmcost/verify.hpp"
