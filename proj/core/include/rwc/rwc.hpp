#pragma once

#include "rwc/bounds.hpp"
#include "rwc/cohomology.hpp"
#include "rwc/complex.hpp"
#include "rwc/config.hpp"
#include "rwc/exact_sum.hpp"
#include "rwc/harness.hpp"
#include "rwc/moments.hpp"
#include "rwc/parallel.hpp"
#include "rwc/perturbation.hpp"
#include "rwc/philox.hpp"
#include "rwc/sampling.hpp"
#include "rwc/simplex.hpp"
#include "rwc/statistics.hpp"
#include "rwc/topology.hpp"
#include "rwc/version.hpp"
