#pragma once

#include "conicdual/error.hpp"
#include "conicdual/linops.hpp"
#include "conicdual/cones.hpp"
#include "conicdual/nnls.hpp"
#include "conicdual/simplex.hpp"
#include "conicdual/residual.hpp"
#include "conicdual/farkas.hpp"
#include "conicdual/duality.hpp"
#include "conicdual/complex_lp.hpp"
#include "conicdual/continuous_lp.hpp"
