#pragma once

#include "splinezero/boxspline.hpp"
#include "splinezero/bspline.hpp"
#include "splinezero/census.hpp"
#include "splinezero/errors.hpp"
#include "splinezero/geometry.hpp"
#include "splinezero/harness.hpp"
#include "splinezero/json_io.hpp"
#include "splinezero/matrix.hpp"
#include "splinezero/polynomial.hpp"
#include "splinezero/rational.hpp"
#include "splinezero/spline.hpp"
