#pragma once

#include "relobs/errors.hpp"
#include "relobs/expression.hpp"
#include "relobs/frame_map.hpp"
#include "relobs/gaussian_rational.hpp"
#include "relobs/grid.hpp"
#include "relobs/models.hpp"
#include "relobs/operator_poly.hpp"
#include "relobs/particle_system.hpp"
#include "relobs/rational.hpp"
#include "relobs/reduction.hpp"
#include "relobs/report.hpp"
#include "relobs/spectral.hpp"
#include "relobs/substitution.hpp"
#include "relobs/symmetry.hpp"
#include "relobs/version.hpp"
