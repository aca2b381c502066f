#pragma once

#include "sympoly/beta_solver.hpp"
#include "sympoly/interpolator.hpp"
#include "sympoly/matrix_polynomial.hpp"
#include "sympoly/neutral.hpp"
#include "sympoly/pipeline.hpp"
#include "sympoly/symmetry.hpp"
#include "sympoly/types.hpp"
