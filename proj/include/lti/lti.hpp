#pragma once

// Umbrella header for the LTI analysis and design toolkit.

#include "design.hpp"
#include "eigen.hpp"
#include "errors.hpp"
#include "expm.hpp"
#include "gramian.hpp"
#include "linalg.hpp"
#include "matrix.hpp"
#include "signal.hpp"
#include "simulate.hpp"
#include "stability.hpp"
#include "state_space.hpp"
