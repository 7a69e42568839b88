#pragma once

// Convenience header pulling in the whole library.

#include "pdm/analytic_well.hpp"
#include "pdm/banded.hpp"
#include "pdm/deformed_algebra.hpp"
#include "pdm/error.hpp"
#include "pdm/evolution.hpp"
#include "pdm/numeric_solver.hpp"
#include "pdm/observables.hpp"
#include "pdm/operators.hpp"
#include "pdm/params.hpp"
#include "pdm/tridiagonal_eigen.hpp"
#include "pdm/wavefunction.hpp"
