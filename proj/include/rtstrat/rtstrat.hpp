// rtstrat.hpp - Umbrella header

#pragma once

#include "rtstrat/albedo_operators.hpp"
#include "rtstrat/atmosphere.hpp"
#include "rtstrat/config.hpp"
#include "rtstrat/dual.hpp"
#include "rtstrat/experiments.hpp"
#include "rtstrat/quadrature.hpp"
#include "rtstrat/scalar.hpp"
#include "rtstrat/sensitivity.hpp"
#include "rtstrat/solver_driver.hpp"
#include "rtstrat/special_functions.hpp"
#include "rtstrat/spectral_grid.hpp"
#include "rtstrat/thermal_solver.hpp"
#include "rtstrat/transport_kernel.hpp"
#include "rtstrat/tsv.hpp"
