#pragma once

#include "diskhull/analytic.hpp"
#include "diskhull/conformal.hpp"
#include "diskhull/estimators.hpp"
#include "diskhull/geometry.hpp"
#include "diskhull/lattice_hull.hpp"
#include "diskhull/quadrature.hpp"
#include "diskhull/report.hpp"
#include "diskhull/rng.hpp"
#include "diskhull/sampling.hpp"
#include "diskhull/version.hpp"
