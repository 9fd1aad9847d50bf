#pragma once
// Umbrella header.

#include "bump.hpp"
#include "catalog.hpp"
#include "coeff_tree.hpp"
#include "dyadic.hpp"
#include "estimators.hpp"
#include "experiment.hpp"
#include "geometry.hpp"
#include "holder.hpp"
#include "neighborhood.hpp"
#include "oracles.hpp"
#include "plan.hpp"
#include "quadrature.hpp"
#include "risk.hpp"
#include "rng.hpp"
#include "sequence.hpp"
#include "serialize.hpp"
#include "shrinkage.hpp"
#include "stats.hpp"
#include "transform.hpp"
#include "wavelet.hpp"
