#pragma once

#include <cstdint>
#include <random>

#include "swaplab/facility.hpp"
#include "swaplab/sat.hpp"

namespace swaplab {

/// Random weighted 2-CNF. Each clause joins two distinct variables (needs
/// num_vars >= 2); STD literals get random polarity, NAE literals are positive.
/// Weights are uniform in [1, max_weight].
SatInstance random_sat_instance(std::mt19937_64& rng, int num_vars, int num_clauses, std::int64_t max_weight,
                                SatMode mode);

/// Random metric MUFL instance: points on an integer grid in the plane with
/// Euclidean distances. The first `num_facilities` points are facilities and
/// every point is a client.
FloatInstance random_metric_mufl(std::mt19937_64& rng, int num_facilities, int num_points);

/// Random DKM instance on integer points in the plane under squared Euclidean distance.
FloatInstance random_euclidean_dkm(std::mt19937_64& rng, int num_points, int k);

}  // namespace swaplab
