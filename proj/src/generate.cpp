#include "swaplab/generate.hpp"

#include <cmath>

namespace swaplab {
namespace {

constexpr int kGrid = 100;

Eigen::MatrixXd random_grid_points(std::mt19937_64& rng, int n) {
  std::uniform_int_distribution<int> coord(0, kGrid);
  Eigen::MatrixXd pts(n, 2);
  for (int i = 0; i < n; ++i) {
    pts(i, 0) = coord(rng);
    pts(i, 1) = coord(rng);
  }
  return pts;
}

std::vector<std::int64_t> random_weights(std::mt19937_64& rng, int n, std::int64_t max_weight) {
  std::uniform_int_distribution<std::int64_t> w(1, max_weight);
  std::vector<std::int64_t> out(static_cast<std::size_t>(n));
  for (auto& v : out) v = w(rng);
  return out;
}

}  // namespace

SatInstance random_sat_instance(std::mt19937_64& rng, int num_vars, int num_clauses, std::int64_t max_weight,
                                SatMode mode) {
  if (num_vars < 2) throw InvalidArgument("random clauses need at least two variables");
  if (max_weight < 1) throw InvalidArgument("max_weight must be positive");
  std::uniform_int_distribution<int> var(0, num_vars - 1);
  std::uniform_int_distribution<int> other(0, num_vars - 2);
  std::bernoulli_distribution coin(0.5);
  std::uniform_int_distribution<std::int64_t> weight(1, max_weight);
  std::vector<Clause> clauses;
  std::vector<std::int64_t> weights;
  for (int m = 0; m < num_clauses; ++m) {
    const int a = var(rng);
    int b = other(rng);
    if (b >= a) ++b;
    const bool pa = mode == SatMode::Nae || coin(rng);
    const bool pb = mode == SatMode::Nae || coin(rng);
    clauses.push_back({Literal{a, pa}, Literal{b, pb}});
    weights.push_back(weight(rng));
  }
  return SatInstance(num_vars, std::move(clauses), std::move(weights), mode);
}

FloatInstance random_metric_mufl(std::mt19937_64& rng, int num_facilities, int num_points) {
  if (num_facilities < 1 || num_points < num_facilities) {
    throw InvalidArgument("need 1 <= facilities <= points");
  }
  const Eigen::MatrixXd pts = random_grid_points(rng, num_points);
  FloatInstance::Matrix dist = FloatInstance::Matrix::Zero(num_points, num_points);
  for (int i = 0; i < num_points; ++i) {
    for (int j = i + 1; j < num_points; ++j) {
      dist(i, j) = dist(j, i) = (pts.row(i) - pts.row(j)).norm();
    }
  }
  auto weights = random_weights(rng, num_points, 5);
  std::vector<int> facilities(static_cast<std::size_t>(num_facilities));
  std::uniform_int_distribution<int> open_cost(20, 200);
  FloatInstance::Vector costs(num_facilities);
  for (int i = 0; i < num_facilities; ++i) {
    facilities[static_cast<std::size_t>(i)] = i;
    costs(i) = open_cost(rng);
  }
  return FloatInstance::facility_location(std::move(dist), std::move(weights), std::move(facilities),
                                          std::move(costs));
}

FloatInstance random_euclidean_dkm(std::mt19937_64& rng, int num_points, int k) {
  const Eigen::MatrixXd pts = random_grid_points(rng, num_points);
  FloatInstance::Matrix dist = FloatInstance::Matrix::Zero(num_points, num_points);
  for (int i = 0; i < num_points; ++i) {
    for (int j = i + 1; j < num_points; ++j) {
      dist(i, j) = dist(j, i) = (pts.row(i) - pts.row(j)).squaredNorm();
    }
  }
  return FloatInstance::clustering(ProblemKind::Dkm, std::move(dist), random_weights(rng, num_points, 5), k);
}

}  // namespace swaplab
