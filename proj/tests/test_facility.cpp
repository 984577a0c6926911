#include <random>

#include "doctest.h"
#include "oracle.hpp"
#include "swaplab/facility.hpp"
#include "swaplab/generate.hpp"
#include "swaplab/reduce.hpp"

using namespace swaplab;

namespace {

const SatInstance& single_clause() {
  static const SatInstance inst = parse_wsat2("p wsat2 2 1 std\n1 2 1\n");
  return inst;
}

Solution labeled(const ExactInstance& inst, std::initializer_list<const char*> names) {
  std::vector<int> open;
  for (const char* n : names) open.push_back(resolve_point(inst, n));
  return Solution(std::move(open));
}

Rational q(long a, long b = 1) { return Rational(a, b); }

}  // namespace

TEST_CASE("mufl_cost on the single-clause reduction") {
  const auto art = reduce_sat_to_mufl(single_clause());
  const auto& inst = art.target;
  CHECK(mufl_cost(inst, labeled(inst, {"x1", "~x2"})) == q(22, 3));
  CHECK(mufl_cost(inst, labeled(inst, {"x1", "~x1", "x2"})) == q(25, 3));

  const auto g = oracle::mufl_gadget(2, {{{0, true}, {1, true}, 1}});
  const auto ref = oracle::facility_cost(g, 1, oracle::Frac(2), {0, 3});
  CHECK(ref == oracle::Frac(22, 3));
}

TEST_CASE("mufl_cost basic cases") {
  ExactInstance::Matrix d(1, 1);
  d << 0;
  ExactInstance::Vector f(1);
  f << 0;
  const auto inst = ExactInstance::facility_location(d, {3}, {0}, f);
  CHECK(mufl_cost(inst, Solution({0})) == 0);
  CHECK_THROWS_AS(mufl_cost(inst, Solution()), Infeasible);
}

TEST_CASE("dkm_cost on the single-clause reduction") {
  const auto art = reduce_sat_to_dkm(single_clause(), q(3, 2));
  const auto& inst = art.target;
  CHECK(dkm_cost(inst, labeled(inst, {"x1", "~x2"})) == q(31, 10));
  CHECK(dkm_cost(inst, labeled(inst, {"x1", "x2"})) == q(31, 10));
  CHECK_THROWS_AS(dkm_cost(inst, labeled(inst, {"x1"})), Infeasible);

  ExactInstance::Matrix d(2, 2);
  d << 0, 1, 1, 0;
  const auto all = ExactInstance::clustering(ProblemKind::Dkm, d, {1, 1}, 2);
  CHECK(dkm_cost(all, Solution({0, 1})) == 0);
}

TEST_CASE("dfkm_cost basic cases") {
  ExactInstance::Matrix d(2, 2);
  d << 0, 1, 1, 0;
  const auto one = ExactInstance::clustering(ProblemKind::Dfkm, d, {1, 1}, 1);
  CHECK(dfkm_cost(one, Solution({0})) == 1);
  const auto full = ExactInstance::clustering(ProblemKind::Dfkm, d, {1, 1}, 2);
  CHECK(dfkm_cost(full, Solution({0, 1})) == 0);
}

TEST_CASE("optimal memberships") {
  ExactInstance::Matrix d(3, 3);
  d << 0, 4, 4, 4, 0, 8, 4, 8, 0;
  const auto inst = ExactInstance::clustering(ProblemKind::Dfkm, d, {1, 1, 1}, 2);
  const auto r = optimal_memberships(inst, Solution({1, 2}));
  // Point 0 is equidistant from both centers.
  CHECK(r(0, 0) == q(1, 2));
  CHECK(r(0, 1) == q(1, 2));
  CHECK(r(1, 0) == 1);
  CHECK(r(1, 1) == 0);

  const auto single = ExactInstance::clustering(ProblemKind::Dfkm, d, {1, 1, 1}, 1);
  const auto r1 = optimal_memberships(single, Solution({2}));
  for (int c = 0; c < 3; ++c) CHECK(r1(c, 0) == 1);
}

TEST_CASE("zero-distance clients split membership evenly") {
  ExactInstance::Matrix d(3, 3);
  d << 0, 0, 1, 0, 0, 1, 1, 1, 0;
  const auto inst = ExactInstance::clustering(ProblemKind::Dfkm, d, {1, 1, 1}, 2);
  const auto r = optimal_memberships(inst, Solution({0, 1}));
  CHECK(r(0, 0) == q(1, 2));
  CHECK(r(0, 1) == q(1, 2));
  CHECK(r(2, 0) == q(1, 2));
}

TEST_CASE("property: closed-form memberships are optimal and stochastic") {
  std::mt19937_64 rng(17);
  std::uniform_real_distribution<double> noise(0.0, 1.0);
  for (int trial = 0; trial < 30; ++trial) {
    const FloatInstance base = random_euclidean_dkm(rng, 7, 3);
    const auto inst = FloatInstance::clustering(ProblemKind::Dfkm, base.dist(), base.weights(), 3);
    const Solution open({0, 3, 5});
    const auto r = optimal_memberships(inst, open);
    for (Eigen::Index c = 0; c < r.rows(); ++c) {
      CHECK(std::abs(r.row(c).sum() - 1.0) <= 1e-12);
      CHECK(r.row(c).minCoeff() >= 0.0);
    }
    const double best = dfkm_cost(inst, open);
    CHECK(std::abs(fuzzy_objective(inst, open, r) - best) <= 1e-9 * std::max(1.0, best));
    for (int k = 0; k < 10; ++k) {
      Eigen::MatrixXd other = r;
      for (Eigen::Index c = 0; c < other.rows(); ++c) {
        for (Eigen::Index j = 0; j < other.cols(); ++j) other(c, j) += 0.2 * noise(rng);
        other.row(c) /= other.row(c).sum();
      }
      CHECK(best <= fuzzy_objective(inst, open, other) + 1e-9);
    }
  }
}

TEST_CASE("swap neighborhood sizes") {
  ExactInstance::Matrix d = ExactInstance::Matrix::Constant(5, 5, Rational(1));
  for (int i = 0; i < 5; ++i) d(i, i) = 0;
  ExactInstance::Vector f = ExactInstance::Vector::Constant(4, Rational(1));
  const auto mufl = ExactInstance::facility_location(d, {1, 1, 1, 1, 1}, {0, 1, 2, 3}, f);
  CHECK(swap_neighbors(mufl, Solution({1, 2})).size() == 8);
  CHECK(swap_neighbors(mufl, Solution({2})).size() == 3 + 3);
  for (const auto& nb : swap_neighbors(mufl, Solution({2}))) CHECK(!nb.solution.empty());

  const auto dkm = ExactInstance::clustering(ProblemKind::Dkm, d, {1, 1, 1, 1, 1}, 2);
  const auto nbrs = swap_neighbors(dkm, Solution({0, 4}));
  CHECK(nbrs.size() == 6);
  // Lexicographic (dropped, added).
  CHECK(nbrs.front().move == Move::swap(0, 1));
  CHECK(nbrs.back().move == Move::swap(4, 3));
  // The swap relation is symmetric.
  for (const auto& nb : nbrs) {
    const auto back = swap_neighbors(dkm, nb.solution);
    CHECK(std::any_of(back.begin(), back.end(), [](const auto& b) { return b.solution == Solution({0, 4}); }));
  }
}

TEST_CASE("is_reasonable") {
  const auto art = reduce_sat_to_mufl(single_clause());
  const auto& inst = art.target;
  CHECK(is_reasonable(inst, labeled(inst, {"x1", "~x2"})));
  CHECK_FALSE(is_reasonable(inst, labeled(inst, {"x1", "~x1"})));
  CHECK_FALSE(is_reasonable(inst, labeled(inst, {"x1", "x2", "~x2"})));

  ExactInstance::Matrix d(2, 2);
  d << 0, 1, 1, 0;
  const auto bare = ExactInstance::clustering(ProblemKind::Dkm, d, {1, 1}, 1);
  CHECK_THROWS_AS(is_reasonable(bare, Solution({0})), InvalidArgument);
}

TEST_CASE("instance validation") {
  ExactInstance::Matrix asym(2, 2);
  asym << 0, 1, 2, 0;
  CHECK_THROWS_AS(ExactInstance::clustering(ProblemKind::Dkm, asym, {1, 1}, 1), InvalidArgument);
  ExactInstance::Matrix diag(2, 2);
  diag << 1, 1, 1, 0;
  CHECK_THROWS_AS(ExactInstance::clustering(ProblemKind::Dkm, diag, {1, 1}, 1), InvalidArgument);
  ExactInstance::Matrix ok(2, 2);
  ok << 0, 1, 1, 0;
  CHECK_THROWS_AS(ExactInstance::clustering(ProblemKind::Dkm, ok, {1, 1}, 3), InvalidArgument);
  CHECK_THROWS_AS(ExactInstance::clustering(ProblemKind::Dkm, ok, {0, 1}, 1), InvalidArgument);
  ExactInstance::Vector f(1);
  f << -1;
  CHECK_THROWS_AS(ExactInstance::facility_location(ok, {1, 1}, {0}, f), InvalidArgument);
  CHECK_THROWS_AS(ExactInstance::clustering(ProblemKind::Dkm, ok, {1, 1}, 1, {LiteralLabel{0, true}, ClauseLabel{0, 0}}),
                  InvalidArgument);
}

TEST_CASE("property: opening a facility never raises the service term") {
  std::mt19937_64 rng(23);
  for (int trial = 0; trial < 30; ++trial) {
    const auto inst = random_metric_mufl(rng, 5, 8);
    const Solution open({1, 3});
    CHECK(service_cost(inst, open.with_added(0)) <= service_cost(inst, open));
    CHECK(service_cost(inst, open.with_added(4)) <= service_cost(inst, open));
    CHECK_FALSE(find_triangle_violation(inst).has_value());
  }
}

TEST_CASE("point labels") {
  CHECK(to_string(parse_point_label("~x3")) == "~x3");
  CHECK(to_string(parse_point_label("¬x3")) == "~x3");
  CHECK(to_string(parse_point_label("!x3")) == "~x3");
  CHECK(to_string(parse_point_label("b2.1")) == "b2.1");
  CHECK(to_string(parse_point_label("b2")) == "b2");
  CHECK_THROWS(parse_point_label("y1"));
  CHECK(Solution::parse("3;1").to_string() == "1;3");
}

TEST_CASE("reduced MUFL matrix is a metric") {
  std::mt19937_64 rng(29);
  for (int i = 0; i < 10; ++i) {
    const auto art = reduce_sat_to_mufl(random_sat_instance(rng, 3, 4, 3, SatMode::Standard));
    CHECK_FALSE(find_triangle_violation(art.target).has_value());
  }
}
