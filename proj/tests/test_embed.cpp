#include <random>
#include <sstream>

#include <Eigen/Eigenvalues>

#include "doctest.h"
#include "swaplab/embed.hpp"
#include "swaplab/generate.hpp"
#include "swaplab/reduce.hpp"

using namespace swaplab;

namespace {

Eigen::MatrixXd to_double_matrix(const ExactInstance& inst) {
  return inst.dist().unaryExpr([](const Rational& v) { return to_double(v); });
}

Eigen::MatrixXd random_symmetric(std::mt19937_64& rng, int n) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  Eigen::MatrixXd a(n, n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j <= i; ++j) a(i, j) = a(j, i) = u(rng);
  }
  return a;
}

}  // namespace

TEST_CASE("Jacobi eigensolver matches Eigen's self-adjoint solver") {
  std::mt19937_64 rng(53);
  for (int trial = 0; trial < 50; ++trial) {
    const int n = 2 + trial % 12;
    const Eigen::MatrixXd a = random_symmetric(rng, n);
    const auto mine = jacobi_eigen(a);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> ref(a);
    CHECK((mine.values - ref.eigenvalues()).cwiseAbs().maxCoeff() <= 1e-10);
    const Eigen::MatrixXd recon = mine.vectors * mine.values.asDiagonal() * mine.vectors.transpose();
    CHECK((recon - a).norm() <= 1e-10 * std::max(1.0, a.norm()));
    CHECK((mine.vectors.transpose() * mine.vectors - Eigen::MatrixXd::Identity(n, n)).norm() <= 1e-10);
  }
}

TEST_CASE("Jacobi eigensolver handles repeated eigenvalues") {
  const Eigen::MatrixXd a = Eigen::MatrixXd::Constant(6, 6, 1.0) + 2.0 * Eigen::MatrixXd::Identity(6, 6);
  const auto e = jacobi_eigen(a);
  for (int i = 0; i < 5; ++i) CHECK(e.values(i) == doctest::Approx(2.0).epsilon(1e-12));
  CHECK(e.values(5) == doctest::Approx(8.0).epsilon(1e-12));
}

TEST_CASE("Schoenberg examples") {
  Eigen::MatrixXd two(2, 2);
  two << 0, 1, 1, 0;
  CHECK(schoenberg_check(two).embeddable);

  Eigen::MatrixXd bad(3, 3);
  bad << 0, 1, 9, 1, 0, 1, 9, 1, 0;
  const auto s = schoenberg_check(bad);
  REQUIRE_FALSE(s.embeddable);
  CHECK(s.witness(0) == doctest::Approx(1.0));
  CHECK(s.witness(1) == doctest::Approx(-2.0));
  CHECK(s.witness(2) == doctest::Approx(1.0));
  CHECK(s.witness_form == doctest::Approx(10.0));
  CHECK(std::abs(s.witness.sum()) <= 1e-12 * s.witness.norm());

  Eigen::MatrixXd asym(2, 2);
  asym << 0, 1, 2, 0;
  CHECK_THROWS_AS(schoenberg_check(asym), InvalidArgument);
}

TEST_CASE("reduced DKM and DFKM matrices embed") {
  for (int n = 1; n <= 5; ++n) {
    for (int m = 1; m <= 6; ++m) {
      std::mt19937_64 rng(static_cast<std::uint64_t>(100 * n + m));
      if (n < 2) continue;
      const auto src = random_sat_instance(rng, n, m, 3, SatMode::Standard);
      const auto art = reduce_sat_to_dkm(src);
      CHECK(schoenberg_check(to_double_matrix(art.target)).embeddable);
    }
  }
  std::mt19937_64 rng(59);
  for (int trial = 0; trial < 10; ++trial) {
    const auto art = reduce_pnaesat_to_dfkm(random_sat_instance(rng, 3, 3, 3, SatMode::Nae));
    CHECK(schoenberg_check(to_double_matrix(art.target)).embeddable);
  }
}

TEST_CASE("classical MDS examples") {
  Eigen::MatrixXd two(2, 2);
  two << 0, 1, 1, 0;
  const auto e2 = classical_mds(two);
  CHECK(e2.points.cols() == 1);
  CHECK((e2.points.row(0) - e2.points.row(1)).squaredNorm() == doctest::Approx(1.0));

  for (int n = 2; n <= 8; ++n) {
    Eigen::MatrixXd simplex = Eigen::MatrixXd::Ones(n, n) - Eigen::MatrixXd::Identity(n, n);
    const auto e = classical_mds(simplex);
    CHECK(e.points.cols() == n - 1);
    CHECK(e.max_abs_error <= 1e-9);
  }

  Eigen::MatrixXd bad(3, 3);
  bad << 0, 1, 9, 1, 0, 1, 9, 1, 0;
  CHECK_THROWS_AS(classical_mds(bad), InvalidArgument);
}

TEST_CASE("classical MDS on a 13-point reduction") {
  std::mt19937_64 rng(61);
  const auto art = reduce_sat_to_dkm(random_sat_instance(rng, 4, 5, 3, SatMode::Standard));
  REQUIRE(art.target.num_points() == 13);
  CHECK(art.constants.epsilon == Rational(1, 26));
  const Eigen::MatrixXd m = to_double_matrix(art.target);
  const auto e = classical_mds(m);
  CHECK(e.points.cols() <= 12);
  CHECK(e.max_abs_error <= 1e-6);
  CHECK(roundtrip_error(m, e.points) == e.max_abs_error);
  // Gram matrix of the centered points reproduces the double-centered matrix.
  Eigen::MatrixXd centered = e.points.rowwise() - e.points.colwise().mean();
  const Eigen::MatrixXd g = double_center(m);
  CHECK((centered * centered.transpose() - g).norm() <= 1e-9 * g.norm());
}

TEST_CASE("roundtrip_error") {
  Eigen::MatrixXd m(2, 2);
  m << 0, 5, 5, 0;
  CHECK(roundtrip_error(m, Eigen::MatrixXd::Zero(2, 3)) == 5.0);
  CHECK(roundtrip_error(Eigen::MatrixXd::Zero(3, 3), Eigen::MatrixXd::Ones(3, 2)) == 0.0);
  CHECK_THROWS_AS(roundtrip_error(m, Eigen::MatrixXd::Zero(3, 1)), InvalidArgument);
}

TEST_CASE("property: PSD test agrees with the quadratic form on centered vectors") {
  std::mt19937_64 rng(67);
  std::uniform_real_distribution<double> coord(-1.0, 1.0);
  std::bernoulli_distribution perturb(0.5);
  int agree = 0;
  for (int trial = 0; trial < 1000; ++trial) {
    const int n = 3 + trial % 5;
    Eigen::MatrixXd pts(n, 2);
    for (int i = 0; i < n; ++i) pts.row(i) << coord(rng), coord(rng);
    Eigen::MatrixXd m(n, n);
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) m(i, j) = (pts.row(i) - pts.row(j)).squaredNorm();
    }
    if (perturb(rng)) {
      m(0, 1) = m(1, 0) = m(0, 1) + 3.0;
    }
    const auto s = schoenberg_check(m);
    // Maximize u^T M u over centered unit vectors via the eigen oracle on J M J.
    const Eigen::MatrixXd j = Eigen::MatrixXd::Identity(n, n) - Eigen::MatrixXd::Constant(n, n, 1.0 / n);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> ref(j * m * j);
    const bool form_nonpositive = ref.eigenvalues().maxCoeff() <= 2e-9;
    agree += s.embeddable == form_nonpositive;
    if (!s.embeddable) {
      CHECK(s.witness_form > 0);
      CHECK(std::abs(s.witness.sum()) <= 1e-12 * s.witness.norm());
    }
  }
  CHECK(agree == 1000);
}

TEST_CASE("CSV formats round trip") {
  Eigen::MatrixXd m(2, 2);
  m << 0, 1.5, 1.5, 0;
  std::stringstream ss;
  write_matrix_csv(ss, m);
  CHECK(read_matrix_csv(ss) == m);
  Eigen::MatrixXd p(3, 2);
  p << 1, 2, 3, 4, 5, 6.25;
  std::stringstream ps;
  write_points_csv(ps, p);
  CHECK(ps.str().rfind("3,2\n", 0) == 0);
  CHECK(read_points_csv(ps) == p);
  std::stringstream broken("2\n0,1\n1\n");
  CHECK_THROWS_AS(read_matrix_csv(broken), ParseError);
}
