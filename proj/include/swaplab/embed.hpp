#pragma once

#include <algorithm>
#include <cmath>
#include <iosfwd>

#include <Eigen/Core>

#include "swaplab/error.hpp"

namespace swaplab {

inline constexpr double kDefaultEmbedTol = 1e-9;

/// Eigen-decomposition of a symmetric matrix; values ascending, vectors in the
/// matching columns.
struct SymmetricEigen {
  Eigen::VectorXd values;
  Eigen::MatrixXd vectors;
  int sweeps = 0;
};

/// Cyclic Jacobi rotation method with a fixed row-by-row sweep order. Stops
/// once the off-diagonal Frobenius mass falls below `tol * max(1, ||A||_F)`.
SymmetricEigen jacobi_eigen(const Eigen::MatrixXd& a, double tol = 1e-12, int max_sweeps = 100);

/// G = -1/2 J M J with J = I - (1/n) 1 1^T.
template <typename Derived>
Eigen::MatrixXd double_center(const Eigen::MatrixBase<Derived>& m) {
  const Eigen::MatrixXd md = m.template cast<double>();
  const Eigen::VectorXd row_mean = md.rowwise().mean();
  const Eigen::RowVectorXd col_mean = md.colwise().mean();
  const double grand = md.mean();
  Eigen::MatrixXd g = md;
  g.colwise() -= row_mean;
  g.rowwise() -= col_mean;
  g.array() += grand;
  return -0.5 * g;
}

/// Throws InvalidArgument unless `m` is square, exactly symmetric, has a zero
/// diagonal and nonnegative entries.
void validate_distance_matrix(const Eigen::MatrixXd& m);

struct SchoenbergResult {
  bool embeddable = false;
  /// Smallest eigenvalue of the double-centered Gram matrix.
  double min_eigenvalue = 0.0;
  /// On rejection: u with u . 1 = 0 and u^T M u > 0, scaled so its first
  /// significant entry is +1. Empty otherwise.
  Eigen::VectorXd witness;
  double witness_form = 0.0;
};

/// Squared-distance matrix embeds in l2^2 iff -1/2 J M J is positive
/// semidefinite (up to -tol).
SchoenbergResult schoenberg_check(const Eigen::MatrixXd& m, double tol = kDefaultEmbedTol);

/// max_{i,j} | ||p_i - p_j||^2 - M_ij |.
template <typename DerivedM, typename DerivedP>
double roundtrip_error(const Eigen::MatrixBase<DerivedM>& m, const Eigen::MatrixBase<DerivedP>& points) {
  if (m.rows() != m.cols() || m.rows() != points.rows()) {
    throw InvalidArgument("matrix and point set sizes disagree");
  }
  double worst = 0.0;
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      const double sq = (points.row(i) - points.row(j)).squaredNorm();
      worst = std::max(worst, std::abs(sq - static_cast<double>(m(i, j))));
    }
  }
  return worst;
}

struct EmbeddingResult {
  /// n x D, rows are points, D = number of eigenvalues above tol.
  Eigen::MatrixXd points;
  /// Retained eigenvalues, descending.
  Eigen::VectorXd eigenvalues;
  double max_abs_error = 0.0;
};

/// Classical (Torgerson) MDS: P = V Lambda^{1/2} over the positive spectrum of
/// the double-centered matrix. Throws InvalidArgument if the Schoenberg test fails.
EmbeddingResult classical_mds(const Eigen::MatrixXd& m, double tol = kDefaultEmbedTol);

/// Row-major CSV: header `n` followed by n rows of n values.
void write_matrix_csv(std::ostream& out, const Eigen::MatrixXd& m);
Eigen::MatrixXd read_matrix_csv(std::istream& in);

/// Row-major CSV: header `n,D` followed by n rows of D values.
void write_points_csv(std::ostream& out, const Eigen::MatrixXd& points);
Eigen::MatrixXd read_points_csv(std::istream& in);

}  // namespace swaplab
