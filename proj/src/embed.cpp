#include "swaplab/embed.hpp"

#include <istream>
#include <numeric>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include <Eigen/Jacobi>

#include "swaplab/rational.hpp"

namespace swaplab {
namespace {

double off_diagonal_norm(const Eigen::MatrixXd& a) {
  double sum = 0.0;
  for (Eigen::Index j = 0; j < a.cols(); ++j) {
    for (Eigen::Index i = 0; i < a.rows(); ++i) {
      if (i != j) sum += a(i, j) * a(i, j);
    }
  }
  return std::sqrt(sum);
}

std::vector<double> parse_row(const std::string& line, std::size_t line_no) {
  std::vector<double> values;
  std::stringstream ss(line);
  std::string cell;
  while (std::getline(ss, cell, ',')) values.push_back(to_double(parse_rational(cell)));
  if (values.empty()) throw ParseError("empty CSV row", line_no);
  return values;
}

Eigen::MatrixXd read_csv_body(std::istream& in, Eigen::Index rows, Eigen::Index cols, std::size_t& line_no) {
  Eigen::MatrixXd out(rows, cols);
  std::string line;
  for (Eigen::Index i = 0; i < rows; ++i) {
    if (!std::getline(in, line)) throw ParseError("expected " + std::to_string(rows) + " data rows", line_no);
    ++line_no;
    auto row = parse_row(line, line_no);
    if (static_cast<Eigen::Index>(row.size()) != cols) {
      throw ParseError("expected " + std::to_string(cols) + " values", line_no);
    }
    for (Eigen::Index j = 0; j < cols; ++j) out(i, j) = row[static_cast<std::size_t>(j)];
  }
  return out;
}

void write_rows(std::ostream& out, const Eigen::MatrixXd& m) {
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      if (j > 0) out << ',';
      out << format_double(m(i, j));
    }
    out << '\n';
  }
}

}  // namespace

SymmetricEigen jacobi_eigen(const Eigen::MatrixXd& a, double tol, int max_sweeps) {
  if (a.rows() != a.cols()) throw InvalidArgument("eigensolver needs a square matrix");
  const Eigen::Index n = a.rows();
  Eigen::MatrixXd work = a;
  Eigen::MatrixXd vectors = Eigen::MatrixXd::Identity(n, n);
  const double threshold = tol * std::max(1.0, a.norm());
  int sweep = 0;
  for (; sweep < max_sweeps && off_diagonal_norm(work) > threshold; ++sweep) {
    for (Eigen::Index p = 0; p + 1 < n; ++p) {
      for (Eigen::Index q = p + 1; q < n; ++q) {
        if (work(p, q) == 0.0) continue;
        Eigen::JacobiRotation<double> rot;
        rot.makeJacobi(work, p, q);
        work.applyOnTheLeft(p, q, rot.adjoint());
        work.applyOnTheRight(p, q, rot);
        vectors.applyOnTheRight(p, q, rot);
        work(p, q) = 0.0;
        work(q, p) = 0.0;
      }
    }
  }
  if (off_diagonal_norm(work) > threshold) {
    throw std::runtime_error("Jacobi eigensolver did not converge in " + std::to_string(max_sweeps) + " sweeps");
  }

  std::vector<Eigen::Index> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), Eigen::Index{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](Eigen::Index i, Eigen::Index j) { return work(i, i) < work(j, j); });
  SymmetricEigen out;
  out.values.resize(n);
  out.vectors.resize(n, n);
  for (Eigen::Index k = 0; k < n; ++k) {
    out.values(k) = work(order[static_cast<std::size_t>(k)], order[static_cast<std::size_t>(k)]);
    out.vectors.col(k) = vectors.col(order[static_cast<std::size_t>(k)]);
  }
  out.sweeps = sweep;
  return out;
}

void validate_distance_matrix(const Eigen::MatrixXd& m) {
  if (m.rows() != m.cols() || m.rows() == 0) throw InvalidArgument("distance matrix must be square and nonempty");
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    if (m(i, i) != 0.0) throw InvalidArgument("distance matrix needs a zero diagonal");
    for (Eigen::Index j = i + 1; j < m.cols(); ++j) {
      if (m(i, j) != m(j, i)) {
        throw InvalidArgument("distance matrix is not symmetric at (" + std::to_string(i) + "," +
                              std::to_string(j) + ")");
      }
      if (m(i, j) < 0.0) throw InvalidArgument("distances must be nonnegative");
    }
  }
}

SchoenbergResult schoenberg_check(const Eigen::MatrixXd& m, double tol) {
  validate_distance_matrix(m);
  const auto eig = jacobi_eigen(double_center(m));
  SchoenbergResult result;
  result.min_eigenvalue = eig.values(0);
  result.embeddable = result.min_eigenvalue >= -tol;
  if (result.embeddable) return result;

  Eigen::VectorXd u = eig.vectors.col(0);
  u.array() -= u.mean();
  const double scale = u.cwiseAbs().maxCoeff();
  Eigen::Index lead = 0;
  while (std::abs(u(lead)) <= 1e-6 * scale) ++lead;
  u /= u(lead);
  u.array() -= u.mean();
  result.witness = u;
  result.witness_form = u.dot(m * u);
  return result;
}

EmbeddingResult classical_mds(const Eigen::MatrixXd& m, double tol) {
  const auto check = schoenberg_check(m, tol);
  if (!check.embeddable) {
    throw InvalidArgument("matrix is not embeddable in l2^2 (smallest Gram eigenvalue " +
                          format_double(check.min_eigenvalue) + ")");
  }
  const auto eig = jacobi_eigen(double_center(m));
  const Eigen::Index n = m.rows();
  std::vector<Eigen::Index> kept;
  for (Eigen::Index k = n; k-- > 0;) {
    if (eig.values(k) > tol) kept.push_back(k);
  }
  EmbeddingResult out;
  out.points.resize(n, static_cast<Eigen::Index>(kept.size()));
  out.eigenvalues.resize(static_cast<Eigen::Index>(kept.size()));
  for (std::size_t c = 0; c < kept.size(); ++c) {
    const auto col = static_cast<Eigen::Index>(c);
    out.eigenvalues(col) = eig.values(kept[c]);
    out.points.col(col) = eig.vectors.col(kept[c]) * std::sqrt(eig.values(kept[c]));
  }
  out.max_abs_error = roundtrip_error(m, out.points);
  return out;
}

void write_matrix_csv(std::ostream& out, const Eigen::MatrixXd& m) {
  out << m.rows() << '\n';
  write_rows(out, m);
}

Eigen::MatrixXd read_matrix_csv(std::istream& in) {
  std::string line;
  std::size_t line_no = 1;
  if (!std::getline(in, line)) throw ParseError("missing header line", line_no);
  long n = 0;
  try {
    n = std::stol(line);
  } catch (const std::exception&) {
    throw ParseError("header must be the matrix size n", line_no);
  }
  if (n < 1 || line.find(',') != std::string::npos) throw ParseError("header must be the matrix size n", line_no);
  return read_csv_body(in, n, n, line_no);
}

void write_points_csv(std::ostream& out, const Eigen::MatrixXd& points) {
  out << points.rows() << ',' << points.cols() << '\n';
  write_rows(out, points);
}

Eigen::MatrixXd read_points_csv(std::istream& in) {
  std::string line;
  std::size_t line_no = 1;
  if (!std::getline(in, line)) throw ParseError("missing header line", line_no);
  auto comma = line.find(',');
  if (comma == std::string::npos) throw ParseError("header must be 'n,D'", line_no);
  long n = 0, d = 0;
  try {
    n = std::stol(line.substr(0, comma));
    d = std::stol(line.substr(comma + 1));
  } catch (const std::exception&) {
    throw ParseError("header must be 'n,D'", line_no);
  }
  if (n < 1 || d < 0) throw ParseError("header must be 'n,D'", line_no);
  if (d == 0) return Eigen::MatrixXd(n, 0);
  return read_csv_body(in, n, d, line_no);
}

}  // namespace swaplab
