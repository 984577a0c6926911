#pragma once

#include <algorithm>
#include <array>
#include <compare>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include <Eigen/Core>

#include "swaplab/error.hpp"
#include "swaplab/move.hpp"
#include "swaplab/rational.hpp"

namespace swaplab {

enum class ProblemKind { Mufl, Dkm, Dfkm };

std::string to_string(ProblemKind kind);
ProblemKind parse_problem_kind(std::string_view text);

struct LiteralLabel {
  int var = 0;
  bool positive = true;
  bool operator==(const LiteralLabel&) const = default;
};

/// `copy` is 0 for an undoubled clause point, 1 or 2 for the two points of a
/// doubled clause.
struct ClauseLabel {
  int clause = 0;
  int copy = 0;
  bool operator==(const ClauseLabel&) const = default;
};

using PointLabel = std::variant<LiteralLabel, ClauseLabel>;

/// "x3", "~x3", "b2", "b2.1". Parsing also accepts "¬x3", "!x3" and "-x3".
std::string to_string(const PointLabel& label);
PointLabel parse_point_label(std::string_view text);

/// Sorted set of open point indices.
class Solution {
 public:
  Solution() = default;
  explicit Solution(std::vector<int> open);

  /// Inverse of to_string(): indices joined by ';'.
  static Solution parse(std::string_view text);

  const std::vector<int>& indices() const { return open_; }
  std::size_t size() const { return open_.size(); }
  bool empty() const { return open_.empty(); }
  bool contains(int point) const { return std::binary_search(open_.begin(), open_.end(), point); }
  auto begin() const { return open_.begin(); }
  auto end() const { return open_.end(); }

  Solution with_added(int point) const;
  Solution with_dropped(int point) const;
  Solution with_swapped(int out, int in) const;

  std::string to_string() const;

  auto operator<=>(const Solution&) const = default;

 private:
  std::vector<int> open_;
};

/// Unified facility-location / discrete (fuzzy) K-means instance. Every point is
/// a client; MUFL restricts openable points to `facilities()`, DKM/DFKM allow
/// every point as a center and fix |O| = k().
template <typename Scalar>
class LocationInstance {
 public:
  using Matrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
  using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

  static LocationInstance facility_location(Matrix dist, std::vector<std::int64_t> weights,
                                            std::vector<int> facilities, Vector opening_costs,
                                            std::vector<PointLabel> labels = {}) {
    LocationInstance inst(ProblemKind::Mufl, std::move(dist), std::move(weights), std::move(labels));
    inst.facilities_ = std::move(facilities);
    inst.opening_costs_ = std::move(opening_costs);
    inst.validate_facilities();
    return inst;
  }

  static LocationInstance clustering(ProblemKind kind, Matrix dist, std::vector<std::int64_t> weights, int k,
                                     std::vector<PointLabel> labels = {}) {
    if (kind == ProblemKind::Mufl) throw InvalidArgument("clustering() builds DKM or DFKM instances");
    LocationInstance inst(kind, std::move(dist), std::move(weights), std::move(labels));
    if (k < 1 || k > inst.num_points()) {
      throw InvalidArgument("K must lie in [1, |C|], got " + std::to_string(k));
    }
    inst.k_ = k;
    inst.facilities_.resize(static_cast<std::size_t>(inst.num_points()));
    for (int i = 0; i < inst.num_points(); ++i) inst.facilities_[static_cast<std::size_t>(i)] = i;
    return inst;
  }

  ProblemKind kind() const { return kind_; }
  int num_points() const { return static_cast<int>(dist_.rows()); }
  const Matrix& dist() const { return dist_; }
  const Scalar& dist(int i, int j) const { return dist_(i, j); }
  const std::vector<std::int64_t>& weights() const { return weights_; }
  std::int64_t weight(int point) const { return weights_[static_cast<std::size_t>(point)]; }

  /// Openable points, ascending. All points for DKM/DFKM.
  const std::vector<int>& facilities() const { return facilities_; }
  bool is_facility(int point) const {
    return std::binary_search(facilities_.begin(), facilities_.end(), point);
  }
  /// Parallel to facilities(); empty for DKM/DFKM.
  const Vector& opening_costs() const { return opening_costs_; }
  Scalar opening_cost(int point) const {
    auto it = std::lower_bound(facilities_.begin(), facilities_.end(), point);
    return opening_costs_(static_cast<Eigen::Index>(it - facilities_.begin()));
  }
  /// Center budget; 0 for MUFL.
  int k() const { return k_; }

  const std::vector<PointLabel>& labels() const { return labels_; }
  bool has_literal_labels() const { return !literal_points_.empty(); }
  int num_literal_vars() const { return static_cast<int>(literal_points_.size()); }
  /// Point carrying the literal label, or -1.
  int literal_point(int var, bool positive) const {
    if (var < 0 || var >= num_literal_vars()) return -1;
    return literal_points_[static_cast<std::size_t>(var)][positive ? 0 : 1];
  }

  template <typename To>
  LocationInstance<To> cast() const {
    LocationInstance<To> out;
    out.kind_ = kind_;
    out.dist_ = dist_.unaryExpr([](const Scalar& v) { return scalar_cast<To>(v); });
    out.weights_ = weights_;
    out.facilities_ = facilities_;
    out.opening_costs_ = opening_costs_.unaryExpr([](const Scalar& v) { return scalar_cast<To>(v); });
    out.k_ = k_;
    out.labels_ = labels_;
    out.literal_points_ = literal_points_;
    return out;
  }

 private:
  template <typename>
  friend class LocationInstance;

  LocationInstance() = default;

  LocationInstance(ProblemKind kind, Matrix dist, std::vector<std::int64_t> weights, std::vector<PointLabel> labels)
      : kind_(kind), dist_(std::move(dist)), weights_(std::move(weights)), labels_(std::move(labels)) {
    const Eigen::Index n = dist_.rows();
    if (n < 1 || dist_.cols() != n) throw InvalidArgument("distance matrix must be square and nonempty");
    for (Eigen::Index i = 0; i < n; ++i) {
      if (dist_(i, i) != Scalar(0)) throw InvalidArgument("distance matrix needs a zero diagonal");
      for (Eigen::Index j = i + 1; j < n; ++j) {
        if (dist_(i, j) != dist_(j, i)) {
          throw InvalidArgument("distance matrix is not symmetric at (" + std::to_string(i) + "," +
                                std::to_string(j) + ")");
        }
        if (dist_(i, j) < Scalar(0)) throw InvalidArgument("distances must be nonnegative");
      }
    }
    if (weights_.size() != static_cast<std::size_t>(n)) throw InvalidArgument("one weight per point required");
    for (auto w : weights_) {
      if (w < 1) throw InvalidArgument("client weights must be positive integers");
    }
    if (!labels_.empty() && labels_.size() != static_cast<std::size_t>(n)) {
      throw InvalidArgument("labels must be absent or one per point");
    }
    index_literals();
  }

  void validate_facilities() {
    if (facilities_.empty()) throw InvalidArgument("MUFL needs at least one facility");
    for (std::size_t i = 0; i < facilities_.size(); ++i) {
      if (facilities_[i] < 0 || facilities_[i] >= num_points()) throw InvalidArgument("facility index out of range");
      if (i > 0 && facilities_[i] <= facilities_[i - 1]) {
        throw InvalidArgument("facility indices must be strictly increasing");
      }
    }
    if (opening_costs_.size() != static_cast<Eigen::Index>(facilities_.size())) {
      throw InvalidArgument("one opening cost per facility required");
    }
    for (Eigen::Index i = 0; i < opening_costs_.size(); ++i) {
      if (opening_costs_(i) < Scalar(0)) throw InvalidArgument("opening costs must be nonnegative");
    }
  }

  void index_literals() {
    int max_var = -1;
    for (const auto& label : labels_) {
      if (auto lit = std::get_if<LiteralLabel>(&label)) max_var = std::max(max_var, lit->var);
    }
    literal_points_.assign(static_cast<std::size_t>(max_var + 1), {-1, -1});
    for (std::size_t p = 0; p < labels_.size(); ++p) {
      if (auto lit = std::get_if<LiteralLabel>(&labels_[p])) {
        int& slot = literal_points_[static_cast<std::size_t>(lit->var)][lit->positive ? 0 : 1];
        if (slot != -1) throw InvalidArgument("duplicate label " + to_string(labels_[p]));
        slot = static_cast<int>(p);
      }
    }
    for (const auto& pair : literal_points_) {
      if (pair[0] == -1 || pair[1] == -1) {
        throw InvalidArgument("literal labels must name both polarities of every variable");
      }
    }
  }

  ProblemKind kind_ = ProblemKind::Mufl;
  Matrix dist_;
  std::vector<std::int64_t> weights_;
  std::vector<int> facilities_;
  Vector opening_costs_;
  int k_ = 0;
  std::vector<PointLabel> labels_;
  std::vector<std::array<int, 2>> literal_points_;
};

using ExactInstance = LocationInstance<Rational>;
using FloatInstance = LocationInstance<double>;

/// Throws Infeasible unless `open` is a feasible solution: MUFL needs a
/// nonempty subset of the facilities, DKM/DFKM exactly k() points.
template <typename Scalar>
void validate_solution(const LocationInstance<Scalar>& inst, const Solution& open) {
  for (int p : open) {
    if (p < 0 || p >= inst.num_points()) throw Infeasible("open index " + std::to_string(p) + " out of range");
  }
  if (inst.kind() == ProblemKind::Mufl) {
    if (open.empty()) throw Infeasible("MUFL solution must open at least one facility");
    for (int p : open) {
      if (!inst.is_facility(p)) throw Infeasible("point " + std::to_string(p) + " is not a facility");
    }
  } else if (open.size() != static_cast<std::size_t>(inst.k())) {
    throw Infeasible("solution opens " + std::to_string(open.size()) + " centers, K = " + std::to_string(inst.k()));
  }
}

template <typename Scalar>
bool is_feasible(const LocationInstance<Scalar>& inst, const Solution& open) {
  try {
    validate_solution(inst, open);
    return true;
  } catch (const Infeasible&) {
    return false;
  }
}

template <typename Scalar>
Scalar distance_to(const LocationInstance<Scalar>& inst, int client, const Solution& open) {
  Scalar best = inst.dist(client, *open.begin());
  for (int o : open) {
    if (inst.dist(client, o) < best) best = inst.dist(client, o);
  }
  return best;
}

/// Sum over clients of weight times distance to the nearest open point.
template <typename Scalar>
Scalar service_cost(const LocationInstance<Scalar>& inst, const Solution& open) {
  if (open.empty()) throw Infeasible("service cost of an empty solution is undefined");
  Scalar total(0);
  for (int c = 0; c < inst.num_points(); ++c) {
    total += Scalar(static_cast<long long>(inst.weight(c))) * distance_to(inst, c, open);
  }
  return total;
}

template <typename Scalar>
Scalar mufl_cost(const LocationInstance<Scalar>& inst, const Solution& open) {
  if (inst.kind() != ProblemKind::Mufl) throw InvalidArgument("mufl_cost needs a MUFL instance");
  validate_solution(inst, open);
  Scalar total = service_cost(inst, open);
  for (int o : open) total += inst.opening_cost(o);
  return total;
}

template <typename Scalar>
Scalar dkm_cost(const LocationInstance<Scalar>& inst, const Solution& open) {
  validate_solution(inst, open);
  if (inst.kind() == ProblemKind::Mufl) throw InvalidArgument("dkm_cost needs a K-means instance");
  return service_cost(inst, open);
}

/// Fuzzy objective at optimal memberships: sum over c of w(c) / sum_o d(c,o)^-1.
/// Clients at distance zero from some center contribute nothing.
template <typename Scalar>
Scalar dfkm_cost(const LocationInstance<Scalar>& inst, const Solution& open) {
  validate_solution(inst, open);
  if (inst.kind() == ProblemKind::Mufl) throw InvalidArgument("dfkm_cost needs a K-means instance");
  Scalar total(0);
  for (int c = 0; c < inst.num_points(); ++c) {
    Scalar inverse_sum(0);
    bool coincident = false;
    for (int o : open) {
      const Scalar& d = inst.dist(c, o);
      if (d == Scalar(0)) {
        coincident = true;
        break;
      }
      inverse_sum += Scalar(1) / d;
    }
    if (!coincident) total += Scalar(static_cast<long long>(inst.weight(c))) / inverse_sum;
  }
  return total;
}

/// Objective selected by the instance kind.
template <typename Scalar>
Scalar cost(const LocationInstance<Scalar>& inst, const Solution& open) {
  switch (inst.kind()) {
    case ProblemKind::Mufl: return mufl_cost(inst, open);
    case ProblemKind::Dkm: return dkm_cost(inst, open);
    case ProblemKind::Dfkm: return dfkm_cost(inst, open);
  }
  throw InvalidArgument("unknown problem kind");
}

/// Closed-form optimal fuzzy memberships: r(c,o) proportional to d(c,o)^-1,
/// columns ordered like `open`. Clients coinciding with centers split their
/// unit membership evenly among the zero-distance centers.
template <typename Scalar>
typename LocationInstance<Scalar>::Matrix optimal_memberships(const LocationInstance<Scalar>& inst,
                                                              const Solution& open) {
  validate_solution(inst, open);
  using Matrix = typename LocationInstance<Scalar>::Matrix;
  const auto& centers = open.indices();
  const Eigen::Index k = static_cast<Eigen::Index>(centers.size());
  Matrix r = Matrix::Zero(inst.num_points(), k);
  for (int c = 0; c < inst.num_points(); ++c) {
    long long zeros = 0;
    for (int o : centers) zeros += inst.dist(c, o) == Scalar(0) ? 1 : 0;
    if (zeros > 0) {
      for (Eigen::Index j = 0; j < k; ++j) {
        if (inst.dist(c, centers[static_cast<std::size_t>(j)]) == Scalar(0)) r(c, j) = Scalar(1) / Scalar(zeros);
      }
      continue;
    }
    Scalar inverse_sum(0);
    for (int o : centers) inverse_sum += Scalar(1) / inst.dist(c, o);
    for (Eigen::Index j = 0; j < k; ++j) {
      r(c, j) = (Scalar(1) / inst.dist(c, centers[static_cast<std::size_t>(j)])) / inverse_sum;
    }
  }
  return r;
}

/// Weighted fuzzy objective for arbitrary memberships `r` (|C| x |O|).
template <typename Scalar, typename Derived>
Scalar fuzzy_objective(const LocationInstance<Scalar>& inst, const Solution& open,
                       const Eigen::MatrixBase<Derived>& r) {
  validate_solution(inst, open);
  if (r.rows() != inst.num_points() || r.cols() != static_cast<Eigen::Index>(open.size())) {
    throw InvalidArgument("membership matrix has the wrong shape");
  }
  Scalar total(0);
  for (int c = 0; c < inst.num_points(); ++c) {
    Scalar row(0);
    Eigen::Index j = 0;
    for (int o : open) {
      row += r(c, j) * r(c, j) * inst.dist(c, o);
      ++j;
    }
    total += Scalar(static_cast<long long>(inst.weight(c))) * row;
  }
  return total;
}

/// Single-swap neighborhood in lexicographic (dropped, added) order, with
/// "nothing" ordered before every index. MUFL yields adds, drops (never to the
/// empty set) and swaps over facilities; DKM/DFKM yield swaps only.
std::vector<Neighbor<Solution>> swap_neighbors(ProblemKind kind, const std::vector<int>& candidates,
                                               const Solution& open);

template <typename Scalar>
std::vector<Neighbor<Solution>> swap_neighbors(const LocationInstance<Scalar>& inst, const Solution& open) {
  validate_solution(inst, open);
  return swap_neighbors(inst.kind(), inst.facilities(), open);
}

/// Opens exactly one of each literal pair and nothing else. Requires literal labels.
template <typename Scalar>
bool is_reasonable(const LocationInstance<Scalar>& inst, const Solution& open) {
  if (!inst.has_literal_labels()) throw InvalidArgument("instance carries no literal labels");
  const int n = inst.num_literal_vars();
  if (open.size() != static_cast<std::size_t>(n)) return false;
  for (int v = 0; v < n; ++v) {
    if (!open.contains(inst.literal_point(v, true)) && !open.contains(inst.literal_point(v, false))) return false;
  }
  return true;
}

/// First (i, j, k) with d(i,k) > d(i,j) + d(j,k), or nullopt for a metric.
template <typename Scalar>
std::optional<std::array<int, 3>> find_triangle_violation(const LocationInstance<Scalar>& inst) {
  const int n = inst.num_points();
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      for (int k = 0; k < n; ++k) {
        if (inst.dist(i, k) > inst.dist(i, j) + inst.dist(j, k)) return std::array<int, 3>{i, j, k};
      }
    }
  }
  return std::nullopt;
}

/// Resolves "x1", "~x2", "b3" or a plain index to a point index.
template <typename Scalar>
int resolve_point(const LocationInstance<Scalar>& inst, std::string_view token) {
  if (!token.empty() && std::all_of(token.begin(), token.end(), [](char ch) { return ch >= '0' && ch <= '9'; })) {
    int p = std::stoi(std::string(token));
    if (p >= inst.num_points()) throw InvalidArgument("point index out of range: " + std::string(token));
    return p;
  }
  PointLabel wanted = parse_point_label(token);
  for (std::size_t p = 0; p < inst.labels().size(); ++p) {
    if (inst.labels()[p] == wanted) return static_cast<int>(p);
  }
  throw InvalidArgument("no point labeled '" + std::string(token) + "'");
}

}  // namespace swaplab
