#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "swaplab/facility.hpp"
#include "swaplab/rational.hpp"
#include "swaplab/sat.hpp"

namespace swaplab {

/// Default gadget constant c, the midpoint of the admissible open interval (1, 2).
inline Rational default_gadget_c() { return Rational(3, 2); }

struct ReductionConstants {
  ProblemKind kind = ProblemKind::Mufl;
  /// Weight of every literal point.
  std::int64_t literal_weight = 0;
  /// MUFL only: uniform opening cost 2W.
  Rational opening_cost;
  /// DKM/DFKM only: center budget, equal to N.
  int k = 0;
  /// DKM/DFKM only: distance perturbation and gadget constant.
  Rational epsilon;
  Rational c;
  /// Clause count entering the formulas (|B'| = 2|B| for DFKM).
  int formula_clauses = 0;

  bool operator==(const ReductionConstants&) const = default;
};

/// Every constant is a pure function of (kind, N, M, max weight, c). `num_clauses`
/// is the size of the source clause set before any doubling.
ReductionConstants derive_constants(ProblemKind kind, int num_vars, int num_clauses, std::int64_t max_weight,
                                    const Rational& c);

struct LabelMap {
  /// literal_points[v] = {point of x_v, point of ~x_v}.
  std::vector<std::array<int, 2>> literal_points;
  /// clause_points[m] = points built from source clause m (two for DFKM).
  std::vector<std::vector<int>> clause_points;
};

struct ReductionArtifact {
  SatInstance source;
  ExactInstance target;
  ReductionConstants constants;
  LabelMap label_map;
  /// "sha256:<hex>" of the source text the reduction was built from.
  std::string source_hash;

  int num_vars() const { return source.num_vars(); }
  ProblemKind kind() const { return target.kind(); }
};

/// A clause of the doubled NAE set: copy 1 is {x_o, x_p}, copy 2 is {~x_o, ~x_p}.
struct DoubledClause {
  Clause clause;
  int origin = 0;
  int copy = 1;
};

struct DoubledClauseSet {
  int num_vars = 0;
  std::vector<DoubledClause> clauses;
  std::vector<std::int64_t> weights;
  std::int64_t max_weight = 0;

  int size() const { return static_cast<int>(clauses.size()); }
};

DoubledClauseSet double_clauses(const SatInstance& inst);

ReductionArtifact reduce_sat_to_mufl(const SatInstance& inst);
ReductionArtifact reduce_sat_to_dkm(const SatInstance& inst, const Rational& c = default_gadget_c());
ReductionArtifact reduce_pnaesat_to_dfkm(const SatInstance& inst, const Rational& c = default_gadget_c());
ReductionArtifact reduce(const SatInstance& inst, ProblemKind target, const Rational& c = default_gadget_c());

/// x_v is true iff the point labeled x_v is open; clause points carry no value.
Assignment map_solution_back(const ReductionArtifact& art, const Solution& open);

/// The reasonable solution opening x_v for true and ~x_v for false variables.
Solution lift_assignment(const ReductionArtifact& art, const Assignment& t);

template <typename Scalar>
struct GammaTerms {
  Scalar two_near;   // two centers at 1+eps
  Scalar mixed;      // one at 1+eps, one at 1+c*eps
  Scalar two_far;    // two at 1+c*eps
};

/// Reciprocal membership sums of a clause point under a reasonable solution;
/// every other center sits at 1+2eps. Needs n >= 2.
template <typename Scalar>
GammaTerms<Scalar> gamma_terms(int n, const Scalar& eps, const Scalar& c) {
  const Scalar one(1);
  const Scalar base = Scalar(n - 2) / (one + Scalar(2) * eps);
  const Scalar near = one / (one + eps);
  const Scalar far = one / (one + c * eps);
  return {one / (base + Scalar(2) * near), one / (base + near + far), one / (base + Scalar(2) * far)};
}

/// two_near + two_far - 2 * mixed, evaluated directly.
template <typename Scalar>
Scalar gamma_gap(int n, const Scalar& eps, const Scalar& c) {
  auto g = gamma_terms(n, eps, c);
  return g.two_near + g.two_far - Scalar(2) * g.mixed;
}

/// The same quantity in factored form: 2 (1/(1+c eps) - 1/(1+eps))^2 over the
/// product of the three reciprocal sums. Positive whenever c != 1.
template <typename Scalar>
Scalar gamma_gap_factored(int n, const Scalar& eps, const Scalar& c) {
  const Scalar one(1);
  const Scalar base = Scalar(n - 2) / (one + Scalar(2) * eps);
  const Scalar near = one / (one + eps);
  const Scalar far = one / (one + c * eps);
  const Scalar diff = far - near;
  return Scalar(2) * diff * diff /
         ((base + Scalar(2) * near) * (base + Scalar(2) * far) * (base + near + far));
}

/// Cost every reasonable solution with image `t` must have on the reduced
/// instance, from the clause weights alone:
///   MUFL  3WN + 4/3 w(B_t) + 5/3 w(B_f)
///   DKM   NW + (1+eps) w(B_t) + (1+c eps) w(B_f)
///   DFKM  NW(1+2eps)/(N+2eps) + 2 mixed w(B_t) + (two_near + two_far) w(B_f)
/// with B_t/B_f the satisfied/unsatisfied source clauses (NAE sense for DFKM).
Rational closed_form_cost(const ReductionArtifact& art, const Assignment& t);

}  // namespace swaplab
