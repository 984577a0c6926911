#include "swaplab/reduce.hpp"

#include "swaplab/hash.hpp"

namespace swaplab {
namespace {

std::int64_t checked_mul(std::int64_t a, std::int64_t b) {
  std::int64_t out = 0;
  if (__builtin_mul_overflow(a, b, &out)) throw InvalidArgument("reduction constant overflows 64 bits");
  return out;
}

void require_gadget_c(const Rational& c) {
  if (!(c > 1 && c < 2)) throw InvalidArgument("gadget constant c must lie strictly between 1 and 2, got " + to_string(c));
}

/// Distance values of one gadget family, indexed by the relation between two points.
struct GadgetDistances {
  Rational complement;      // x_v and ~x_v
  Rational contained;       // literal and a clause containing it
  Rational complement_in;   // literal and a clause containing its negation
  Rational other;
};

struct PointSet {
  std::vector<PointLabel> labels;
  std::vector<std::int64_t> weights;
  std::vector<Clause> clause_of;  // indexed by point - 2N
  LabelMap label_map;
};

PointSet literal_points(int num_vars, std::int64_t literal_weight, int num_source_clauses) {
  PointSet ps;
  ps.label_map.literal_points.resize(static_cast<std::size_t>(num_vars));
  ps.label_map.clause_points.resize(static_cast<std::size_t>(num_source_clauses));
  for (int v = 0; v < num_vars; ++v) {
    for (bool positive : {true, false}) {
      ps.label_map.literal_points[static_cast<std::size_t>(v)][positive ? 0 : 1] =
          static_cast<int>(ps.labels.size());
      ps.labels.push_back(LiteralLabel{v, positive});
      ps.weights.push_back(literal_weight);
    }
  }
  return ps;
}

void add_clause_point(PointSet& ps, const Clause& clause, std::int64_t weight, int origin, int copy) {
  ps.label_map.clause_points[static_cast<std::size_t>(origin)].push_back(static_cast<int>(ps.labels.size()));
  ps.labels.push_back(ClauseLabel{origin, copy});
  ps.weights.push_back(weight);
  ps.clause_of.push_back(clause);
}

ExactInstance::Matrix gadget_matrix(const PointSet& ps, int num_vars, const GadgetDistances& g) {
  const auto n = static_cast<Eigen::Index>(ps.labels.size());
  const int literal_count = 2 * num_vars;
  ExactInstance::Matrix d = ExactInstance::Matrix::Constant(n, n, g.other);
  for (Eigen::Index i = 0; i < n; ++i) d(i, i) = 0;
  for (int v = 0; v < num_vars; ++v) {
    d(2 * v, 2 * v + 1) = g.complement;
    d(2 * v + 1, 2 * v) = g.complement;
  }
  for (std::size_t b = 0; b < ps.clause_of.size(); ++b) {
    const auto q = static_cast<Eigen::Index>(literal_count + static_cast<int>(b));
    const Clause& cl = ps.clause_of[b];
    for (int p = 0; p < literal_count; ++p) {
      const auto& lab = std::get<LiteralLabel>(ps.labels[static_cast<std::size_t>(p)]);
      const Literal lit{lab.var, lab.positive};
      const Rational* value = &g.other;
      if (cl.contains(lit)) {
        value = &g.contained;
      } else if (cl.contains(lit.negated())) {
        value = &g.complement_in;
      }
      d(p, q) = *value;
      d(q, p) = *value;
    }
  }
  return d;
}

ReductionArtifact finish(const SatInstance& inst, ExactInstance target, ReductionConstants constants,
                         LabelMap label_map) {
  return ReductionArtifact{inst, std::move(target), std::move(constants), std::move(label_map),
                           "sha256:" + sha256_hex(to_wsat2(inst))};
}

GadgetDistances kmeans_gadget(const ReductionConstants& k) {
  const Rational one(1);
  return {one, one + k.epsilon, one + k.c * k.epsilon, one + 2 * k.epsilon};
}

}  // namespace

ReductionConstants derive_constants(ProblemKind kind, int num_vars, int num_clauses, std::int64_t max_weight,
                                    const Rational& c) {
  if (num_vars < 1) throw InvalidArgument("need at least one variable");
  if (num_clauses < 1) throw InvalidArgument("reductions need at least one clause");
  ReductionConstants k;
  k.kind = kind;
  const std::int64_t n = num_vars;
  switch (kind) {
    case ProblemKind::Mufl:
      k.formula_clauses = num_clauses;
      k.literal_weight = checked_mul(num_clauses, max_weight);
      k.opening_cost = Rational(2 * k.literal_weight);
      break;
    case ProblemKind::Dkm:
      require_gadget_c(c);
      k.formula_clauses = num_clauses;
      k.literal_weight = checked_mul(num_clauses, max_weight);
      k.k = num_vars;
      k.epsilon = Rational(1, 4 * n + 2 * num_clauses);
      k.c = c;
      break;
    case ProblemKind::Dfkm: {
      require_gadget_c(c);
      const std::int64_t m = 2 * static_cast<std::int64_t>(num_clauses);
      k.formula_clauses = static_cast<int>(m);
      k.literal_weight = checked_mul(checked_mul(4 * n * n, m), max_weight);
      k.k = num_vars;
      Rational a(1, 4 * n + 2 * m);
      Rational b(m - 1, 9 * n * n * m);
      k.epsilon = a < b ? a : b;
      k.c = c;
      break;
    }
  }
  return k;
}

DoubledClauseSet double_clauses(const SatInstance& inst) {
  if (inst.mode() != SatMode::Nae) throw InvalidArgument("clause doubling applies to NAE instances");
  DoubledClauseSet out;
  out.num_vars = inst.num_vars();
  out.max_weight = inst.max_weight();
  for (int m = 0; m < inst.num_clauses(); ++m) {
    const Clause& cl = inst.clause(m);
    out.clauses.push_back({cl, m, 1});
    out.clauses.push_back({Clause{cl.first.negated(), cl.second.negated()}, m, 2});
    out.weights.push_back(inst.weight(m));
    out.weights.push_back(inst.weight(m));
  }
  return out;
}

ReductionArtifact reduce_sat_to_mufl(const SatInstance& inst) {
  if (inst.mode() != SatMode::Standard) throw InvalidArgument("MUFL reduction takes a STD instance");
  auto k = derive_constants(ProblemKind::Mufl, inst.num_vars(), inst.num_clauses(), inst.max_weight(), Rational(0));
  PointSet ps = literal_points(inst.num_vars(), k.literal_weight, inst.num_clauses());
  for (int m = 0; m < inst.num_clauses(); ++m) add_clause_point(ps, inst.clause(m), inst.weight(m), m, 0);
  auto d = gadget_matrix(ps, inst.num_vars(), {Rational(1), Rational(4, 3), Rational(5, 3), Rational(2)});
  std::vector<int> facilities(static_cast<std::size_t>(2 * inst.num_vars()));
  for (std::size_t i = 0; i < facilities.size(); ++i) facilities[i] = static_cast<int>(i);
  ExactInstance::Vector opening = ExactInstance::Vector::Constant(static_cast<Eigen::Index>(facilities.size()),
                                                                  k.opening_cost);
  auto target = ExactInstance::facility_location(std::move(d), std::move(ps.weights), std::move(facilities),
                                                 std::move(opening), std::move(ps.labels));
  return finish(inst, std::move(target), std::move(k), std::move(ps.label_map));
}

ReductionArtifact reduce_sat_to_dkm(const SatInstance& inst, const Rational& c) {
  if (inst.mode() != SatMode::Standard) throw InvalidArgument("DKM reduction takes a STD instance");
  auto k = derive_constants(ProblemKind::Dkm, inst.num_vars(), inst.num_clauses(), inst.max_weight(), c);
  PointSet ps = literal_points(inst.num_vars(), k.literal_weight, inst.num_clauses());
  for (int m = 0; m < inst.num_clauses(); ++m) add_clause_point(ps, inst.clause(m), inst.weight(m), m, 0);
  auto d = gadget_matrix(ps, inst.num_vars(), kmeans_gadget(k));
  auto target = ExactInstance::clustering(ProblemKind::Dkm, std::move(d), std::move(ps.weights), k.k,
                                          std::move(ps.labels));
  return finish(inst, std::move(target), std::move(k), std::move(ps.label_map));
}

ReductionArtifact reduce_pnaesat_to_dfkm(const SatInstance& inst, const Rational& c) {
  if (inst.mode() != SatMode::Nae) throw InvalidArgument("DFKM reduction takes a NAE instance");
  auto k = derive_constants(ProblemKind::Dfkm, inst.num_vars(), inst.num_clauses(), inst.max_weight(), c);
  const auto doubled = double_clauses(inst);
  PointSet ps = literal_points(inst.num_vars(), k.literal_weight, inst.num_clauses());
  for (int i = 0; i < doubled.size(); ++i) {
    const auto& dc = doubled.clauses[static_cast<std::size_t>(i)];
    add_clause_point(ps, dc.clause, doubled.weights[static_cast<std::size_t>(i)], dc.origin, dc.copy);
  }
  auto d = gadget_matrix(ps, inst.num_vars(), kmeans_gadget(k));
  auto target = ExactInstance::clustering(ProblemKind::Dfkm, std::move(d), std::move(ps.weights), k.k,
                                          std::move(ps.labels));
  return finish(inst, std::move(target), std::move(k), std::move(ps.label_map));
}

ReductionArtifact reduce(const SatInstance& inst, ProblemKind target, const Rational& c) {
  switch (target) {
    case ProblemKind::Mufl: return reduce_sat_to_mufl(inst);
    case ProblemKind::Dkm: return reduce_sat_to_dkm(inst, c);
    case ProblemKind::Dfkm: return reduce_pnaesat_to_dfkm(inst, c);
  }
  throw InvalidArgument("unknown target kind");
}

Assignment map_solution_back(const ReductionArtifact& art, const Solution& open) {
  Assignment t(static_cast<std::size_t>(art.num_vars()));
  for (int v = 0; v < art.num_vars(); ++v) {
    t.set(static_cast<std::size_t>(v), open.contains(art.label_map.literal_points[static_cast<std::size_t>(v)][0]));
  }
  return t;
}

Solution lift_assignment(const ReductionArtifact& art, const Assignment& t) {
  if (t.size() != static_cast<std::size_t>(art.num_vars())) {
    throw InvalidArgument("assignment length does not match the source instance");
  }
  std::vector<int> open;
  for (int v = 0; v < art.num_vars(); ++v) {
    open.push_back(art.label_map.literal_points[static_cast<std::size_t>(v)][t[static_cast<std::size_t>(v)] ? 0 : 1]);
  }
  return Solution(std::move(open));
}

Rational closed_form_cost(const ReductionArtifact& art, const Assignment& t) {
  const auto sets = clause_sets(art.source, t);
  const Rational sat_w(weight_of(art.source, sets.satisfied));
  const Rational unsat_w(weight_of(art.source, sets.unsatisfied));
  const Rational n(art.num_vars());
  const Rational w(art.constants.literal_weight);
  const auto& k = art.constants;
  switch (art.kind()) {
    case ProblemKind::Mufl:
      return 3 * w * n + Rational(4, 3) * sat_w + Rational(5, 3) * unsat_w;
    case ProblemKind::Dkm:
      return n * w + (1 + k.epsilon) * sat_w + (1 + k.c * k.epsilon) * unsat_w;
    case ProblemKind::Dfkm: {
      if (art.num_vars() < 2) throw InvalidArgument("DFKM closed form needs N >= 2");
      for (const auto& cl : art.source.clauses()) {
        if (cl.first.var == cl.second.var) {
          throw InvalidArgument("DFKM closed form needs clauses over two distinct variables");
        }
      }
      const auto g = gamma_terms(art.num_vars(), k.epsilon, k.c);
      const Rational literal_part = n * w * (1 + 2 * k.epsilon) / (n + 2 * k.epsilon);
      return literal_part + 2 * g.mixed * sat_w + (g.two_near + g.two_far) * unsat_w;
    }
  }
  throw InvalidArgument("unknown target kind");
}

}  // namespace swaplab
