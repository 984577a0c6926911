#include "swaplab/verify.hpp"

#include <functional>
#include <optional>
#include <random>

#include "swaplab/embed.hpp"
#include "swaplab/hash.hpp"

namespace swaplab {
namespace {

using ExactGraph = TransitionGraph<Solution, Rational>;

Json solution_json(const ExactInstance& inst, const Solution& s) {
  Json labels = Json::array();
  for (int p : s) {
    labels.push_back(inst.labels().empty() ? std::to_string(p) : to_string(inst.labels()[static_cast<std::size_t>(p)]));
  }
  return Json{{"open", s.to_string()}, {"labels", std::move(labels)}};
}

Json solution_json(const ExactInstance& inst, const Solution& s, const Rational& cost) {
  Json j = solution_json(inst, s);
  j["cost"] = to_string(cost);
  return j;
}

CheckResult pass(std::string name, std::uint64_t evaluated, std::string detail = {}) {
  return {std::move(name), CheckStatus::Pass, std::move(detail), evaluated, nullptr};
}

CheckResult fail(std::string name, std::uint64_t evaluated, std::string detail, Json counterexample) {
  return {std::move(name), CheckStatus::Fail, std::move(detail), evaluated, std::move(counterexample)};
}

CheckResult skipped(std::string name, std::string detail) {
  return {std::move(name), CheckStatus::Skipped, std::move(detail), 0, nullptr};
}

/// Shared state for the checks on one artifact; the transition graph is built
/// at most once.
class Audit {
 public:
  Audit(const ReductionArtifact& art, const VerifyOptions& opts) : art_(art), opts_(opts), problem_(art.target) {}

  const ReductionArtifact& art() const { return art_; }
  const ExactInstance& inst() const { return art_.target; }

  const ExactGraph& graph() {
    if (!graph_) {
      graph_ = build_transition_graph(problem_, opts_.guard);
      reasonable_.reserve(graph_->size());
      for (const auto& node : graph_->nodes) reasonable_.push_back(is_reasonable(inst(), node));
    }
    return *graph_;
  }

  bool reasonable(std::size_t node) {
    graph();
    return reasonable_[node];
  }

  /// Every reasonable solution paired with its assignment, in assignment order.
  std::vector<std::pair<Assignment, Solution>> reasonable_solutions() const {
    std::vector<std::pair<Assignment, Solution>> out;
    for (const auto& t : FlipProblem(art_.source).enumerate_solutions(opts_.guard)) {
      out.emplace_back(t, lift_assignment(art_, t));
    }
    return out;
  }

  Rational cost(const Solution& s) {
    if (graph_) {
      if (auto i = graph_->find(s)) return graph_->costs[*i];
    }
    return swaplab::cost(inst(), s);
  }

 private:
  const ReductionArtifact& art_;
  const VerifyOptions& opts_;
  SwapProblem<Rational> problem_;
  std::optional<ExactGraph> graph_;
  std::vector<bool> reasonable_;
};

CheckResult guarded(const std::string& name, const VerifyOptions& opts, const std::function<CheckResult()>& body) {
  try {
    return body();
  } catch (const GuardExceeded& e) {
    if (!opts.skip_over_guard) throw;
    return skipped(name, e.what());
  }
}

CheckResult local_optima_reasonable(Audit& a) {
  const std::string name = "local_optima_reasonable";
  const auto& g = a.graph();
  std::uint64_t n = 0;
  for (std::size_t i : g.sinks()) {
    ++n;
    if (!a.reasonable(i)) {
      return fail(name, n, "local optimum is not reasonable",
                  Json{{"local_optimum", solution_json(a.inst(), g.nodes[i], g.costs[i])}});
    }
  }
  return pass(name, n, std::to_string(n) + " local optima, all reasonable");
}

CheckResult cost_order(Audit& a) {
  const std::string name = "cost_order_equivalence";
  const auto sols = a.reasonable_solutions();
  std::vector<std::int64_t> w;
  std::vector<Rational> c;
  for (const auto& [t, s] : sols) {
    w.push_back(objective(a.art().source, t));
    c.push_back(a.cost(s));
  }
  std::uint64_t pairs = 0;
  for (std::size_t i = 0; i < sols.size(); ++i) {
    for (std::size_t j = 0; j < sols.size(); ++j) {
      if (i == j) continue;
      ++pairs;
      const bool weight_less = w[i] < w[j];
      const bool cost_greater = c[i] > c[j];
      const bool weight_equal = w[i] == w[j];
      const bool cost_equal = c[i] == c[j];
      if (weight_less != cost_greater || weight_equal != cost_equal) {
        return fail(name, pairs, "source weight order and target cost order disagree",
                    Json{{"first", solution_json(a.inst(), sols[i].second, c[i])},
                         {"first_assignment", sols[i].first.to_string()},
                         {"first_weight", w[i]},
                         {"second", solution_json(a.inst(), sols[j].second, c[j])},
                         {"second_assignment", sols[j].first.to_string()},
                         {"second_weight", w[j]}});
      }
    }
  }
  return pass(name, pairs, std::to_string(sols.size()) + " reasonable solutions");
}

CheckResult closed_forms(Audit& a, double rel_tol) {
  const std::string name = "closed_forms";
  const auto sols = a.reasonable_solutions();
  std::optional<FloatInstance> approx;
  if (a.art().kind() == ProblemKind::Dfkm) approx = a.inst().cast<double>();
  std::uint64_t n = 0;
  for (const auto& [t, s] : sols) {
    ++n;
    const Rational direct = a.cost(s);
    const Rational closed = closed_form_cost(a.art(), t);
    if (direct != closed) {
      return fail(name, n, "closed form differs from direct cost",
                  Json{{"solution", solution_json(a.inst(), s, direct)},
                       {"assignment", t.to_string()},
                       {"closed_form", to_string(closed)}});
    }
    if (approx) {
      const double direct_f = dfkm_cost(*approx, s);
      const double closed_f = to_double(closed);
      if (std::abs(direct_f - closed_f) > rel_tol * std::abs(closed_f)) {
        return fail(name, n, "double-precision cost strays from the closed form",
                    Json{{"solution", solution_json(a.inst(), s, direct)},
                         {"assignment", t.to_string()},
                         {"direct_double", format_double(direct_f)},
                         {"closed_form_double", format_double(closed_f)}});
      }
    }
  }
  return pass(name, n, std::to_string(n) + " reasonable solutions match");
}

CheckResult no_escape(Audit& a) {
  const std::string name = "no_escape_from_reasonable";
  const auto& g = a.graph();
  std::uint64_t n = 0;
  for (const auto& [u, v] : g.arcs) {
    if (!a.reasonable(u)) continue;
    ++n;
    if (!a.reasonable(v)) {
      return fail(name, n, "improving arc leaves the reasonable set",
                  Json{{"from", solution_json(a.inst(), g.nodes[u], g.costs[u])},
                       {"to", solution_json(a.inst(), g.nodes[v], g.costs[v])}});
    }
  }
  return pass(name, n, std::to_string(n) + " arcs out of reasonable solutions");
}

Json path_json(Audit& a, const std::vector<std::size_t>& path) {
  const auto& g = a.graph();
  Json out = Json::array();
  for (std::size_t i : path) out.push_back(solution_json(a.inst(), g.nodes[i], g.costs[i]));
  return out;
}

CheckResult tightness_paths(Audit& a) {
  const std::string name = "tightness_paths";
  const auto& g = a.graph();
  const auto& src = a.art().source;
  std::uint64_t n = 0;
  for (std::size_t u = 0; u < g.size(); ++u) {
    if (!a.reasonable(u)) continue;
    // Depth-first over paths that stay outside the reasonable set until they re-enter it.
    std::vector<std::vector<std::size_t>> stack{{u}};
    std::vector<bool> seen(g.size(), false);
    while (!stack.empty()) {
      auto path = std::move(stack.back());
      stack.pop_back();
      for (std::size_t v : g.successors[path.back()]) {
        auto next = path;
        next.push_back(v);
        if (!a.reasonable(v)) {
          if (!seen[v]) {
            seen[v] = true;
            stack.push_back(std::move(next));
          }
          continue;
        }
        ++n;
        if (next.size() > 2) {
          return fail(name, n, "reasonable solutions joined through non-reasonable ones",
                      Json{{"path", path_json(a, next)}});
        }
        const Assignment from = map_solution_back(a.art(), g.nodes[u]);
        const Assignment to = map_solution_back(a.art(), g.nodes[v]);
        const bool fixed = from == to;
        const bool flip_edge = from.hamming_distance(to) == 1 && objective(src, to) > objective(src, from);
        if (!fixed && !flip_edge) {
          return fail(name, n, "arc projects to neither an improving flip nor a fixed point",
                      Json{{"path", path_json(a, next)},
                           {"from_assignment", from.to_string()},
                           {"to_assignment", to.to_string()},
                           {"from_weight", objective(src, from)},
                           {"to_weight", objective(src, to)}});
        }
      }
    }
  }
  return pass(name, n, std::to_string(n) + " reasonable-to-reasonable paths, all single improving flips");
}

CheckResult psi_correspondence(Audit& a) {
  const std::string name = "psi_correspondence";
  const auto& g = a.graph();
  std::uint64_t n = 0;
  for (std::size_t i : g.sinks()) {
    ++n;
    const Assignment t = map_solution_back(a.art(), g.nodes[i]);
    if (!is_flip_local_optimum(a.art().source, t)) {
      return fail(name, n, "image of a local optimum has an improving flip",
                  Json{{"local_optimum", solution_json(a.inst(), g.nodes[i], g.costs[i])},
                       {"assignment", t.to_string()},
                       {"weight", objective(a.art().source, t)}});
    }
  }
  return pass(name, n, std::to_string(n) + " local optima map to Flip optima");
}

/// Returns a counterexample if some membership of a non-center is <= 1/(2N).
std::optional<Json> membership_violation(const ExactInstance& inst, const Solution& open, const Rational& bound,
                                         std::uint64_t& evaluated) {
  const auto r = optimal_memberships(inst, open);
  for (int c = 0; c < inst.num_points(); ++c) {
    if (open.contains(c)) continue;
    for (Eigen::Index j = 0; j < r.cols(); ++j) {
      ++evaluated;
      if (r(c, j) <= bound) {
        Json ce = Json{{"solution", solution_json(inst, open)},
                       {"client", c},
                       {"center", open.indices()[static_cast<std::size_t>(j)]},
                       {"membership", to_string(r(c, j))},
                       {"bound", to_string(bound)}};
        return ce;
      }
    }
  }
  return std::nullopt;
}

CheckResult membership_bound(Audit& a, const VerifyOptions& opts) {
  const std::string name = "membership_bound";
  if (a.art().kind() != ProblemKind::Dfkm) throw InvalidArgument("membership bound applies to DFKM targets");
  const ExactInstance& inst = a.inst();
  const Rational bound(1, 2 * a.art().num_vars());
  SwapProblem<Rational> problem(inst);
  std::uint64_t evaluated = 0;
  if (problem.solution_space_size() <= opts.guard) {
    for (const auto& s : problem.enumerate_solutions(opts.guard)) {
      if (auto ce = membership_violation(inst, s, bound, evaluated)) {
        return fail(name, evaluated, "membership at or below 1/(2N)", *ce);
      }
    }
    return pass(name, evaluated, "exhaustive over |O| = N");
  }
  std::mt19937_64 rng(opts.seed);
  for (std::uint64_t i = 0; i < opts.membership_samples; ++i) {
    if (auto ce = membership_violation(inst, problem.random_solution(rng), bound, evaluated)) {
      return fail(name, evaluated, "membership at or below 1/(2N)", *ce);
    }
  }
  return pass(name, evaluated, "sampled " + std::to_string(opts.membership_samples) + " solutions");
}

struct ConstructedMove {
  Solution next;
  std::string rule;
};

std::vector<ConstructedMove> mufl_moves(const ReductionArtifact& art, const Solution& o) {
  std::vector<ConstructedMove> out;
  for (int v = 0; v < art.num_vars(); ++v) {
    const int pos = art.label_map.literal_points[static_cast<std::size_t>(v)][0];
    const int neg = art.label_map.literal_points[static_cast<std::size_t>(v)][1];
    const bool has_pos = o.contains(pos), has_neg = o.contains(neg);
    if (has_pos && has_neg) out.push_back({o.with_dropped(pos), "close x" + std::to_string(v + 1)});
    if (!has_pos && !has_neg) out.push_back({o.with_added(pos), "open x" + std::to_string(v + 1)});
  }
  return out;
}

std::vector<ConstructedMove> dkm_moves(const ReductionArtifact& art, const Solution& o) {
  const auto& lp = art.label_map.literal_points;
  auto point = [&](Literal lit) { return lp[static_cast<std::size_t>(lit.var)][lit.positive ? 0 : 1]; };
  auto covered = [&](int v) {
    return o.contains(lp[static_cast<std::size_t>(v)][0]) || o.contains(lp[static_cast<std::size_t>(v)][1]);
  };
  int first_uncovered = -1;
  for (int v = 0; v < art.num_vars() && first_uncovered < 0; ++v) {
    if (!covered(v)) first_uncovered = v;
  }
  std::vector<ConstructedMove> out;
  if (first_uncovered < 0) return out;
  const int target_x = lp[static_cast<std::size_t>(first_uncovered)][0];

  bool clause_open = false;
  for (int m = 0; m < art.source.num_clauses(); ++m) {
    for (int b : art.label_map.clause_points[static_cast<std::size_t>(m)]) {
      if (!o.contains(b)) continue;
      clause_open = true;
      const Clause& cl = art.source.clause(m);
      const bool c1 = covered(cl.first.var), c2 = covered(cl.second.var);
      const std::string tag = "b" + std::to_string(m + 1);
      if (!c1 && !c2) {
        out.push_back({o.with_swapped(b, point(cl.first)), "case 1.1 at " + tag});
      } else if (!c1 || !c2) {
        out.push_back({o.with_swapped(b, point(c1 ? cl.second : cl.first)), "case 1.2 at " + tag});
      } else {
        out.push_back({o.with_swapped(b, target_x), "case 1.3 at " + tag});
      }
    }
  }
  if (clause_open) return out;
  const int m_total = art.source.num_clauses();
  for (int v = 0; v < art.num_vars(); ++v) {
    const int pos = lp[static_cast<std::size_t>(v)][0];
    const int neg = lp[static_cast<std::size_t>(v)][1];
    if (!o.contains(pos) || !o.contains(neg)) continue;
    const auto in_pos = art.source.clauses_containing(Literal{v, true}).size();
    const int leaving = static_cast<int>(in_pos) < m_total ? pos : neg;
    out.push_back({o.with_swapped(leaving, target_x), "case 2 at x" + std::to_string(v + 1)});
  }
  return out;
}

CheckResult single_step(Audit& a) {
  const std::string name = "single_step_lemmas";
  const auto kind = a.art().kind();
  if (kind == ProblemKind::Dfkm) return skipped(name, "no constructed moves for DFKM targets");
  const auto& g = a.graph();
  std::uint64_t n = 0;
  for (std::size_t i = 0; i < g.size(); ++i) {
    if (a.reasonable(i)) continue;
    const Solution& o = g.nodes[i];
    const auto moves = kind == ProblemKind::Mufl ? mufl_moves(a.art(), o) : dkm_moves(a.art(), o);
    if (moves.empty()) {
      return fail(name, n, "no constructed move for a non-reasonable solution",
                  Json{{"solution", solution_json(a.inst(), o, g.costs[i])}});
    }
    for (const auto& mv : moves) {
      ++n;
      const Rational after = a.cost(mv.next);
      if (!(after < g.costs[i])) {
        return fail(name, n, "constructed move (" + mv.rule + ") does not improve",
                    Json{{"solution", solution_json(a.inst(), o, g.costs[i])},
                         {"rule", mv.rule},
                         {"after", solution_json(a.inst(), mv.next, after)}});
      }
    }
  }
  return pass(name, n, std::to_string(n) + " constructed moves, all improving");
}

}  // namespace

std::string to_string(CheckStatus status) {
  switch (status) {
    case CheckStatus::Pass: return "pass";
    case CheckStatus::Fail: return "fail";
    case CheckStatus::Skipped: return "skipped";
  }
  return "unknown";
}

Json CheckResult::to_json() const {
  Json j;
  j["name"] = name;
  j["status"] = swaplab::to_string(status);
  j["detail"] = detail;
  j["evaluated"] = evaluated;
  j["counterexample"] = counterexample;
  return j;
}

bool VerificationReport::passed() const {
  for (const auto& c : checks) {
    if (c.status == CheckStatus::Fail) return false;
  }
  return true;
}

Json VerificationReport::to_json() const {
  Json checks_json = Json::array();
  for (const auto& c : checks) checks_json.push_back(c.to_json());
  Json j;
  j["instance"] = instance_id;
  j["passed"] = passed();
  j["checks"] = std::move(checks_json);
  return j;
}

CheckResult check_local_optima_reasonable(const ReductionArtifact& art, const VerifyOptions& opts) {
  return guarded("local_optima_reasonable", opts, [&] {
    Audit a(art, opts);
    return local_optima_reasonable(a);
  });
}

CheckResult check_local_optima_reasonable(const ExactInstance& inst, const VerifyOptions& opts) {
  const std::string name = "local_optima_reasonable";
  if (!inst.has_literal_labels()) return skipped(name, "instance carries no literal labels");
  return guarded(name, opts, [&] {
    SwapProblem<Rational> problem(inst);
    std::uint64_t n = 0;
    for (const auto& s : enumerate_local_optima(problem, opts.guard)) {
      ++n;
      if (!is_reasonable(inst, s)) {
        return fail(name, n, "local optimum is not reasonable",
                    Json{{"local_optimum", solution_json(inst, s, problem.cost(s))}});
      }
    }
    return pass(name, n, std::to_string(n) + " local optima, all reasonable");
  });
}

CheckResult check_cost_order_equivalence(const ReductionArtifact& art, const VerifyOptions& opts) {
  return guarded("cost_order_equivalence", opts, [&] {
    Audit a(art, opts);
    return cost_order(a);
  });
}

CheckResult check_closed_forms(const ReductionArtifact& art, const VerifyOptions& opts) {
  return guarded("closed_forms", opts, [&] {
    Audit a(art, opts);
    return closed_forms(a, opts.float_rel_tol);
  });
}

CheckResult check_no_escape_from_reasonable(const ReductionArtifact& art, const VerifyOptions& opts) {
  return guarded("no_escape_from_reasonable", opts, [&] {
    Audit a(art, opts);
    return no_escape(a);
  });
}

CheckResult check_tightness_paths(const ReductionArtifact& art, const VerifyOptions& opts) {
  return guarded("tightness_paths", opts, [&] {
    Audit a(art, opts);
    return tightness_paths(a);
  });
}

CheckResult check_psi_correspondence(const ReductionArtifact& art, const VerifyOptions& opts) {
  return guarded("psi_correspondence", opts, [&] {
    Audit a(art, opts);
    return psi_correspondence(a);
  });
}

CheckResult check_membership_bound(const ReductionArtifact& art, const VerifyOptions& opts) {
  Audit a(art, opts);
  return membership_bound(a, opts);
}

CheckResult check_single_step_lemmas(const ReductionArtifact& art, const VerifyOptions& opts) {
  return guarded("single_step_lemmas", opts, [&] {
    Audit a(art, opts);
    return single_step(a);
  });
}

CheckResult check_constants(const ReductionArtifact& art) {
  const std::string name = "constants";
  const auto& k = art.constants;
  const ReductionConstants expected =
      derive_constants(art.kind(), art.num_vars(), art.source.num_clauses(), art.source.max_weight(),
                       art.kind() == ProblemKind::Mufl ? Rational(0) : k.c);
  if (!(expected == k)) {
    return fail(name, 1, "constants differ from their derivation",
                Json{{"W", k.literal_weight},
                     {"expected_W", expected.literal_weight},
                     {"epsilon", to_string(k.epsilon)},
                     {"expected_epsilon", to_string(expected.epsilon)},
                     {"k", k.k},
                     {"expected_k", expected.k}});
  }
  const std::string hash = "sha256:" + sha256_hex(to_wsat2(art.source));
  if (hash != art.source_hash) {
    return fail(name, 2, "source hash mismatch", Json{{"recorded", art.source_hash}, {"computed", hash}});
  }
  const auto rebuilt = reduce(art.source, art.kind(), art.kind() == ProblemKind::Mufl ? default_gadget_c() : k.c);
  const auto& t = art.target;
  const auto& r = rebuilt.target;
  if (t.num_points() != r.num_points()) {
    return fail(name, 3, "point count differs from the construction",
                Json{{"points", t.num_points()}, {"expected_points", r.num_points()}});
  }
  std::uint64_t n = 3;
  for (int i = 0; i < t.num_points(); ++i) {
    ++n;
    if (t.weight(i) != r.weight(i)) {
      return fail(name, n, "client weight differs from the construction",
                  Json{{"point", i}, {"weight", t.weight(i)}, {"expected_weight", r.weight(i)}});
    }
    for (int j = 0; j < t.num_points(); ++j) {
      ++n;
      if (t.dist(i, j) != r.dist(i, j)) {
        return fail(name, n, "distance differs from the construction",
                    Json{{"i", i},
                         {"j", j},
                         {"labels", {to_string(t.labels()[static_cast<std::size_t>(i)]),
                                     to_string(t.labels()[static_cast<std::size_t>(j)])}},
                         {"distance", to_string(t.dist(i, j))},
                         {"expected_distance", to_string(r.dist(i, j))}});
      }
    }
  }
  if (t.labels() != r.labels() || t.facilities() != r.facilities() || t.k() != r.k() ||
      t.opening_costs() != r.opening_costs()) {
    return fail(name, n, "labels, facilities, K or opening costs differ from the construction", Json::object());
  }
  return pass(name, n);
}

CheckResult check_metric(const ReductionArtifact& art) {
  const std::string name = "metric";
  if (auto v = find_triangle_violation(art.target)) {
    const auto [i, j, k] = *v;
    return fail(name, 1, "triangle inequality violated",
                Json{{"i", i},
                     {"j", j},
                     {"k", k},
                     {"d_ik", to_string(art.target.dist(i, k))},
                     {"d_ij_plus_d_jk", to_string(art.target.dist(i, j) + art.target.dist(j, k))}});
  }
  const auto n = static_cast<std::uint64_t>(art.target.num_points());
  return pass(name, n * n * n);
}

CheckResult check_embeddable(const ReductionArtifact& art, double tol) {
  const std::string name = "embeddable";
  const Eigen::MatrixXd m = art.target.dist().unaryExpr([](const Rational& v) { return to_double(v); });
  const auto s = schoenberg_check(m, tol);
  if (!s.embeddable) {
    Json u = Json::array();
    for (Eigen::Index i = 0; i < s.witness.size(); ++i) u.push_back(format_double(s.witness(i)));
    return fail(name, 1, "double-centered matrix is not positive semidefinite",
                Json{{"min_eigenvalue", format_double(s.min_eigenvalue)},
                     {"witness", std::move(u)},
                     {"witness_form", format_double(s.witness_form)}});
  }
  return pass(name, 1, "min eigenvalue " + format_double(s.min_eigenvalue));
}

CheckResult check_gamma_positivity(int n_min, int n_max, int m_min, int m_max, std::uint64_t samples,
                                   std::uint64_t seed) {
  const std::string name = "gamma_positivity";
  if (n_min < 2 || n_max < n_min || m_min < 1 || m_max < m_min) {
    throw InvalidArgument("gamma sampling needs 2 <= n_min <= n_max and 1 <= m_min <= m_max");
  }
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> pick_n(n_min, n_max);
  std::uniform_int_distribution<int> pick_m(m_min, m_max);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (std::uint64_t i = 0; i < samples; ++i) {
    const int n = pick_n(rng);
    const int m = pick_m(rng);
    const double eps_max = 1.0 / (4.0 * n + 2.0 * m);
    double eps = 0.0;
    while (eps <= 0.0) eps = (1.0 - unit(rng)) * eps_max;
    double c = 1.0;
    while (c <= 1.0 || c >= 2.0) c = 1.0 + unit(rng);
    const Rational eps_q(eps), c_q(c);
    const Rational gap = gamma_gap(n, eps_q, c_q);
    const Rational factored = gamma_gap_factored(n, eps_q, c_q);
    if (!(gap > 0) || gap != factored) {
      return fail(name, i + 1, gap > 0 ? "gap differs from the factored form" : "gap is not positive",
                  Json{{"N", n},
                       {"epsilon", format_double(eps)},
                       {"c", format_double(c)},
                       {"gap", to_string(gap)},
                       {"factored", to_string(factored)}});
    }
  }
  return pass(name, samples, "exact evaluation at sampled points");
}

VerificationReport verify_artifact(const ReductionArtifact& art, const VerifyOptions& opts, std::string instance_id) {
  VerificationReport report;
  report.instance_id = std::move(instance_id);
  const auto kind = art.kind();
  report.checks.push_back(check_constants(art));
  if (kind == ProblemKind::Mufl) {
    report.checks.push_back(check_metric(art));
  } else {
    report.checks.push_back(check_embeddable(art));
  }

  Audit a(art, opts);
  auto run = [&](const std::string& name, auto&& body) { report.checks.push_back(guarded(name, opts, body)); };
  run("local_optima_reasonable", [&] { return local_optima_reasonable(a); });
  run("cost_order_equivalence", [&] { return cost_order(a); });
  run("closed_forms", [&] { return closed_forms(a, opts.float_rel_tol); });
  run("no_escape_from_reasonable", [&] { return no_escape(a); });
  run("tightness_paths", [&] { return tightness_paths(a); });
  run("psi_correspondence", [&] { return psi_correspondence(a); });
  if (kind == ProblemKind::Dfkm) {
    report.checks.push_back(membership_bound(a, opts));
  } else {
    run("single_step_lemmas", [&] { return single_step(a); });
  }
  return report;
}

}  // namespace swaplab
