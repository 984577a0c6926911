#pragma once

#include <concepts>
#include <cstdint>
#include <limits>
#include <map>
#include <optional>
#include <ostream>
#include <random>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "swaplab/error.hpp"
#include "swaplab/facility.hpp"
#include "swaplab/move.hpp"
#include "swaplab/sat.hpp"

namespace swaplab {

enum class Direction { Minimize, Maximize };
enum class PivotRule { Best, First };

std::string to_string(PivotRule rule);
PivotRule parse_pivot_rule(std::string_view text);

inline constexpr std::uint64_t kDefaultNodeGuard = std::uint64_t{1} << 20;

template <typename Cost>
bool strictly_better(Direction direction, const Cost& candidate, const Cost& incumbent) {
  return direction == Direction::Minimize ? candidate < incumbent : incumbent < candidate;
}

/// A local-search problem: feasible solutions, a cost to optimize in
/// `direction()`, and a deterministic neighborhood.
template <typename P>
concept SearchProblem = requires(const P& p, const typename P::SolutionType& s, std::uint64_t guard) {
  typename P::SolutionType;
  typename P::CostType;
  { p.direction() } -> std::same_as<Direction>;
  { p.cost(s) } -> std::same_as<typename P::CostType>;
  { p.neighbors(s) } -> std::same_as<std::vector<Neighbor<typename P::SolutionType>>>;
  { p.validate(s) };
  { p.solution_space_size() } -> std::same_as<std::uint64_t>;
  { p.enumerate_solutions(guard) } -> std::same_as<std::vector<typename P::SolutionType>>;
};

/// Weighted (NAE-)Max-2-SAT under the Flip neighborhood; maximizes the
/// mode-dispatched objective. Holds a reference to the instance.
class FlipProblem {
 public:
  using SolutionType = Assignment;
  using CostType = std::int64_t;

  explicit FlipProblem(const SatInstance& inst) : inst_(&inst) {}
  explicit FlipProblem(SatInstance&&) = delete;

  const SatInstance& instance() const { return *inst_; }
  Direction direction() const { return Direction::Maximize; }
  CostType cost(const Assignment& t) const { return objective(*inst_, t); }
  void validate(const Assignment& t) const;
  std::vector<Neighbor<Assignment>> neighbors(const Assignment& t) const;
  std::uint64_t solution_space_size() const;
  std::vector<Assignment> enumerate_solutions(std::uint64_t guard = kDefaultNodeGuard) const;
  Assignment random_solution(std::mt19937_64& rng) const;

 private:
  const SatInstance* inst_;
};

std::uint64_t saturating_binomial(std::uint64_t n, std::uint64_t k);

/// Single-swap local search over a MUFL/DKM/DFKM instance; minimizes the
/// kind-dispatched objective. Holds a reference to the instance.
template <typename Scalar>
class SwapProblem {
 public:
  using SolutionType = Solution;
  using CostType = Scalar;

  explicit SwapProblem(const LocationInstance<Scalar>& inst) : inst_(&inst) {}
  explicit SwapProblem(LocationInstance<Scalar>&&) = delete;

  const LocationInstance<Scalar>& instance() const { return *inst_; }
  Direction direction() const { return Direction::Minimize; }
  Scalar cost(const Solution& s) const { return swaplab::cost(*inst_, s); }
  void validate(const Solution& s) const { validate_solution(*inst_, s); }
  std::vector<Neighbor<Solution>> neighbors(const Solution& s) const { return swap_neighbors(*inst_, s); }

  std::uint64_t solution_space_size() const {
    const auto f = static_cast<std::uint64_t>(inst_->facilities().size());
    if (inst_->kind() == ProblemKind::Mufl) {
      return f >= 64 ? std::numeric_limits<std::uint64_t>::max() : (std::uint64_t{1} << f) - 1;
    }
    return saturating_binomial(f, static_cast<std::uint64_t>(inst_->k()));
  }

  std::vector<Solution> enumerate_solutions(std::uint64_t guard = kDefaultNodeGuard) const {
    const std::uint64_t total = solution_space_size();
    if (total > guard) {
      throw GuardExceeded("solution space has " + std::to_string(total) + " nodes, guard is " +
                          std::to_string(guard));
    }
    const auto& cand = inst_->facilities();
    const std::size_t f = cand.size();
    std::vector<Solution> out;
    out.reserve(static_cast<std::size_t>(total));
    std::size_t k_min = 1, k_max = f;
    if (inst_->kind() != ProblemKind::Mufl) k_min = k_max = static_cast<std::size_t>(inst_->k());
    for (std::size_t k = k_min; k <= k_max; ++k) {
      std::vector<std::size_t> idx(k);
      for (std::size_t i = 0; i < k; ++i) idx[i] = i;
      while (true) {
        std::vector<int> open(k);
        for (std::size_t i = 0; i < k; ++i) open[i] = cand[idx[i]];
        out.emplace_back(std::move(open));
        std::size_t i = k;
        while (i > 0 && idx[i - 1] == f - k + i - 1) --i;
        if (i == 0) break;
        ++idx[i - 1];
        for (std::size_t j = i; j < k; ++j) idx[j] = idx[j - 1] + 1;
      }
    }
    return out;
  }

  /// Uniform random feasible solution: a nonempty facility subset for MUFL,
  /// a K-subset of the points otherwise.
  Solution random_solution(std::mt19937_64& rng) const {
    const auto& cand = inst_->facilities();
    std::vector<int> open;
    if (inst_->kind() == ProblemKind::Mufl) {
      std::bernoulli_distribution coin(0.5);
      while (open.empty()) {
        for (int p : cand) {
          if (coin(rng)) open.push_back(p);
        }
      }
    } else {
      std::vector<int> pool = cand;
      for (int i = 0; i < inst_->k(); ++i) {
        std::uniform_int_distribution<std::size_t> pick(static_cast<std::size_t>(i), pool.size() - 1);
        std::swap(pool[static_cast<std::size_t>(i)], pool[pick(rng)]);
        open.push_back(pool[static_cast<std::size_t>(i)]);
      }
    }
    return Solution(std::move(open));
  }

 private:
  const LocationInstance<Scalar>* inst_;
};

template <typename SolutionT, typename Cost>
struct SearchStep {
  Move move;
  SolutionT solution;
  Cost cost;
};

template <typename SolutionT, typename Cost>
struct SearchTrace {
  SolutionT initial;
  Cost initial_cost;
  std::vector<SearchStep<SolutionT, Cost>> steps;
  PivotRule pivot = PivotRule::Best;
  Direction direction = Direction::Minimize;

  const SolutionT& final_solution() const { return steps.empty() ? initial : steps.back().solution; }
  const Cost& final_cost() const { return steps.empty() ? initial_cost : steps.back().cost; }
};

/// Strict-improvement local search. BEST takes the best neighbor (earliest in
/// enumeration order among ties), FIRST the first improving one. Equal-cost
/// neighbors are never taken.
template <SearchProblem P>
SearchTrace<typename P::SolutionType, typename P::CostType> local_search(const P& problem,
                                                                         const typename P::SolutionType& init,
                                                                         PivotRule pivot) {
  problem.validate(init);
  SearchTrace<typename P::SolutionType, typename P::CostType> trace{init, problem.cost(init), {}, pivot,
                                                                     problem.direction()};
  auto current = init;
  auto current_cost = trace.initial_cost;
  while (true) {
    std::optional<std::size_t> chosen;
    std::optional<typename P::CostType> chosen_cost;
    auto nbrs = problem.neighbors(current);
    for (std::size_t i = 0; i < nbrs.size(); ++i) {
      auto c = problem.cost(nbrs[i].solution);
      if (!strictly_better(problem.direction(), c, current_cost)) continue;
      if (!chosen || strictly_better(problem.direction(), c, *chosen_cost)) {
        chosen = i;
        chosen_cost = std::move(c);
        if (pivot == PivotRule::First) break;
      }
    }
    if (!chosen) break;
    current = nbrs[*chosen].solution;
    current_cost = *chosen_cost;
    trace.steps.push_back({nbrs[*chosen].move, current, current_cost});
  }
  return trace;
}

/// Directed graph over all feasible solutions with an arc u -> v whenever v is
/// a neighbor of u with strictly better cost. Sinks are the local optima.
template <typename SolutionT, typename Cost>
struct TransitionGraph {
  std::vector<SolutionT> nodes;
  std::vector<Cost> costs;
  std::vector<std::vector<std::size_t>> successors;
  std::vector<std::pair<std::size_t, std::size_t>> arcs;
  std::map<SolutionT, std::size_t> index;

  std::size_t size() const { return nodes.size(); }
  bool is_sink(std::size_t node) const { return successors[node].empty(); }

  std::vector<std::size_t> sinks() const {
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < nodes.size(); ++i) {
      if (is_sink(i)) out.push_back(i);
    }
    return out;
  }

  std::optional<std::size_t> find(const SolutionT& s) const {
    auto it = index.find(s);
    if (it == index.end()) return std::nullopt;
    return it->second;
  }
};

template <SearchProblem P>
TransitionGraph<typename P::SolutionType, typename P::CostType> build_transition_graph(
    const P& problem, std::uint64_t guard = kDefaultNodeGuard) {
  TransitionGraph<typename P::SolutionType, typename P::CostType> tg;
  tg.nodes = problem.enumerate_solutions(guard);
  tg.costs.reserve(tg.nodes.size());
  for (std::size_t i = 0; i < tg.nodes.size(); ++i) {
    tg.index.emplace(tg.nodes[i], i);
    tg.costs.push_back(problem.cost(tg.nodes[i]));
  }
  tg.successors.resize(tg.nodes.size());
  for (std::size_t u = 0; u < tg.nodes.size(); ++u) {
    for (const auto& nb : problem.neighbors(tg.nodes[u])) {
      std::size_t v = tg.index.at(nb.solution);
      if (strictly_better(problem.direction(), tg.costs[v], tg.costs[u])) {
        tg.successors[u].push_back(v);
        tg.arcs.emplace_back(u, v);
      }
    }
  }
  return tg;
}

template <SearchProblem P>
std::vector<typename P::SolutionType> enumerate_local_optima(const P& problem,
                                                             std::uint64_t guard = kDefaultNodeGuard) {
  auto tg = build_transition_graph(problem, guard);
  std::vector<typename P::SolutionType> out;
  for (std::size_t i : tg.sinks()) out.push_back(tg.nodes[i]);
  return out;
}

/// Kahn order of the nodes, or nullopt if the graph has a cycle.
template <typename SolutionT, typename Cost>
std::optional<std::vector<std::size_t>> topological_order(const TransitionGraph<SolutionT, Cost>& tg) {
  std::vector<std::size_t> indegree(tg.size(), 0);
  for (const auto& [u, v] : tg.arcs) ++indegree[v];
  std::vector<std::size_t> order, ready;
  for (std::size_t i = tg.size(); i-- > 0;) {
    if (indegree[i] == 0) ready.push_back(i);
  }
  while (!ready.empty()) {
    std::size_t u = ready.back();
    ready.pop_back();
    order.push_back(u);
    for (std::size_t v : tg.successors[u]) {
      if (--indegree[v] == 0) ready.push_back(v);
    }
  }
  if (order.size() != tg.size()) return std::nullopt;
  return order;
}

inline std::string solution_key(const Assignment& t) { return t.to_string(); }
inline std::string solution_key(const Solution& s) { return s.to_string(); }

/// `step,move,cost`; row 0 is the initial solution with move `init`.
template <typename SolutionT, typename Cost>
void write_trace_csv(std::ostream& out, const SearchTrace<SolutionT, Cost>& trace) {
  out << "step,move,cost\n";
  out << "0,init," << format_scalar(trace.initial_cost) << '\n';
  for (std::size_t i = 0; i < trace.steps.size(); ++i) {
    out << (i + 1) << ',' << trace.steps[i].move.to_string() << ',' << format_scalar(trace.steps[i].cost) << '\n';
  }
}

/// `from,to` with solutions rendered as sorted ';'-joined indices (or 0/1
/// strings for assignments).
template <typename SolutionT, typename Cost>
void write_edge_list_csv(std::ostream& out, const TransitionGraph<SolutionT, Cost>& tg) {
  out << "from,to\n";
  for (const auto& [u, v] : tg.arcs) out << solution_key(tg.nodes[u]) << ',' << solution_key(tg.nodes[v]) << '\n';
}

}  // namespace swaplab
