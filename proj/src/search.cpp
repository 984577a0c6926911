#include "swaplab/search.hpp"

namespace swaplab {

std::string to_string(PivotRule rule) { return rule == PivotRule::Best ? "best" : "first"; }

PivotRule parse_pivot_rule(std::string_view text) {
  if (text == "best") return PivotRule::Best;
  if (text == "first") return PivotRule::First;
  throw ParseError("pivot rule must be 'best' or 'first', got '" + std::string(text) + "'");
}

std::uint64_t saturating_binomial(std::uint64_t n, std::uint64_t k) {
  if (k > n) return 0;
  k = std::min(k, n - k);
  constexpr auto kMax = std::numeric_limits<std::uint64_t>::max();
  unsigned __int128 acc = 1;
  for (std::uint64_t i = 1; i <= k; ++i) {
    acc = acc * (n - k + i) / i;
    if (acc > kMax) return kMax;
  }
  return static_cast<std::uint64_t>(acc);
}

void FlipProblem::validate(const Assignment& t) const {
  if (t.size() != static_cast<std::size_t>(inst_->num_vars())) {
    throw Infeasible("assignment has " + std::to_string(t.size()) + " variables, instance has " +
                     std::to_string(inst_->num_vars()));
  }
}

std::vector<Neighbor<Assignment>> FlipProblem::neighbors(const Assignment& t) const {
  std::vector<Neighbor<Assignment>> out;
  out.reserve(t.size());
  for (std::size_t n = 0; n < t.size(); ++n) out.push_back({Move::flip(static_cast<int>(n)), t.flipped(n)});
  return out;
}

std::uint64_t FlipProblem::solution_space_size() const {
  const auto n = static_cast<std::uint64_t>(inst_->num_vars());
  return n >= 64 ? std::numeric_limits<std::uint64_t>::max() : std::uint64_t{1} << n;
}

std::vector<Assignment> FlipProblem::enumerate_solutions(std::uint64_t guard) const {
  const std::uint64_t total = solution_space_size();
  if (total > guard) {
    throw GuardExceeded("solution space has " + std::to_string(total) + " nodes, guard is " + std::to_string(guard));
  }
  const auto n = static_cast<std::size_t>(inst_->num_vars());
  std::vector<Assignment> out;
  out.reserve(static_cast<std::size_t>(total));
  for (std::uint64_t code = 0; code < total; ++code) {
    Assignment t(n);
    for (std::size_t v = 0; v < n; ++v) t.set(v, (code >> (n - 1 - v)) & 1U);
    out.push_back(std::move(t));
  }
  return out;
}

Assignment FlipProblem::random_solution(std::mt19937_64& rng) const {
  std::bernoulli_distribution coin(0.5);
  Assignment t(static_cast<std::size_t>(inst_->num_vars()));
  for (std::size_t v = 0; v < t.size(); ++v) t.set(v, coin(rng));
  return t;
}

}  // namespace swaplab
