#pragma once

#include <compare>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

namespace swaplab {

/// A literal over 0-based variable indices. Text formats print variables 1-based.
struct Literal {
  int var = 0;
  bool positive = true;

  Literal negated() const { return {var, !positive}; }
  auto operator<=>(const Literal&) const = default;
};

struct Clause {
  Literal first;
  Literal second;

  bool contains(Literal lit) const { return first == lit || second == lit; }
};

enum class SatMode { Standard, Nae };

/// Truth assignment over N variables. Serialized as N characters '0'/'1'.
class Assignment {
 public:
  Assignment() = default;
  explicit Assignment(std::size_t num_vars) : bits_(num_vars, 0) {}
  explicit Assignment(std::vector<std::uint8_t> bits);

  static Assignment parse(std::string_view text);

  std::size_t size() const { return bits_.size(); }
  bool operator[](std::size_t var) const { return bits_[var] != 0; }
  void set(std::size_t var, bool value) { bits_[var] = value ? 1 : 0; }

  bool satisfies(Literal lit) const { return (*this)[static_cast<std::size_t>(lit.var)] == lit.positive; }

  Assignment flipped(std::size_t var) const;
  Assignment complement() const;
  std::size_t hamming_distance(const Assignment& other) const;
  std::string to_string() const;

  auto operator<=>(const Assignment&) const = default;

 private:
  std::vector<std::uint8_t> bits_;
};

/// Weighted 2-CNF. In NAE mode every clause holds two positive literals and is
/// satisfied when its variables take different values.
class SatInstance {
 public:
  SatInstance(int num_vars, std::vector<Clause> clauses, std::vector<std::int64_t> weights,
              SatMode mode = SatMode::Standard);

  int num_vars() const { return num_vars_; }
  int num_clauses() const { return static_cast<int>(clauses_.size()); }
  SatMode mode() const { return mode_; }
  const std::vector<Clause>& clauses() const { return clauses_; }
  const Clause& clause(int m) const { return clauses_[static_cast<std::size_t>(m)]; }
  const std::vector<std::int64_t>& weights() const { return weights_; }
  std::int64_t weight(int m) const { return weights_[static_cast<std::size_t>(m)]; }

  std::int64_t max_weight() const { return max_weight_; }
  std::int64_t total_weight() const { return total_weight_; }

  /// Indices of clauses that contain `lit` (as that exact literal).
  std::vector<int> clauses_containing(Literal lit) const;

 private:
  int num_vars_;
  std::vector<Clause> clauses_;
  std::vector<std::int64_t> weights_;
  SatMode mode_;
  std::int64_t max_weight_ = 0;
  std::int64_t total_weight_ = 0;
};

bool is_satisfied(const Clause& clause, const Assignment& t);
bool is_nae_satisfied(const Clause& clause, const Assignment& t);

/// Weight of clauses with at least one true literal. Requires STD mode.
std::int64_t sat_cost(const SatInstance& inst, const Assignment& t);

/// Weight of clauses whose two variables differ. Requires NAE mode.
std::int64_t nae_cost(const SatInstance& inst, const Assignment& t);

/// Mode-dispatched cost: sat_cost for STD, nae_cost for NAE.
std::int64_t objective(const SatInstance& inst, const Assignment& t);

struct ClauseSets {
  std::vector<int> satisfied;
  std::vector<int> unsatisfied;
};

/// Partition of clause indices by the instance's own satisfaction notion.
ClauseSets clause_sets(const SatInstance& inst, const Assignment& t);

std::int64_t weight_of(const SatInstance& inst, const std::vector<int>& clause_indices);

/// All assignments at Hamming distance one, ordered by flipped variable.
std::vector<Assignment> flip_neighbors(const Assignment& t);

/// True iff no single flip strictly increases the instance objective.
bool is_flip_local_optimum(const SatInstance& inst, const Assignment& t);

// wsat2 text format:
//   p wsat2 <N> <M> <std|nae>
//   <lit1> <lit2> <weight>      (M lines, literals are signed 1-based ints)
// Lines starting with 'c' and blank lines are ignored.
SatInstance read_wsat2(std::istream& in);
SatInstance parse_wsat2(std::string_view text);
void write_wsat2(std::ostream& out, const SatInstance& inst);
std::string to_wsat2(const SatInstance& inst);

std::string literal_label(Literal lit);

}  // namespace swaplab
