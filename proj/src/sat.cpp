#include "swaplab/sat.hpp"

#include <algorithm>
#include <charconv>
#include <istream>
#include <ostream>
#include <sstream>

#include "swaplab/error.hpp"

namespace swaplab {
namespace {

std::int64_t checked_add(std::int64_t a, std::int64_t b) {
  std::int64_t out = 0;
  if (__builtin_add_overflow(a, b, &out)) throw InvalidArgument("clause weight sum overflows 64 bits");
  return out;
}

void require_length(const SatInstance& inst, const Assignment& t) {
  if (t.size() != static_cast<std::size_t>(inst.num_vars())) {
    throw InvalidArgument("assignment has " + std::to_string(t.size()) + " variables, instance has " +
                          std::to_string(inst.num_vars()));
  }
}

std::vector<std::string_view> split_ws(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t' || line[i] == '\r')) ++i;
    std::size_t j = i;
    while (j < line.size() && line[j] != ' ' && line[j] != '\t' && line[j] != '\r') ++j;
    if (j > i) out.push_back(line.substr(i, j - i));
    i = j;
  }
  return out;
}

template <typename Int>
Int parse_int(std::string_view tok, std::size_t line, const char* what) {
  Int value{};
  auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), value);
  if (ec != std::errc() || ptr != tok.data() + tok.size()) {
    throw ParseError(std::string("expected integer ") + what + ", got '" + std::string(tok) + "'", line);
  }
  return value;
}

}  // namespace

Assignment::Assignment(std::vector<std::uint8_t> bits) : bits_(std::move(bits)) {
  for (auto& b : bits_) b = b ? 1 : 0;
}

Assignment Assignment::parse(std::string_view text) {
  std::vector<std::uint8_t> bits;
  bits.reserve(text.size());
  for (char ch : text) {
    if (ch != '0' && ch != '1') {
      throw ParseError("assignment must consist of '0'/'1' characters, got '" + std::string(text) + "'");
    }
    bits.push_back(ch == '1' ? 1 : 0);
  }
  return Assignment(std::move(bits));
}

Assignment Assignment::flipped(std::size_t var) const {
  Assignment out = *this;
  out.bits_[var] ^= 1;
  return out;
}

Assignment Assignment::complement() const {
  Assignment out = *this;
  for (auto& b : out.bits_) b ^= 1;
  return out;
}

std::size_t Assignment::hamming_distance(const Assignment& other) const {
  if (other.size() != size()) throw InvalidArgument("assignments differ in length");
  std::size_t d = 0;
  for (std::size_t i = 0; i < bits_.size(); ++i) d += bits_[i] != other.bits_[i];
  return d;
}

std::string Assignment::to_string() const {
  std::string s;
  s.reserve(bits_.size());
  for (auto b : bits_) s.push_back(b ? '1' : '0');
  return s;
}

SatInstance::SatInstance(int num_vars, std::vector<Clause> clauses, std::vector<std::int64_t> weights,
                         SatMode mode)
    : num_vars_(num_vars), clauses_(std::move(clauses)), weights_(std::move(weights)), mode_(mode) {
  if (num_vars_ < 1) throw InvalidArgument("instance needs at least one variable");
  if (clauses_.size() != weights_.size()) throw InvalidArgument("one weight per clause required");
  for (std::size_t m = 0; m < clauses_.size(); ++m) {
    for (Literal lit : {clauses_[m].first, clauses_[m].second}) {
      if (lit.var < 0 || lit.var >= num_vars_) {
        throw InvalidArgument("clause " + std::to_string(m + 1) + " references variable " +
                              std::to_string(lit.var + 1) + " outside [1," + std::to_string(num_vars_) + "]");
      }
      if (mode_ == SatMode::Nae && !lit.positive) {
        throw InvalidArgument("NAE clause " + std::to_string(m + 1) + " contains a negative literal");
      }
    }
    if (weights_[m] < 1) throw InvalidArgument("clause weights must be positive integers");
    max_weight_ = std::max(max_weight_, weights_[m]);
    total_weight_ = checked_add(total_weight_, weights_[m]);
  }
}

std::vector<int> SatInstance::clauses_containing(Literal lit) const {
  std::vector<int> out;
  for (int m = 0; m < num_clauses(); ++m) {
    if (clause(m).contains(lit)) out.push_back(m);
  }
  return out;
}

bool is_satisfied(const Clause& clause, const Assignment& t) {
  return t.satisfies(clause.first) || t.satisfies(clause.second);
}

bool is_nae_satisfied(const Clause& clause, const Assignment& t) {
  return t.satisfies(clause.first) != t.satisfies(clause.second);
}

std::int64_t sat_cost(const SatInstance& inst, const Assignment& t) {
  if (inst.mode() != SatMode::Standard) throw InvalidArgument("sat_cost needs a STD instance");
  require_length(inst, t);
  std::int64_t total = 0;
  for (int m = 0; m < inst.num_clauses(); ++m) {
    if (is_satisfied(inst.clause(m), t)) total += inst.weight(m);
  }
  return total;
}

std::int64_t nae_cost(const SatInstance& inst, const Assignment& t) {
  if (inst.mode() != SatMode::Nae) throw InvalidArgument("nae_cost needs a NAE instance");
  require_length(inst, t);
  std::int64_t total = 0;
  for (int m = 0; m < inst.num_clauses(); ++m) {
    if (is_nae_satisfied(inst.clause(m), t)) total += inst.weight(m);
  }
  return total;
}

std::int64_t objective(const SatInstance& inst, const Assignment& t) {
  return inst.mode() == SatMode::Standard ? sat_cost(inst, t) : nae_cost(inst, t);
}

ClauseSets clause_sets(const SatInstance& inst, const Assignment& t) {
  require_length(inst, t);
  ClauseSets sets;
  for (int m = 0; m < inst.num_clauses(); ++m) {
    bool sat = inst.mode() == SatMode::Standard ? is_satisfied(inst.clause(m), t)
                                                : is_nae_satisfied(inst.clause(m), t);
    (sat ? sets.satisfied : sets.unsatisfied).push_back(m);
  }
  return sets;
}

std::int64_t weight_of(const SatInstance& inst, const std::vector<int>& clause_indices) {
  std::int64_t total = 0;
  for (int m : clause_indices) total += inst.weight(m);
  return total;
}

std::vector<Assignment> flip_neighbors(const Assignment& t) {
  std::vector<Assignment> out;
  out.reserve(t.size());
  for (std::size_t n = 0; n < t.size(); ++n) out.push_back(t.flipped(n));
  return out;
}

bool is_flip_local_optimum(const SatInstance& inst, const Assignment& t) {
  const std::int64_t here = objective(inst, t);
  for (const auto& next : flip_neighbors(t)) {
    if (objective(inst, next) > here) return false;
  }
  return true;
}

SatInstance read_wsat2(std::istream& in) {
  std::string line;
  std::size_t line_no = 0;
  bool have_header = false;
  int n = 0;
  long m = 0;
  SatMode mode = SatMode::Standard;
  std::vector<Clause> clauses;
  std::vector<std::int64_t> weights;

  while (std::getline(in, line)) {
    ++line_no;
    auto tok = split_ws(line);
    if (tok.empty() || tok[0].front() == 'c') continue;
    if (!have_header) {
      if (tok.size() != 5 || tok[0] != "p" || tok[1] != "wsat2") {
        throw ParseError("expected header 'p wsat2 <N> <M> <std|nae>'", line_no);
      }
      n = parse_int<int>(tok[2], line_no, "N");
      m = parse_int<long>(tok[3], line_no, "M");
      if (n < 1 || m < 0) throw ParseError("N must be >= 1 and M >= 0", line_no);
      if (tok[4] == "std") {
        mode = SatMode::Standard;
      } else if (tok[4] == "nae") {
        mode = SatMode::Nae;
      } else {
        throw ParseError("mode must be 'std' or 'nae', got '" + std::string(tok[4]) + "'", line_no);
      }
      have_header = true;
      continue;
    }
    if (tok.size() != 3) throw ParseError("expected '<lit1> <lit2> <weight>'", line_no);
    if (static_cast<long>(clauses.size()) == m) throw ParseError("more clause lines than declared M", line_no);
    Literal lits[2];
    for (int i = 0; i < 2; ++i) {
      int v = parse_int<int>(tok[static_cast<std::size_t>(i)], line_no, "literal");
      if (v == 0 || v > n || v < -n) {
        throw ParseError("literal " + std::to_string(v) + " out of range for N=" + std::to_string(n), line_no);
      }
      if (mode == SatMode::Nae && v < 0) throw ParseError("NAE instances take positive literals only", line_no);
      lits[i] = Literal{std::abs(v) - 1, v > 0};
    }
    auto w = parse_int<std::int64_t>(tok[2], line_no, "weight");
    if (w < 1) throw ParseError("weight must be a positive integer", line_no);
    clauses.push_back({lits[0], lits[1]});
    weights.push_back(w);
  }
  if (!have_header) throw ParseError("missing 'p wsat2' header", line_no);
  if (static_cast<long>(clauses.size()) != m) {
    throw ParseError("header declares " + std::to_string(m) + " clauses, found " + std::to_string(clauses.size()),
                     line_no);
  }
  return SatInstance(n, std::move(clauses), std::move(weights), mode);
}

SatInstance parse_wsat2(std::string_view text) {
  std::istringstream in{std::string(text)};
  return read_wsat2(in);
}

void write_wsat2(std::ostream& out, const SatInstance& inst) {
  out << "p wsat2 " << inst.num_vars() << ' ' << inst.num_clauses() << ' '
      << (inst.mode() == SatMode::Standard ? "std" : "nae") << '\n';
  auto signed_lit = [](Literal lit) { return lit.positive ? lit.var + 1 : -(lit.var + 1); };
  for (int m = 0; m < inst.num_clauses(); ++m) {
    const auto& cl = inst.clause(m);
    out << signed_lit(cl.first) << ' ' << signed_lit(cl.second) << ' ' << inst.weight(m) << '\n';
  }
}

std::string to_wsat2(const SatInstance& inst) {
  std::ostringstream out;
  write_wsat2(out, inst);
  return out.str();
}

std::string literal_label(Literal lit) {
  return (lit.positive ? "x" : "~x") + std::to_string(lit.var + 1);
}

}  // namespace swaplab
