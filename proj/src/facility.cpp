#include "swaplab/facility.hpp"

#include <charconv>

namespace swaplab {
namespace {

int parse_positive(std::string_view digits, std::string_view whole) {
  int value = 0;
  auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), value);
  if (ec != std::errc() || ptr != digits.data() + digits.size() || value < 1) {
    throw ParseError("bad point label '" + std::string(whole) + "'");
  }
  return value;
}

}  // namespace

std::string to_string(ProblemKind kind) {
  switch (kind) {
    case ProblemKind::Mufl: return "mufl";
    case ProblemKind::Dkm: return "dkm";
    case ProblemKind::Dfkm: return "dfkm";
  }
  return "?";
}

ProblemKind parse_problem_kind(std::string_view text) {
  if (text == "mufl") return ProblemKind::Mufl;
  if (text == "dkm") return ProblemKind::Dkm;
  if (text == "dfkm") return ProblemKind::Dfkm;
  throw ParseError("unknown problem kind '" + std::string(text) + "' (expected mufl, dkm or dfkm)");
}

std::string to_string(const PointLabel& label) {
  if (auto lit = std::get_if<LiteralLabel>(&label)) {
    return (lit->positive ? "x" : "~x") + std::to_string(lit->var + 1);
  }
  const auto& cl = std::get<ClauseLabel>(label);
  std::string s = "b" + std::to_string(cl.clause + 1);
  if (cl.copy > 0) s += "." + std::to_string(cl.copy);
  return s;
}

PointLabel parse_point_label(std::string_view text) {
  const std::string_view whole = text;
  bool negated = false;
  for (std::string_view prefix : {"~", "!", "-", "\xC2\xAC"}) {
    if (text.substr(0, prefix.size()) == prefix) {
      negated = true;
      text.remove_prefix(prefix.size());
      break;
    }
  }
  if (text.size() < 2) throw ParseError("bad point label '" + std::string(whole) + "'");
  if (text.front() == 'x') return LiteralLabel{parse_positive(text.substr(1), whole) - 1, !negated};
  if (text.front() == 'b' && !negated) {
    text.remove_prefix(1);
    int copy = 0;
    if (auto dot = text.find('.'); dot != std::string_view::npos) {
      copy = parse_positive(text.substr(dot + 1), whole);
      text = text.substr(0, dot);
    }
    return ClauseLabel{parse_positive(text, whole) - 1, copy};
  }
  throw ParseError("bad point label '" + std::string(whole) + "'");
}

Solution::Solution(std::vector<int> open) : open_(std::move(open)) {
  std::sort(open_.begin(), open_.end());
  if (std::adjacent_find(open_.begin(), open_.end()) != open_.end()) {
    throw InvalidArgument("solution lists a point twice");
  }
  if (!open_.empty() && open_.front() < 0) throw InvalidArgument("negative point index");
}

Solution Solution::parse(std::string_view text) {
  std::vector<int> open;
  while (!text.empty()) {
    auto semi = text.find(';');
    auto tok = text.substr(0, semi);
    int value = 0;
    auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), value);
    if (ec != std::errc() || ptr != tok.data() + tok.size()) {
      throw ParseError("bad solution token '" + std::string(tok) + "'");
    }
    open.push_back(value);
    if (semi == std::string_view::npos) break;
    text.remove_prefix(semi + 1);
  }
  return Solution(std::move(open));
}

Solution Solution::with_added(int point) const {
  Solution out = *this;
  out.open_.insert(std::lower_bound(out.open_.begin(), out.open_.end(), point), point);
  return out;
}

Solution Solution::with_dropped(int point) const {
  Solution out = *this;
  out.open_.erase(std::lower_bound(out.open_.begin(), out.open_.end(), point));
  return out;
}

Solution Solution::with_swapped(int out_point, int in_point) const {
  return with_dropped(out_point).with_added(in_point);
}

std::string Solution::to_string() const {
  std::string s;
  for (std::size_t i = 0; i < open_.size(); ++i) {
    if (i > 0) s += ';';
    s += std::to_string(open_[i]);
  }
  return s;
}

std::vector<Neighbor<Solution>> swap_neighbors(ProblemKind kind, const std::vector<int>& candidates,
                                               const Solution& open) {
  std::vector<int> closed;
  for (int p : candidates) {
    if (!open.contains(p)) closed.push_back(p);
  }
  std::vector<Neighbor<Solution>> out;
  if (kind == ProblemKind::Mufl) {
    out.reserve(closed.size() + open.size() * (closed.size() + 1));
    for (int j : closed) out.push_back({Move::add(j), open.with_added(j)});
  } else {
    out.reserve(open.size() * closed.size());
  }
  for (int i : open) {
    if (kind == ProblemKind::Mufl && open.size() > 1) out.push_back({Move::drop(i), open.with_dropped(i)});
    for (int j : closed) out.push_back({Move::swap(i, j), open.with_swapped(i, j)});
  }
  return out;
}

}  // namespace swaplab
