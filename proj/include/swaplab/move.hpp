#pragma once

#include <compare>
#include <string>

namespace swaplab {

/// A single local-search move. Flip carries a 0-based variable; the others
/// carry 0-based point indices.
struct Move {
  enum class Type { Flip, Add, Drop, Swap };

  Type type = Type::Flip;
  int dropped = -1;
  int added = -1;

  static Move flip(int var) { return {Type::Flip, var, var}; }
  static Move add(int point) { return {Type::Add, -1, point}; }
  static Move drop(int point) { return {Type::Drop, point, -1}; }
  static Move swap(int out, int in) { return {Type::Swap, out, in}; }

  /// `flip:<n>` (1-based variable), `add:<i>`, `drop:<i>`, `swap:<i>-><j>`.
  std::string to_string() const {
    switch (type) {
      case Type::Flip: return "flip:" + std::to_string(added + 1);
      case Type::Add: return "add:" + std::to_string(added);
      case Type::Drop: return "drop:" + std::to_string(dropped);
      case Type::Swap: return "swap:" + std::to_string(dropped) + "->" + std::to_string(added);
    }
    return {};
  }

  bool operator==(const Move&) const = default;
};

template <typename SolutionT>
struct Neighbor {
  Move move;
  SolutionT solution;
};

}  // namespace swaplab
