#pragma once

#include <cstdint>
#include <set>
#include <utility>
#include <vector>

namespace chainlab::auction {

struct Interval {
  std::int64_t lo = 1;
  std::int64_t hi = 1;

  bool leaf() const { return lo == hi; }
  bool contains(std::int64_t v) const { return lo <= v && v <= hi; }
  std::int64_t mid() const { return lo + (hi - lo) / 2; }
  friend bool operator==(const Interval&, const Interval&) = default;
};

/// Left [x, floor((x+y)/2)], right [floor((x+y)/2)+1, y]. Throws
/// ChainError(AtLeaf) when x == y.
std::pair<Interval, Interval> bat_children(Interval node);

/// Edges on the longest root-to-leaf path of BAT(m), i.e. ceil(log2 m).
int bat_depth(std::int64_t m);

/// Depth-t ancestor of the leaf `value` (the leaf itself once t reaches it).
Interval bat_ancestor(std::int64_t m, std::int64_t value, int depth);

/// Contract position in the tree: current interval and moves taken.
struct BatCursor {
  Interval node;
  int step = 0;

  static BatCursor root(std::int64_t m) { return BatCursor{Interval{1, m}, 0}; }
  void left();
  void right();
  /// Implicit left steps owed before acting at path block t.
  void catch_up(int t);
  /// The right() pseudocode: catch up, then one explicit right move unless
  /// already at a leaf. Returns whether a right move happened.
  bool apply_right(int t);
  friend bool operator==(const BatCursor&, const BatCursor&) = default;
};

/// Exact maximum and the 0-based indices attaining it.
struct WinnerOracle {
  std::int64_t max = 0;
  std::set<std::size_t> argmax;
};

WinnerOracle brute_force_winner(const std::vector<std::int64_t>& bids);

}  // namespace chainlab::auction
