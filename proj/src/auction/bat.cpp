#include "chainlab/auction/bat.hpp"

#include <stdexcept>

#include "chainlab/simchain/error.hpp"

namespace chainlab::auction {

std::pair<Interval, Interval> bat_children(Interval node) {
  if (node.lo > node.hi) throw std::invalid_argument("empty interval");
  if (node.leaf()) throw simchain::ChainError(simchain::Error::AtLeaf);
  const std::int64_t m = node.mid();
  return {Interval{node.lo, m}, Interval{m + 1, node.hi}};
}

int bat_depth(std::int64_t m) {
  if (m < 1) throw std::invalid_argument("BAT needs m >= 1");
  int depth = 0;
  for (std::int64_t size = m; size > 1; size = (size + 1) / 2) ++depth;
  return depth;
}

Interval bat_ancestor(std::int64_t m, std::int64_t value, int depth) {
  Interval node{1, m};
  if (!node.contains(value)) throw std::invalid_argument("value outside BAT");
  for (int d = 0; d < depth && !node.leaf(); ++d) {
    auto [l, r] = bat_children(node);
    node = l.contains(value) ? l : r;
  }
  return node;
}

void BatCursor::left() {
  node.hi = node.mid();
  ++step;
}

void BatCursor::right() {
  node.lo = node.mid() + 1;
  ++step;
}

void BatCursor::catch_up(int t) {
  while (step < t - 1 && !node.leaf()) left();
}

bool BatCursor::apply_right(int t) {
  catch_up(t);
  if (node.leaf()) return false;
  right();
  return true;
}

WinnerOracle brute_force_winner(const std::vector<std::int64_t>& bids) {
  WinnerOracle out;
  for (std::size_t i = 0; i < bids.size(); ++i) {
    if (out.argmax.empty() || bids[i] > out.max) {
      out.max = bids[i];
      out.argmax = {i};
    } else if (bids[i] == out.max) {
      out.argmax.insert(i);
    }
  }
  return out;
}

}  // namespace chainlab::auction
