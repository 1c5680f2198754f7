#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "chainlab/simchain/types.hpp"

namespace chainlab::simchain {

/// Closed block interval [open, close].
struct Window {
  Height open = 0;
  Height close = 0;

  bool contains(Height h) const { return open <= h && h <= close; }
};

/// Disjoint, increasing step windows.
class Schedule {
 public:
  Schedule() = default;
  /// Throws std::invalid_argument unless windows are non-empty, ordered and
  /// disjoint.
  explicit Schedule(std::vector<Window> windows);

  std::size_t size() const { return windows_.size(); }
  const Window& operator[](std::size_t step) const { return windows_.at(step); }
  std::optional<std::size_t> active_step(Height h) const;

 private:
  std::vector<Window> windows_;
};

bool in_window(Height height, std::size_t step, const Schedule& schedule);

}  // namespace chainlab::simchain
