#include "chainlab/simchain/schedule.hpp"

#include <algorithm>
#include <stdexcept>

namespace chainlab::simchain {

Schedule::Schedule(std::vector<Window> windows) : windows_(std::move(windows)) {
  for (std::size_t i = 0; i < windows_.size(); ++i) {
    if (windows_[i].open > windows_[i].close) throw std::invalid_argument("schedule: empty window");
    if (i > 0 && windows_[i].open <= windows_[i - 1].close) {
      throw std::invalid_argument("schedule: windows overlap or are out of order");
    }
  }
}

std::optional<std::size_t> Schedule::active_step(Height h) const {
  auto it = std::upper_bound(windows_.begin(), windows_.end(), h,
                             [](Height value, const Window& w) { return value < w.open; });
  if (it == windows_.begin()) return std::nullopt;
  --it;
  if (!it->contains(h)) return std::nullopt;
  return static_cast<std::size_t>(it - windows_.begin());
}

bool in_window(Height height, std::size_t step, const Schedule& schedule) {
  return step < schedule.size() && schedule[step].contains(height);
}

}  // namespace chainlab::simchain
