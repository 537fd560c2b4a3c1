#pragma once

#include <algorithm>
#include <stdexcept>
#include <string>
#include <vector>

namespace sortition {

// A panel is a set of individual ids, stored strictly increasing. On weighted
// instances the ids are virtual ids, so one data point may fill several seats
// through distinct virtual ids.
struct Panel {
  std::vector<int> members;

  Panel() = default;
  explicit Panel(std::vector<int> ids) : members(std::move(ids)) {
    std::sort(members.begin(), members.end());
    for (std::size_t i = 1; i < members.size(); ++i)
      if (members[i] == members[i - 1])
        throw std::invalid_argument("panel has duplicate id " +
                                    std::to_string(members[i]));
  }

  int k() const { return static_cast<int>(members.size()); }

  bool contains(int id) const {
    return std::binary_search(members.begin(), members.end(), id);
  }

  void check_range(long long n) const {
    if (members.empty()) throw std::invalid_argument("empty panel");
    if (members.front() < 0 || members.back() >= n)
      throw std::invalid_argument("panel id out of range [0, " +
                                  std::to_string(n) + ")");
  }

  friend bool operator==(const Panel& a, const Panel& b) {
    return a.members == b.members;
  }
  friend bool operator<(const Panel& a, const Panel& b) {
    return a.members < b.members;
  }
};

}  // namespace sortition
