#include "sortition/partition.hpp"

#include <algorithm>
#include <stdexcept>

namespace sortition {

PartitionResult partition_by_topq(const MetricInstance& inst,
                                  const std::vector<int>& s_ids,
                                  const Panel& alt, int q, AnchorMode mode) {
  if (q < 1 || q > alt.k())
    throw std::invalid_argument("partition requires 1 <= q <= |alt|");
  alt.check_range(inst.total_weight());

  std::vector<int> remaining = s_ids;
  std::sort(remaining.begin(), remaining.end());
  remaining.erase(std::unique(remaining.begin(), remaining.end()),
                  remaining.end());

  std::vector<double> cost(remaining.size());
  std::vector<std::vector<int>> top(remaining.size());
  for (std::size_t i = 0; i < remaining.size(); ++i) {
    cost[i] = q_cost(inst, remaining[i], alt, q);
    top[i] = top_q(inst, remaining[i], alt, q);
    std::sort(top[i].begin(), top[i].end());
  }

  std::vector<bool> assigned(remaining.size(), false);
  PartitionResult result;
  result.mode = mode;
  std::size_t left = remaining.size();
  while (left > 0) {
    int anchor = -1;
    for (std::size_t i = 0; i < remaining.size(); ++i) {
      if (assigned[i]) continue;
      if (anchor < 0) {
        anchor = static_cast<int>(i);
        continue;
      }
      bool better = mode == AnchorMode::max_anchor
                        ? cost[i] > cost[anchor]
                        : cost[i] < cost[anchor];
      if (better) anchor = static_cast<int>(i);
    }
    std::vector<int> group;
    for (std::size_t i = 0; i < remaining.size(); ++i) {
      if (assigned[i]) continue;
      std::vector<int> common;
      std::set_intersection(top[i].begin(), top[i].end(), top[anchor].begin(),
                            top[anchor].end(), std::back_inserter(common));
      if (!common.empty()) {
        group.push_back(remaining[i]);
        assigned[i] = true;
        --left;
      }
    }
    result.groups.push_back(std::move(group));
    result.anchors.push_back(remaining[anchor]);
  }

  if (static_cast<int>(result.groups.size()) > alt.k() / q)
    throw std::logic_error("partition produced more than |alt|/q groups");
  return result;
}

}  // namespace sortition
