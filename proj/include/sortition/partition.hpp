#pragma once

#include <vector>

#include "sortition/metric.hpp"
#include "sortition/panel.hpp"

namespace sortition {

enum class AnchorMode {
  max_anchor,  // anchors carry the largest q-cost within their group
  min_anchor,  // anchors carry the smallest q-cost within their group
};

struct PartitionResult {
  std::vector<std::vector<int>> groups;  // disjoint, union = input
  std::vector<int> anchors;              // anchors[l] belongs to groups[l]
  AnchorMode mode = AnchorMode::max_anchor;
};

// Iterative anchor-then-sweep partition of S with respect to alt: in each
// round the extreme-cost individual among those unassigned becomes the
// anchor, and everyone whose q closest alt-members intersect the anchor's
// joins its group. Produces at most floor(|alt| / q) groups; each member's
// cost is bounded by (max_anchor) or bounds (min_anchor) its anchor's.
PartitionResult partition_by_topq(const MetricInstance& inst,
                                  const std::vector<int>& s_ids,
                                  const Panel& alt, int q, AnchorMode mode);

}  // namespace sortition
