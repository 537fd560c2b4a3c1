#pragma once

#include <cstdint>

#include "sortition/dataset.hpp"

namespace sortition {

// Census-style synthetic table: four categorical features and one continuous
// feature over distinct rows, with a skewed weight profile. One row holds
// heavy_fraction of the total mass, two hold mid_fraction each, six hold
// small_fraction each, and the rest split the remainder smoothly, echoing the
// concentration that drives unbounded core violations at small q.
struct SyntheticSpec {
  int points = 300;
  double heavy_fraction = 0.083;
  double mid_fraction = 0.055;
  double small_fraction = 0.035;
  std::uint64_t seed = 17;
};

DataTable make_adult_like_table(const SyntheticSpec& spec);

}  // namespace sortition
