#pragma once

#include <map>
#include <optional>
#include <string>

#include "sortition/birkhoff.hpp"
#include "sortition/metric.hpp"
#include "sortition/panel.hpp"

namespace sortition {

struct FixtureParams {
  int n = 0;
  int k = 0;
  int q = 0;
  double eps = 1e-4;
};

struct Fixture {
  MetricInstance instance;
  std::map<std::string, Panel> panels;          // named designated panels
  std::optional<PanelDistribution> distribution;  // fixed mixtures, if any
  double infinite_distance = 0.0;  // finite stand-in for unbounded separation
};

// Exact instances behind the worst-case arguments. Names:
//   thm31        two cohesive groups, floor(n/k) and the rest, unit apart
//   thm42        star: q co-located centers, leaves at 1, leaf-leaf 2
//   appxA        two singletons plus two far groups bridging at 10 (n even)
//   appxB_tight  groups of floor(k/2), ceil(k/2), n-k at distances 2/1
//   propE1_a     three-way mixture whose expected costs admit a deviation
//   propE1_b     half/half mixture, expected costs flat but ex post violated
//   appxG        four isomorphic 7-point blocks (n = 28, k = 7)
// Unbounded separations are encoded as 1e6 times the largest finite distance,
// which keeps the triangle inequality intact.
Fixture make_fixture(const std::string& name, const FixtureParams& params);

}  // namespace sortition
