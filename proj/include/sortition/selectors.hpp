#pragma once

#include <cstdint>
#include <string>

#include "sortition/metric.hpp"
#include "sortition/panel.hpp"

namespace sortition {

enum class SelectorKind { uniform, fgc, afgc };

SelectorKind selector_from_name(const std::string& name);
std::string selector_name(SelectorKind kind);

struct SelectorConfig {
  SelectorKind kind = SelectorKind::uniform;
  int k = 0;
  int q = 0;  // afgc only; must satisfy 1 <= q <= k
  std::uint64_t seed = 0;

  void validate() const;
};

// Uniform k-subset of [0, n) by partial Fisher-Yates shuffle.
Panel uniform_sample(long long n, int k, std::uint64_t seed);

// Detection phase grows balls around the not-yet-disregarded individuals;
// a ball holding ceil(q*N/k) of them freezes, keeps the closest individuals
// (ties by ascending id) and sends q of them, chosen uniformly, to the panel.
// Once fewer than ceil(q*N/k) individuals remain, the open seats are filled
// by systematic sampling: remaining individuals at probability k/N,
// disregarded-but-unselected ones splitting the leftover mass evenly.
// Operates on virtual ids, so weighted points participate with multiplicity.
Panel afgc_sample(const MetricInstance& inst, int k, int q, std::uint64_t seed);

}  // namespace sortition
