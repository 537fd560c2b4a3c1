#pragma once

#include <cstdint>
#include <iosfwd>
#include <vector>

#include "sortition/allocation.hpp"
#include "sortition/metric.hpp"
#include "sortition/panel.hpp"
#include "sortition/rational.hpp"

namespace sortition {

// Square bistochastic matrix over virtual individuals with exact rational
// entries (integer numerators over denominator den). The top k rows carry the
// fractional allocation; the remaining rows are the uniform completion.
struct SquareBistochastic {
  int size = 0;      // N
  int top_rows = 0;  // k
  long long den = 0;
  std::vector<long long> num;  // row-major, size * size

  long long& at(int r, int c) { return num[static_cast<std::size_t>(r) * size + c]; }
  long long at(int r, int c) const {
    return num[static_cast<std::size_t>(r) * size + c];
  }

  // Row and column sums must equal den exactly, entries nonnegative.
  void check() const;
};

// Expands the allocation to one column per virtual individual (weight w
// becomes w co-located columns, each holding total mass k/N) and appends
// N - k uniform rows of 1/N.
SquareBistochastic complete_bistochastic(const MetricInstance& inst,
                                         const FractionalAllocation& alloc);

struct DistributionEntry {
  Panel panel;
  Rational lambda;
};

// Finite distribution over size-k panels of virtual ids with exact
// probabilities.
struct PanelDistribution {
  int k = 0;
  long long N = 0;
  std::vector<DistributionEntry> entries;

  // Inclusion probability of a virtual id, summed over the support.
  Rational marginal(long long vid) const;
  // Sigma lambda = 1, all lambda > 0, all panels size k.
  void check() const;
};

struct BirkhoffOptions {
  bool record_permutations = false;
  // Refuse decompositions beyond this many virtual individuals.
  long long size_gate = 2000;
};

struct BirkhoffResult {
  PanelDistribution dist;
  // Filled when record_permutations: permutations[l][r] = matched column.
  std::vector<std::vector<int>> permutations;
};

// Exact Birkhoff decomposition: repeatedly finds a perfect matching on the
// positive entries, subtracts the minimum matched entry, and records the
// panel of columns matched to the top k rows. All arithmetic stays on the
// integer numerators, so the matrix reaches exact zero and the lambdas sum
// to exactly 1.
BirkhoffResult birkhoff_decompose(SquareBistochastic Y,
                                  const BirkhoffOptions& opts = {});

// fractional_allocation -> complete_bistochastic -> birkhoff_decompose.
// Every support panel takes at least one member from every ball's positive
// support (asserted).
PanelDistribution fgc_distribution(const MetricInstance& inst, int k,
                                   long long size_gate = 2000);

// Categorical draw by exact cumulative probabilities; deterministic per seed.
Panel sample_panel(const PanelDistribution& dist, std::uint64_t seed);

// Text dump: one "lambda num/den : id id id ..." line per entry.
void write_distribution(std::ostream& out, const PanelDistribution& dist);

}  // namespace sortition
