#include "sortition/birkhoff.hpp"

#include <algorithm>
#include <numeric>
#include <ostream>
#include <stdexcept>
#include <string>

#include "sortition/rng.hpp"

namespace sortition {

void SquareBistochastic::check() const {
  if (size <= 0 || den <= 0 ||
      num.size() != static_cast<std::size_t>(size) * size)
    throw std::invalid_argument("malformed bistochastic matrix");
  std::vector<long long> col(size, 0);
  for (int r = 0; r < size; ++r) {
    long long row = 0;
    for (int c = 0; c < size; ++c) {
      long long v = at(r, c);
      if (v < 0) throw std::invalid_argument("negative matrix entry");
      row += v;
      col[c] += v;
    }
    if (row != den)
      throw std::invalid_argument("row " + std::to_string(r) +
                                  " does not sum to 1");
  }
  for (int c = 0; c < size; ++c)
    if (col[c] != den)
      throw std::invalid_argument("column " + std::to_string(c) +
                                  " does not sum to 1");
}

SquareBistochastic complete_bistochastic(const MetricInstance& inst,
                                         const FractionalAllocation& alloc) {
  const long long N = alloc.N;
  if (N != inst.total_weight())
    throw std::invalid_argument("allocation does not match instance");
  if (N > 5000)
    throw std::invalid_argument("refusing to materialize a " +
                                std::to_string(N) + "x" + std::to_string(N) +
                                " matrix; reduce the weight resolution");
  const int size = static_cast<int>(N);
  const int k = alloc.k;

  SquareBistochastic Y;
  Y.size = size;
  Y.top_rows = k;
  Y.den = N;
  Y.num.assign(static_cast<std::size_t>(size) * size, 0);

  // Split each point's ball mass over its virtual columns, each of which has
  // total capacity k/N; the fill pointer runs over columns in id order.
  std::vector<long long> fill_col(inst.n());
  std::vector<long long> fill_left(inst.n());
  for (int p = 0; p < inst.n(); ++p) {
    fill_col[p] = inst.first_virtual(p);
    fill_left[p] = k;
  }
  for (int j = 0; j < k; ++j) {
    for (const auto& [p, mass] : alloc.rows[j]) {
      long long left = mass;
      while (left > 0) {
        long long take = std::min(left, fill_left[p]);
        Y.at(j, static_cast<int>(fill_col[p])) += take;
        left -= take;
        fill_left[p] -= take;
        if (fill_left[p] == 0) {
          ++fill_col[p];
          fill_left[p] = k;
        }
      }
    }
  }
  for (int r = k; r < size; ++r)
    for (int c = 0; c < size; ++c) Y.at(r, c) = 1;
  Y.check();
  return Y;
}

namespace {

// Perfect matching on the positive entries of Y, repaired incrementally as
// entries reach zero. Free columns live in a linked list ordered by id so the
// greedy pass and the augmenting fallback are deterministic.
struct DenseMatcher {
  const SquareBistochastic& Y;
  int N;
  std::vector<int> row_match, col_match;
  std::vector<int> seen;
  int stamp = 0;
  std::vector<int> nxt, prv;  // free-column list, sentinel at index N

  explicit DenseMatcher(const SquareBistochastic& y)
      : Y(y),
        N(y.size),
        row_match(y.size, -1),
        col_match(y.size, -1),
        seen(y.size, 0),
        nxt(y.size + 1),
        prv(y.size + 1) {}

  void list_reset_all_free() {
    for (int c = 0; c <= N; ++c) {
      nxt[c] = c + 1 <= N ? c + 1 : N;
      prv[c] = c - 1 >= 0 ? c - 1 : N;
    }
    nxt[N] = 0;
    prv[0] = N;
    prv[N] = N - 1;
  }

  void list_build(const std::vector<int>& free_cols) {  // ascending input
    nxt[N] = N;
    prv[N] = N;
    int prev = N;
    for (int c : free_cols) {
      nxt[prev] = c;
      prv[c] = prev;
      prev = c;
    }
    nxt[prev] = N;
    prv[N] = prev;
  }

  void list_remove(int c) {
    nxt[prv[c]] = nxt[c];
    prv[nxt[c]] = prv[c];
  }

  bool augment(int r) {
    for (int c = 0; c < N; ++c) {
      if (Y.at(r, c) <= 0 || seen[c] == stamp) continue;
      seen[c] = stamp;
      if (col_match[c] == -1 || augment(col_match[c])) {
        if (col_match[c] == -1) list_remove(c);
        row_match[r] = c;
        col_match[c] = r;
        return true;
      }
    }
    return false;
  }

  // Matches every row in `rows` (free columns must already be listed).
  void match_rows(const std::vector<int>& rows) {
    for (int r : rows) {
      // Greedy: first free column with a positive entry.
      int hit = -1;
      for (int c = nxt[N]; c != N; c = nxt[c]) {
        if (Y.at(r, c) > 0) {
          hit = c;
          break;
        }
      }
      if (hit >= 0) {
        list_remove(hit);
        row_match[r] = hit;
        col_match[hit] = r;
        continue;
      }
      ++stamp;
      if (!augment(r))
        throw std::invalid_argument(
            "matrix is not bistochastic: no perfect matching on positive "
            "entries");
    }
  }

  void build_initial() {
    list_reset_all_free();
    std::vector<int> rows(N);
    std::iota(rows.begin(), rows.end(), 0);
    match_rows(rows);
  }
};

}  // namespace

BirkhoffResult birkhoff_decompose(SquareBistochastic Y,
                                  const BirkhoffOptions& opts) {
  Y.check();
  if (Y.size > opts.size_gate)
    throw std::invalid_argument(
        "decomposition gated at " + std::to_string(opts.size_gate) +
        " virtual individuals, got " + std::to_string(Y.size) +
        "; raise the gate explicitly to proceed");
  const int N = Y.size;
  const int k = Y.top_rows;

  BirkhoffResult result;
  result.dist.k = k;
  result.dist.N = N;

  DenseMatcher matcher(Y);
  matcher.build_initial();

  long long remaining = static_cast<long long>(N) * Y.den;
  const long long max_terms = static_cast<long long>(N) * N - N + 2;
  while (remaining > 0) {
    long long lambda = Y.den;
    for (int r = 0; r < N; ++r)
      lambda = std::min(lambda, Y.at(r, matcher.row_match[r]));
    if (lambda <= 0) throw std::logic_error("matched entry not positive");

    std::vector<int> ids;
    ids.reserve(k);
    for (int r = 0; r < k; ++r) ids.push_back(matcher.row_match[r]);
    result.dist.entries.push_back({Panel(std::move(ids)), Rational(lambda, Y.den)});
    if (opts.record_permutations)
      result.permutations.push_back(matcher.row_match);
    if (static_cast<long long>(result.dist.entries.size()) > max_terms)
      throw std::logic_error("decomposition exceeded the N^2 - N + 2 bound");

    remaining -= static_cast<long long>(N) * lambda;
    std::vector<int> freed_rows, freed_cols;
    for (int r = 0; r < N; ++r) {
      int c = matcher.row_match[r];
      Y.at(r, c) -= lambda;
      if (Y.at(r, c) == 0 && remaining > 0) {
        matcher.row_match[r] = -1;
        matcher.col_match[c] = -1;
        freed_rows.push_back(r);
        freed_cols.push_back(c);
      }
    }
    if (remaining == 0) break;
    std::sort(freed_cols.begin(), freed_cols.end());
    matcher.list_build(freed_cols);
    matcher.match_rows(freed_rows);
  }
  result.dist.check();
  return result;
}

Rational PanelDistribution::marginal(long long vid) const {
  Rational total(0);
  for (const auto& e : entries)
    if (e.panel.contains(static_cast<int>(vid))) total += e.lambda;
  return total;
}

void PanelDistribution::check() const {
  Rational total(0);
  for (const auto& e : entries) {
    if (!(e.lambda > Rational(0)))
      throw std::invalid_argument("distribution has a nonpositive probability");
    if (e.panel.k() != k)
      throw std::invalid_argument("distribution has a panel of the wrong size");
    e.panel.check_range(N);
    total += e.lambda;
  }
  if (total != Rational(1))
    throw std::invalid_argument("distribution probabilities do not sum to 1");
}

PanelDistribution fgc_distribution(const MetricInstance& inst, int k,
                                   long long size_gate) {
  if (inst.total_weight() > size_gate)
    throw std::invalid_argument(
        "exact decomposition gated at " + std::to_string(size_gate) +
        " virtual individuals, instance has " +
        std::to_string(inst.total_weight()));
  FractionalAllocation alloc = fractional_allocation(inst, k);
  SquareBistochastic Y = complete_bistochastic(inst, alloc);

  std::vector<std::vector<bool>> ball_support(k,
                                              std::vector<bool>(Y.size, false));
  for (int j = 0; j < k; ++j)
    for (int c = 0; c < Y.size; ++c)
      if (Y.at(j, c) > 0) ball_support[j][c] = true;

  BirkhoffOptions opts;
  opts.size_gate = size_gate;
  PanelDistribution dist = birkhoff_decompose(std::move(Y), opts).dist;

  for (const auto& e : dist.entries) {
    for (int j = 0; j < k; ++j) {
      bool hit = false;
      for (int id : e.panel.members)
        if (ball_support[j][id]) {
          hit = true;
          break;
        }
      if (!hit)
        throw std::logic_error("support panel misses ball " + std::to_string(j));
    }
  }
  return dist;
}

Panel sample_panel(const PanelDistribution& dist, std::uint64_t seed) {
  if (dist.entries.empty()) throw std::invalid_argument("empty distribution");
  long long den = 1;
  for (const auto& e : dist.entries) {
    long long g = std::gcd(den, e.lambda.den());
    __int128 l = static_cast<__int128>(den) / g * e.lambda.den();
    if (l > INT64_MAX) throw std::overflow_error("sample_panel denominator");
    den = static_cast<long long>(l);
  }
  Rng rng(seed);
  long long ticket =
      static_cast<long long>(uniform_below(rng, static_cast<std::uint64_t>(den)));
  long long cum = 0;
  for (const auto& e : dist.entries) {
    cum += e.lambda.num() * (den / e.lambda.den());
    if (ticket < cum) return e.panel;
  }
  return dist.entries.back().panel;
}

void write_distribution(std::ostream& out, const PanelDistribution& dist) {
  for (const auto& e : dist.entries) {
    out << "lambda " << e.lambda.num() << '/' << e.lambda.den() << " :";
    for (int id : e.panel.members) out << ' ' << id;
    out << "\n";
  }
}

}  // namespace sortition
