#include "nblp/instances.hpp"

#include <algorithm>

namespace nblp {

ParityCheckMatrix random_unit_matrix(std::uint64_t seed, std::uint64_t index,
                                     const InstanceShape& shape) {
  if (shape.min_cols < 2 || shape.max_cols < shape.min_cols ||
      shape.min_rows < 1 || shape.max_rows < shape.min_rows ||
      shape.min_degree < 2 || shape.max_degree < shape.min_degree ||
      shape.max_degree_wide < shape.min_degree)
    throw Error("instance shape limits are inconsistent");

  static const char* kRings[] = {"Z2", "Z3", "Z4", "GF(4)"};
  const Ring ring = Ring::parse(kRings[index % 4]);
  Rng rng = Rng::substream(seed, index);

  const int max_degree =
      ring.cardinality() >= 4
          ? std::min(shape.max_degree, shape.max_degree_wide)
          : shape.max_degree;

  const int m = static_cast<int>(rng.range(shape.min_rows, shape.max_rows));

  // Draw target degrees first: coverage of n columns needs sum(d_j) >= n,
  // so the column count is capped by the drawn total. When the drawn rows
  // cannot even cover min_cols, top degrees up (and failing that, settle
  // for fewer columns).
  std::vector<int> degree(m);
  long total = 0;
  for (int j = 0; j < m; ++j) {
    degree[j] = static_cast<int>(rng.range(shape.min_degree, max_degree));
    total += degree[j];
  }
  while (total < shape.min_cols &&
         total < static_cast<long>(m) * max_degree) {
    const int j = static_cast<int>(rng.below(static_cast<std::uint64_t>(m)));
    if (degree[j] < max_degree) {
      ++degree[j];
      ++total;
    }
  }
  const long lo = std::min<long>(shape.min_cols, total);
  const int n = static_cast<int>(
      rng.range(lo, std::min<long>(shape.max_cols, total)));
  for (int j = 0; j < m; ++j) degree[j] = std::min(degree[j], n);

  // Deal every column to one row with spare capacity (possible because the
  // degrees sum to at least n), in a shuffled order so supports vary.
  std::vector<int> order(n);
  for (int i = 0; i < n; ++i) order[i] = i;
  for (int i = n - 1; i > 0; --i)
    std::swap(order[i], order[rng.below(static_cast<std::uint64_t>(i) + 1)]);

  std::vector<std::vector<bool>> in_row(m, std::vector<bool>(n, false));
  std::vector<int> used(m, 0);
  for (int col : order) {
    std::vector<int> open;
    for (int j = 0; j < m; ++j)
      if (used[j] < degree[j]) open.push_back(j);
    const int j = open[rng.below(open.size())];
    in_row[j][col] = true;
    ++used[j];
  }

  // Top rows up to their target degree with fresh columns.
  for (int j = 0; j < m; ++j) {
    while (used[j] < degree[j]) {
      std::vector<int> fresh;
      for (int i = 0; i < n; ++i)
        if (!in_row[j][i]) fresh.push_back(i);
      in_row[j][fresh[rng.below(fresh.size())]] = true;
      ++used[j];
    }
  }

  const std::vector<int> units = ring.unit_codes();
  std::vector<int> entries(static_cast<size_t>(m) * n, 0);
  for (int j = 0; j < m; ++j)
    for (int i = 0; i < n; ++i)
      if (in_row[j][i])
        entries[static_cast<size_t>(j) * n + i] =
            units[rng.below(units.size())];

  return ParityCheckMatrix(ring, m, n, std::move(entries));
}

CostVector random_costs(Rng& rng, int q, int n, long num_abs, long den_max) {
  if (q < 2 || n < 0 || num_abs < 0 || den_max < 1)
    throw Error("cost sampling parameters are inconsistent");
  CostVector out;
  out.q = q;
  out.lambda.resize(n);
  for (int i = 0; i < n; ++i) {
    out.lambda[i].reserve(q - 1);
    for (int alpha = 1; alpha < q; ++alpha)
      out.lambda[i].push_back(
          make_rational(rng.range(-num_abs, num_abs), rng.range(1, den_max)));
  }
  return out;
}

}  // namespace nblp
