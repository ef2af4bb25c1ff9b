#pragma once

#include <cstdint>

#include "nblp/channel.hpp"
#include "nblp/code.hpp"
#include "nblp/rng.hpp"

namespace nblp {

/// Shape limits for seeded random parity-check matrices. Entries are drawn
/// from the ring's units, which keeps every relaxation bounded and keeps the
/// published size bounds applicable; the generator also guarantees that every
/// column appears in at least one row's support.
struct InstanceShape {
  int min_cols = 3;
  int max_cols = 8;
  int min_rows = 1;
  int max_rows = 3;
  int min_degree = 2;
  int max_degree = 5;
  /// Degree cap applied instead of max_degree when the ring has four or more
  /// elements: split-form column counts grow like d*(q-1)*C(d+q-1, d), so a
  /// degree-5 row over a 4-element ring alone costs hundreds of exact-rational
  /// LP columns. The default keeps seeded batteries desk-sized while leaving
  /// high degrees exercised over Z2 and Z3.
  int max_degree_wide = 4;
};

/// Deterministic unit-entry matrix for (seed, index): the ring cycles through
/// Z2, Z3, Z4, GF(4) by index, sizes and supports come from the substream.
/// Identical (seed, index, shape) always produce the identical matrix.
ParityCheckMatrix random_unit_matrix(std::uint64_t seed, std::uint64_t index,
                                     const InstanceShape& shape = {});

/// Random exact-rational cost vector: every component has numerator in
/// [-num_abs, num_abs] and denominator in [1, den_max].
CostVector random_costs(Rng& rng, int q, int n, long num_abs = 8,
                        long den_max = 8);

}  // namespace nblp
