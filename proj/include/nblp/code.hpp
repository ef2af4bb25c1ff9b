#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "nblp/ring.hpp"

namespace nblp {

/// A word over the ring, stored as element codes.
using Word = std::vector<int>;

/// Count profile over the nonzero ring elements: entry t counts occurrences
/// of the element with code t+1. Profiles compare lexicographically, which
/// is the canonical order used everywhere.
using Profile = std::vector<int>;

/// Budgets for the explicit enumerations. Exceeding one raises SizeError;
/// nothing is ever truncated silently.
struct EnumerationCaps {
  int max_row_degree = 12;                    // support size of one check row
  std::uint64_t max_local_words = 1u << 24;   // q^(d_j-1) prefixes per row
  std::uint64_t max_codebook = 1000000;       // q^n words for full codebooks
};

/// m x n parity-check matrix over a finite ring. Row j accepts a word w when
/// sum_i H[j,i] * w_i == 0; the code is the set of words every row accepts.
class ParityCheckMatrix {
 public:
  /// entries: row-major element codes, size rows*cols. Rows that are
  /// entirely zero are rejected.
  ParityCheckMatrix(Ring ring, int rows, int cols, std::vector<int> entries);

  const Ring& ring() const { return ring_; }
  int rows() const { return rows_; }
  int cols() const { return cols_; }
  int entry(int j, int i) const;

  /// Ascending column indexes of the nonzero entries of row j.
  const std::vector<int>& support(int j) const;
  int row_degree(int j) const;
  int max_row_degree() const;

  /// sum_i H[j,i] * w_i over the full word (length cols).
  int row_syndrome(int j, const Word& w) const;
  bool accepts(const Word& w) const;

  /// Text format: ring spec line, "rows cols" line, then the entry grid.
  std::string to_text() const;
  static ParityCheckMatrix from_text(std::istream& in);
  static ParityCheckMatrix from_text_file(const std::string& path);

  /// Standard alist import; nonzeros become 1 over Z2.
  static ParityCheckMatrix from_alist(std::istream& in);
  static ParityCheckMatrix from_alist_file(const std::string& path);

 private:
  Ring ring_;
  int rows_;
  int cols_;
  std::vector<int> entries_;
  std::vector<std::vector<int>> supports_;
};

/// The local code of row j: every word b over the support positions of j
/// (in ascending column order) with sum_t b_t * H[j, I_j[t]] == 0.
/// Lexicographically ascending. Enumerates q^(d_j-1) prefixes and completes
/// the last position through a precomputed solution table, so zero-divisor
/// entries (several or no completions) are handled exactly.
std::vector<Word> enumerate_local_code(const ParityCheckMatrix& mat, int j,
                                       const EnumerationCaps& caps = {});

/// Check-product profile of a local word of row j: entry alpha-1 counts the
/// support positions t with b_t * H[j, I_j[t]] == alpha.
Profile kappa_row(const ParityCheckMatrix& mat, int j, const Word& local);

/// Symbol profile of a word: entry alpha-1 counts positions holding alpha.
Profile kappa_plain(const Ring& ring, const Word& w);

/// Realizable check-product profiles of row j: the image of kappa_row over
/// the local code. Canonically sorted.
std::vector<Profile> tj_image(const ParityCheckMatrix& mat, int j,
                              const EnumerationCaps& caps = {});

/// Closed-form candidate profiles for a row of the given degree: all k with
/// sum_alpha k_alpha <= degree and sum_alpha scalar_repeat(alpha, k_alpha)
/// == 0. Always a superset of the realizable image; strictly larger for
/// some rows whose entries are zero divisors. Canonically sorted.
std::vector<Profile> tj_formula(const Ring& ring, int degree);

/// All words of length n over the ring whose plain sum is zero
/// (lexicographically ascending; q^(n-1) words).
std::vector<Word> zero_sum_code(const Ring& ring, int n,
                                const EnumerationCaps& caps = {});

/// The subset of zero_sum_code(n) with symbol profile exactly k.
std::vector<Word> zero_sum_code_with_profile(const Ring& ring, int n,
                                             const Profile& k,
                                             const EnumerationCaps& caps = {});

/// The full codebook of the matrix, lexicographically ascending.
/// Enumerates q^n words; capped by caps.max_codebook.
std::vector<Word> enumerate_codebook(const ParityCheckMatrix& mat,
                                     const EnumerationCaps& caps = {});

/// Space-separated element codes, validated against the ring and length.
Word parse_word(const std::string& text, const Ring& ring, int expect_len);
std::string format_word(const Word& w);

}  // namespace nblp
