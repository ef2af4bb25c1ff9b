#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "nblp/code.hpp"
#include "nblp/rational.hpp"
#include "nblp/rng.hpp"

namespace nblp {

/// Per-position decision costs: at(i, alpha) is the cost of deciding the
/// nonzero symbol alpha at position i. The zero symbol costs zero by
/// definition and is never stored.
struct CostVector {
  int q = 0;                                  // ring cardinality
  std::vector<std::vector<Rational>> lambda;  // [position][alpha-1]

  int length() const { return static_cast<int>(lambda.size()); }
  const Rational& at(int i, int alpha) const;
};

/// Exact cost of a decided word: sum of at(i, w_i) over nonzero symbols.
Rational word_cost(const CostVector& costs, const Word& w);

/// Cost text format: one line per position, q-1 rationals ("num/den").
CostVector parse_costs(std::istream& in, int q);
CostVector parse_costs_file(const std::string& path, int q);
std::string format_costs(const CostVector& costs);

/// Memoryless channel with input symbols 0..q-1, output symbols
/// 0..outputs-1, and exact strictly-positive rational likelihoods
/// p(y | c). The q-ary symmetric channel uses the ring itself as output
/// alphabet. Zero likelihoods are rejected up front: they would make the
/// log-ratio costs infinite, so impossible outputs must be dropped from
/// the table instead.
class ChannelModel {
 public:
  /// p(y|c) = 1-p if y == c else p/(q-1); requires 0 < p < 1.
  static ChannelModel symmetric(int q, const Rational& p);

  /// table[y][c] = p(y|c); rows are outputs. Likelihoods, not necessarily
  /// normalized.
  static ChannelModel from_table(int q,
                                 std::vector<std::vector<Rational>> table);

  int input_count() const { return q_; }
  int output_count() const { return static_cast<int>(table_.size()); }
  const Rational& likelihood(int y, int c) const;

  /// Exact product likelihood of receiving `received` given `sent`.
  Rational word_likelihood(const Word& received, const Word& sent) const;

  /// Log-likelihood-ratio costs for one output symbol: component alpha-1
  /// equals log(p(y|0) / p(y|alpha)). The ratio is formed exactly first,
  /// then converted, so rescaling a whole table row changes nothing.
  std::vector<double> lambda_of(int y) const;

  /// Per-position costs for a received word, each double embedded exactly
  /// as a rational. precision_bits below 53 rounds the mantissa first.
  CostVector embed_costs(const Word& received, int precision_bits = 53) const;

  /// Draws one output for input c by exact inverse-CDF over the normalized
  /// likelihood column. Deterministic given the generator state.
  int sample(int c, Rng& rng) const;

  /// Config text: "symmetric" / "table" header, then "q <int>", then
  /// "p <rational>" or "outputs <int>" plus that many "row ..." lines.
  static ChannelModel parse(std::istream& in);
  static ChannelModel parse_file(const std::string& path);
  std::string to_text() const;

 private:
  ChannelModel() = default;

  int q_ = 0;
  bool symmetric_ = false;
  Rational p_;                                // symmetric only
  std::vector<std::vector<Rational>> table_;  // [y][c]
};

}  // namespace nblp
