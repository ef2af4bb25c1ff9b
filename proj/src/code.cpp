#include "nblp/code.hpp"

#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>

namespace nblp {

namespace {

/// q^e with the cap applied; throws SizeError instead of overflowing.
std::uint64_t checked_power(int q, int e, std::uint64_t cap,
                            const char* what) {
  std::uint64_t value = 1;
  for (int t = 0; t < e; ++t) {
    value *= static_cast<std::uint64_t>(q);
    if (value > cap)
      throw SizeError(std::string(what) + " enumeration exceeds cap of " +
                      std::to_string(cap) + " words");
  }
  return value;
}

std::ifstream open_or_throw(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open file: " + path);
  return in;
}

}  // namespace

ParityCheckMatrix::ParityCheckMatrix(Ring ring, int rows, int cols,
                                     std::vector<int> entries)
    : ring_(std::move(ring)), rows_(rows), cols_(cols),
      entries_(std::move(entries)) {
  if (rows_ < 1 || cols_ < 1)
    throw Error("matrix dimensions must be positive");
  if (entries_.size() != static_cast<size_t>(rows_) * cols_)
    throw Error("matrix entry count does not match dimensions");
  for (int e : entries_)
    if (e < 0 || e >= ring_.cardinality())
      throw Error("matrix entry out of range for " + ring_.spec_string());
  supports_.resize(rows_);
  for (int j = 0; j < rows_; ++j) {
    for (int i = 0; i < cols_; ++i)
      if (entries_[static_cast<size_t>(j) * cols_ + i] != 0)
        supports_[j].push_back(i);
    if (supports_[j].empty())
      throw Error("row " + std::to_string(j) + " is entirely zero");
  }
}

int ParityCheckMatrix::entry(int j, int i) const {
  if (j < 0 || j >= rows_ || i < 0 || i >= cols_)
    throw Error("matrix index out of range");
  return entries_[static_cast<size_t>(j) * cols_ + i];
}

const std::vector<int>& ParityCheckMatrix::support(int j) const {
  if (j < 0 || j >= rows_) throw Error("row index out of range");
  return supports_[j];
}

int ParityCheckMatrix::row_degree(int j) const {
  return static_cast<int>(support(j).size());
}

int ParityCheckMatrix::max_row_degree() const {
  int d = 0;
  for (int j = 0; j < rows_; ++j) d = std::max(d, row_degree(j));
  return d;
}

int ParityCheckMatrix::row_syndrome(int j, const Word& w) const {
  if (static_cast<int>(w.size()) != cols_)
    throw Error("word length does not match matrix columns");
  int sum = 0;
  for (int i : support(j)) sum = ring_.add(sum, ring_.mul(entry(j, i), w[i]));
  return sum;
}

bool ParityCheckMatrix::accepts(const Word& w) const {
  for (int j = 0; j < rows_; ++j)
    if (row_syndrome(j, w) != 0) return false;
  return true;
}

std::string ParityCheckMatrix::to_text() const {
  std::ostringstream out;
  out << ring_.spec_string() << "\n" << rows_ << " " << cols_ << "\n";
  for (int j = 0; j < rows_; ++j) {
    for (int i = 0; i < cols_; ++i) out << (i ? " " : "") << entry(j, i);
    out << "\n";
  }
  return out.str();
}

ParityCheckMatrix ParityCheckMatrix::from_text(std::istream& in) {
  std::string line;
  auto next_line = [&](const char* what) {
    while (std::getline(in, line)) {
      const auto pos = line.find_first_not_of(" \t\r");
      if (pos != std::string::npos) return;
    }
    throw ParseError(std::string("matrix file ends before ") + what);
  };

  next_line("ring spec");
  Ring ring = Ring::parse(line);

  next_line("dimensions");
  std::istringstream dims(line);
  int rows = 0, cols = 0;
  if (!(dims >> rows >> cols) || rows < 1 || cols < 1)
    throw ParseError("bad matrix dimensions line: '" + line + "'");
  std::string extra;
  if (dims >> extra)
    throw ParseError("trailing token on dimensions line: '" + extra + "'");

  std::vector<int> entries;
  entries.reserve(static_cast<size_t>(rows) * cols);
  for (int j = 0; j < rows; ++j) {
    next_line("matrix row");
    std::istringstream row(line);
    for (int i = 0; i < cols; ++i) {
      int code = 0;
      if (!(row >> code))
        throw ParseError("row " + std::to_string(j) + " has fewer than " +
                         std::to_string(cols) + " entries");
      entries.push_back(code);
    }
    if (row >> extra)
      throw ParseError("row " + std::to_string(j) + " has trailing token '" +
                       extra + "'");
  }
  return ParityCheckMatrix(ring, rows, cols, std::move(entries));
}

ParityCheckMatrix ParityCheckMatrix::from_text_file(const std::string& path) {
  auto in = open_or_throw(path);
  return from_text(in);
}

ParityCheckMatrix ParityCheckMatrix::from_alist(std::istream& in) {
  std::vector<long> tok;
  long v = 0;
  while (in >> v) tok.push_back(v);
  size_t pos = 0;
  auto take = [&](const char* what) {
    if (pos >= tok.size())
      throw ParseError(std::string("alist ends before ") + what);
    return tok[pos++];
  };

  const long n = take("column count");
  const long m = take("row count");
  if (n < 1 || m < 1) throw ParseError("alist dimensions must be positive");
  const long dmax_col = take("max column degree");
  const long dmax_row = take("max row degree");

  std::vector<long> col_deg(n), row_deg(m);
  long col_total = 0, row_total = 0;
  for (long i = 0; i < n; ++i) col_total += (col_deg[i] = take("column degree"));
  for (long j = 0; j < m; ++j) row_total += (row_deg[j] = take("row degree"));
  if (col_total != row_total)
    throw ParseError("alist degree sums disagree between rows and columns");

  // Remaining tokens are the index blocks, either 0-padded to the max
  // degrees or written unpadded. Decide by total count.
  const size_t remaining = tok.size() - pos;
  bool padded;
  if (remaining == static_cast<size_t>(n * dmax_col + m * dmax_row))
    padded = true;
  else if (remaining == static_cast<size_t>(col_total + row_total))
    padded = false;
  else
    throw ParseError("alist index blocks have unexpected length");

  std::set<std::pair<long, long>> from_cols;  // (row, col), 0-based
  for (long i = 0; i < n; ++i) {
    const long count = padded ? dmax_col : col_deg[i];
    long seen = 0;
    for (long t = 0; t < count; ++t) {
      const long j = take("column index block");
      if (j == 0 && padded) continue;
      if (j < 1 || j > m) throw ParseError("alist row index out of range");
      from_cols.emplace(j - 1, i);
      ++seen;
    }
    if (seen != col_deg[i])
      throw ParseError("alist column block does not match its degree");
  }

  std::set<std::pair<long, long>> from_rows;
  for (long j = 0; j < m; ++j) {
    const long count = padded ? dmax_row : row_deg[j];
    long seen = 0;
    for (long t = 0; t < count; ++t) {
      const long i = take("row index block");
      if (i == 0 && padded) continue;
      if (i < 1 || i > n) throw ParseError("alist column index out of range");
      from_rows.emplace(j, i - 1);
      ++seen;
    }
    if (seen != row_deg[j])
      throw ParseError("alist row block does not match its degree");
  }
  if (from_rows != from_cols)
    throw ParseError("alist row and column blocks describe different matrices");

  std::vector<int> entries(static_cast<size_t>(m) * n, 0);
  for (const auto& [j, i] : from_rows) entries[static_cast<size_t>(j) * n + i] = 1;
  return ParityCheckMatrix(Ring::integers_mod(2), static_cast<int>(m),
                           static_cast<int>(n), std::move(entries));
}

ParityCheckMatrix ParityCheckMatrix::from_alist_file(const std::string& path) {
  auto in = open_or_throw(path);
  return from_alist(in);
}

std::vector<Word> enumerate_local_code(const ParityCheckMatrix& mat, int j,
                                       const EnumerationCaps& caps) {
  const Ring& ring = mat.ring();
  const int q = ring.cardinality();
  const std::vector<int>& sup = mat.support(j);
  const int d = static_cast<int>(sup.size());
  if (d > caps.max_row_degree)
    throw SizeError("row degree " + std::to_string(d) + " exceeds cap of " +
                    std::to_string(caps.max_row_degree));
  const std::uint64_t prefixes =
      checked_power(q, d - 1, caps.max_local_words, "local code");

  // Completions of the final position, grouped by required product value.
  const int last_entry = mat.entry(j, sup[d - 1]);
  std::vector<std::vector<int>> completions(q);
  for (int y = 0; y < q; ++y)
    completions[ring.mul(y, last_entry)].push_back(y);

  std::vector<Word> words;
  Word prefix(d - 1, 0);
  for (std::uint64_t step = 0; step < prefixes; ++step) {
    int sum = 0;
    for (int t = 0; t < d - 1; ++t)
      sum = ring.add(sum, ring.mul(prefix[t], mat.entry(j, sup[t])));
    for (int y : completions[ring.neg(sum)]) {
      Word w = prefix;
      w.push_back(y);
      words.push_back(std::move(w));
    }
    // Advance the odometer; last position fastest keeps lexicographic order.
    for (int t = d - 2; t >= 0; --t) {
      if (++prefix[t] < q) break;
      prefix[t] = 0;
    }
  }
  return words;
}

Profile kappa_row(const ParityCheckMatrix& mat, int j, const Word& local) {
  const Ring& ring = mat.ring();
  const std::vector<int>& sup = mat.support(j);
  if (local.size() != sup.size())
    throw Error("local word length does not match row support");
  Profile k(ring.cardinality() - 1, 0);
  for (size_t t = 0; t < sup.size(); ++t) {
    const int product = ring.mul(local[t], mat.entry(j, sup[t]));
    if (product != 0) ++k[product - 1];
  }
  return k;
}

Profile kappa_plain(const Ring& ring, const Word& w) {
  Profile k(ring.cardinality() - 1, 0);
  for (int code : w) {
    if (code < 0 || code >= ring.cardinality())
      throw Error("word symbol out of range for ring");
    if (code != 0) ++k[code - 1];
  }
  return k;
}

std::vector<Profile> tj_image(const ParityCheckMatrix& mat, int j,
                              const EnumerationCaps& caps) {
  std::set<Profile> seen;
  for (const Word& b : enumerate_local_code(mat, j, caps))
    seen.insert(kappa_row(mat, j, b));
  return {seen.begin(), seen.end()};
}

std::vector<Profile> tj_formula(const Ring& ring, int degree) {
  if (degree < 0) throw Error("row degree must be nonnegative");
  const int parts = ring.cardinality() - 1;
  std::vector<Profile> out;
  Profile k(parts, 0);
  // Depth-first in coordinate order emits profiles lexicographically.
  auto rec = [&](auto&& self, int idx, int remaining) -> void {
    if (idx == parts) {
      int sum = 0;
      for (int a = 1; a <= parts; ++a)
        sum = ring.add(sum, ring.scalar_repeat(a, k[a - 1]));
      if (sum == 0) out.push_back(k);
      return;
    }
    for (int count = 0; count <= remaining; ++count) {
      k[idx] = count;
      self(self, idx + 1, remaining - count);
    }
    k[idx] = 0;
  };
  rec(rec, 0, degree);
  return out;
}

std::vector<Word> zero_sum_code(const Ring& ring, int n,
                                const EnumerationCaps& caps) {
  if (n < 1) throw Error("word length must be positive");
  const int q = ring.cardinality();
  const std::uint64_t prefixes =
      checked_power(q, n - 1, caps.max_codebook, "zero-sum code");
  std::vector<Word> words;
  words.reserve(prefixes);
  Word prefix(n - 1, 0);
  for (std::uint64_t step = 0; step < prefixes; ++step) {
    int sum = 0;
    for (int t = 0; t < n - 1; ++t) sum = ring.add(sum, prefix[t]);
    Word w = prefix;
    w.push_back(ring.neg(sum));
    words.push_back(std::move(w));
    for (int t = n - 2; t >= 0; --t) {
      if (++prefix[t] < q) break;
      prefix[t] = 0;
    }
  }
  return words;
}

std::vector<Word> zero_sum_code_with_profile(const Ring& ring, int n,
                                             const Profile& k,
                                             const EnumerationCaps& caps) {
  if (static_cast<int>(k.size()) != ring.cardinality() - 1)
    throw Error("profile length must be cardinality - 1");
  std::vector<Word> out;
  for (Word& w : zero_sum_code(ring, n, caps))
    if (kappa_plain(ring, w) == k) out.push_back(std::move(w));
  return out;
}

std::vector<Word> enumerate_codebook(const ParityCheckMatrix& mat,
                                     const EnumerationCaps& caps) {
  const Ring& ring = mat.ring();
  const int q = ring.cardinality();
  const int n = mat.cols();
  const std::uint64_t total =
      checked_power(q, n, caps.max_codebook, "codebook");
  std::vector<Word> words;
  Word w(n, 0);
  for (std::uint64_t step = 0; step < total; ++step) {
    if (mat.accepts(w)) words.push_back(w);
    for (int t = n - 1; t >= 0; --t) {
      if (++w[t] < q) break;
      w[t] = 0;
    }
  }
  return words;
}

Word parse_word(const std::string& text, const Ring& ring, int expect_len) {
  std::istringstream in(text);
  Word w;
  int code = 0;
  while (in >> code) {
    if (code < 0 || code >= ring.cardinality())
      throw ParseError("word symbol " + std::to_string(code) +
                       " out of range for " + ring.spec_string());
    w.push_back(code);
  }
  if (!in.eof()) throw ParseError("bad word text: '" + text + "'");
  if (expect_len >= 0 && static_cast<int>(w.size()) != expect_len)
    throw ParseError("expected word of length " + std::to_string(expect_len) +
                     ", got " + std::to_string(w.size()));
  return w;
}

std::string format_word(const Word& w) {
  std::ostringstream out;
  for (size_t i = 0; i < w.size(); ++i) out << (i ? " " : "") << w[i];
  return out.str();
}

}  // namespace nblp
