#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <algorithm>
#include <set>
#include <sstream>

#include "doctest.h"
#include "nblp/code.hpp"

using namespace nblp;

namespace {

ParityCheckMatrix single_row(const Ring& ring, const std::vector<int>& row) {
  return ParityCheckMatrix(ring, 1, static_cast<int>(row.size()), row);
}

// Dumb oracle: enumerate all q^d candidate local words and filter by the
// check sum. Slower than the library routine but obviously correct.
std::vector<Word> brute_local_code(const ParityCheckMatrix& mat, int j) {
  const Ring& ring = mat.ring();
  const auto& sup = mat.support(j);
  const int d = static_cast<int>(sup.size());
  const int q = ring.cardinality();
  std::vector<Word> out;
  Word w(d, 0);
  std::uint64_t total = 1;
  for (int t = 0; t < d; ++t) total *= q;
  for (std::uint64_t step = 0; step < total; ++step) {
    int sum = 0;
    for (int t = 0; t < d; ++t)
      sum = ring.add(sum, ring.mul(w[t], mat.entry(j, sup[t])));
    if (sum == 0) out.push_back(w);
    for (int t = d - 1; t >= 0; --t) {
      if (++w[t] < q) break;
      w[t] = 0;
    }
  }
  return out;
}

}  // namespace

TEST_CASE("local code of a two-position repetition row over Z3") {
  auto mat = single_row(Ring::integers_mod(3), {1, 1});
  const std::vector<Word> expected = {{0, 0}, {1, 2}, {2, 1}};
  CHECK(enumerate_local_code(mat, 0) == expected);
}

TEST_CASE("local code with zero-divisor entries over Z4") {
  auto mat = single_row(Ring::integers_mod(4), {2, 2});
  const std::vector<Word> expected = {{0, 0}, {0, 2}, {1, 1}, {1, 3},
                                      {2, 0}, {2, 2}, {3, 1}, {3, 3}};
  CHECK(enumerate_local_code(mat, 0) == expected);
}

TEST_CASE("single-position rows: annihilator of the entry") {
  // Unit entry pins the symbol to zero; a zero divisor does not.
  CHECK(enumerate_local_code(single_row(Ring::integers_mod(4), {3}), 0) ==
        std::vector<Word>{{0}});
  CHECK(enumerate_local_code(single_row(Ring::integers_mod(4), {2}), 0) ==
        std::vector<Word>{{0}, {2}});
}

TEST_CASE("local code enumeration agrees with the dumb filter") {
  struct Case {
    Ring ring;
    std::vector<int> row;
  };
  const Case cases[] = {
      {Ring::integers_mod(2), {1, 1, 1, 1}},
      {Ring::integers_mod(3), {1, 2, 2}},
      {Ring::integers_mod(4), {2, 2, 1}},
      {Ring::integers_mod(4), {2, 2, 2}},
      {Ring::integers_mod(6), {2, 3, 4}},
      {Ring::galois_field(2, 2), {1, 2, 3}},
      {Ring::galois_field(3, 2), {3, 1, 5, 2}},
  };
  for (const auto& c : cases) {
    auto mat = single_row(c.ring, c.row);
    auto fast = enumerate_local_code(mat, 0);
    CHECK(fast == brute_local_code(mat, 0));
    CHECK(std::is_sorted(fast.begin(), fast.end()));
  }
}

TEST_CASE("kappa_row counts check products by value") {
  auto gf4 = single_row(Ring::galois_field(2, 2), {1, 2, 3});
  CHECK(kappa_row(gf4, 0, {1, 1, 1}) == Profile{1, 1, 1});
  CHECK(kappa_row(gf4, 0, {0, 0, 0}) == Profile{0, 0, 0});

  auto z4 = single_row(Ring::integers_mod(4), {2, 2});
  CHECK(kappa_row(z4, 0, {1, 1}) == Profile{0, 2, 0});
  // Products that vanish are not counted anywhere.
  CHECK(kappa_row(z4, 0, {0, 2}) == Profile{0, 0, 0});
  CHECK_THROWS_AS(kappa_row(z4, 0, {1, 1, 1}), Error);
}

TEST_CASE("kappa_plain counts symbols directly") {
  Ring z4 = Ring::integers_mod(4);
  CHECK(kappa_plain(z4, {0, 1, 2, 2, 3}) == Profile{1, 2, 1});
  CHECK(kappa_plain(z4, {}) == Profile{0, 0, 0});
  CHECK_THROWS_AS(kappa_plain(z4, {4}), Error);
}

TEST_CASE("realizable profiles of a Z3 repetition row") {
  auto mat = single_row(Ring::integers_mod(3), {1, 1});
  const std::vector<Profile> expected = {{0, 0}, {1, 1}};
  CHECK(tj_image(mat, 0) == expected);
  CHECK(tj_formula(Ring::integers_mod(3), 2) == expected);
}

TEST_CASE("zero-divisor rows realize strictly fewer profiles than the formula") {
  auto mat = single_row(Ring::integers_mod(4), {2, 2});
  const std::vector<Profile> image = {{0, 0, 0}, {0, 2, 0}};
  const std::vector<Profile> formula = {{0, 0, 0}, {0, 2, 0}, {1, 0, 1}};
  CHECK(tj_image(mat, 0) == image);
  CHECK(tj_formula(Ring::integers_mod(4), 2) == formula);
}

TEST_CASE("unit-entry rows realize every formula profile") {
  struct Case {
    Ring ring;
    std::vector<int> row;
  };
  const Case cases[] = {
      {Ring::integers_mod(4), {1, 3}},
      {Ring::integers_mod(3), {1, 2, 2}},
      {Ring::galois_field(2, 2), {1, 2}},
      {Ring::galois_field(2, 2), {1, 2, 3, 1}},
      {Ring::integers_mod(5), {2, 3, 4}},
  };
  for (const auto& c : cases) {
    auto mat = single_row(c.ring, c.row);
    CHECK(tj_image(mat, 0) ==
          tj_formula(c.ring, static_cast<int>(c.row.size())));
  }
}

TEST_CASE("realizable profiles are always within the formula set") {
  struct Case {
    Ring ring;
    std::vector<int> row;
  };
  const Case cases[] = {
      {Ring::integers_mod(4), {2, 2, 2}},
      {Ring::integers_mod(6), {2, 3, 4, 2}},
      {Ring::integers_mod(6), {3, 3}},
      {Ring::galois_field(3, 2), {3, 4, 5}},
  };
  for (const auto& c : cases) {
    auto mat = single_row(c.ring, c.row);
    auto image = tj_image(mat, 0);
    auto formula = tj_formula(c.ring, static_cast<int>(c.row.size()));
    CHECK(std::includes(formula.begin(), formula.end(), image.begin(),
                        image.end()));
  }
}

TEST_CASE("zero-sum code enumerates exactly the vanishing-sum words") {
  CHECK(zero_sum_code(Ring::integers_mod(3), 2) ==
        std::vector<Word>{{0, 0}, {1, 2}, {2, 1}});
  CHECK(zero_sum_code(Ring::integers_mod(2), 3) ==
        std::vector<Word>{{0, 0, 0}, {0, 1, 1}, {1, 0, 1}, {1, 1, 0}});

  Ring f4 = Ring::galois_field(2, 2);
  auto words = zero_sum_code(f4, 4);
  CHECK(words.size() == 64);  // q^(n-1)
  for (const Word& w : words) {
    int sum = 0;
    for (int s : w) sum = f4.add(sum, s);
    CHECK(sum == 0);
  }
  CHECK(std::is_sorted(words.begin(), words.end()));
}

TEST_CASE("profile-constrained zero-sum code") {
  Ring z3 = Ring::integers_mod(3);
  CHECK(zero_sum_code_with_profile(z3, 2, {1, 1}) ==
        std::vector<Word>{{1, 2}, {2, 1}});
  CHECK(zero_sum_code_with_profile(z3, 2, {0, 0}) ==
        std::vector<Word>{{0, 0}});
  // Unreachable profile: one symbol 1 alone cannot sum to zero.
  CHECK(zero_sum_code_with_profile(z3, 3, {1, 0}).empty());
  CHECK_THROWS_AS(zero_sum_code_with_profile(z3, 2, {1, 1, 1}), Error);
}

TEST_CASE("codebook enumeration: repetition and Hamming checks") {
  ParityCheckMatrix rep(Ring::integers_mod(3), 1, 2, {1, 1});
  CHECK(enumerate_codebook(rep) ==
        std::vector<Word>{{0, 0}, {1, 2}, {2, 1}});

  // Binary [7,4] code: three independent checks leave 16 words.
  ParityCheckMatrix hamming(Ring::integers_mod(2), 3, 7,
                            {1, 0, 1, 0, 1, 0, 1,
                             0, 1, 1, 0, 0, 1, 1,
                             0, 0, 0, 1, 1, 1, 1});
  auto book = enumerate_codebook(hamming);
  CHECK(book.size() == 16);
  for (const Word& w : book) CHECK(hamming.accepts(w));
  CHECK(std::is_sorted(book.begin(), book.end()));

  // Single parity check over a field: q^(n-1) words.
  ParityCheckMatrix spc(Ring::galois_field(2, 2), 1, 3, {1, 1, 1});
  CHECK(enumerate_codebook(spc).size() == 16);
}

TEST_CASE("matrix text format round-trips") {
  ParityCheckMatrix mat(Ring::integers_mod(4), 2, 4,
                        {1, 3, 0, 1, 0, 2, 1, 0});
  std::istringstream in(mat.to_text());
  ParityCheckMatrix back = ParityCheckMatrix::from_text(in);
  CHECK(back.to_text() == mat.to_text());
  CHECK(back.ring() == mat.ring());
  CHECK(back.rows() == 2);
  CHECK(back.cols() == 4);
  CHECK(back.entry(1, 1) == 2);
  CHECK(back.support(0) == std::vector<int>{0, 1, 3});
  CHECK(back.row_degree(1) == 2);
  CHECK(back.max_row_degree() == 3);
}

TEST_CASE("matrix text format rejects malformed input") {
  auto parse = [](const std::string& text) {
    std::istringstream in(text);
    return ParityCheckMatrix::from_text(in);
  };
  CHECK_THROWS_AS(parse(""), Error);
  CHECK_THROWS_AS(parse("Z3\n"), Error);
  CHECK_THROWS_AS(parse("Z3\n1 2\n1\n"), Error);          // short row
  CHECK_THROWS_AS(parse("Z3\n1 2\n1 2 1\n"), Error);      // long row
  CHECK_THROWS_AS(parse("Z3\n1 2\n1 3\n"), Error);        // code out of range
  CHECK_THROWS_AS(parse("Z3\n2 2\n1 1\n0 0\n"), Error);   // zero row
  CHECK_THROWS_AS(parse("Z3\n0 2\n"), Error);             // bad dims
  CHECK_THROWS_AS(parse("W3\n1 2\n1 1\n"), Error);        // bad ring
}

TEST_CASE("alist import, padded and unpadded variants") {
  // 2 x 4 binary matrix, rows {0,1} and {1,2,3}.
  const char* padded =
      "4 2\n2 3\n1 2 1 1\n2 3\n1 0\n1 2\n2 0\n2 0\n1 2 0\n2 3 4\n";
  const char* unpadded =
      "4 2\n2 3\n1 2 1 1\n2 3\n1\n1 2\n2\n2\n1 2\n2 3 4\n";
  for (const char* text : {padded, unpadded}) {
    std::istringstream in(text);
    ParityCheckMatrix mat = ParityCheckMatrix::from_alist(in);
    CHECK(mat.ring() == Ring::integers_mod(2));
    CHECK(mat.rows() == 2);
    CHECK(mat.cols() == 4);
    CHECK(mat.support(0) == std::vector<int>{0, 1});
    CHECK(mat.support(1) == std::vector<int>{1, 2, 3});
  }
}

TEST_CASE("alist import rejects inconsistent blocks") {
  // Row blocks claim (row 0: cols 1,3) but column blocks say (row 0: 1,2).
  const char* bad =
      "4 2\n2 3\n1 2 1 1\n2 3\n1\n1 2\n2\n2\n1 4\n2 3 4\n";
  std::istringstream in(bad);
  CHECK_THROWS_AS(ParityCheckMatrix::from_alist(in), ParseError);

  const char* short_file = "4 2\n2 3\n1 2 1 1\n2 3\n1\n";
  std::istringstream in2(short_file);
  CHECK_THROWS_AS(ParityCheckMatrix::from_alist(in2), ParseError);
}

TEST_CASE("enumeration caps raise explicit size errors") {
  // 5^10 candidate words exceed the default codebook cap.
  ParityCheckMatrix wide(Ring::integers_mod(5), 1, 10,
                         std::vector<int>(10, 1));
  CHECK_THROWS_AS(enumerate_codebook(wide), SizeError);

  ParityCheckMatrix long_row(Ring::integers_mod(2), 1, 13,
                             std::vector<int>(13, 1));
  CHECK_THROWS_AS(enumerate_local_code(long_row, 0), SizeError);
  EnumerationCaps roomy;
  roomy.max_row_degree = 13;
  CHECK(enumerate_local_code(long_row, 0, roomy).size() == 4096);

  EnumerationCaps tight;
  tight.max_local_words = 8;
  ParityCheckMatrix gf(Ring::galois_field(2, 2), 1, 3, {1, 1, 1});
  CHECK_THROWS_AS(enumerate_local_code(gf, 0, tight), SizeError);
}

TEST_CASE("word text helpers") {
  Ring z4 = Ring::integers_mod(4);
  CHECK(parse_word("0 3 2 1", z4, 4) == Word{0, 3, 2, 1});
  CHECK(format_word({0, 3, 2, 1}) == "0 3 2 1");
  CHECK_THROWS_AS(parse_word("0 4", z4, 2), ParseError);
  CHECK_THROWS_AS(parse_word("0 1", z4, 3), ParseError);
  CHECK_THROWS_AS(parse_word("0 x", z4, 2), ParseError);
}
