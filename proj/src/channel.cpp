#include "nblp/channel.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

namespace nblp {

namespace {

std::ifstream open_or_throw(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open file: " + path);
  return in;
}

}  // namespace

const Rational& CostVector::at(int i, int alpha) const {
  if (i < 0 || i >= length()) throw Error("cost position out of range");
  if (alpha < 1 || alpha > q - 1)
    throw Error("cost symbol must be a nonzero ring code");
  return lambda[i][alpha - 1];
}

Rational word_cost(const CostVector& costs, const Word& w) {
  if (static_cast<int>(w.size()) != costs.length())
    throw Error("word length does not match cost vector");
  Rational total(0);
  for (int i = 0; i < costs.length(); ++i) {
    if (w[i] < 0 || w[i] >= costs.q) throw Error("word symbol out of range");
    if (w[i] != 0) total += costs.at(i, w[i]);
  }
  return total;
}

CostVector parse_costs(std::istream& in, int q) {
  if (q < 2) throw Error("cost vectors need ring cardinality >= 2");
  CostVector out;
  out.q = q;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    std::istringstream row(line);
    std::vector<Rational> lam;
    std::string tok;
    while (row >> tok) lam.push_back(parse_rational(tok));
    if (static_cast<int>(lam.size()) != q - 1)
      throw ParseError("cost line " + std::to_string(lineno) + " has " +
                       std::to_string(lam.size()) + " entries, expected " +
                       std::to_string(q - 1));
    out.lambda.push_back(std::move(lam));
  }
  if (out.lambda.empty()) throw ParseError("cost file has no entries");
  return out;
}

CostVector parse_costs_file(const std::string& path, int q) {
  auto in = open_or_throw(path);
  return parse_costs(in, q);
}

std::string format_costs(const CostVector& costs) {
  std::ostringstream out;
  for (const auto& lam : costs.lambda) {
    for (size_t t = 0; t < lam.size(); ++t)
      out << (t ? " " : "") << format_rational(lam[t]);
    out << "\n";
  }
  return out.str();
}

ChannelModel ChannelModel::symmetric(int q, const Rational& p) {
  if (q < 2) throw Error("symmetric channel needs q >= 2");
  if (p <= 0 || p >= 1)
    throw Error("symmetric channel needs 0 < p < 1, got " +
                format_rational(p));
  ChannelModel model;
  model.q_ = q;
  model.symmetric_ = true;
  model.p_ = p;
  const Rational hit = Rational(1) - p;
  const Rational miss = p / (q - 1);
  model.table_.assign(q, std::vector<Rational>(q, miss));
  for (int y = 0; y < q; ++y) model.table_[y][y] = hit;
  return model;
}

ChannelModel ChannelModel::from_table(int q,
                                      std::vector<std::vector<Rational>> table) {
  if (q < 2) throw Error("channel needs q >= 2");
  if (table.empty()) throw Error("channel table needs at least one output");
  for (const auto& row : table) {
    if (static_cast<int>(row.size()) != q)
      throw Error("channel table rows must list q likelihoods");
    for (const Rational& v : row)
      if (v <= 0)
        throw Error(
            "channel likelihoods must be strictly positive; drop impossible "
            "outputs from the table instead of using zero");
  }
  ChannelModel model;
  model.q_ = q;
  model.symmetric_ = false;
  model.table_ = std::move(table);
  return model;
}

const Rational& ChannelModel::likelihood(int y, int c) const {
  if (y < 0 || y >= output_count()) throw Error("channel output out of range");
  if (c < 0 || c >= q_) throw Error("channel input out of range");
  return table_[y][c];
}

Rational ChannelModel::word_likelihood(const Word& received,
                                       const Word& sent) const {
  if (received.size() != sent.size())
    throw Error("received and sent words differ in length");
  Rational prod(1);
  for (size_t i = 0; i < sent.size(); ++i)
    prod *= likelihood(received[i], sent[i]);
  return prod;
}

std::vector<double> ChannelModel::lambda_of(int y) const {
  std::vector<double> lam(q_ - 1);
  for (int alpha = 1; alpha < q_; ++alpha) {
    const Rational ratio = likelihood(y, 0) / likelihood(y, alpha);
    lam[alpha - 1] = std::log(ratio.get_d());
  }
  return lam;
}

CostVector ChannelModel::embed_costs(const Word& received,
                                     int precision_bits) const {
  CostVector out;
  out.q = q_;
  for (int y : received) {
    const std::vector<double> lam = lambda_of(y);
    std::vector<Rational> row;
    row.reserve(lam.size());
    for (double v : lam) row.push_back(embed_double(v, precision_bits));
    out.lambda.push_back(std::move(row));
  }
  return out;
}

int ChannelModel::sample(int c, Rng& rng) const {
  if (c < 0 || c >= q_) throw Error("channel input out of range");
  Rational total(0);
  for (int y = 0; y < output_count(); ++y) total += table_[y][c];
  // u = r / 2^64 is uniform over dyadics in [0,1); pick the first output
  // whose cumulative likelihood exceeds u * total.
  Rational target(0);
  mpz_class num(rng.next());
  mpz_class den(1);
  den <<= 64;
  target = Rational(num) / Rational(den) * total;
  Rational cum(0);
  for (int y = 0; y < output_count(); ++y) {
    cum += table_[y][c];
    if (cum > target) return y;
  }
  return output_count() - 1;  // unreachable: cum == total > target
}

ChannelModel ChannelModel::parse(std::istream& in) {
  std::string line;
  auto next_line = [&](const char* what) {
    while (std::getline(in, line)) {
      const auto pos = line.find_first_not_of(" \t\r");
      if (pos != std::string::npos) return;
    }
    throw ParseError(std::string("channel config ends before ") + what);
  };
  auto keyed = [&](const char* key) {
    std::istringstream row(line);
    std::string head, value, extra;
    if (!(row >> head >> value) || head != key || (row >> extra))
      throw ParseError("expected '" + std::string(key) +
                       " <value>', got: '" + line + "'");
    return value;
  };

  next_line("kind");
  std::string kind = line;
  kind.erase(0, kind.find_first_not_of(" \t\r"));
  kind.erase(kind.find_last_not_of(" \t\r") + 1);

  next_line("q");
  const int q = std::stoi(keyed("q"));

  if (kind == "symmetric") {
    next_line("p");
    return symmetric(q, parse_rational(keyed("p")));
  }
  if (kind == "table") {
    next_line("outputs");
    const int outputs = std::stoi(keyed("outputs"));
    if (outputs < 1) throw ParseError("channel needs at least one output");
    std::vector<std::vector<Rational>> table;
    for (int y = 0; y < outputs; ++y) {
      next_line("table row");
      std::istringstream row(line);
      std::string head;
      if (!(row >> head) || head != "row")
        throw ParseError("expected 'row ...', got: '" + line + "'");
      std::vector<Rational> vals;
      std::string tok;
      while (row >> tok) vals.push_back(parse_rational(tok));
      if (static_cast<int>(vals.size()) != q)
        throw ParseError("channel table row " + std::to_string(y) + " has " +
                         std::to_string(vals.size()) + " entries, expected " +
                         std::to_string(q));
      table.push_back(std::move(vals));
    }
    return from_table(q, std::move(table));
  }
  throw ParseError("unknown channel kind: '" + kind + "'");
}

ChannelModel ChannelModel::parse_file(const std::string& path) {
  auto in = open_or_throw(path);
  return parse(in);
}

std::string ChannelModel::to_text() const {
  std::ostringstream out;
  if (symmetric_) {
    out << "symmetric\nq " << q_ << "\np " << format_rational(p_) << "\n";
  } else {
    out << "table\nq " << q_ << "\noutputs " << output_count() << "\n";
    for (const auto& row : table_) {
      out << "row";
      for (const Rational& v : row) out << " " << format_rational(v);
      out << "\n";
    }
  }
  return out.str();
}

}  // namespace nblp
