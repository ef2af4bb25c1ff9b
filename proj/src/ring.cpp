#include "nblp/ring.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <sstream>

namespace nblp {

namespace {

constexpr int kMaxCardinality = 256;

bool is_prime(int p) {
  if (p < 2) return false;
  for (int d = 2; d * d <= p; ++d)
    if (p % d == 0) return false;
  return true;
}

// --- polynomial arithmetic over Z_p (coefficients ascending) ---

using Poly = std::vector<int>;

int poly_degree(const Poly& a) {
  for (int d = static_cast<int>(a.size()) - 1; d >= 0; --d)
    if (a[d] != 0) return d;
  return -1;
}

Poly poly_mul(const Poly& a, const Poly& b, int p) {
  Poly out(a.size() + b.size() - 1, 0);
  for (size_t i = 0; i < a.size(); ++i)
    for (size_t j = 0; j < b.size(); ++j)
      out[i + j] = (out[i + j] + a[i] * b[j]) % p;
  return out;
}

// Remainder of a modulo the monic polynomial mod.
Poly poly_rem(Poly a, const Poly& mod, int p) {
  const int dm = poly_degree(mod);
  for (int d = poly_degree(a); d >= dm; d = poly_degree(a)) {
    const int factor = a[d];
    if (factor != 0) {
      for (int t = 0; t <= dm; ++t) {
        const int idx = d - dm + t;
        a[idx] = ((a[idx] - factor * mod[t]) % p + p) % p;
      }
    }
  }
  a.resize(std::max(dm, 1), 0);
  return a;
}

bool poly_is_zero(const Poly& a) { return poly_degree(a) < 0; }

// Enumerates all monic polynomials of the given degree over Z_p and
// trial-divides. Sufficient for the desk-scale cardinalities handled here.
bool is_irreducible(const Poly& mod, int p) {
  const int m = poly_degree(mod);
  if (m < 1) return false;
  for (int d = 1; 2 * d <= m; ++d) {
    long count = 1;
    for (int t = 0; t < d; ++t) count *= p;  // p^d candidate lower parts
    for (long c = 0; c < count; ++c) {
      Poly div(d + 1, 0);
      long rest = c;
      for (int t = 0; t < d; ++t) {
        div[t] = static_cast<int>(rest % p);
        rest /= p;
      }
      div[d] = 1;
      if (poly_is_zero(poly_rem(mod, div, p))) return false;
    }
  }
  return true;
}

Poly default_modulus(int p, int m) {
  if (m == 1) return {0, 1};  // GF(p) as Z_p with field semantics
  static const std::map<std::pair<int, int>, Poly> table = {
      {{2, 2}, {1, 1, 1}},        // x^2 + x + 1
      {{2, 3}, {1, 1, 0, 1}},     // x^3 + x + 1
      {{2, 4}, {1, 1, 0, 0, 1}},  // x^4 + x + 1
      {{3, 2}, {1, 0, 1}},        // x^2 + 1
  };
  auto it = table.find({p, m});
  if (it == table.end())
    throw Error("no built-in modulus for GF(" + std::to_string(p) + "^" +
                std::to_string(m) + "); supply one explicitly");
  return it->second;
}

}  // namespace

struct Ring::Table {
  RingKind kind;
  int q = 0;
  int p = 0;
  int m = 0;
  std::vector<int> mod;  // empty for Z_q
  std::vector<int> add, mul, neg;
  std::vector<bool> unit;
  std::string spec;

  int idx(int a, int b) const { return a * q + b; }

  void fill_units() {
    unit.assign(q, false);
    for (int a = 0; a < q; ++a)
      for (int b = 0; b < q; ++b)
        if (mul[idx(a, b)] == 1) unit[a] = true;
  }
};

Ring Ring::integers_mod(int q) {
  if (q < 2 || q > kMaxCardinality)
    throw Error("ring cardinality must be in [2, 256], got " +
                std::to_string(q));
  auto t = std::make_shared<Table>();
  t->kind = RingKind::IntegersMod;
  t->q = q;
  t->add.resize(q * q);
  t->mul.resize(q * q);
  t->neg.resize(q);
  for (int a = 0; a < q; ++a) {
    t->neg[a] = (q - a) % q;
    for (int b = 0; b < q; ++b) {
      t->add[t->idx(a, b)] = (a + b) % q;
      t->mul[t->idx(a, b)] = (a * b) % q;
    }
  }
  t->fill_units();
  t->spec = "Z" + std::to_string(q);
  return Ring(std::move(t));
}

Ring Ring::galois_field(int p, int m) {
  return galois_field(p, m, default_modulus(p, m));
}

Ring Ring::galois_field(int p, int m, const std::vector<int>& modulus) {
  if (!is_prime(p)) throw Error("GF base must be prime, got " + std::to_string(p));
  if (m < 1) throw Error("GF extension degree must be >= 1");
  long q = 1;
  for (int t = 0; t < m; ++t) {
    q *= p;
    if (q > kMaxCardinality)
      throw Error("ring cardinality must be in [2, 256]");
  }
  if (static_cast<int>(modulus.size()) != m + 1)
    throw Error("modulus must list m+1 coefficients (ascending degree)");
  for (int c : modulus)
    if (c < 0 || c >= p) throw Error("modulus coefficients must lie in [0, p)");
  if (modulus[m] != 1) throw Error("modulus must be monic");
  if (!is_irreducible(modulus, p))
    throw Error("modulus polynomial is reducible over Z_" + std::to_string(p));

  auto t = std::make_shared<Table>();
  t->kind = RingKind::GaloisField;
  t->q = static_cast<int>(q);
  t->p = p;
  t->m = m;
  t->mod = modulus;

  auto decode = [&](int code) {
    Poly poly(m, 0);
    for (int d = 0; d < m; ++d) {
      poly[d] = code % p;
      code /= p;
    }
    return poly;
  };
  auto encode = [&](const Poly& poly) {
    int code = 0;
    for (int d = m - 1; d >= 0; --d)
      code = code * p + (d < static_cast<int>(poly.size()) ? poly[d] : 0);
    return code;
  };

  t->add.resize(q * q);
  t->mul.resize(q * q);
  t->neg.resize(q);
  for (int a = 0; a < q; ++a) {
    const Poly pa = decode(a);
    Poly na(m, 0);
    for (int d = 0; d < m; ++d) na[d] = (p - pa[d]) % p;
    t->neg[a] = encode(na);
    for (int b = 0; b < q; ++b) {
      const Poly pb = decode(b);
      Poly sum(m, 0);
      for (int d = 0; d < m; ++d) sum[d] = (pa[d] + pb[d]) % p;
      t->add[t->idx(a, b)] = encode(sum);
      t->mul[t->idx(a, b)] = encode(poly_rem(poly_mul(pa, pb, p), modulus, p));
    }
  }
  t->fill_units();

  std::ostringstream spec;
  spec << "GF(" << p << "^" << m << ")[";
  for (int d = 0; d <= m; ++d) spec << (d ? "," : "") << modulus[d];
  spec << "]";
  t->spec = spec.str();
  return Ring(std::move(t));
}

Ring Ring::parse(std::string_view spec) {
  std::string s;
  for (char c : spec)
    if (!std::isspace(static_cast<unsigned char>(c))) s += c;
  if (s.empty()) throw ParseError("empty ring spec");

  if (s[0] == 'Z') {
    const std::string digits = s.substr(1);
    if (digits.empty() ||
        !std::all_of(digits.begin(), digits.end(),
                     [](char c) { return std::isdigit(static_cast<unsigned char>(c)); }))
      throw ParseError("bad ring spec: '" + std::string(spec) + "'");
    return integers_mod(std::stoi(digits));
  }

  if (s.rfind("GF(", 0) == 0) {
    const size_t close = s.find(')');
    if (close == std::string::npos)
      throw ParseError("bad ring spec: '" + std::string(spec) + "'");
    const std::string inside = s.substr(3, close - 3);
    int p = 0, m = 1;
    if (const size_t caret = inside.find('^'); caret != std::string::npos) {
      p = std::stoi(inside.substr(0, caret));
      m = std::stoi(inside.substr(caret + 1));
    } else {
      // GF(q): factor q as the unique prime power p^m.
      const int q = std::stoi(inside);
      if (q < 2) throw ParseError("bad field cardinality: '" + inside + "'");
      p = 2;
      while (q % p != 0) ++p;
      int rest = q;
      m = 0;
      while (rest % p == 0) {
        rest /= p;
        ++m;
      }
      if (rest != 1)
        throw ParseError("GF cardinality must be a prime power, got " + inside);
    }
    std::string tail = s.substr(close + 1);
    if (tail.empty()) return galois_field(p, m);
    if (tail.front() != '[' || tail.back() != ']')
      throw ParseError("bad ring spec: '" + std::string(spec) + "'");
    std::vector<int> coeffs;
    std::stringstream body(tail.substr(1, tail.size() - 2));
    std::string item;
    while (std::getline(body, item, ','))
      coeffs.push_back(std::stoi(item));
    return galois_field(p, m, coeffs);
  }

  throw ParseError("bad ring spec: '" + std::string(spec) + "'");
}

RingKind Ring::kind() const { return t_->kind; }
int Ring::cardinality() const { return t_->q; }
std::string Ring::spec_string() const { return t_->spec; }

int Ring::prime() const {
  if (t_->kind != RingKind::GaloisField) throw Error("not a Galois field");
  return t_->p;
}

int Ring::extension_degree() const {
  if (t_->kind != RingKind::GaloisField) throw Error("not a Galois field");
  return t_->m;
}

const std::vector<int>& Ring::modulus() const {
  if (t_->kind != RingKind::GaloisField) throw Error("not a Galois field");
  return t_->mod;
}

namespace {
void check_code(int a, int q) {
  if (a < 0 || a >= q)
    throw Error("element code " + std::to_string(a) + " out of range for ring");
}
}  // namespace

int Ring::add(int a, int b) const {
  check_code(a, t_->q);
  check_code(b, t_->q);
  return t_->add[t_->idx(a, b)];
}

int Ring::sub(int a, int b) const { return add(a, neg(b)); }

int Ring::mul(int a, int b) const {
  check_code(a, t_->q);
  check_code(b, t_->q);
  return t_->mul[t_->idx(a, b)];
}

int Ring::neg(int a) const {
  check_code(a, t_->q);
  return t_->neg[a];
}

int Ring::scalar_repeat(int a, long k) const {
  check_code(a, t_->q);
  if (k < 0) throw Error("scalar_repeat needs k >= 0");
  // The additive order of every element divides the additive exponent.
  const long exponent = (t_->kind == RingKind::IntegersMod) ? t_->q : t_->p;
  int out = 0;
  for (long i = 0; i < k % exponent; ++i) out = t_->add[t_->idx(out, a)];
  return out;
}

bool Ring::is_unit(int a) const {
  check_code(a, t_->q);
  return t_->unit[a];
}

RingElement Ring::element(int code) const {
  check_code(code, t_->q);
  return RingElement(*this, code);
}

RingElement Ring::zero() const { return RingElement(*this, 0); }
RingElement Ring::one() const { return RingElement(*this, 1); }

std::vector<int> Ring::nonzero_codes() const {
  std::vector<int> out;
  for (int a = 1; a < t_->q; ++a) out.push_back(a);
  return out;
}

std::vector<int> Ring::unit_codes() const {
  std::vector<int> out;
  for (int a = 0; a < t_->q; ++a)
    if (t_->unit[a]) out.push_back(a);
  return out;
}

bool Ring::operator==(const Ring& other) const {
  if (t_ == other.t_) return true;
  return t_->kind == other.t_->kind && t_->q == other.t_->q &&
         t_->p == other.t_->p && t_->m == other.t_->m &&
         t_->mod == other.t_->mod;
}

RingElement::RingElement(Ring ring, int code) : ring_(std::move(ring)), code_(code) {
  if (code_ < 0 || code_ >= ring_.cardinality())
    throw Error("element code out of range for ring");
}

namespace {
void check_same_ring(const RingElement& a, const RingElement& b) {
  if (a.ring() != b.ring())
    throw Error("mixed-ring operands: " + a.ring().spec_string() + " vs " +
                b.ring().spec_string());
}
}  // namespace

RingElement operator+(const RingElement& a, const RingElement& b) {
  check_same_ring(a, b);
  return RingElement(a.ring(), a.ring().add(a.code(), b.code()));
}

RingElement operator-(const RingElement& a, const RingElement& b) {
  check_same_ring(a, b);
  return RingElement(a.ring(), a.ring().sub(a.code(), b.code()));
}

RingElement operator*(const RingElement& a, const RingElement& b) {
  check_same_ring(a, b);
  return RingElement(a.ring(), a.ring().mul(a.code(), b.code()));
}

RingElement operator-(const RingElement& a) {
  return RingElement(a.ring(), a.ring().neg(a.code()));
}

bool operator==(const RingElement& a, const RingElement& b) {
  return a.ring() == b.ring() && a.code() == b.code();
}

}  // namespace nblp
