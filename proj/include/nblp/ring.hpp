#pragma once

#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "nblp/errors.hpp"

namespace nblp {

enum class RingKind { IntegersMod, GaloisField };

class RingElement;

/// A finite commutative ring with identity: either Z_q (integers mod q) or
/// GF(p^m) (polynomials over Z_p modulo an irreducible polynomial).
///
/// Elements are encoded as integers 0..q-1. For GF(p^m) the code of
/// c_0 + c_1 x + ... + c_{m-1} x^{m-1} is c_0 + c_1 p + ... + c_{m-1} p^{m-1},
/// so 0 and 1 always encode the additive and multiplicative identities.
/// Operation tables are precomputed once; Ring is cheap to copy.
class Ring {
 public:
  static Ring integers_mod(int q);

  /// Field with p^m elements using the built-in modulus table
  /// (complete for p^m <= 16; m == 1 always works with modulus x).
  static Ring galois_field(int p, int m);

  /// Field with p^m elements and an explicit modulus polynomial given by
  /// ascending coefficients (size m+1, monic). Must be irreducible over Z_p.
  static Ring galois_field(int p, int m, const std::vector<int>& modulus);

  /// Accepts "Z<q>", "GF(<p>^<m>)" or "GF(<q>)", the GF forms optionally
  /// followed by "[c0,c1,...,cm]" (modulus coefficients, ascending degree).
  static Ring parse(std::string_view spec);

  RingKind kind() const;
  int cardinality() const;

  /// Canonical spec string: "Z<q>" or "GF(<p>^<m>)[c0,...,cm]".
  std::string spec_string() const;

  int prime() const;                        // GF only
  int extension_degree() const;             // GF only
  const std::vector<int>& modulus() const;  // GF only

  // Table operations on element codes (bounds-checked).
  int add(int a, int b) const;
  int sub(int a, int b) const;
  int mul(int a, int b) const;
  int neg(int a) const;

  /// a added to itself k times (k >= 0); the integer-scalar action.
  int scalar_repeat(int a, long k) const;

  bool is_unit(int a) const;

  RingElement element(int code) const;
  RingElement zero() const;
  RingElement one() const;

  /// Codes 1..q-1 in canonical ascending order.
  std::vector<int> nonzero_codes() const;

  /// Codes of all units in canonical ascending order.
  std::vector<int> unit_codes() const;

  /// Structural equality: same kind, cardinality and (for fields) modulus.
  bool operator==(const Ring& other) const;
  bool operator!=(const Ring& other) const { return !(*this == other); }

 private:
  struct Table;
  explicit Ring(std::shared_ptr<const Table> t) : t_(std::move(t)) {}
  std::shared_ptr<const Table> t_;
};

/// One ring element tagged with its ring; arithmetic between elements of
/// different rings throws.
class RingElement {
 public:
  RingElement(Ring ring, int code);

  int code() const { return code_; }
  const Ring& ring() const { return ring_; }
  bool is_zero() const { return code_ == 0; }

 private:
  Ring ring_;
  int code_;
};

RingElement operator+(const RingElement& a, const RingElement& b);
RingElement operator-(const RingElement& a, const RingElement& b);
RingElement operator*(const RingElement& a, const RingElement& b);
RingElement operator-(const RingElement& a);
bool operator==(const RingElement& a, const RingElement& b);
inline bool operator!=(const RingElement& a, const RingElement& b) {
  return !(a == b);
}

}  // namespace nblp
