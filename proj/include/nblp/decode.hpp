#pragma once

#include <string>
#include <vector>

#include "nblp/decompose.hpp"

namespace nblp {

enum class DecodeOutcome {
  MLCertified,    // integral optimum: the returned word is maximum-likelihood
  Fractional,     // fractional optimum: decoding failure with a lower bound
  DeclaredError,  // no decision possible (e.g. unbounded relaxation)
};

std::string to_string(DecodeOutcome outcome);

struct DecodeResult {
  DecodeOutcome outcome = DecodeOutcome::DeclaredError;
  Word word;                              // decoded word when certified
  Rational objective;                     // LP optimum: exact lower bound on
                                          // every codeword's cost
  std::vector<std::vector<Rational>> f;   // indicator values [i][alpha-1]
  std::vector<Rational> raw;              // full LP point
  SolveStats stats;
  bool certificate_checked = false;       // independent dual verification
  std::string diagnostic;
};

/// Decodes by minimizing the cost row over the chosen relaxation. The
/// result is MLCertified exactly when the optimal indicators are 0/1, they
/// spell a word that satisfies every check, and that word's cost equals the
/// LP optimum - which proves no codeword costs less.
class Decoder {
 public:
  Decoder(ParityCheckMatrix mat, PolytopeKind kind,
          const EnumerationCaps& caps = {});
  Decoder(const Decoder&) = delete;
  Decoder& operator=(const Decoder&) = delete;

  const PolytopeBuild& build() const { return build_; }
  DecodeResult decode(const CostVector& costs);

 private:
  PolytopeBuild build_;
  SimplexSolver solver_;  // holds a reference to build_.lp
};

/// One-shot decode: builds the relaxation, solves, reads the result.
DecodeResult lp_decode(const ParityCheckMatrix& mat, const CostVector& costs,
                       PolytopeKind kind, const EnumerationCaps& caps = {});

struct MLResult {
  Word word;
  Rational cost;
};

/// Exhaustive maximum-likelihood reference: minimizes word cost over the
/// full codebook; ties resolve to the lexicographically first word.
MLResult ml_brute_force(const ParityCheckMatrix& mat, const CostVector& costs,
                        const EnumerationCaps& caps = {});

}  // namespace nblp
