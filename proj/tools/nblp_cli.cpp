// nblp: exact linear-programming decoding of linear codes over finite
// rings, with three interchangeable relaxations and exact rational
// arithmetic end to end.
//
// Exit codes (stable; scripts may branch on them):
//   0  success (decode: maximum-likelihood certified)
//   1  verification mismatch (compare / counts / selftest found a violation)
//   2  decode finished with a fractional optimum (no codeword decision)
//   3  operational error (unreadable input, enumeration cap, unbounded LP)
//   4  usage error (bad flags or flag combinations)

#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "nblp/decode.hpp"
#include "nblp/instances.hpp"

namespace {

using namespace nblp;

constexpr int kExitSuccess = 0;
constexpr int kExitMismatch = 1;
constexpr int kExitFractional = 2;
constexpr int kExitOperational = 3;
constexpr int kExitUsage = 4;

/// Flag combinations CLI11 cannot express are reported through this.
struct UsageError : Error {
  using Error::Error;
};

bool ends_with(const std::string& s, const std::string& suffix) {
  return s.size() >= suffix.size() &&
         s.compare(s.size() - suffix.size(), suffix.size(), suffix) == 0;
}

/// Loads a matrix file. ".alist" files hold 0/1 patterns and default to Z2;
/// --ring reinterprets the pattern over another ring (0 and 1 are elements
/// of every ring). For the native text format the ring is embedded in the
/// file, and a --ring flag must agree with it.
ParityCheckMatrix load_matrix(const std::string& path,
                              const std::string& ring_spec) {
  if (ends_with(path, ".alist")) {
    ParityCheckMatrix mat = ParityCheckMatrix::from_alist_file(path);
    if (ring_spec.empty()) return mat;
    const Ring ring = Ring::parse(ring_spec);
    std::vector<int> entries;
    entries.reserve(static_cast<size_t>(mat.rows()) * mat.cols());
    for (int j = 0; j < mat.rows(); ++j)
      for (int i = 0; i < mat.cols(); ++i) entries.push_back(mat.entry(j, i));
    return ParityCheckMatrix(ring, mat.rows(), mat.cols(), std::move(entries));
  }
  ParityCheckMatrix mat = ParityCheckMatrix::from_text_file(path);
  if (!ring_spec.empty() &&
      Ring::parse(ring_spec).spec_string() != mat.ring().spec_string())
    throw UsageError("--ring " + ring_spec + " contradicts the matrix file (" +
                     mat.ring().spec_string() + ")");
  return mat;
}

std::vector<PolytopeKind> parse_kinds(const std::string& arg) {
  std::vector<PolytopeKind> kinds;
  std::stringstream ss(arg);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    kinds.push_back(parse_polytope_kind(item));
    for (size_t t = 0; t + 1 < kinds.size(); ++t)
      if (kinds[t] == kinds.back())
        throw UsageError("--polytope lists " + item + " twice");
  }
  if (kinds.empty()) throw UsageError("--polytope selects nothing");
  return kinds;
}

/// Prints the report to stdout and mirrors it to --out when given.
void emit(const std::string& report, const std::string& out_path) {
  std::cout << report;
  if (out_path.empty()) return;
  std::ofstream out(out_path);
  if (!out) throw Error("cannot write " + out_path);
  out << report;
}

std::string format_f_lines(const std::vector<std::vector<Rational>>& f) {
  std::ostringstream os;
  for (size_t i = 0; i < f.size(); ++i) {
    os << "f " << i;
    for (const Rational& v : f[i]) os << ' ' << format_rational(v);
    os << '\n';
  }
  return os.str();
}

// ---------------------------------------------------------------- decode --

int run_decode(const std::string& matrix_path, const std::string& ring_spec,
               const std::string& polytope, const std::string& costs_path,
               const std::string& channel_path, const std::string& received,
               const std::string& out_path) {
  if (costs_path.empty() == channel_path.empty())
    throw UsageError("pick exactly one cost source: --costs, or --channel "
                     "with --received");
  if (!channel_path.empty() && received.empty())
    throw UsageError("--channel needs --received");

  const ParityCheckMatrix mat = load_matrix(matrix_path, ring_spec);
  const PolytopeKind kind = parse_polytope_kind(polytope);
  CostVector costs;
  if (!costs_path.empty()) {
    costs = parse_costs_file(costs_path, mat.ring().cardinality());
    if (costs.length() != mat.cols())
      throw Error("cost file has " + std::to_string(costs.length()) +
                  " positions, matrix has " + std::to_string(mat.cols()));
  } else {
    const ChannelModel chan = ChannelModel::parse_file(channel_path);
    if (chan.input_count() != mat.ring().cardinality())
      throw Error("channel input alphabet does not match the ring");
    costs = chan.embed_costs(parse_word(received, mat.ring(), mat.cols()));
  }

  const DecodeResult r = lp_decode(mat, costs, kind);

  std::ostringstream os;
  os << "outcome " << to_string(r.outcome) << '\n';
  os << "polytope " << to_string(kind) << '\n';
  if (r.outcome != DecodeOutcome::DeclaredError) {
    os << "objective " << format_rational(r.objective) << '\n';
    os << "pivots " << r.stats.phase1_pivots << '+' << r.stats.phase2_pivots
       << '\n';
  }
  switch (r.outcome) {
    case DecodeOutcome::MLCertified:
      os << "word " << format_word(r.word) << '\n';
      os << "certificate " << (r.certificate_checked ? "verified" : "failed")
         << '\n';
      break;
    case DecodeOutcome::Fractional:
      os << format_f_lines(r.f);
      break;
    case DecodeOutcome::DeclaredError:
      break;
  }
  os << "diagnostic " << r.diagnostic << '\n';
  emit(os.str(), out_path);

  switch (r.outcome) {
    case DecodeOutcome::MLCertified:
      return r.certificate_checked ? kExitSuccess : kExitMismatch;
    case DecodeOutcome::Fractional:
      return kExitFractional;
    case DecodeOutcome::DeclaredError:
      return kExitOperational;
  }
  return kExitOperational;
}

// --------------------------------------------------------------- compare --

int run_compare(const std::string& matrix_path, const std::string& ring_spec,
                const std::string& polytope, const std::string& costs_path,
                std::uint64_t seed, bool seed_given, long trials,
                const std::string& out_path) {
  const std::vector<PolytopeKind> kinds = parse_kinds(polytope);
  if (kinds.size() < 2)
    throw UsageError("compare needs at least two polytopes, e.g. "
                     "--polytope q,u,s");
  if (costs_path.empty() == !seed_given)
    throw UsageError("pick exactly one cost source: --costs, or --seed "
                     "with --trials");
  if (seed_given && trials < 1)
    throw UsageError("--seed needs --trials >= 1");

  const ParityCheckMatrix mat = load_matrix(matrix_path, ring_spec);
  const int q = mat.ring().cardinality();

  std::vector<CostVector> rows;
  if (!costs_path.empty()) {
    rows.push_back(parse_costs_file(costs_path, q));
    if (rows.back().length() != mat.cols())
      throw Error("cost file has " + std::to_string(rows.back().length()) +
                  " positions, matrix has " + std::to_string(mat.cols()));
  } else {
    for (long t = 0; t < trials; ++t) {
      Rng rng = Rng::substream(seed, static_cast<std::uint64_t>(t));
      rows.push_back(random_costs(rng, q, mat.cols()));
    }
  }

  std::vector<std::unique_ptr<Decoder>> decoders;
  for (PolytopeKind kind : kinds)
    decoders.push_back(std::make_unique<Decoder>(mat, kind));

  std::ostringstream os;
  long equal_count = 0;
  for (size_t t = 0; t < rows.size(); ++t) {
    os << "cost " << t << ':';
    bool comparable = true;
    bool equal = true;
    Rational first;
    for (size_t d = 0; d < decoders.size(); ++d) {
      const DecodeResult r = decoders[d]->decode(rows[t]);
      os << ' ' << to_string(kinds[d]) << '=';
      if (r.outcome == DecodeOutcome::DeclaredError) {
        os << "unbounded";
        comparable = false;
      } else {
        os << format_rational(r.objective);
        if (d == 0)
          first = r.objective;
        else if (r.objective != first)
          equal = false;
      }
    }
    const bool ok = comparable && equal;
    os << (ok ? " equal" : " MISMATCH") << '\n';
    if (ok) ++equal_count;
  }
  os << "agreement " << equal_count << '/' << rows.size() << '\n';
  const bool all_equal = equal_count == static_cast<long>(rows.size());
  os << "verdict " << (all_equal ? "all-equal" : "mismatch") << '\n';
  emit(os.str(), out_path);
  return all_equal ? kExitSuccess : kExitMismatch;
}

// ---------------------------------------------------------------- counts --

int run_counts(const std::string& matrix_path, const std::string& ring_spec,
               const std::string& polytope, const std::string& out_path) {
  const std::vector<PolytopeKind> kinds = parse_kinds(polytope);
  const ParityCheckMatrix mat = load_matrix(matrix_path, ring_spec);

  std::ostringstream os;
  bool all_ok = true;
  for (PolytopeKind kind : kinds) {
    const PolytopeBuild build = build_polytope(mat, kind);
    const CountReport rep = count_report(build);
    os << "polytope " << to_string(kind) << '\n';
    if (!rep.applicable) {
      os << "  bounds not-applicable (every row degree is 3 or less; the "
            "cascade is the identity)\n";
      continue;
    }
    os << "  variables " << rep.variables << " bound " << rep.variable_bound
       << (rep.variables_within ? " within" : " EXCEEDED") << '\n';
    os << "  constraints " << rep.constraints << " bound "
       << rep.constraint_bound
       << (rep.constraints_within ? " within" : " EXCEEDED") << '\n';
    if (kind == PolytopeKind::U)
      os << "  profiles " << rep.t_max << " bound " << rep.t_bound
         << (rep.t_within ? " within" : " EXCEEDED") << '\n';
    all_ok = all_ok && rep.all_within();
  }
  os << "verdict " << (all_ok ? "within-bounds" : "bound-exceeded") << '\n';
  emit(os.str(), out_path);
  return all_ok ? kExitSuccess : kExitMismatch;
}

// -------------------------------------------------------------- simulate --

int run_simulate(const std::string& matrix_path, const std::string& ring_spec,
                 const std::string& polytope, const std::string& channel_path,
                 std::uint64_t seed, long trials,
                 const std::string& out_path) {
  if (trials < 0) throw UsageError("--trials must be nonnegative");
  const ParityCheckMatrix mat = load_matrix(matrix_path, ring_spec);
  const PolytopeKind kind = parse_polytope_kind(polytope);
  const ChannelModel chan = ChannelModel::parse_file(channel_path);
  if (chan.input_count() != mat.ring().cardinality())
    throw Error("channel input alphabet does not match the ring");

  std::ostringstream os;
  os << "polytope " << to_string(kind) << '\n';
  os << "seed " << seed << '\n';
  os << "trials " << trials << '\n';
  if (trials == 0) {
    emit(os.str(), out_path);
    return kExitSuccess;
  }

  // Transmitted words are sampled uniformly from the full codebook, so the
  // code must be enumerable; the cap error is preferred over silently
  // transmitting only the zero word.
  const std::vector<Word> codebook = enumerate_codebook(mat);
  Decoder decoder(mat, kind);
  const int n = mat.cols();

  long certified = 0, fractional = 0, declared = 0;
  long word_errors = 0, symbol_errors = 0;
  for (long t = 0; t < trials; ++t) {
    Rng rng = Rng::substream(seed, static_cast<std::uint64_t>(t));
    const Word& sent = codebook[rng.below(codebook.size())];
    Word received(n);
    for (int i = 0; i < n; ++i) received[i] = chan.sample(sent[i], rng);
    const DecodeResult r = decoder.decode(chan.embed_costs(received));
    switch (r.outcome) {
      case DecodeOutcome::MLCertified: {
        ++certified;
        int distance = 0;
        for (int i = 0; i < n; ++i)
          if (r.word[i] != sent[i]) ++distance;
        symbol_errors += distance;
        if (distance > 0) ++word_errors;
        break;
      }
      case DecodeOutcome::Fractional:
        ++fractional;
        ++word_errors;
        symbol_errors += n;  // no decision: every symbol counts as lost
        break;
      case DecodeOutcome::DeclaredError:
        ++declared;
        ++word_errors;
        symbol_errors += n;
        break;
    }
  }
  os << "certified " << certified << '\n';
  os << "fractional " << fractional << '\n';
  os << "declared-error " << declared << '\n';
  os << "word-errors " << word_errors << '\n';
  os << "word-error-rate " << format_rational(make_rational(word_errors,
                                                            trials))
     << '\n';
  os << "symbol-errors " << symbol_errors << '\n';
  os << "symbol-error-rate "
     << format_rational(make_rational(symbol_errors, trials * n)) << '\n';
  emit(os.str(), out_path);
  return kExitSuccess;
}

// --------------------------------------------------------- lift/decompose --

int run_point_map(const std::string& matrix_path, const std::string& ring_spec,
                  const std::string& point_path, bool to_weight_form,
                  const std::string& out_path) {
  const ParityCheckMatrix mat = load_matrix(matrix_path, ring_spec);
  const PolytopeBuild weights = build_polytope(mat, PolytopeKind::Q);
  const PolytopeBuild splits = build_polytope(mat, PolytopeKind::U);
  const PolytopeBuild& from = to_weight_form ? splits : weights;
  const PolytopeBuild& to = to_weight_form ? weights : splits;

  std::ifstream in(point_path);
  if (!in) throw Error("cannot read " + point_path);
  const std::vector<Rational> x = load_point(in, from.lp);

  const std::vector<Rational> mapped =
      to_weight_form ? lift_point(splits, weights, x)
                     : push_point(weights, splits, x);
  emit(dump_point(to.lp, mapped), out_path);
  return kExitSuccess;
}

// -------------------------------------------------------------- selftest --

int run_selftest(std::uint64_t seed, long trials, const std::string& out_path) {
  if (trials < 1) throw UsageError("--trials must be at least 1");
  constexpr int kCostsPerInstance = 3;

  long objective_checks = 0, objective_ok = 0;
  long certificate_checks = 0, certificate_ok = 0;
  long consequence_checks = 0, consequence_ok = 0;
  long roundtrip_checks = 0, roundtrip_ok = 0;
  long bound_checks = 0, bound_ok = 0;

  for (long index = 0; index < trials; ++index) {
    const ParityCheckMatrix mat =
        random_unit_matrix(seed, static_cast<std::uint64_t>(index));
    const int q = mat.ring().cardinality();

    Decoder dq(mat, PolytopeKind::Q);
    Decoder du(mat, PolytopeKind::U);
    Decoder ds(mat, PolytopeKind::S);
    for (const Decoder* d : {&dq, &du, &ds}) {
      ++bound_checks;
      if (count_report(d->build()).all_within()) ++bound_ok;
    }

    Rng cost_rng = Rng::substream(seed, 0x10000000ULL + index);
    for (int c = 0; c < kCostsPerInstance; ++c) {
      const CostVector costs = random_costs(cost_rng, q, mat.cols());
      const DecodeResult rq = dq.decode(costs);
      const DecodeResult ru = du.decode(costs);
      const DecodeResult rs = ds.decode(costs);

      ++objective_checks;
      if (rq.outcome != DecodeOutcome::DeclaredError &&
          ru.outcome != DecodeOutcome::DeclaredError &&
          rs.outcome != DecodeOutcome::DeclaredError &&
          rq.objective == ru.objective && ru.objective == rs.objective)
        ++objective_ok;

      for (const DecodeResult* r : {&rq, &ru, &rs}) {
        if (r->outcome != DecodeOutcome::MLCertified) continue;
        ++certificate_checks;
        const MLResult ml = ml_brute_force(mat, costs);
        if (r->certificate_checked && word_cost(costs, r->word) == ml.cost)
          ++certificate_ok;
      }

      // Split-form consequences and both round-trip directions, exercised
      // at the solver's own vertices.
      ++consequence_checks;
      if (derived_constraints_hold(du.build(), ru.raw).ok) ++consequence_ok;

      ++roundtrip_checks;
      {
        const std::vector<Rational> w =
            lift_point(du.build(), dq.build(), ru.raw);
        bool ok = check_point(dq.build().lp, w).ok;
        for (int i = 0; ok && i < mat.cols(); ++i)
          ok = f_values_at(dq.build(), w, i) == f_values_at(du.build(), ru.raw, i);
        if (ok) ++roundtrip_ok;
      }
      ++roundtrip_checks;
      {
        const std::vector<Rational> z =
            push_point(dq.build(), du.build(), rq.raw);
        bool ok = check_point(du.build().lp, z).ok &&
                  derived_constraints_hold(du.build(), z).ok;
        for (int i = 0; ok && i < mat.cols(); ++i)
          ok = f_values_at(du.build(), z, i) == f_values_at(dq.build(), rq.raw, i);
        if (ok) ++roundtrip_ok;
      }
    }
  }

  std::ostringstream os;
  os << "selftest seed " << seed << " instances " << trials
     << " costs-per-instance " << kCostsPerInstance << '\n';
  os << "objective-equality " << objective_ok << '/' << objective_checks
     << '\n';
  os << "ml-certificates " << certificate_ok << '/' << certificate_checks
     << '\n';
  os << "split-form-consequences " << consequence_ok << '/'
     << consequence_checks << '\n';
  os << "round-trips " << roundtrip_ok << '/' << roundtrip_checks << '\n';
  os << "count-bounds " << bound_ok << '/' << bound_checks << '\n';
  const bool pass = objective_ok == objective_checks &&
                    certificate_ok == certificate_checks &&
                    consequence_ok == consequence_checks &&
                    roundtrip_ok == roundtrip_checks &&
                    bound_ok == bound_checks;
  os << "verdict " << (pass ? "pass" : "fail") << '\n';
  emit(os.str(), out_path);
  return pass ? kExitSuccess : kExitMismatch;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "nblp: exact LP decoding of linear codes over finite rings.\n"
      "Three interchangeable relaxations (q: local-codeword weights, u: "
      "count-profile splits, s: cascaded degree-3 weights), an exact "
      "rational simplex core, and independent optimality certificates."};
  app.require_subcommand(1);

  std::string matrix_path, ring_spec, polytope, costs_path;
  std::string channel_path, received, point_path, out_path;
  std::uint64_t seed = 0;
  long trials = -1;

  const std::string ring_help =
      "Ring spec (Z<q>, GF(p^m)); for .alist files it reinterprets the 0/1 "
      "pattern, for text matrices it must agree with the file";

  auto add_matrix = [&](CLI::App* cmd) {
    cmd->add_option("--matrix", matrix_path,
                    "Parity-check matrix (.alist, or the native text format)")
        ->required();
    cmd->add_option("--ring", ring_spec, ring_help);
  };
  auto add_out = [&](CLI::App* cmd) {
    cmd->add_option("--out", out_path, "Mirror the report to this file");
  };

  CLI::App* decode = app.add_subcommand(
      "decode", "Decode one cost vector over a chosen relaxation");
  add_matrix(decode);
  decode->add_option("--polytope", polytope, "Relaxation: q, u or s");
  decode->add_option("--costs", costs_path,
                     "Cost file: one line per position, q-1 rationals");
  decode->add_option("--channel", channel_path, "Channel config file");
  decode->add_option("--received", received,
                     "Received word (space-separated symbol codes)");
  add_out(decode);

  CLI::App* compare = app.add_subcommand(
      "compare",
      "Solve two or more relaxations and verify their optima agree");
  add_matrix(compare);
  compare->add_option("--polytope", polytope,
                      "Comma list of relaxations (default q,u,s)");
  compare->add_option("--costs", costs_path, "Single cost file");
  compare->add_option("--seed", seed, "Seed for random rational cost rows");
  compare->add_option("--trials", trials, "Number of random cost rows");
  add_out(compare);

  CLI::App* counts = app.add_subcommand(
      "counts", "Audit LP sizes against their closed-form bounds");
  add_matrix(counts);
  counts->add_option("--polytope", polytope,
                     "Comma list of relaxations (default q,u,s)");
  add_out(counts);

  CLI::App* simulate = app.add_subcommand(
      "simulate",
      "Seeded Monte Carlo: transmit uniform codewords, decode, report rates");
  add_matrix(simulate);
  simulate->add_option("--polytope", polytope, "Relaxation: q, u or s");
  simulate->add_option("--channel", channel_path, "Channel config file")
      ->required();
  simulate->add_option("--seed", seed, "Simulation seed")->required();
  simulate->add_option("--trials", trials, "Number of trials")->required();
  add_out(simulate);

  CLI::App* lift = app.add_subcommand(
      "lift",
      "Map a feasible split-form (u) point to an equivalent weight-form (q) "
      "point with the same indicator values");
  add_matrix(lift);
  lift->add_option("--point", point_path, "Point file (u variables)")
      ->required();
  add_out(lift);

  CLI::App* decompose = app.add_subcommand(
      "decompose",
      "Decompose a feasible weight-form (q) point by count profile into an "
      "equivalent split-form (u) point");
  add_matrix(decompose);
  decompose->add_option("--point", point_path, "Point file (q variables)")
      ->required();
  add_out(decompose);

  CLI::App* selftest = app.add_subcommand(
      "selftest",
      "Seeded battery: relaxation equivalence, certificates, round-trips, "
      "size bounds");
  selftest->add_option("--seed", seed, "Battery seed (default 20260819)");
  selftest->add_option("--trials", trials,
                       "Number of random instances (default 12)");
  add_out(selftest);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitSuccess : kExitUsage;
  }

  // Per-command defaults for the shared flag variables.
  if (polytope.empty())
    polytope = (*compare || *counts) ? "q,u,s" : "q";
  if (*selftest) {
    if (selftest->count("--seed") == 0) seed = 20260819;
    if (selftest->count("--trials") == 0) trials = 12;
  }

  try {
    if (*decode)
      return run_decode(matrix_path, ring_spec, polytope, costs_path,
                        channel_path, received, out_path);
    if (*compare)
      return run_compare(matrix_path, ring_spec, polytope, costs_path, seed,
                         compare->count("--seed") > 0, trials, out_path);
    if (*counts) return run_counts(matrix_path, ring_spec, polytope, out_path);
    if (*simulate)
      return run_simulate(matrix_path, ring_spec, polytope, channel_path, seed,
                          trials, out_path);
    if (*lift)
      return run_point_map(matrix_path, ring_spec, point_path, true, out_path);
    if (*decompose)
      return run_point_map(matrix_path, ring_spec, point_path, false,
                           out_path);
    if (*selftest) return run_selftest(seed, trials, out_path);
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitOperational;
  }
  return kExitUsage;
}
