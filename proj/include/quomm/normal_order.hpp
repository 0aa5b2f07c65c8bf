#pragma once

#include <array>
#include <compare>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "json.hpp"
#include "quomm/structure_table.hpp"

namespace quomm {

/// [A,B]_q = AB - qBA (commutator) or {A,B}_q = AB + qBA (anticommutator),
/// returned unreduced.
enum class BracketSign { commutator, anticommutator };
Expression quommutator(const Expression& a, const Expression& b, const Scalar& q,
                       BracketSign sign = BracketSign::commutator);

/// Termination measure of a word: (weighted degree, inversions), compared
/// lexicographically. Weights: even letters 3, odd letters 2, so that both
/// V*Vb -> E and E*E -> V*Vb remainders lower the weighted degree.
struct Measure {
  int weighted_degree = 0;
  int inversions = 0;
  auto operator<=>(const Measure&) const = default;
};
Measure measure(const Word& w, const StructureTable& t);

struct RewriteStep {
  std::size_t position = 0;
  GeneratorPair rule;  // (g, g) for a nilpotent square
  Word before;
  Expression after;  // replacement of `before`, coefficient 1
};

struct RewriteTrace {
  std::vector<RewriteStep> steps;
};

struct NormalForm {
  Expression expression;
  RewriteTrace trace;
};

class NonTermination : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class Strategy { leftmost, rightmost };

/// First (or last) position i with w[i]*w[i+1] reducible.
std::optional<std::size_t> reducible_position(const Word& w, const StructureTable& t,
                                              Strategy strategy);

/// Applies exactly one rule at the chosen position (w itself if canonical).
Expression rewrite_once(const Word& w, const StructureTable& t, Strategy strategy);

/// Canonical form by repeatedly rewriting the leftmost reducible pair of the
/// word with the largest measure. Throws NonTermination when the step guard
/// is exceeded.
NormalForm normalize(const Expression& e, const StructureTable& t);

/// normalize() without recording a trace. `used`, if given, collects every
/// rule that fired.
Expression normal_form(const Expression& e, const StructureTable& t,
                       std::set<GeneratorPair>* used = nullptr);

/// Rewrite-step budget for `e`.
std::size_t step_limit(const Expression& e, const StructureTable& t);

struct ConsistencyFailure {
  std::array<Generator, 3> triple;
  Expression residual;
};

struct ConsistencyReport {
  std::string algebra_id;
  std::size_t total_overlaps = 0;
  std::vector<ConsistencyFailure> failures;
  std::vector<std::string> corrected_rules_used;
  bool symbolic = false;

  bool passed() const { return failures.empty(); }
};

/// Reduces every generator triple with a reducible adjacent pair along the
/// leftmost-first and rightmost-first paths and records the differences.
/// `workers == 0` picks the hardware concurrency.
ConsistencyReport check_overlaps(const StructureTable& t, unsigned workers = 0);

nlohmann::ordered_json to_json(const ConsistencyReport& report);

}  // namespace quomm
