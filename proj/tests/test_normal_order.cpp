#include <random>

#include "doctest.h"
#include "oracles.hpp"
#include "quomm/builders.hpp"
#include "quomm/normal_order.hpp"

using namespace quomm;
using G = Generator;

namespace {

Expression random_expression(const StructureTable& t, std::mt19937_64& rng, std::size_t max_degree,
                             int terms) {
  std::uniform_int_distribution<std::size_t> len(0, max_degree);
  std::uniform_int_distribution<std::size_t> letter(0, t.order().size() - 1);
  Expression e;
  for (int i = 0; i < terms; ++i) {
    Word w;
    const std::size_t d = len(rng);
    for (std::size_t k = 0; k < d; ++k) w.push_back(t.order()[letter(rng)]);
    e.add_term(w, Scalar(oracle::random_rational(rng)));
  }
  return e;
}

}  // namespace

TEST_CASE("quommutator is unreduced") {
  const Expression a(G::E(1, 1)), b(G::E(2, 2));
  const Expression c = quommutator(a, b, Scalar(1));
  CHECK(c == Expression(Word{G::E(1, 1), G::E(2, 2)}) - Expression(Word{G::E(2, 2), G::E(1, 1)}));
  const StructureTable t = build_spl_n1(2, symbolic_pair_params(2));
  CHECK(normal_form(quommutator(a, a, Scalar(1)), t).is_zero());
  const Expression anti = quommutator(a, b, Scalar(3), BracketSign::anticommutator);
  CHECK(anti.coefficient({G::E(2, 2), G::E(1, 1)}) == Scalar(3));
}

TEST_CASE("basic normal forms") {
  const StructureTable t = build_spl_n1(2, symbolic_pair_params(2));
  const Scalar q12(Param::pair(1, 2));
  CHECK(normal_form(Expression(Word{G::V(1), G::V(1)}), t).is_zero());
  CHECK(normal_form(Expression(Word{G::V(2), G::V(1)}), t) ==
        -(Scalar(1) / q12) * Expression(Word{G::V(1), G::V(2)}));
  CHECK(normal_form(Expression(Word{G::V(1), G::Vb(1)}), t) ==
        Expression(G::E(1, 1)) - Expression(Word{G::Vb(1), G::V(1)}));
  CHECK(normal_form(Expression(Scalar(1)), t) == Expression(Scalar(1)));
  CHECK(normal_form(Expression(), t).is_zero());
}

TEST_CASE("trace steps lower the measure and keep charge and grading") {
  std::mt19937_64 rng(99);
  const StructureTable tables[] = {build_spl_n1(2, symbolic_pair_params(2)),
                                   build_spl21(Scalar(Param{"p"}), Scalar(Param{"r"}), Scalar(Param{"s"})),
                                   build_spl_n1(3, uniform_pair_params(3, Rational(2, 3)))};
  for (const auto& t : tables) {
    for (int i = 0; i < 30; ++i) {
      const Expression e = random_expression(t, rng, 4, 1);
      const NormalForm nf = normalize(e, t);
      for (const auto& step : nf.trace.steps) {
        const Measure before = measure(step.before, t);
        for (const auto& [w, c] : step.after.terms()) {
          CHECK(measure(w, t) < before);
          CHECK(charge(w) == charge(step.before));
          CHECK(parity(w) == parity(step.before));
        }
      }
      for (const auto& [w, c] : nf.expression.terms()) CHECK(t.is_canonical(w));
      CHECK(normal_form(nf.expression, t) == nf.expression);
    }
  }
}

TEST_CASE("rule remainders conserve charge") {
  const StructureTable t = build_spl21(Scalar(Param{"p"}), Scalar(Param{"r"}), Scalar(Param{"s"}));
  for (const auto& [pair, rule] : t.rules()) {
    const int c = pair.first.charge() + pair.second.charge();
    for (const auto& [w, coef] : rule.remainder.terms()) CHECK(charge(w) == c);
  }
}

TEST_CASE("overlap checks on consistent tables") {
  CHECK(check_overlaps(oracle::classical_table(2)).passed());
  const StructureTable t =
      build_spl_n1(3, {{{1, 2}, Scalar(2)}, {{1, 3}, Scalar(Rational(3, 5))}, {{2, 3}, Scalar(7)}});
  const ConsistencyReport r = check_overlaps(t);
  CHECK(r.passed());
  CHECK(r.total_overlaps > 0);
  CHECK(!r.symbolic);
  const ConsistencyReport s = check_overlaps(build_spl_n1(2, symbolic_pair_params(2)), 1);
  CHECK(s.passed());
  CHECK(s.symbolic);
}

TEST_CASE("a scaled remainder is caught") {
  StructureTable t = build_spl21(2, 3, 5);
  Rule r = *t.rule(G::E(2, 1), G::E(1, 2));
  r.remainder = r.remainder * Scalar(2);
  t.set_rule(G::E(2, 1), G::E(1, 2), r);
  const ConsistencyReport report = check_overlaps(t);
  REQUIRE(!report.passed());
  bool found = false;
  for (const auto& f : report.failures) {
    int hits = 0;
    for (const auto& g : f.triple) hits += (g == G::E(2, 1) || g == G::E(1, 2)) ? 1 : 0;
    found = found || hits >= 2;
    CHECK(!f.residual.is_zero());
  }
  CHECK(found);
}

TEST_CASE("failures are sorted and reproducible") {
  const StructureTable t = build_spl21(Scalar(Param{"p"}), Scalar(Param{"r"}), Scalar(Param{"s"}),
                                       {Spl21Reading::e21_e12_order});
  const auto a = to_json(check_overlaps(t, 1)).dump();
  const auto b = to_json(check_overlaps(t, 4)).dump();
  CHECK(a == b);
}

TEST_CASE("corrected rules are reported") {
  const ConsistencyReport r =
      check_overlaps(build_spl21(Scalar(Param{"p"}), Scalar(Param{"r"}), Scalar(Param{"s"})));
  CHECK(r.passed());
  CHECK(r.corrected_rules_used.size() == 4);
}

TEST_CASE("cyclic rules trip the step guard") {
  StructureTable t("loop", 2, {G::E(1, 1), G::E(2, 2), G::E(1, 2)});
  // E(1,2)*E(1,1) -> E(1,1)*E(1,2) + E(1,2)*E(1,2)*E(1,1): the measure does not drop
  t.set_rule(G::E(1, 2), G::E(1, 1),
             Rule{Scalar(1), Expression(Word{G::E(1, 2), G::E(1, 2), G::E(1, 1)}), {}});
  t.set_rule(G::E(2, 2), G::E(1, 1), Rule{Scalar(1), Expression(), {}});
  t.set_rule(G::E(1, 2), G::E(2, 2), Rule{Scalar(1), Expression(), {}});
  CHECK_THROWS_AS(normal_form(Expression(Word{G::E(1, 2), G::E(1, 1)}), t), NonTermination);
}

TEST_CASE("step limit grows with degree") {
  const StructureTable t = build_spl_n1(2, symbolic_pair_params(2));
  CHECK(step_limit(Expression(Word{G::V(1), G::V(2)}), t) <
        step_limit(Expression(Word{G::V(1), G::V(2), G::E(1, 1), G::E(2, 2)}), t));
}
