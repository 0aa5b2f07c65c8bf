#include <random>

#include "doctest.h"
#include "oracles.hpp"
#include "quomm/builders.hpp"
#include "quomm/normal_order.hpp"
#include "quomm/parser.hpp"

using namespace quomm;
using G = Generator;

namespace {

const Scalar P(Param{"p"}), R(Param{"r"}), S(Param{"s"});

/// A*B -/+ c*B*A - rhs reduced in `t`; zero iff the relation holds.
Expression defect(const StructureTable& t, const Expression& a, const Expression& b, BracketSign sign,
                  const Scalar& c, const Expression& rhs) {
  return normal_form(quommutator(a, b, c, sign) - rhs, t);
}

}  // namespace

TEST_CASE("generators and words") {
  CHECK(G::E(1, 2).name() == "E(1,2)");
  CHECK(parse_generator("Vb(3)") == G::Vb(3));
  CHECK(G::V(1).charge() == 1);
  CHECK(G::Vb(1).charge() == -1);
  CHECK(charge(Word{G::V(1), G::Vb(2), G::V(2)}) == 1);
  CHECK(parity(Word{G::V(1), G::E(1, 1)}) == 1);
  CHECK_THROWS_AS(parse_generator("W(1)"), std::invalid_argument);
}

TEST_CASE("standard order places anti-fermions first") {
  const auto order = standard_order(2);
  REQUIRE(order.size() == 8);
  CHECK(order.front() == G::Vb(1));
  CHECK(order[2] == G::E(1, 1));
  CHECK(order[3] == G::E(1, 2));
  CHECK(order.back() == G::V(2));
}

TEST_CASE("spl(N,1) rules at chosen entries") {
  const StructureTable t = build_spl_n1(3, symbolic_pair_params(3));
  const Scalar q12(Param::pair(1, 2));
  // V_2 V_1 = -q_21 V_1 V_2
  const Rule* r = t.rule(G::V(2), G::V(1));
  REQUIRE(r != nullptr);
  CHECK(r->swap == -(Scalar(1) / q12));
  CHECK(r->remainder.is_zero());
  // E_2^1 E_1^2 = E_1^2 E_2^1 + E_2^2 - E_1^1 (the structure monomial collapses to 1)
  const Rule* e = t.rule(G::E(2, 1), G::E(1, 2));
  REQUIRE(e != nullptr);
  CHECK(e->swap.is_one());
  CHECK(e->remainder == Expression(G::E(2, 2)) - Expression(G::E(1, 1)));
  CHECK(t.is_nilpotent(G::V(3)));
  CHECK(t.params().size() == 3);
}

TEST_CASE("even-even swap monomials are mutually inverse") {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 3; ++trial) {
    PairParams q;
    for (auto& [ab, v] : symbolic_pair_params(3)) q[ab] = Scalar(oracle::generic_rational(rng));
    auto qq = [&](int a, int b) {
      if (a == b) return Scalar(1);
      return a < b ? q.at({a, b}) : Scalar(1) / q.at({b, a});
    };
    auto weight = [&](const Generator& x, const Generator& y) {
      const int a = x.a, b = x.b, c = y.a, d = y.b;
      return qq(a, c) * qq(c, b) * qq(b, d) * qq(d, a);
    };
    const StructureTable t = build_spl_n1(3, q);
    for (const auto& [pair, rule] : t.rules()) {
      if (pair.first.is_fermion() || pair.second.is_fermion()) continue;
      CHECK(rule.swap == weight(pair.first, pair.second));
      CHECK(weight(pair.first, pair.second) * weight(pair.second, pair.first) == Scalar(1));
    }
  }
}

TEST_CASE("builders reject bad parameters") {
  CHECK_THROWS_AS(build_spl_n1(1, {}), TableError);
  PairParams q = symbolic_pair_params(2);
  q[{1, 2}] = Scalar();
  CHECK_THROWS_WITH_AS(build_spl_n1(2, q), doctest::Contains("zero parameter"), TableError);
  CHECK_THROWS_AS(build_spl_n1(3, symbolic_pair_params(2)), TableError);
  CHECK_THROWS_AS(build_spl21(Scalar(), R, S), TableError);
}

TEST_CASE("classical limits agree with the graded brackets") {
  for (int n = 2; n <= 4; ++n) {
    const StructureTable oracle_table = oracle::classical_table(n);
    CHECK(classical_limit(build_spl_n1(n, symbolic_pair_params(n))) == oracle_table);
    CHECK(build_spl_n1(n, uniform_pair_params(n, 1)) == oracle_table);
  }
  const StructureTable c2 = oracle::classical_table(2);
  CHECK(classical_limit(build_spl21(P, R, S)) == c2);
  CHECK(classical_limit(build_osp22_q(Param{"p"})) == c2);
  CHECK(build_spl21(1, 1, 1) == c2);
  const StructureTable once = classical_limit(build_spl21(P, R, S));
  CHECK(classical_limit(once) == once);
  for (const auto& [pair, rule] : once.rules()) {
    const long expected = pair.first.is_fermion() && pair.second.is_fermion() ? -1 : 1;
    CHECK(rule.swap == Scalar(expected));
  }
}

TEST_CASE("one-parameter limit of spl(2,1)_{p,r,s}") {
  const StructureTable limit = build_spl21(1, R, 1);
  CHECK(relabel(limit, {2, 1}) == build_spl_n1(2, {{{1, 2}, R}}));
  CHECK(limit == build_spl_n1(2, {{{1, 2}, Scalar(1) / R}}));
}

TEST_CASE("osp(2,2)_q is the p = 1/s = q^(1/2), r = 1 slice") {
  const StructureTable osp = build_osp22_q(Param{"p"});
  CHECK(osp == build_spl21(P, 1, Scalar(1) / P));
  CHECK(osp.even_aliases().at(Param{"q"}) == Param{"p"});
  // {V_1, V_2}_{p/(sr)} at s = 1/p, r = 1 has parameter p^2
  const Rule* r = osp.rule(G::V(2), G::V(1));
  REQUIRE(r != nullptr);
  CHECK(r->swap == -(Scalar(1) / P.pow(2)));
  // {Vb^2, V_1}_{ps/r} has parameter 1
  const Rule* m = osp.rule(G::V(1), G::Vb(2));
  REQUIRE(m != nullptr);
  CHECK(m->swap == Scalar(-1));
  // every scalar is even in p
  const StructureTable q_form = rebase_aliases(osp);
  CHECK(q_form.params() == std::set<Param>{Param{"q"}});
}

TEST_CASE("spl(2,1)_{p,r,s} encodes its relations in the natural basis") {
  const StructureTable t = build_spl21(P, R, S);
  auto E = [](int i, int j) { return spl21_E(i, j, P, R, S); };
  auto V = spl21_V;
  auto Vb = spl21_Vbar;
  const auto c = BracketSign::commutator;
  const auto a = BracketSign::anticommutator;
  const Scalar one(1), p2 = P * P, s2 = S * S;
  const Expression zero;
  struct Rel {
    Expression x, y;
    BracketSign sign;
    Scalar param;
    Expression rhs;
  };
  const std::vector<Rel> rels = {
      {V(1), V(2), a, P / (S * R), zero},
      {Vb(1), Vb(2), a, S / (P * R), zero},
      {Vb(1), V(1), a, one, E(1, 1)},
      {Vb(2), V(2), a, one, E(2, 2)},
      {Vb(1), V(2), a, P * S * R, E(1, 2)},
      {Vb(2), V(1), a, P * S / R, E(2, 1)},
      {E(1, 1), V(1), c, one, zero},
      {E(2, 2), V(1), c, s2, V(1)},
      {E(2, 1), V(1), c, P * S / R, zero},
      {E(1, 2), V(1), c, S * R / P, -(S * R / P) * V(2)},
      {E(1, 1), V(2), c, p2, V(2)},
      {E(2, 2), V(2), c, one, zero},
      {E(2, 1), V(2), c, P / (S * R), -(P / (S * R)) * V(1)},
      {E(1, 2), V(2), c, P * S * R, zero},
      {E(1, 1), Vb(1), c, one, zero},
      {E(2, 2), Vb(1), c, one / s2, -(one / s2) * Vb(1)},
      {E(2, 1), Vb(1), c, P * R / S, Vb(2)},
      {E(1, 2), Vb(1), c, one / (P * S * R), zero},
      {E(1, 1), Vb(2), c, one / p2, -(one / p2) * Vb(2)},
      {E(2, 2), Vb(2), c, one, zero},
      {E(2, 1), Vb(2), c, R / (P * S), zero},
      {E(1, 2), Vb(2), c, S / (P * R), Vb(1)},
      {E(1, 1), E(2, 2), c, one, zero},
      {E(1, 1), E(2, 1), c, one / p2, -(one / p2) * E(2, 1)},
      {E(2, 2), E(2, 1), c, s2, E(2, 1)},
      {E(1, 1), E(1, 2), c, p2, E(1, 2)},
      {E(2, 2), E(1, 2), c, one / s2, -(one / s2) * E(1, 2)},
      {E(1, 2), E(2, 1), c, s2 / p2,
       E(1, 1) - (s2 / p2) * E(2, 2) + (s2 - one) * (V(1) * Vb(1)) -
           (s2 / p2) * (p2 - one) * (V(2) * Vb(2))},
  };
  for (std::size_t i = 0; i < rels.size(); ++i) {
    CAPTURE(i);
    const auto& rel = rels[i];
    CHECK(defect(t, rel.x, rel.y, rel.sign, rel.param, rel.rhs).is_zero());
  }
  CHECK(normal_form(V(1) * V(1), t).is_zero());
  CHECK(normal_form(V(2) * V(2), t).is_zero());
  // the quadratic fermion term of the last bracket survives in the table
  const Rule* mixed = t.rule(G::E(2, 1), G::E(1, 2));
  REQUIRE(mixed != nullptr);
  CHECK(!mixed->remainder.coefficient({G::Vb(1), G::V(1)}).is_zero());
}

TEST_CASE("literal readings break their relation") {
  const StructureTable corrected = build_spl21(P, R, S);
  for (auto reading : all_spl21_readings()) {
    CAPTURE(to_string(reading));
    const StructureTable literal = build_spl21(P, R, S, {reading});
    CHECK(!(literal == corrected));
    CHECK(parse_spl21_reading(to_string(reading)) == reading);
  }
  CHECK(!parse_spl21_reading("nonsense"));
}

TEST_CASE("bosonic truncation") {
  const StructureTable t = bosonic_truncation(build_spl21(P, R, S));
  CHECK(t.order().size() == 4);
  CHECK(t.nilpotents().empty());
  auto E = [](int i, int j) { return spl21_E(i, j, P, R, S); };
  const Scalar ratio = (S * S) / (P * P);
  CHECK(normal_form(quommutator(E(1, 2), E(2, 1), ratio) - (E(1, 1) - ratio * E(2, 2)), t).is_zero());
  // no r survives; p and s occur only through p^2 and s^2
  CHECK(t.params() == std::set<Param>{Param{"p"}, Param{"s"}});
  std::vector<std::vector<long>> exps;
  for (const auto& [pair, rule] : t.rules()) {
    std::vector<Scalar> scalars{rule.swap};
    for (const auto& [w, c] : rule.remainder.terms()) scalars.push_back(c);
    for (const auto& x : scalars) {
      REQUIRE(x.is_unit_monomial());
      const Monomial& m = x.numerator().leading().monomial;
      CHECK(m.exponent(Param{"p"}) % 2 == 0);
      CHECK(m.exponent(Param{"s"}) % 2 == 0);
      exps.push_back({m.exponent(Param{"p"}) / 2, m.exponent(Param{"s"}) / 2});
    }
  }
  CHECK(oracle::modular_rank(exps) == 2);
  const StructureTable spl = build_spl_n1(3, symbolic_pair_params(3));
  const StructureTable gl = bosonic_truncation(spl);
  for (const auto& [pair, rule] : gl.rules()) CHECK(*spl.rule(pair.first, pair.second) == rule);
}

TEST_CASE("effective parameter rank") {
  for (int n = 2; n <= 6; ++n) {
    CAPTURE(n);
    const std::size_t expected = static_cast<std::size_t>((n - 1) * (n - 2) / 2);
    CHECK(effective_parameter_rank(n) == expected);
    CHECK(oracle::modular_rank(oracle::even_bracket_exponents(n)) == expected);
  }
}

TEST_CASE("custom table round trip") {
  const StructureTable t = build_spl_n1(2, uniform_pair_params(2, 3));
  const auto doc = serialize_table(t);
  CHECK(load_custom_table(nlohmann::json::parse(doc.dump())) == t);
  const StructureTable sym = build_spl21(P, R, S);
  CHECK(load_custom_table(nlohmann::json::parse(serialize_table(sym).dump())) == sym);
}

TEST_CASE("custom table validation") {
  const auto base = nlohmann::json::parse(serialize_table(build_spl_n1(2, uniform_pair_params(2, 3))).dump());
  {
    auto doc = base;
    auto& rules = doc["rules"];
    for (auto it = rules.begin(); it != rules.end(); ++it) {
      if ((*it)["left"] == "V(1)" && (*it)["right"] == "Vb(1)") {
        rules.erase(it);
        break;
      }
    }
    CHECK_THROWS_WITH_AS(load_custom_table(doc), doctest::Contains("incomplete rule coverage"), TableError);
  }
  {
    auto doc = base;
    doc["rules"][0]["swap"] = "0";
    CHECK_THROWS_WITH_AS(load_custom_table(doc), doctest::Contains("zero swap coefficient"), TableError);
  }
  {
    auto doc = base;
    doc["rules"][0]["remainder"] = "V(2)*V(1)";
    CHECK_THROWS_WITH_AS(load_custom_table(doc), doctest::Contains("non-canonical"), TableError);
  }
  {
    auto doc = base;
    doc["rules"][1].erase("swap");
    CHECK_THROWS_WITH_AS(load_custom_table(doc), doctest::Contains("/rules/1/swap"), TableError);
  }
  {
    auto doc = base;
    doc["rules"][0]["swap"] = "k";
    CHECK_THROWS_WITH_AS(load_custom_table(doc), doctest::Contains("unknown parameter"), TableError);
  }
  {
    auto doc = base;
    doc["nilpotents"].push_back("E(1,1)");
    CHECK_THROWS_AS(load_custom_table(doc), TableError);
  }
}

TEST_CASE("scalar literals with monomial products") {
  const std::set<Param> params{Param::pair(1, 2)};
  CHECK(parse_scalar("q12^-1 * 3/2", params) == Scalar(Rational(3, 2)) / Scalar(Param::pair(1, 2)));
}
