#include "quomm/builders.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <tuple>

#include "quomm/matrix.hpp"
#include "quomm/normal_order.hpp"
#include "quomm/parser.hpp"

namespace quomm {

namespace {

std::pair<Generator, Scalar> single_letter(const Expression& e) {
  if (e.size() != 1 || e.terms().begin()->first.size() != 1) {
    throw std::logic_error("relation side is not a scaled generator");
  }
  return {e.terms().begin()->first.front(), e.terms().begin()->second};
}

/// Records A*B -/+ c*B*A = rhs (A, B scaled generators) as the rule for
/// whichever product is out of order.
void add_relation(StructureTable& t, const Expression& a, const Expression& b, BracketSign sign,
                  const Scalar& c, const Expression& rhs, const std::string& correction = {}) {
  const auto [ga, fa] = single_letter(a);
  const auto [gb, fb] = single_letter(b);
  // ga*gb - k*gb*ga = rhs / (fa*fb)
  const Scalar k = sign == BracketSign::commutator ? c : -c;
  if (k.is_zero()) throw TableError("zero bracket parameter for " + rule_id({ga, gb}));
  const Expression r = rhs * (Scalar(1) / (fa * fb));
  if (t.out_of_order(ga, gb)) {
    t.set_rule(ga, gb, Rule{k, r, correction, r});
  } else {
    const Scalar inv = Scalar(1) / k;
    t.set_rule(gb, ga, Rule{inv, r * (-inv), correction, r * (-inv)});
  }
}

std::set<Param> collect_params(const StructureTable& t) {
  std::set<Param> out;
  for (const auto& [pair, r] : t.rules()) {
    out.merge(r.swap.params());
    for (const auto& [w, c] : r.remainder.terms()) out.merge(c.params());
  }
  return out;
}

/// Brings every remainder to normal form, records parameters, validates.
void finalize(StructureTable& t) {
  std::vector<std::pair<GeneratorPair, Rule>> rules(t.rules().begin(), t.rules().end());
  for (auto& [pair, r] : rules) {
    r.remainder = normal_form(r.remainder, t);
    t.set_rule(pair.first, pair.second, r);
  }
  t.set_params(collect_params(t));
  t.validate();
}

void require_unit_monomial(const Scalar& x, const std::string& name) {
  if (x.is_zero()) throw TableError("zero parameter " + name);
  if (!x.is_unit_monomial()) throw TableError("parameter " + name + " is not a monomial");
}

int kdelta(int a, int b) { return a == b ? 1 : 0; }

}  // namespace

PairParams symbolic_pair_params(int n) {
  PairParams q;
  for (int a = 1; a <= n; ++a) {
    for (int b = a + 1; b <= n; ++b) q[{a, b}] = Scalar(Param::pair(a, b));
  }
  return q;
}

PairParams uniform_pair_params(int n, const Scalar& value) {
  PairParams q;
  for (int a = 1; a <= n; ++a) {
    for (int b = a + 1; b <= n; ++b) q[{a, b}] = value;
  }
  return q;
}

StructureTable build_spl_n1(int n, const PairParams& q, const SplOptions& options) {
  if (n < 2) throw TableError("spl(N,1) needs N >= 2");
  if (n > 9) throw TableError("spl(N,1) supports N <= 9");
  for (int a = 1; a <= n; ++a) {
    for (int b = a + 1; b <= n; ++b) {
      auto it = q.find({a, b});
      const std::string name = Param::pair(a, b).name;
      if (it == q.end()) throw TableError("missing parameter " + name);
      require_unit_monomial(it->second, name);
    }
  }
  auto Q = [&](int a, int b) -> Scalar {
    if (a == b) return Scalar(1);
    if (a < b) return q.at({a, b});
    return Scalar(1) / q.at({b, a});
  };
  using G = Generator;
  const auto comm = BracketSign::commutator;
  const auto anti = BracketSign::anticommutator;

  StructureTable t("spl(" + std::to_string(n) + ",1)", n, standard_order(n));
  for (int a = 1; a <= n; ++a) {
    t.add_nilpotent(G::V(a));
    t.add_nilpotent(G::Vb(a));
  }
  for (int a = 1; a <= n; ++a) {
    for (int b = 1; b <= n; ++b) {
      if (a != b) {
        add_relation(t, G::V(a), G::V(b), anti, Q(a, b), Expression());
        add_relation(t, G::Vb(a), G::Vb(b), anti, Q(a, b), Expression());
      }
      add_relation(t, G::V(a), G::Vb(b), anti, Q(b, a), G::E(a, b));
      for (int c = 1; c <= n; ++c) {
        const Expression ev = Scalar(kdelta(c, b)) * Expression(G::V(a)) -
                              Scalar(kdelta(a, b)) * Expression(G::V(c));
        add_relation(t, G::E(a, b), G::V(c), comm, Q(a, c) * Q(c, b), ev);

        const G lowered = options.unbarred_e_vb_remainder ? G::V(b) : G::Vb(b);
        const Expression evb = Scalar(kdelta(a, b)) * Expression(G::Vb(c)) -
                               Q(b, a) * Scalar(kdelta(a, c)) * Expression(lowered);
        const std::string label =
            (a == c && a != b && !options.unbarred_e_vb_remainder)
                ? "lowered anti-fermion index in the remainder read as raised"
                : "";
        add_relation(t, G::E(a, b), G::Vb(c), comm, Q(b, c) * Q(c, a), evb, label);
      }
    }
  }
  for (int a = 1; a <= n; ++a) {
    for (int b = 1; b <= n; ++b) {
      for (int c = 1; c <= n; ++c) {
        for (int d = 1; d <= n; ++d) {
          if (!t.out_of_order(G::E(a, b), G::E(c, d))) continue;
          const Expression rhs = Scalar(kdelta(b, c)) * Expression(G::E(a, d)) -
                                 Q(b, a) * Q(a, c) * Q(c, b) * Scalar(kdelta(a, d)) *
                                     Expression(G::E(c, b));
          add_relation(t, G::E(a, b), G::E(c, d), comm, Q(a, c) * Q(c, b) * Q(b, d) * Q(d, a),
                       rhs);
        }
      }
    }
  }
  finalize(t);
  return t;
}

const std::vector<Spl21Reading>& all_spl21_readings() {
  static const std::vector<Spl21Reading> all = {
      Spl21Reading::vbar_block_left, Spl21Reading::e11_e12_left,
      Spl21Reading::e21_vbar1_parameter, Spl21Reading::e21_e12_order};
  return all;
}

std::string to_string(Spl21Reading reading) {
  switch (reading) {
    case Spl21Reading::vbar_block_left:
      return "vbar-block-left";
    case Spl21Reading::e11_e12_left:
      return "e11-e12-left";
    case Spl21Reading::e21_vbar1_parameter:
      return "e21-vbar1-parameter";
    case Spl21Reading::e21_e12_order:
      return "e21-e12-order";
  }
  return {};
}

std::optional<Spl21Reading> parse_spl21_reading(const std::string& text) {
  for (auto r : all_spl21_readings()) {
    if (to_string(r) == text) return r;
  }
  return std::nullopt;
}

Expression spl21_E(int i, int j, const Scalar& p, const Scalar& r, const Scalar& s) {
  if (i == j) return Scalar(-1) * Expression(Generator::E(i, i));
  if (i == 2 && j == 1) return -(p * s / r) * Expression(Generator::E(1, 2));
  if (i == 1 && j == 2) return -(p * s * r) * Expression(Generator::E(2, 1));
  throw std::invalid_argument("spl(2,1) index out of range");
}

Expression spl21_V(int j) { return Expression(Generator::V(j)); }

Expression spl21_Vbar(int j) { return Scalar(-1) * Expression(Generator::Vb(j)); }

StructureTable build_spl21(const Scalar& p, const Scalar& r, const Scalar& s,
                           const std::set<Spl21Reading>& literal) {
  require_unit_monomial(p, "p");
  require_unit_monomial(r, "r");
  require_unit_monomial(s, "s");
  auto E = [&](int i, int j) { return spl21_E(i, j, p, r, s); };
  auto V = spl21_V;
  auto Vb = spl21_Vbar;
  auto lit = [&](Spl21Reading x) { return literal.count(x) != 0; };
  const auto comm = BracketSign::commutator;
  const auto anti = BracketSign::anticommutator;
  const Scalar one(1);
  const Scalar p2 = p * p;
  const Scalar s2 = s * s;
  const Expression zero;

  std::string id = "spl(2,1)_{p,r,s}";
  for (auto x : all_spl21_readings()) {
    if (lit(x)) id += " literal:" + to_string(x);
  }
  StructureTable t(id, 2, standard_order(2));
  for (int a = 1; a <= 2; ++a) {
    t.add_nilpotent(Generator::V(a));
    t.add_nilpotent(Generator::Vb(a));
  }

  add_relation(t, V(1), V(2), anti, p / (s * r), zero);
  add_relation(t, Vb(1), Vb(2), anti, s / (p * r), zero);
  add_relation(t, Vb(1), V(1), anti, one, E(1, 1));
  add_relation(t, Vb(2), V(2), anti, one, E(2, 2));
  add_relation(t, Vb(1), V(2), anti, p * s * r, E(1, 2));
  add_relation(t, Vb(2), V(1), anti, p * s / r, E(2, 1));

  add_relation(t, E(1, 1), V(1), comm, one, zero);
  add_relation(t, E(2, 2), V(1), comm, s2, V(1));
  add_relation(t, E(2, 1), V(1), comm, p * s / r, zero);
  add_relation(t, E(1, 2), V(1), comm, s * r / p, -(s * r / p) * V(2));
  add_relation(t, E(1, 1), V(2), comm, p2, V(2));
  add_relation(t, E(2, 2), V(2), comm, one, zero);
  add_relation(t, E(2, 1), V(2), comm, p / (s * r), -(p / (s * r)) * V(1));
  add_relation(t, E(1, 2), V(2), comm, p * s * r, zero);

  add_relation(t, E(1, 1), Vb(1), comm, one, zero);
  add_relation(t, E(2, 2), Vb(1), comm, one / s2, -(one / s2) * Vb(1));
  if (lit(Spl21Reading::e21_vbar1_parameter)) {
    add_relation(t, E(2, 1), Vb(1), comm, p * s / r, Vb(2));
  } else {
    add_relation(t, E(2, 1), Vb(1), comm, p * r / s, Vb(2),
                 "bracket parameter printed as ps/r, read as pr/s");
  }
  add_relation(t, E(1, 2), Vb(1), comm, one / (p * s * r), zero,
               "left generator printed as E^2_2, read as E^1_2");
  if (lit(Spl21Reading::vbar_block_left)) {
    add_relation(t, E(2, 2), Vb(1), comm, one / (p * s * r), zero);
  }
  add_relation(t, E(1, 1), Vb(2), comm, one / p2, -(one / p2) * Vb(2));
  add_relation(t, E(2, 2), Vb(2), comm, one, zero);
  add_relation(t, E(2, 1), Vb(2), comm, r / (p * s), zero);
  add_relation(t, E(1, 2), Vb(2), comm, s / (p * r), Vb(1));

  add_relation(t, E(1, 1), E(2, 2), comm, one, zero);
  add_relation(t, E(1, 1), E(2, 1), comm, one / p2, -(one / p2) * E(2, 1));
  add_relation(t, E(2, 2), E(2, 1), comm, s2, E(2, 1));
  add_relation(t, E(1, 1), E(1, 2), comm, p2, E(1, 2));
  add_relation(t, E(2, 2), E(1, 2), comm, one / s2, -(one / s2) * E(1, 2),
               "left generator printed as E^1_1, read as E^2_2");
  if (lit(Spl21Reading::e11_e12_left)) {
    add_relation(t, E(1, 1), E(1, 2), comm, one / s2, -(one / s2) * E(1, 2));
  }
  const Expression cartan_rhs = E(1, 1) - (s2 / p2) * E(2, 2) + (s2 - one) * (V(1) * Vb(1)) -
                             (s2 / p2) * (p2 - one) * (V(2) * Vb(2));
  if (lit(Spl21Reading::e21_e12_order)) {
    add_relation(t, E(2, 1), E(1, 2), comm, s2 / p2, cartan_rhs);
  } else {
    add_relation(t, E(1, 2), E(2, 1), comm, s2 / p2, cartan_rhs,
                 "bracket order printed as [E^2_1, E^1_2], read as [E^1_2, E^2_1]");
  }
  finalize(t);
  return t;
}

StructureTable build_osp22_q(const Param& p, const Param& alias) {
  StructureTable t = build_spl21(Scalar(p), Scalar(1), Scalar(1) / Scalar(p));
  t.set_id("osp(2,2)_" + alias.name);
  t.add_even_alias(alias, p);
  return t;
}

StructureTable classical_limit(const StructureTable& t) {
  ParamPoint ones;
  for (const auto& p : t.params()) ones[p] = 1;
  StructureTable out(t.id() + " classical", t.n(), t.order());
  for (const auto& g : t.nilpotents()) out.add_nilpotent(g);
  for (const auto& [pair, r] : t.rules()) {
    Rule nr{r.swap.specialize(ones),
            r.remainder.map_coefficients([&](const Scalar& c) { return c.specialize(ones); }),
            r.correction};
    out.set_rule(pair.first, pair.second, std::move(nr));
  }
  return out;
}

StructureTable bosonic_truncation(const StructureTable& t) {
  std::vector<Generator> order;
  for (const auto& g : t.order()) {
    if (!g.is_fermion()) order.push_back(g);
  }
  StructureTable out(t.id() + " bosonic", t.n(), order);
  for (const auto& [pair, r] : t.rules()) {
    if (pair.first.is_fermion() || pair.second.is_fermion()) continue;
    // fermion bilinears are dropped as written: reordering them first
    // would feed their E-terms back into the bosonic part
    const Expression written = r.as_written.value_or(r.remainder);
    Expression rem;
    for (const auto& [w, c] : written.terms()) {
      bool even = true;
      for (const auto& g : w) even = even && !g.is_fermion();
      if (even) rem.add_term(w, c);
    }
    out.set_rule(pair.first, pair.second, Rule{r.swap, rem, r.correction, rem});
  }
  finalize(out);
  return out;
}

StructureTable relabel(const StructureTable& t, const std::vector<int>& perm) {
  if (static_cast<int>(perm.size()) != t.n()) throw std::invalid_argument("relabel: wrong permutation size");
  auto map_gen = [&](const Generator& g) {
    Generator h = g;
    h.a = perm.at(g.a - 1);
    if (g.kind == GeneratorKind::E) h.b = perm.at(g.b - 1);
    return h;
  };
  auto map_expr = [&](const Expression& e) {
    Expression out;
    for (const auto& [w, c] : e.terms()) {
      Word v;
      for (const auto& g : w) v.push_back(map_gen(g));
      out.add_term(v, c);
    }
    return out;
  };
  std::vector<Generator> order;
  for (const auto& g : t.order()) order.push_back(map_gen(g));
  std::sort(order.begin(), order.end(), [](const Generator& x, const Generator& y) {
    // Standard order: Vb < E < V, indices ascending.
    auto key = [](const Generator& g) {
      const int k = g.kind == GeneratorKind::Vb ? 0 : g.kind == GeneratorKind::E ? 1 : 2;
      return std::tuple(k, g.a, g.b);
    };
    return key(x) < key(y);
  });
  StructureTable out(t.id() + " relabelled", t.n(), order);
  for (const auto& g : t.nilpotents()) out.add_nilpotent(map_gen(g));
  for (const auto& [pair, r] : t.rules()) {
    const Generator l = map_gen(pair.first);
    const Generator rt = map_gen(pair.second);
    const Expression rem = map_expr(r.remainder);
    if (out.out_of_order(l, rt)) {
      out.set_rule(l, rt, Rule{r.swap, rem, r.correction});
    } else {
      const Scalar inv = Scalar(1) / r.swap;
      out.set_rule(rt, l, Rule{inv, rem * (-inv), r.correction});
    }
  }
  finalize(out);
  return out;
}

std::vector<std::vector<Integer>> even_sector_exponents(int n) {
  const StructureTable t = build_spl_n1(n, symbolic_pair_params(n));
  std::vector<Param> basis;
  for (int a = 1; a <= n; ++a) {
    for (int b = a + 1; b <= n; ++b) basis.push_back(Param::pair(a, b));
  }
  auto vec = [&](const Scalar& x) {
    if (!x.is_unit_monomial()) throw std::logic_error("non-monomial structure constant");
    std::vector<Integer> v;
    for (const auto& p : basis) v.emplace_back(x.numerator().leading().monomial.exponent(p));
    return v;
  };
  std::vector<std::vector<Integer>> rows;
  for (const auto& [pair, r] : t.rules()) {
    if (pair.first.is_fermion() || pair.second.is_fermion()) continue;
    rows.push_back(vec(r.swap));
    for (const auto& [w, c] : r.remainder.terms()) rows.push_back(vec(c));
  }
  return rows;
}

std::size_t effective_parameter_rank(int n) { return integer_rank(even_sector_exponents(n)); }

nlohmann::ordered_json serialize_table(const StructureTable& t) {
  nlohmann::ordered_json j;
  j["N"] = t.n();
  j["params"] = nlohmann::ordered_json::array();
  for (const auto& p : t.params()) j["params"].push_back({{"name", p.name}});
  j["order"] = nlohmann::ordered_json::array();
  for (const auto& g : t.order()) j["order"].push_back(g.name());
  j["rules"] = nlohmann::ordered_json::array();
  for (const auto& [pair, r] : t.rules()) {
    j["rules"].push_back({{"left", pair.first.name()},
                          {"right", pair.second.name()},
                          {"swap", to_string(r.swap)},
                          {"remainder", to_string(r.remainder)}});
  }
  j["nilpotents"] = nlohmann::ordered_json::array();
  for (const auto& g : t.nilpotents()) j["nilpotents"].push_back(g.name());
  return j;
}

namespace {

[[noreturn]] void schema_error(const std::string& path, const std::string& what) {
  throw TableError("schema violation at " + path + ": " + what);
}

const nlohmann::json& member(const nlohmann::json& obj, const std::string& key,
                             const std::string& path) {
  if (!obj.is_object()) schema_error(path, "expected an object");
  auto it = obj.find(key);
  if (it == obj.end()) schema_error(path + "/" + key, "missing");
  return *it;
}

std::string text(const nlohmann::json& v, const std::string& path) {
  if (!v.is_string()) schema_error(path, "expected a string");
  return v.get<std::string>();
}

const nlohmann::json& array(const nlohmann::json& v, const std::string& path) {
  if (!v.is_array()) schema_error(path, "expected an array");
  return v;
}

Generator generator_at(const nlohmann::json& v, const std::string& path, int n) {
  Generator g;
  try {
    g = parse_generator(text(v, path));
  } catch (const std::invalid_argument& e) {
    schema_error(path, e.what());
  }
  if (g.a < 1 || g.a > n || (g.kind == GeneratorKind::E && (g.b < 1 || g.b > n))) {
    schema_error(path, "index out of range");
  }
  return g;
}

}  // namespace

StructureTable load_custom_table(const nlohmann::json& doc, const std::string& id) {
  const auto& nv = member(doc, "N", "");
  if (!nv.is_number_integer() || nv.get<long>() < 1 || nv.get<long>() > 9) {
    schema_error("/N", "expected an integer in 1..9");
  }
  const int n = nv.get<int>();

  std::set<Param> params;
  const auto& pv = array(member(doc, "params", ""), "/params");
  for (std::size_t i = 0; i < pv.size(); ++i) {
    const std::string path = "/params/" + std::to_string(i);
    const std::string name = text(member(pv[i], "name", path), path + "/name");
    if (name.empty() || !std::isalpha(static_cast<unsigned char>(name[0]))) {
      schema_error(path + "/name", "invalid parameter name");
    }
    params.insert(Param{name});
  }

  std::vector<Generator> order;
  const auto& ov = array(member(doc, "order", ""), "/order");
  for (std::size_t i = 0; i < ov.size(); ++i) {
    const Generator g = generator_at(ov[i], "/order/" + std::to_string(i), n);
    if (std::find(order.begin(), order.end(), g) != order.end()) {
      schema_error("/order/" + std::to_string(i), "duplicate generator " + g.name());
    }
    order.push_back(g);
  }
  StructureTable t(id, n, order);
  t.set_params(params);

  const auto& rv = array(member(doc, "rules", ""), "/rules");
  for (std::size_t i = 0; i < rv.size(); ++i) {
    const std::string path = "/rules/" + std::to_string(i);
    const Generator l = generator_at(member(rv[i], "left", path), path + "/left", n);
    const Generator r = generator_at(member(rv[i], "right", path), path + "/right", n);
    if (!t.contains(l) || !t.contains(r)) schema_error(path, "generator not in order");
    if (!t.out_of_order(l, r)) schema_error(path, "pair " + rule_id({l, r}) + " is already in canonical order");
    if (t.rule(l, r) != nullptr) schema_error(path, "duplicate rule " + rule_id({l, r}));
    Rule rule;
    try {
      rule.swap = parse_scalar(text(member(rv[i], "swap", path), path + "/swap"), params);
    } catch (const TableError&) {
      throw;
    } catch (const std::exception& e) {
      schema_error(path + "/swap", e.what());
    }
    try {
      rule.remainder = to_expression(
          parse_expression(text(member(rv[i], "remainder", path), path + "/remainder"), n), params);
    } catch (const TableError&) {
      throw;
    } catch (const std::exception& e) {
      schema_error(path + "/remainder", e.what());
    }
    t.set_rule(l, r, std::move(rule));
  }

  const auto& nilv = array(member(doc, "nilpotents", ""), "/nilpotents");
  for (std::size_t i = 0; i < nilv.size(); ++i) {
    const std::string path = "/nilpotents/" + std::to_string(i);
    const Generator g = generator_at(nilv[i], path, n);
    if (!t.contains(g)) schema_error(path, "generator not in order");
    if (!g.is_fermion()) schema_error(path, "nilpotent generator " + g.name() + " is not odd");
    t.add_nilpotent(g);
  }
  t.validate();
  return t;
}

StructureTable load_custom_table_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw TableError("cannot open " + path.string());
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw TableError(std::string("malformed document: ") + e.what());
  }
  return load_custom_table(doc, path.filename().string());
}

namespace {

template <typename F>
StructureTable map_scalars(const StructureTable& t, const std::string& id, F&& f) {
  StructureTable out(id, t.n(), t.order());
  for (const auto& g : t.nilpotents()) out.add_nilpotent(g);
  for (const auto& [pair, r] : t.rules()) {
    out.set_rule(pair.first, pair.second, Rule{f(r.swap), r.remainder.map_coefficients(f), r.correction});
  }
  out.set_params(collect_params(out));
  return out;
}

}  // namespace

StructureTable rebase_aliases(const StructureTable& t) {
  return map_scalars(t, t.id(), [&](const Scalar& x) {
    Scalar y = x;
    for (const auto& [alias, base] : t.even_aliases()) y = rebase_even(y, base, alias);
    return y;
  });
}

StructureTable specialize_table(const StructureTable& t, const ParamPoint& point) {
  StructureTable out =
      map_scalars(t, t.id(), [&](const Scalar& x) { return t.at_point(x, point); });
  for (const auto& [alias, base] : t.even_aliases()) {
    if (point.count(alias) == 0 && point.count(base) == 0) out.add_even_alias(alias, base);
  }
  for (const auto& [pair, r] : out.rules()) {
    if (r.swap.is_zero()) throw TableError("zero swap coefficient in rule " + rule_id(pair) + " at this point");
  }
  return out;
}

}  // namespace quomm

