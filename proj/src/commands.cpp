#include "quomm/commands.hpp"

#include <chrono>
#include <set>
#include <sstream>

#include "quomm/builders.hpp"
#include "quomm/normal_order.hpp"
#include "quomm/parser.hpp"
#include "quomm/qes.hpp"
#include "quomm/representation.hpp"

namespace quomm {

namespace {

using json = nlohmann::ordered_json;

Rational parse_value(const std::string& name, const std::string& text) {
  Rational v;
  try {
    v = parse_rational(text);
  } catch (const std::invalid_argument&) {
    throw UsageError("invalid rational literal '" + text + "' for " + name);
  }
  if (v == 0) throw UsageError("parameter " + name + " must be nonzero");
  return v;
}

/// Table plus the point it was specialized at.
struct Setup {
  StructureTable table;
  std::set<Param> symbolic_params;  // parameters before specialization
  ParamPoint point;
};

std::string mode_of(const Setup& s) {
  if (s.table.params().empty()) return "numeric";
  return s.point.empty() ? "symbolic" : "mixed";
}

ParamPoint read_point(const RunConfig& cfg, const std::set<std::string>& allowed) {
  ParamPoint point;
  for (const auto& [name, value] : cfg.params) {
    if (allowed.count(name) == 0) {
      throw UsageError("unknown parameter '" + name + "' for algebra " + cfg.algebra);
    }
    if (!point.emplace(Param{name}, parse_value(name, value)).second) {
      throw UsageError("parameter " + name + " assigned twice");
    }
  }
  return point;
}

Setup make_setup(const RunConfig& cfg) {
  if (cfg.symbolic && !cfg.params.empty()) {
    throw UsageError("--symbolic cannot be combined with --param");
  }
  if (!cfg.literal.empty() && cfg.algebra != "spl21") {
    throw UsageError("--literal applies to spl21 only");
  }
  if (cfg.N && cfg.algebra != "spl" && cfg.algebra != "custom" && *cfg.N != 2) {
    throw UsageError("algebra " + cfg.algebra + " has N = 2");
  }
  Setup s;
  std::set<std::string> allowed;
  if (cfg.algebra == "spl") {
    const int n = cfg.N.value_or(2);
    if (n < 2 || n > 9) throw UsageError("--N must lie in 2..9 for spl");
    s.table = build_spl_n1(n, symbolic_pair_params(n));
  } else if (cfg.algebra == "spl21") {
    std::set<Spl21Reading> literal;
    for (const auto& l : cfg.literal) {
      auto r = parse_spl21_reading(l);
      if (!r) throw UsageError("unknown literal reading '" + l + "'");
      literal.insert(*r);
    }
    s.table = build_spl21(Scalar(Param{"p"}), Scalar(Param{"r"}), Scalar(Param{"s"}), literal);
  } else if (cfg.algebra == "osp22") {
    s.table = rebase_aliases(build_osp22_q(Param{"p"}, Param{"q"}));
    allowed = {"p", "q"};
  } else if (cfg.algebra == "custom") {
    if (!cfg.table_path) throw UsageError("--algebra custom needs --table");
    s.table = load_custom_table_file(*cfg.table_path);
    if (cfg.N && *cfg.N != s.table.n()) throw UsageError("--N does not match the table");
  } else if (cfg.algebra == "osp12") {
    throw UsageError("osp12 has no structure table; use verify-rep or consistency");
  } else {
    throw UsageError("unknown algebra '" + cfg.algebra + "'");
  }
  if (allowed.empty()) {
    for (const auto& p : s.table.params()) allowed.insert(p.name);
  }
  s.symbolic_params = s.table.params();
  s.point = read_point(cfg, allowed);
  if (cfg.algebra == "osp22" && s.point.count(Param{"p"}) != 0) {
    if (s.point.count(Param{"q"}) != 0) throw UsageError("assign either p or q, not both");
    const Rational p = s.point.at(Param{"p"});
    s.point.erase(Param{"p"});
    s.point[Param{"q"}] = p * p;
  }
  if (!s.point.empty()) s.table = specialize_table(s.table, s.point);
  return s;
}

std::optional<Rational> read_q(const RunConfig& cfg) {
  std::optional<Rational> q;
  if (cfg.q) q = parse_value("q", *cfg.q);
  for (const auto& [name, value] : cfg.params) {
    if (name != "q") throw UsageError("unknown parameter '" + name + "'; only q applies");
    if (q) throw UsageError("q assigned twice");
    q = parse_value("q", value);
  }
  if (q && cfg.symbolic) throw UsageError("--symbolic cannot be combined with a value for q");
  return q;
}

long require_n(const RunConfig& cfg, long min) {
  if (!cfg.n) throw UsageError("--n is required");
  if (*cfg.n < min) throw UsageError("--n must be >= " + std::to_string(min));
  if (*cfg.n > 64) throw UsageError("--n must be <= 64");
  return *cfg.n;
}

std::string q_text(const std::optional<Rational>& q) { return q ? to_string(*q) : "symbolic"; }

json osp12_checks(long n, const std::optional<Rational>& q) {
  const Representation rep = build_osp12_rep(n, q);
  const Scalar qs = rep.q_scalar();
  const Matrix& vm = rep.get("V-").matrix;
  const Matrix& vp = rep.get("V+").matrix;
  const bool h = rep.get("H").matrix == vm * vp + vp * vm * qs;
  const bool jm = rep.get("J-").matrix == vm * vm * (Scalar(1) + qs);
  const bool jp = rep.get("J+").matrix == vp * vp * (Scalar(1) + qs);
  const InvarianceReport inv = invariance_check(rep);
  json j;
  j["n"] = n;
  j["dimension"] = rep.space.dimension();
  j["h_is_q_anticommutator"] = h;
  j["j_minus_is_1_plus_q_v_minus_squared"] = jm;
  j["j_plus_is_1_plus_q_v_plus_squared"] = jp;
  j["invariance"] = to_json(inv);
  j["passed"] = h && jm && jp && inv.passed();
  return j;
}

CommandResult osp12_report(const RunConfig& cfg) {
  const std::optional<Rational> q = read_q(cfg);
  std::vector<long> ns;
  if (cfg.n) {
    ns.push_back(require_n(cfg, 1));
  } else {
    for (long n = 1; n <= 6; ++n) ns.push_back(n);
  }
  CommandResult r;
  r.body["algebra"] = "osp(1,2)_q";
  r.body["q"] = q_text(q);
  r.body["representations"] = json::array();
  bool ok = true;
  for (long n : ns) {
    json c = osp12_checks(n, q);
    ok = ok && c["passed"].get<bool>();
    r.body["representations"].push_back(std::move(c));
  }
  r.body["passed"] = ok;
  r.exit_code = ok ? 0 : 1;
  return r;
}

CommandResult consistency(const RunConfig& cfg) {
  if (cfg.algebra == "osp12") return osp12_report(cfg);
  const Setup s = make_setup(cfg);
  const ConsistencyReport report = check_overlaps(s.table, cfg.workers);
  CommandResult r;
  r.body = to_json(report);
  r.body["mode"] = mode_of(s);
  r.body["parameter_point"] = json::object();
  for (const auto& [p, v] : s.point) r.body["parameter_point"][p.name] = to_string(v);
  r.exit_code = report.passed() ? 0 : 1;
  return r;
}

CommandResult verify_rep(const RunConfig& cfg) {
  if (cfg.algebra == "osp12") return osp12_report(cfg);
  if (cfg.algebra != "osp22") throw UsageError("verify-rep supports osp22 and osp12");
  const long n = require_n(cfg, 1);
  const std::optional<Rational> q = read_q(cfg);
  const Representation rep =
      build_osp22_rep(n, q, cfg.printed_normalization ? RepVariant::printed : RepVariant::corrected);
  const RelationReport rel = verify_relations(rep, *rep.table);
  const InvarianceReport inv = invariance_check(rep);
  CommandResult r;
  r.body["algebra"] = rep.algebra;
  r.body["n"] = n;
  r.body["q"] = q_text(q);
  r.body["normalization"] = cfg.printed_normalization ? "printed" : "corrected";
  r.body["space"] = {{"upper", "P(" + std::to_string(n - 1) + ")"},
                     {"lower", "P(" + std::to_string(n) + ")"},
                     {"dimension", rep.space.dimension()},
                     {"dimension_is_2n_plus_1", rep.space.dimension() == static_cast<std::size_t>(2 * n + 1)},
                     {"dimension_is_2n_minus_1", rep.space.dimension() == static_cast<std::size_t>(2 * n - 1)}};
  r.body["relations"] = to_json(rel);
  r.body["invariance"] = to_json(inv);
  bool ok = rel.passed() && inv.passed();
  if (q && *q == 1) {
    const RelationReport classical = verify_relations(rep, build_spl_n1(2, uniform_pair_params(2, 1)));
    r.body["classical_relations"] = to_json(classical);
    ok = ok && classical.passed();
  }
  if (cfg.export_representation) r.body["representation"] = to_json(rep);
  r.body["passed"] = ok;
  r.exit_code = ok ? 0 : 1;
  return r;
}

CommandResult normal_order(const RunConfig& cfg) {
  if (cfg.algebra == "osp12") throw UsageError("osp12 has no structure table to normal-order with");
  const Setup s = make_setup(cfg);
  const ExprAst ast = parse_expression(cfg.expression, s.table.n());
  Expression e = to_expression(ast, s.symbolic_params);
  if (!s.point.empty()) {
    e = e.map_coefficients([&](const Scalar& c) { return c.specialize(s.point); });
  }
  for (const auto& [w, c] : e.terms()) {
    for (const auto& g : w) {
      if (!s.table.contains(g)) throw UsageError("generator " + g.name() + " is not in the algebra");
    }
  }
  const NormalForm nf = normalize(e, s.table);
  CommandResult r;
  r.body["algebra"] = s.table.id();
  r.body["mode"] = mode_of(s);
  r.body["input"] = render(ast);
  r.body["normal_form"] = to_string(nf.expression);
  r.body["steps"] = nf.trace.steps.size();
  if (cfg.trace) {
    r.body["trace"] = json::array();
    for (const auto& st : nf.trace.steps) {
      r.body["trace"].push_back({{"position", st.position},
                                 {"rule", rule_id(st.rule)},
                                 {"before", to_string(st.before)},
                                 {"after", to_string(st.after)}});
    }
  }
  r.body["passed"] = true;
  return r;
}

CommandResult casimir(const RunConfig& cfg) {
  const long n = require_n(cfg, 0);
  const std::optional<Rational> q = read_q(cfg);
  const Scalar qs = q ? Scalar(*q) : Scalar(Param{"q"});
  CommandResult r;
  r.body["n"] = n;
  r.body["q"] = q_text(q);
  r.body["value"] = to_string(casimir_value(n, qs));
  if (!q) {
    r.body["value_at_q_1"] = to_string(casimir_polynomial_form(n, qs).substitute({{Param{"q"}, 1}}));
  }
  bool ok = true;
  if (cfg.casimir_operator) {
    if (n < 1) throw UsageError("the operator check needs n >= 1");
    const Representation rep = build_osp12_rep(n, q);
    const ExprAst ast = parse_expression(*cfg.casimir_operator, 1);
    const CasimirCheck check =
        check_casimir_operator(rep, to_expression(ast, std::set<Param>{Param{"q"}}));
    r.body["operator"] = {{"expression", render(ast)},
                          {"passed", check.passed()},
                          {"residual", to_json(check.residual)}};
    ok = check.passed();
  }
  r.body["passed"] = ok;
  r.exit_code = ok ? 0 : 1;
  return r;
}

CommandResult rank_verb(const RunConfig& cfg) {
  if (!cfg.N) throw UsageError("--N is required");
  const int n = *cfg.N;
  if (n < 2 || n > 9) throw UsageError("--N must lie in 2..9");
  const std::size_t rank = effective_parameter_rank(n);
  const std::size_t expected = static_cast<std::size_t>((n - 1) * (n - 2) / 2);
  CommandResult r;
  r.body["N"] = n;
  r.body["rank"] = rank;
  r.body["expected"] = expected;
  r.body["passed"] = rank == expected;
  r.exit_code = rank == expected ? 0 : 1;
  return r;
}

CommandResult qes_enumerate(const RunConfig& cfg) {
  const long n = require_n(cfg, 1);
  const std::optional<Rational> q = read_q(cfg);
  if (!cfg.degree) throw UsageError("--degree is required");
  if (*cfg.degree < 1 || *cfg.degree > 5) throw UsageError("--degree must lie in 1..5");
  const auto degree = static_cast<std::size_t>(*cfg.degree);
  const Representation rep = build_osp22_rep(n, q);
  const std::vector<QesOperator> monomials = enveloping_monomials(rep, degree);
  CommandResult r;
  r.body["algebra"] = rep.algebra;
  r.body["n"] = n;
  r.body["q"] = q_text(q);
  r.body["degree"] = degree;
  std::vector<std::size_t> per_degree(degree + 1, 0);
  json failures = json::array();
  std::vector<Matrix> linear;
  for (const auto& m : monomials) {
    const Word& w = m.word_expression.terms().begin()->first;
    ++per_degree[w.size()];
    if (w.size() <= 1) linear.push_back(m.matrix);
    if (!certify_qes(m)) failures.push_back(to_string(w));
  }
  r.body["monomials"] = monomials.size();
  r.body["monomials_per_degree"] = per_degree;
  r.body["linear_span_dimension_degree_le_1"] = span_dimension(linear);
  const QesOperator op = random_qes_operator(rep, degree, cfg.seed);
  json rnd;
  rnd["seed"] = cfg.seed;
  rnd["certified"] = certify_qes(op);
  if (!rnd["certified"].get<bool>()) failures.push_back("random operator");
  if (q) {
    json coeffs = json::array();
    for (const auto& c : characteristic_polynomial(op.matrix)) coeffs.push_back(to_string(c));
    rnd["characteristic_polynomial"] = coeffs;
  }
  r.body["random_operator"] = rnd;
  r.body["failures"] = failures;
  r.body["passed"] = failures.empty();
  r.exit_code = failures.empty() ? 0 : 1;
  return r;
}

void render_text(std::ostringstream& out, const json& v, int indent) {
  const std::string pad(static_cast<std::size_t>(indent) * 2, ' ');
  for (auto it = v.begin(); it != v.end(); ++it) {
    const json& x = *it;
    out << pad;
    if (v.is_object()) {
      out << it.key() << ":";
    } else if (x.is_structured()) {
      out << "-";
    }
    if (x.is_object() || (x.is_array() && !x.empty() && (x.front().is_object() || x.front().is_array()))) {
      out << "\n";
      render_text(out, x, indent + 1);
    } else if (x.is_string()) {
      out << (v.is_object() ? " " : "- ") << x.get<std::string>() << "\n";
    } else {
      out << (v.is_object() ? " " : "- ") << x.dump() << "\n";
    }
  }
}

}  // namespace

CommandResult run_command(const RunConfig& cfg) {
  const auto start = std::chrono::steady_clock::now();
  CommandResult r;
  try {
    if (cfg.format != "json" && cfg.format != "text") throw UsageError("--format must be json or text");
    if (cfg.verb == "consistency") {
      r = consistency(cfg);
    } else if (cfg.verb == "verify-rep") {
      r = verify_rep(cfg);
    } else if (cfg.verb == "normal-order") {
      r = normal_order(cfg);
    } else if (cfg.verb == "casimir") {
      r = casimir(cfg);
    } else if (cfg.verb == "rank") {
      r = rank_verb(cfg);
    } else if (cfg.verb == "qes-enumerate") {
      r = qes_enumerate(cfg);
    } else {
      throw UsageError("unknown verb '" + cfg.verb + "'");
    }
  } catch (const ParseError& e) {
    r = {};
    r.exit_code = 2;
    r.body = {{"error", e.what()}, {"offset", e.offset()}};
  } catch (const NonTermination& e) {
    r = {};
    r.exit_code = 1;
    r.body = {{"error", e.what()}, {"passed", false}};
  } catch (const UsageError& e) {
    r = {};
    r.exit_code = 2;
    r.body = {{"error", e.what()}};
  } catch (const TableError& e) {
    r = {};
    r.exit_code = 2;
    r.body = {{"error", e.what()}};
  } catch (const std::domain_error& e) {  // PoleError, DivisionByZero
    r = {};
    r.exit_code = 2;
    r.body = {{"error", e.what()}};
  } catch (const std::invalid_argument& e) {
    r = {};
    r.exit_code = 2;
    r.body = {{"error", e.what()}};
  }
  const auto ms =
      std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - start);
  r.meta = {{"tool", "quomm"}, {"verb", cfg.verb}, {"exit_code", r.exit_code}, {"elapsed_ms", ms.count()}};
  return r;
}

std::string render_result(const CommandResult& result, const std::string& format) {
  if (format == "text") {
    std::ostringstream out;
    render_text(out, result.body, 0);
    return out.str();
  }
  json doc;
  doc["body"] = result.body;
  doc["meta"] = result.meta;
  return doc.dump(2) + "\n";
}

}  // namespace quomm
