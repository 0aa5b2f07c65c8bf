#include "quomm/representation.hpp"

#include <stdexcept>

#include "quomm/builders.hpp"

namespace quomm {

BlockOp BlockOp::term(Block from, Block to, long shift, std::function<Scalar(long)> coefficient) {
  BlockOp op;
  op.terms_.push_back(ShiftTerm{from, to, shift, std::move(coefficient)});
  return op;
}

BlockOp BlockOp::identity() {
  auto one = [](long) { return Scalar(1); };
  return term(Block::upper, Block::upper, 0, one) + term(Block::lower, Block::lower, 0, one);
}

BlockOp BlockOp::operator+(const BlockOp& o) const {
  BlockOp out = *this;
  out.terms_.insert(out.terms_.end(), o.terms_.begin(), o.terms_.end());
  return out;
}

BlockOp BlockOp::operator-(const BlockOp& o) const { return *this + o * Scalar(-1); }

BlockOp BlockOp::operator*(const Scalar& c) const {
  BlockOp out;
  if (c.is_zero()) return out;
  for (const auto& t : terms_) {
    auto f = t.coefficient;
    out.terms_.push_back(ShiftTerm{t.from, t.to, t.shift, [f, c](long k) { return c * f(k); }});
  }
  return out;
}

BlockOp BlockOp::operator*(const BlockOp& o) const {
  BlockOp out;
  for (const auto& a : terms_) {
    for (const auto& b : o.terms_) {
      if (b.to != a.from) continue;
      auto fa = a.coefficient;
      auto fb = b.coefficient;
      const long sb = b.shift;
      out.terms_.push_back(ShiftTerm{b.from, a.to, b.shift + a.shift, [fa, fb, sb](long k) {
                                       const Scalar x = fb(k);
                                       return x.is_zero() ? x : fa(k + sb) * x;
                                     }});
    }
  }
  return out;
}

PolyPair BlockOp::apply(Block block, long degree) const {
  PolyPair out;
  for (const auto& t : terms_) {
    if (t.from != block) continue;
    const Scalar c = t.coefficient(degree);
    if (c.is_zero()) continue;
    Scalar& slot = out[{t.to, degree + t.shift}];
    slot += c;
    if (slot.is_zero()) out.erase({t.to, degree + t.shift});
  }
  return out;
}

PolyPair BlockOp::apply(const PolyPair& v) const {
  PolyPair out;
  for (const auto& [bk, c] : v) {
    for (const auto& [key, d] : apply(bk.first, bk.second)) {
      Scalar& slot = out[key];
      slot += c * d;
      if (slot.is_zero()) out.erase(key);
    }
  }
  return out;
}

bool GradedSpace::contains(Block b, long degree) const {
  return degree >= 0 && degree <= (b == Block::upper ? upper_degree : lower_degree);
}

std::size_t GradedSpace::index(Block b, long degree) const {
  if (!contains(b, degree)) throw std::out_of_range("degree outside the graded space");
  return static_cast<std::size_t>(b == Block::upper ? degree : upper_degree + 1 + degree);
}

std::pair<Block, long> GradedSpace::basis(std::size_t i) const {
  const long k = static_cast<long>(i);
  if (k <= upper_degree) return {Block::upper, k};
  if (k - upper_degree - 1 <= lower_degree) return {Block::lower, k - upper_degree - 1};
  throw std::out_of_range("basis index outside the graded space");
}

std::string GradedSpace::label(std::size_t i) const {
  const auto [b, k] = basis(i);
  return (b == Block::upper ? "e_" : "f_") + std::to_string(k);
}

std::string to_string(BlockPattern p) {
  switch (p) {
    case BlockPattern::diagonal:
      return "diagonal";
    case BlockPattern::off_diagonal:
      return "off_diagonal";
    case BlockPattern::upper_to_lower:
      return "upper_to_lower";
    case BlockPattern::lower_to_upper:
      return "lower_to_upper";
  }
  return {};
}

bool allows(BlockPattern p, Block from, Block to) {
  switch (p) {
    case BlockPattern::diagonal:
      return from == to;
    case BlockPattern::off_diagonal:
      return from != to;
    case BlockPattern::upper_to_lower:
      return from == Block::upper && to == Block::lower;
    case BlockPattern::lower_to_upper:
      return from == Block::lower && to == Block::upper;
  }
  return false;
}

Matrix restrict(const BlockOp& op, const GradedSpace& space) {
  const std::size_t dim = space.dimension();
  Matrix m(dim, dim);
  for (std::size_t col = 0; col < dim; ++col) {
    const auto [b, k] = space.basis(col);
    for (const auto& [key, c] : op.apply(b, k)) {
      if (space.contains(key.first, key.second)) m.add(space.index(key.first, key.second), col, c);
    }
  }
  return m;
}

namespace {

std::string block_label(Block b, long k) { return (b == Block::upper ? "e_" : "f_") + std::to_string(k); }

}  // namespace

std::vector<std::string> space_violations(const BlockOp& op, const GradedSpace& space,
                                          BlockPattern pattern) {
  std::vector<std::string> out;
  for (std::size_t col = 0; col < space.dimension(); ++col) {
    const auto [b, k] = space.basis(col);
    for (const auto& [key, c] : op.apply(b, k)) {
      const std::string where = space.label(col) + " -> " + block_label(key.first, key.second);
      if (!space.contains(key.first, key.second)) {
        out.push_back(where + ": degree outside the space");
      } else if (!allows(pattern, b, key.first)) {
        out.push_back(where + ": breaks the " + to_string(pattern) + " block pattern");
      }
    }
  }
  return out;
}

std::vector<std::string> matrix_violations(const Matrix& m, const GradedSpace& ambient,
                                           const GradedSpace& space, BlockPattern pattern) {
  if (m.rows() != ambient.dimension() || m.cols() != ambient.dimension()) {
    throw std::invalid_argument("matrix does not match the ambient space");
  }
  std::vector<std::string> out;
  for (const auto& [ij, v] : m.entries()) {
    const auto [fb, fk] = ambient.basis(ij.second);
    if (!space.contains(fb, fk)) continue;
    const auto [tb, tk] = ambient.basis(ij.first);
    const std::string where = block_label(fb, fk) + " -> " + block_label(tb, tk);
    if (!space.contains(tb, tk)) {
      out.push_back(where + ": degree outside the space");
    } else if (!allows(pattern, fb, tb)) {
      out.push_back(where + ": breaks the " + to_string(pattern) + " block pattern");
    }
  }
  return out;
}

Matrix jackson_matrix(long n, const Scalar& q) {
  if (n < 0) throw std::invalid_argument("jackson_matrix needs n >= 0");
  if (q.is_zero()) throw std::invalid_argument("jackson_matrix needs q != 0");
  Matrix m(static_cast<std::size_t>(n + 1), static_cast<std::size_t>(n + 1));
  for (long k = 1; k <= n; ++k) m.set(static_cast<std::size_t>(k - 1), static_cast<std::size_t>(k), q_number(k, q));
  return m;
}

BlockOp jackson_op(Block from, Block to, const Scalar& q) {
  return BlockOp::term(from, to, -1, [q](long k) { return q_number(k, q); });
}

BlockOp x_op(Block from, Block to) {
  return BlockOp::term(from, to, 1, [](long) { return Scalar(1); });
}

BlockOp inclusion_op(Block from, Block to) {
  return BlockOp::term(from, to, 0, [](long) { return Scalar(1); });
}

const RepOperator* Representation::find(const Generator& g) const {
  for (const auto& op : operators) {
    if (op.generator && *op.generator == g) return &op;
  }
  return nullptr;
}

const RepOperator& Representation::get(const std::string& name) const {
  for (const auto& op : operators) {
    if (op.name == name) return op;
  }
  throw std::out_of_range("no operator named " + name);
}

ParamPoint Representation::point() const {
  ParamPoint p;
  if (q) p[base] = *q;
  return p;
}

Scalar Representation::scalar(const Scalar& c) const {
  Scalar y = c;
  for (const auto& [alias, b] : even_aliases) {
    if (y.params().count(b) != 0) y = rebase_even(y, b, alias);
  }
  return q ? y.specialize(point()) : y;
}

namespace {

void add_operator(Representation& rep, std::string name, std::optional<Generator> g,
                  BlockPattern pattern, BlockOp action) {
  RepOperator op;
  op.name = std::move(name);
  op.generator = g;
  op.pattern = pattern;
  op.matrix = restrict(action, rep.space);
  op.action = std::move(action);
  rep.operators.push_back(std::move(op));
}

void check_degree(long n, const std::optional<Rational>& q) {
  if (n < 1) throw std::invalid_argument("representation degree n must be >= 1");
  if (q && *q == 0) throw std::invalid_argument("q must be nonzero");
}

}  // namespace

Representation build_osp22_rep(long n, const std::optional<Rational>& q, RepVariant variant) {
  check_degree(n, q);
  Representation rep;
  rep.algebra = "osp(2,2)_q";
  rep.space = GradedSpace{n - 1, n};
  rep.q = q;
  const Param p{"p"};
  rep.table = std::make_shared<const StructureTable>(build_osp22_q(p, rep.base));
  rep.even_aliases[rep.base] = p;
  const Scalar qs = rep.q_scalar();
  const Scalar qn = q_number(n, qs);
  const Scalar q_minus_n = Scalar(1) / qs.pow(static_cast<int>(n));

  using G = Generator;
  std::map<Generator, BlockOp> odd;
  odd[G::V(1)] = inclusion_op(Block::upper, Block::lower);
  odd[G::V(2)] = x_op(Block::upper, Block::lower);
  odd[G::Vb(1)] = BlockOp::term(Block::lower, Block::upper, 0, [qs, qn, q_minus_n](long k) {
    return -(q_minus_n * (q_number(k, qs) - qn));
  });
  const Scalar vb2_factor = variant == RepVariant::corrected ? qs : -(Scalar(1) / qs);
  odd[G::Vb(2)] = jackson_op(Block::lower, Block::upper, qs) * vb2_factor;

  for (const auto& g : rep.table->order()) {
    if (g.kind != GeneratorKind::E) continue;
    const Rule* r = rep.table->rule(G::V(g.a), G::Vb(g.b));
    if (r == nullptr) throw std::logic_error("missing fermion bilinear rule");
    const Scalar c = r->remainder.coefficient({g});
    if (r->remainder.size() != 1 || c.is_zero()) {
      throw std::logic_error("fermion bilinear rule does not isolate " + g.name());
    }
    const BlockOp& va = odd.at(G::V(g.a));
    const BlockOp& vb = odd.at(G::Vb(g.b));
    const BlockOp e = (va * vb - vb * va * rep.scalar(r->swap)) * (Scalar(1) / rep.scalar(c));
    add_operator(rep, g.name(), g, BlockPattern::diagonal, e);
  }
  for (const auto& [g, op] : odd) {
    add_operator(rep, g.name(), g,
                 g.kind == GeneratorKind::V ? BlockPattern::upper_to_lower : BlockPattern::lower_to_upper,
                 op);
  }
  return rep;
}

Representation build_osp12_rep(long n, const std::optional<Rational>& q) {
  check_degree(n, q);
  Representation rep;
  rep.algebra = "osp(1,2)_q";
  rep.space = GradedSpace{n - 1, n};
  rep.q = q;
  const Scalar qs = rep.q_scalar();
  const Scalar q2 = qs * qs;
  const Scalar qn2 = q_number(n, q2);
  const Scalar q_minus_2n = Scalar(1) / q2.pow(static_cast<int>(n));

  const BlockOp vminus = jackson_op(Block::lower, Block::upper, q2) + inclusion_op(Block::upper, Block::lower);
  const BlockOp vplus =
      BlockOp::term(Block::lower, Block::upper, 0,
                    [q2, qn2, q_minus_2n](long k) { return q_minus_2n * (q_number(k, q2) - qn2); }) +
      x_op(Block::upper, Block::lower);
  const Scalar one_plus_q = Scalar(1) + qs;
  add_operator(rep, "V-", Generator::Vb(1), BlockPattern::off_diagonal, vminus);
  add_operator(rep, "V+", Generator::V(1), BlockPattern::off_diagonal, vplus);
  add_operator(rep, "H", std::nullopt, BlockPattern::diagonal, vminus * vplus + vplus * vminus * qs);
  add_operator(rep, "J-", std::nullopt, BlockPattern::diagonal, vminus * vminus * one_plus_q);
  add_operator(rep, "J+", std::nullopt, BlockPattern::diagonal, vplus * vplus * one_plus_q);
  return rep;
}

namespace {

const RepOperator& operator_for(const Representation& rep, const Generator& g) {
  const RepOperator* op = rep.find(g);
  if (op == nullptr) throw std::invalid_argument("representation does not define " + g.name());
  return *op;
}

}  // namespace

Matrix evaluate_in_rep(const Expression& e, const Representation& rep) {
  const std::size_t dim = rep.space.dimension();
  Matrix out(dim, dim);
  for (const auto& [w, c] : e.terms()) {
    Matrix m = Matrix::identity(dim);
    for (const auto& g : w) m = m * operator_for(rep, g).matrix;
    out = out + m * rep.scalar(c);
  }
  return out;
}

BlockOp action_of(const Expression& e, const Representation& rep) {
  BlockOp out;
  for (const auto& [w, c] : e.terms()) {
    BlockOp op = BlockOp::identity();
    for (const auto& g : w) op = op * operator_for(rep, g).action;
    out = out + op * rep.scalar(c);
  }
  return out;
}

bool RelationReport::passed() const {
  for (const auto& c : checks) {
    if (!c.passed) return false;
  }
  return true;
}

RelationReport verify_relations(const Representation& rep, const StructureTable& t) {
  Representation local = rep;
  for (const auto& [alias, b] : t.even_aliases()) local.even_aliases[alias] = b;
  RelationReport report;
  report.algebra_id = t.id();
  for (const auto& [pair, r] : t.rules()) {
    const Matrix& l = operator_for(local, pair.first).matrix;
    const Matrix& rt = operator_for(local, pair.second).matrix;
    RelationCheck check;
    check.rule = rule_id(pair);
    check.residual = l * rt - rt * l * local.scalar(r.swap) - evaluate_in_rep(r.remainder, local);
    check.passed = check.residual.is_zero();
    report.checks.push_back(std::move(check));
  }
  for (const auto& g : t.nilpotents()) {
    const Matrix& m = operator_for(local, g).matrix;
    RelationCheck check;
    check.rule = rule_id({g, g});
    check.residual = m * m;
    check.passed = check.residual.is_zero();
    report.checks.push_back(std::move(check));
  }
  return report;
}

bool InvarianceReport::passed() const {
  for (const auto& e : entries) {
    if (!e.violations.empty()) return false;
  }
  return true;
}

InvarianceReport invariance_check(const Representation& rep) {
  InvarianceReport report;
  for (const auto& op : rep.operators) {
    report.entries.push_back({op.name, space_violations(op.action, rep.space, op.pattern)});
  }
  return report;
}

Scalar casimir_polynomial_form(long n, const Scalar& q) {
  return Scalar(Rational(1, 2)) * q_number(2 * n + 1, q) /
         (q.pow(static_cast<int>(2 * n + 1)) * (Scalar(1) + q));
}

Scalar casimir_value(long n, const Scalar& q) {
  if (q.is_zero()) throw std::invalid_argument("q must be nonzero");
  const Scalar q2 = q * q;
  if (q2.is_constant() && q2.constant_value() == 1) return casimir_polynomial_form(n, q);
  const Scalar num = Scalar(1) - Scalar(1) / q.pow(static_cast<int>(2 * n + 1));
  return Scalar(Rational(-1, 2)) * num / (Scalar(1) - q2);
}

CasimirCheck check_casimir_operator(const Representation& rep, const Expression& candidate) {
  CasimirCheck out;
  out.expected = casimir_value(rep.space.lower_degree, rep.q_scalar());
  out.residual = evaluate_in_rep(candidate, rep) -
                 Matrix::identity(rep.space.dimension()) * out.expected;
  return out;
}

nlohmann::ordered_json to_json(const Representation& rep) {
  nlohmann::ordered_json j;
  j["algebra"] = rep.algebra;
  j["n"] = rep.space.lower_degree;
  j["parameter_point"] = nlohmann::ordered_json::object();
  if (rep.q) {
    j["parameter_point"][rep.base.name] = to_string(*rep.q);
  } else {
    j["parameter_point"][rep.base.name] = "symbolic";
  }
  j["space"] = {{"upper", "P(" + std::to_string(rep.space.upper_degree) + ")"},
                {"lower", "P(" + std::to_string(rep.space.lower_degree) + ")"},
                {"dimension", rep.space.dimension()}};
  j["basis"] = nlohmann::ordered_json::array();
  for (std::size_t i = 0; i < rep.space.dimension(); ++i) j["basis"].push_back(rep.space.label(i));
  j["operators"] = nlohmann::ordered_json::array();
  for (const auto& op : rep.operators) {
    nlohmann::ordered_json o;
    o["name"] = op.name;
    if (op.generator) o["generator"] = op.generator->name();
    o["pattern"] = to_string(op.pattern);
    o["matrix"] = to_json(op.matrix);
    j["operators"].push_back(o);
  }
  return j;
}

nlohmann::ordered_json to_json(const RelationReport& report) {
  nlohmann::ordered_json j;
  j["algebra"] = report.algebra_id;
  j["relations_checked"] = report.checks.size();
  j["passed"] = report.passed();
  j["failures"] = nlohmann::ordered_json::array();
  for (const auto& c : report.checks) {
    if (!c.passed) j["failures"].push_back({{"rule", c.rule}, {"residual", to_json(c.residual)}});
  }
  return j;
}

nlohmann::ordered_json to_json(const InvarianceReport& report) {
  nlohmann::ordered_json j;
  j["passed"] = report.passed();
  j["operators"] = nlohmann::ordered_json::array();
  for (const auto& e : report.entries) {
    j["operators"].push_back({{"name", e.name}, {"violations", e.violations}});
  }
  return j;
}

}  // namespace quomm
