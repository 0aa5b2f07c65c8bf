#pragma once

#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"
#include "quomm/matrix.hpp"
#include "quomm/structure_table.hpp"

namespace quomm {

/// Components of P(m) ⊕ P(n): upper = P(m), lower = P(n).
enum class Block { upper, lower };

/// Untruncated element of Q[x] ⊕ Q[x]: (block, degree) -> coefficient.
using PolyPair = std::map<std::pair<Block, long>, Scalar>;

/// x^k in `from` -> coefficient(k) x^(k+shift) in `to`.
struct ShiftTerm {
  Block from = Block::upper;
  Block to = Block::upper;
  long shift = 0;
  std::function<Scalar(long)> coefficient;
};

/// Exact linear operator on Q[x] ⊕ Q[x] as a sum of shift terms; unlike a
/// matrix it sees images that leave a finite space.
class BlockOp {
 public:
  BlockOp() = default;
  static BlockOp term(Block from, Block to, long shift, std::function<Scalar(long)> coefficient);
  static BlockOp identity();

  const std::vector<ShiftTerm>& terms() const { return terms_; }

  BlockOp operator+(const BlockOp& o) const;
  BlockOp operator-(const BlockOp& o) const;
  BlockOp operator*(const Scalar& c) const;
  /// Composition: (*this)(o(v)).
  BlockOp operator*(const BlockOp& o) const;

  PolyPair apply(Block block, long degree) const;
  PolyPair apply(const PolyPair& v) const;

 private:
  std::vector<ShiftTerm> terms_;
};

/// P(upper_degree) ⊕ P(lower_degree), basis e_0..e_m then f_0..f_n.
struct GradedSpace {
  long upper_degree = 0;
  long lower_degree = 0;

  std::size_t dimension() const { return static_cast<std::size_t>(upper_degree + lower_degree + 2); }
  bool contains(Block b, long degree) const;
  std::size_t index(Block b, long degree) const;
  std::pair<Block, long> basis(std::size_t i) const;
  std::string label(std::size_t i) const;
};

/// Block shape an operator must respect: diagonal (even), off_diagonal,
/// upper_to_lower (V-type) or lower_to_upper (Vb-type).
enum class BlockPattern { diagonal, off_diagonal, upper_to_lower, lower_to_upper };
std::string to_string(BlockPattern p);
bool allows(BlockPattern p, Block from, Block to);

/// Matrix of `op` on `space`; images leaving the space are dropped (see
/// space_violations).
Matrix restrict(const BlockOp& op, const GradedSpace& space);
/// Basis vectors whose exact image leaves the space or the block pattern.
std::vector<std::string> space_violations(const BlockOp& op, const GradedSpace& space,
                                          BlockPattern pattern);
/// Same test for a matrix written on a larger space `ambient` that contains
/// `space` degree-wise (extra rows stand for overflow degrees).
std::vector<std::string> matrix_violations(const Matrix& m, const GradedSpace& ambient,
                                           const GradedSpace& space, BlockPattern pattern);

/// Jackson derivative on P(n): entry (k-1, k) = [k]_q.
Matrix jackson_matrix(long n, const Scalar& q);
/// Jackson derivative as an exact operator from one block to another.
BlockOp jackson_op(Block from, Block to, const Scalar& q);
/// Multiplication by x within or across blocks.
BlockOp x_op(Block from, Block to);
BlockOp inclusion_op(Block from, Block to);

struct RepOperator {
  std::string name;
  std::optional<Generator> generator;
  BlockPattern pattern = BlockPattern::diagonal;
  BlockOp action;
  Matrix matrix;
};

struct Representation {
  std::string algebra;
  GradedSpace space;
  Param base{"q"};
  /// Concrete deformation parameter; nullopt keeps `base` symbolic.
  std::optional<Rational> q;
  /// Table the representation was built against (null for osp(1,2)).
  std::shared_ptr<const StructureTable> table;
  /// alias -> base of table parameters that are squares of the rep base
  /// (q := p^2).
  std::map<Param, Param> even_aliases;
  std::vector<RepOperator> operators;

  const RepOperator* find(const Generator& g) const;
  const RepOperator& get(const std::string& name) const;
  Scalar q_scalar() const { return q ? Scalar(*q) : Scalar(base); }
  ParamPoint point() const;
  /// A coefficient of the algebra at the representation's parameter point.
  Scalar scalar(const Scalar& c) const;
};

enum class RepVariant { corrected, printed };

/// osp(2,2)_q on P(n-1) ⊕ P(n). The E matrices are the fermion bilinears
/// fixed by the table's V*Vb rules. `printed` scales Vb(2) to the literal
/// normalization (which fails verification).
Representation build_osp22_rep(long n, const std::optional<Rational>& q,
                               RepVariant variant = RepVariant::corrected);

/// osp(1,2)_q on P(n-1) ⊕ P(n): V_-, V_+, and H = {V_-,V_+}_q,
/// J_- = {V_-,V_-}_q, J_+ = {V_+,V_+}_q. V_+ and V_- answer to V(1) and
/// Vb(1) in expressions.
Representation build_osp12_rep(long n, const std::optional<Rational>& q);

Matrix evaluate_in_rep(const Expression& e, const Representation& rep);
/// Exact action of an expression (untruncated).
BlockOp action_of(const Expression& e, const Representation& rep);

struct RelationCheck {
  std::string rule;
  bool passed = false;
  Matrix residual;
};

struct RelationReport {
  std::string algebra_id;
  std::vector<RelationCheck> checks;
  bool passed() const;
};

/// Every rule L*R = swap R*L + remainder and every nilpotent square as an
/// exact matrix identity.
RelationReport verify_relations(const Representation& rep, const StructureTable& t);

struct InvarianceEntry {
  std::string name;
  std::vector<std::string> violations;
};

struct InvarianceReport {
  std::vector<InvarianceEntry> entries;
  bool passed() const;
};

InvarianceReport invariance_check(const Representation& rep);

/// -(1/2) [-n - 1/2]_{q^2} = -(1/2)(1 - q^(-2n-1))/(1 - q^2); for q^2 = 1
/// the polynomial form is used.
Scalar casimir_value(long n, const Scalar& q);
/// (1/2) q^(-2n-1) [2n+1]_q / (1 + q), equal to casimir_value off q^2 = 1.
Scalar casimir_polynomial_form(long n, const Scalar& q);

struct CasimirCheck {
  Scalar expected;
  Matrix residual;
  bool passed() const { return residual.is_zero(); }
};
/// Checks that a candidate Casimir expression acts as casimir_value * 1.
CasimirCheck check_casimir_operator(const Representation& rep, const Expression& candidate);

nlohmann::ordered_json to_json(const Representation& rep);
nlohmann::ordered_json to_json(const RelationReport& report);
nlohmann::ordered_json to_json(const InvarianceReport& report);

}  // namespace quomm
