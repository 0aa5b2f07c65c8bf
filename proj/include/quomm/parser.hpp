#pragma once

#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "quomm/expression.hpp"

namespace quomm {

/// Syntax or validation error with the byte offset into the parsed text.
class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& message, std::size_t offset);
  std::size_t offset() const { return offset_; }

 private:
  std::size_t offset_;
};

/// Syntax tree of the expression grammar
///
///   expr    := ['+'|'-'] term (('+'|'-') term)*
///   term    := factor (('*'|'/') factor | '(' expr ')')*
///   factor  := primary ['^' ['-'] integer]
///   primary := integer | parameter | E(i,j) | V(i) | Vb(i) | '(' expr ')'
///
/// Subtraction is a sum child wrapped in `negation`; "3/2" is a quotient of
/// two numbers.
struct ExprAst {
  enum class Kind { sum, product, quotient, power, negation, number, parameter, generator };

  Kind kind = Kind::number;
  std::vector<ExprAst> children;
  Integer number;
  std::string name;
  Generator generator;
  int exponent = 0;

  bool operator==(const ExprAst& o) const;
};

/// Parses `text`; generator indices must lie in 1..n.
ExprAst parse_expression(std::string_view text, int n);

/// Text that parses back to a structurally equal tree.
std::string render(const ExprAst& ast);

/// Evaluates the tree. Parameters outside `allowed` (when given) are
/// rejected; division and negative powers need scalar operands.
Expression to_expression(const ExprAst& ast,
                         const std::optional<std::set<Param>>& allowed = std::nullopt);

/// parse_expression + to_expression, requiring a scalar result.
Scalar parse_scalar(std::string_view text,
                    const std::optional<std::set<Param>>& allowed = std::nullopt);

}  // namespace quomm
