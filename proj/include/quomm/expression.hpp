#pragma once

#include <compare>
#include <map>
#include <string>
#include <vector>

#include "quomm/scalar.hpp"

namespace quomm {

enum class GeneratorKind { E, V, Vb };

/// E(a,b) is the even generator E_a^b; V(a) and Vb(a) are the odd
/// generators V_a and V̄^a. Indices are 1-based.
struct Generator {
  GeneratorKind kind = GeneratorKind::E;
  int a = 1;
  int b = 0;  // only meaningful for E

  static Generator E(int a, int b) { return {GeneratorKind::E, a, b}; }
  static Generator V(int a) { return {GeneratorKind::V, a, 0}; }
  static Generator Vb(int a) { return {GeneratorKind::Vb, a, 0}; }

  bool is_fermion() const { return kind != GeneratorKind::E; }
  /// +1 for V, -1 for Vb, 0 for E.
  int charge() const;
  std::string name() const;

  auto operator<=>(const Generator&) const = default;
};

/// Parses "E(a,b)", "V(a)" or "Vb(a)" (whitespace-free); throws
/// std::invalid_argument otherwise.
Generator parse_generator(const std::string& text);

using Word = std::vector<Generator>;

std::string to_string(const Word& w);
int charge(const Word& w);
/// Number of odd letters mod 2.
int parity(const Word& w);

/// Finite linear combination of words. Zero coefficients are never stored.
class Expression {
 public:
  Expression() = default;
  /// Scalar multiple of the empty word.
  Expression(const Scalar& c);  // NOLINT(google-explicit-constructor)
  Expression(const Generator& g);  // NOLINT(google-explicit-constructor)
  Expression(const Word& w, const Scalar& c = Scalar(1));

  const std::map<Word, Scalar>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }
  std::size_t max_degree() const;
  /// Coefficient of `w` (zero if absent).
  Scalar coefficient(const Word& w) const;

  void add_term(const Word& w, const Scalar& c);

  Expression operator+(const Expression& o) const;
  Expression operator-(const Expression& o) const;
  Expression operator-() const;
  /// Concatenation product, extended bilinearly.
  Expression operator*(const Expression& o) const;
  Expression operator*(const Scalar& c) const;
  Expression& operator+=(const Expression& o);
  Expression& operator-=(const Expression& o);

  /// Structural equality with Scalar equality on coefficients.
  bool operator==(const Expression& o) const;

  template <typename F>
  Expression map_coefficients(F&& f) const {
    Expression out;
    for (const auto& [w, c] : terms_) out.add_term(w, f(c));
    return out;
  }

 private:
  std::map<Word, Scalar> terms_;
};

Expression operator*(const Scalar& c, const Expression& e);

/// Rendering in the command-line expression grammar, e.g.
/// "E(1,1) - (p^2 - 1)*V(2)*Vb(2)". The zero expression renders as "0".
std::string to_string(const Expression& e);

}  // namespace quomm
