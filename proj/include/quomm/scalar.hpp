#pragma once

// Exact coefficient field: quotients of Laurent polynomials in named
// deformation parameters over the rationals.

#include <compare>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "quomm/rational.hpp"

namespace quomm {

/// A named deformation parameter ("q12", "p", "r", "s", "q").
struct Param {
  std::string name;

  /// The spl(N,1) parameter for the pair a<b, named "q{a}{b}".
  static Param pair(int a, int b);

  auto operator<=>(const Param&) const = default;
};

using ParamPoint = std::map<Param, Rational>;

/// Raised when a scalar is evaluated where its denominator vanishes.
class PoleError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Raised on division by the zero scalar.
class DivisionByZero : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Laurent monomial without coefficient: sorted (param, exponent) pairs,
/// exponents never zero.
class Monomial {
 public:
  Monomial() = default;
  explicit Monomial(const Param& p, int exponent = 1);

  const std::vector<std::pair<Param, int>>& exponents() const { return exps_; }
  bool is_one() const { return exps_.empty(); }
  int exponent(const Param& p) const;

  Monomial operator*(const Monomial& other) const;
  Monomial inverse() const;
  Monomial pow(int k) const;

  /// Lexicographic order: parameters by ascending name, larger exponent wins.
  /// A group order on exponent vectors, hence compatible with products.
  static int compare(const Monomial& a, const Monomial& b);
  bool operator==(const Monomial&) const = default;

 private:
  std::vector<std::pair<Param, int>> exps_;
  friend class LaurentPoly;
};

/// Term with nonzero coefficient.
struct LaurentMono {
  Rational coefficient;
  Monomial monomial;
};

/// Finite sum of LaurentMono, sorted by descending Monomial::compare with
/// distinct monomials and no zero coefficients.
class LaurentPoly {
 public:
  LaurentPoly() = default;
  LaurentPoly(const Rational& c);  // NOLINT(google-explicit-constructor)
  LaurentPoly(const Rational& c, const Monomial& m);

  static LaurentPoly from_terms(std::vector<LaurentMono> terms);

  const std::vector<LaurentMono>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  bool is_monomial() const { return terms_.size() == 1; }
  bool is_one() const;
  bool is_constant() const;
  const LaurentMono& leading() const { return terms_.front(); }

  std::set<Param> params() const;
  /// Per-parameter minimum exponent over all terms.
  Monomial min_exponents() const;

  LaurentPoly operator+(const LaurentPoly& o) const;
  LaurentPoly operator-(const LaurentPoly& o) const;
  LaurentPoly operator-() const;
  LaurentPoly operator*(const LaurentPoly& o) const;
  LaurentPoly operator*(const Rational& c) const;
  LaurentPoly operator*(const Monomial& m) const;

  /// Exact quotient if `divisor` divides `*this` in the Laurent ring.
  std::optional<LaurentPoly> divide_exact(const LaurentPoly& divisor) const;

  Rational evaluate(const ParamPoint& point) const;
  LaurentPoly specialize(const ParamPoint& point) const;

  bool operator==(const LaurentPoly& o) const;

 private:
  std::vector<LaurentMono> terms_;
};

/// Element of Q(params): numerator / denominator in canonical form.
///
/// Canonical form: a zero numerator forces denominator 1; a monomial
/// denominator is folded into the numerator; otherwise the denominator has no
/// monomial factor, has leading coefficient 1, and shares no factor with the
/// numerator that exact division or a univariate gcd can find. Equality is
/// decided by cross-multiplication, so it does not depend on the gcd step.
class Scalar {
 public:
  Scalar() = default;
  Scalar(const Rational& c);  // NOLINT(google-explicit-constructor)
  Scalar(long c);             // NOLINT(google-explicit-constructor)
  Scalar(const Param& p);     // NOLINT(google-explicit-constructor)
  Scalar(const LaurentPoly& p);  // NOLINT(google-explicit-constructor)
  Scalar(LaurentPoly num, LaurentPoly den);

  static Scalar monomial(const Rational& c, const Monomial& m) {
    return Scalar(LaurentPoly(c, m));
  }

  const LaurentPoly& numerator() const { return num_; }
  const LaurentPoly& denominator() const { return den_; }

  bool is_zero() const { return num_.is_zero(); }
  bool is_one() const { return den_.is_one() && num_.is_one(); }
  bool is_constant() const { return den_.is_one() && num_.is_constant(); }
  /// A single nonzero coefficient times a Laurent monomial.
  bool is_unit_monomial() const { return den_.is_one() && num_.is_monomial(); }
  bool is_laurent_polynomial() const { return den_.is_one(); }
  /// Value of a constant scalar; throws std::logic_error otherwise.
  Rational constant_value() const;

  std::set<Param> params() const;

  Scalar operator+(const Scalar& o) const;
  Scalar operator-(const Scalar& o) const;
  Scalar operator-() const;
  Scalar operator*(const Scalar& o) const;
  /// Throws DivisionByZero if `o` is zero.
  Scalar operator/(const Scalar& o) const;
  Scalar& operator+=(const Scalar& o) { return *this = *this + o; }
  Scalar& operator-=(const Scalar& o) { return *this = *this - o; }
  Scalar& operator*=(const Scalar& o) { return *this = *this * o; }
  Scalar& operator/=(const Scalar& o) { return *this = *this / o; }
  Scalar pow(int k) const;

  /// Cross-multiplication test; independent of how far canonicalization got.
  bool operator==(const Scalar& o) const;

  /// Exact value at a point covering every parameter; PoleError if the
  /// denominator vanishes there.
  Rational substitute(const ParamPoint& point) const;
  /// Substitutes only the parameters present in `point`.
  Scalar specialize(const ParamPoint& point) const;

 private:
  void canonicalize();

  LaurentPoly num_;
  LaurentPoly den_{Rational(1)};
};

/// The q-number [n]_{base^power} = (1 - base^(power n)) / (1 - base^power),
/// returned in its Laurent polynomial form (valid for every integer n).
Scalar q_number(long n, const Param& base, int power = 1);

/// [n]_x for an arbitrary scalar x, as the finite geometric sum
/// (negative n: -(x^-1 + ... + x^n)).
Scalar q_number(long n, const Scalar& x);

/// Rewrites base^(2k) as alias^k. Throws std::invalid_argument if an odd
/// power of `base` occurs.
Scalar rebase_even(const Scalar& x, const Param& base, const Param& alias);

std::string to_string(const Monomial& m);
std::string to_string(const LaurentPoly& p);
/// Literal syntax, e.g. "3/2*q12^-1", "p^2 - 1", "(1 - q)/(1 + q)".
std::string to_string(const Scalar& s);

}  // namespace quomm
