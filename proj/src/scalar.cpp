#include "quomm/scalar.hpp"

#include <algorithm>
#include <sstream>

namespace quomm {

Param Param::pair(int a, int b) {
  if (a >= b) throw std::invalid_argument("pair parameter needs a < b");
  return Param{"q" + std::to_string(a) + std::to_string(b)};
}

// ---------------------------------------------------------------- Monomial

Monomial::Monomial(const Param& p, int exponent) {
  if (exponent != 0) exps_.emplace_back(p, exponent);
}

int Monomial::exponent(const Param& p) const {
  auto it = std::lower_bound(exps_.begin(), exps_.end(), p,
                             [](const auto& e, const Param& x) { return e.first < x; });
  return (it != exps_.end() && it->first == p) ? it->second : 0;
}

Monomial Monomial::operator*(const Monomial& other) const {
  Monomial out;
  out.exps_.reserve(exps_.size() + other.exps_.size());
  auto a = exps_.begin();
  auto b = other.exps_.begin();
  while (a != exps_.end() || b != other.exps_.end()) {
    if (b == other.exps_.end() || (a != exps_.end() && a->first < b->first)) {
      out.exps_.push_back(*a++);
    } else if (a == exps_.end() || b->first < a->first) {
      out.exps_.push_back(*b++);
    } else {
      const int e = a->second + b->second;
      if (e != 0) out.exps_.emplace_back(a->first, e);
      ++a;
      ++b;
    }
  }
  return out;
}

Monomial Monomial::inverse() const { return pow(-1); }

Monomial Monomial::pow(int k) const {
  Monomial out;
  if (k == 0) return out;
  out.exps_ = exps_;
  for (auto& e : out.exps_) e.second *= k;
  return out;
}

int Monomial::compare(const Monomial& a, const Monomial& b) {
  auto i = a.exps_.begin();
  auto j = b.exps_.begin();
  while (i != a.exps_.end() || j != b.exps_.end()) {
    int ea = 0;
    int eb = 0;
    if (j == b.exps_.end() || (i != a.exps_.end() && i->first < j->first)) {
      ea = (i++)->second;
    } else if (i == a.exps_.end() || j->first < i->first) {
      eb = (j++)->second;
    } else {
      ea = (i++)->second;
      eb = (j++)->second;
    }
    if (ea != eb) return ea > eb ? 1 : -1;
  }
  return 0;
}

// ------------------------------------------------------------- LaurentPoly

LaurentPoly::LaurentPoly(const Rational& c) {
  if (c != 0) terms_.push_back({c, Monomial{}});
}

LaurentPoly::LaurentPoly(const Rational& c, const Monomial& m) {
  if (c != 0) terms_.push_back({c, m});
}

LaurentPoly LaurentPoly::from_terms(std::vector<LaurentMono> terms) {
  std::sort(terms.begin(), terms.end(), [](const LaurentMono& x, const LaurentMono& y) {
    return Monomial::compare(x.monomial, y.monomial) > 0;
  });
  LaurentPoly out;
  out.terms_.reserve(terms.size());
  for (auto& t : terms) {
    if (!out.terms_.empty() && out.terms_.back().monomial == t.monomial) {
      out.terms_.back().coefficient += t.coefficient;
    } else {
      if (!out.terms_.empty() && out.terms_.back().coefficient == 0) out.terms_.pop_back();
      out.terms_.push_back(std::move(t));
    }
  }
  if (!out.terms_.empty() && out.terms_.back().coefficient == 0) out.terms_.pop_back();
  return out;
}

bool LaurentPoly::is_one() const {
  return terms_.size() == 1 && terms_[0].monomial.is_one() && terms_[0].coefficient == 1;
}

bool LaurentPoly::is_constant() const {
  return terms_.empty() || (terms_.size() == 1 && terms_[0].monomial.is_one());
}

std::set<Param> LaurentPoly::params() const {
  std::set<Param> out;
  for (const auto& t : terms_) {
    for (const auto& [p, e] : t.monomial.exponents()) out.insert(p);
  }
  return out;
}

Monomial LaurentPoly::min_exponents() const {
  std::map<Param, int> mins;
  for (const auto& p : params()) mins[p] = 0;
  for (const auto& t : terms_) {
    for (auto& [p, m] : mins) m = std::min(m, t.monomial.exponent(p));
  }
  Monomial out;
  for (const auto& [p, m] : mins) out = out * Monomial(p, m);
  return out;
}

namespace {

std::vector<LaurentMono> merge_terms(const std::vector<LaurentMono>& a,
                                     const std::vector<LaurentMono>& b, bool subtract) {
  std::vector<LaurentMono> out;
  out.reserve(a.size() + b.size());
  auto i = a.begin();
  auto j = b.begin();
  while (i != a.end() || j != b.end()) {
    const int c = (i == a.end())   ? -1
                  : (j == b.end()) ? 1
                                   : Monomial::compare(i->monomial, j->monomial);
    if (c > 0) {
      out.push_back(*i++);
    } else if (c < 0) {
      out.push_back(*j++);
      if (subtract) out.back().coefficient = -out.back().coefficient;
    } else {
      Rational v = subtract ? Rational(i->coefficient - j->coefficient)
                            : Rational(i->coefficient + j->coefficient);
      if (v != 0) out.push_back({std::move(v), i->monomial});
      ++i;
      ++j;
    }
  }
  return out;
}

}  // namespace

LaurentPoly LaurentPoly::operator+(const LaurentPoly& o) const {
  LaurentPoly out;
  out.terms_ = merge_terms(terms_, o.terms_, false);
  return out;
}

LaurentPoly LaurentPoly::operator-(const LaurentPoly& o) const {
  LaurentPoly out;
  out.terms_ = merge_terms(terms_, o.terms_, true);
  return out;
}

LaurentPoly LaurentPoly::operator-() const {
  LaurentPoly out = *this;
  for (auto& t : out.terms_) t.coefficient = -t.coefficient;
  return out;
}

LaurentPoly LaurentPoly::operator*(const LaurentPoly& o) const {
  if (is_zero() || o.is_zero()) return {};
  if (o.is_one()) return *this;
  if (is_one()) return o;
  std::vector<LaurentMono> prod;
  prod.reserve(terms_.size() * o.terms_.size());
  for (const auto& x : terms_) {
    for (const auto& y : o.terms_) {
      prod.push_back({x.coefficient * y.coefficient, x.monomial * y.monomial});
    }
  }
  return from_terms(std::move(prod));
}

LaurentPoly LaurentPoly::operator*(const Rational& c) const {
  if (c == 0) return {};
  LaurentPoly out = *this;
  for (auto& t : out.terms_) t.coefficient *= c;
  return out;
}

LaurentPoly LaurentPoly::operator*(const Monomial& m) const {
  if (m.is_one()) return *this;
  LaurentPoly out = *this;
  for (auto& t : out.terms_) t.monomial = t.monomial * m;
  return out;  // multiplication by a monomial preserves the order
}

std::optional<LaurentPoly> LaurentPoly::divide_exact(const LaurentPoly& divisor) const {
  if (divisor.is_zero()) throw DivisionByZero("division by zero polynomial");
  if (is_zero()) return LaurentPoly{};
  if (divisor.is_monomial()) {
    const auto& d = divisor.leading();
    return (*this * Rational(1 / d.coefficient)) * d.monomial.inverse();
  }
  // Shift both to genuine polynomials; the shifted divisor has no monomial
  // factor, so divisibility is unaffected.
  const Monomial h = min_exponents();
  const Monomial g = divisor.min_exponents();
  LaurentPoly rem = *this * h.inverse();
  const LaurentPoly b = divisor * g.inverse();
  const LaurentMono& lead = b.leading();
  std::vector<LaurentMono> quotient;
  while (!rem.is_zero()) {
    const LaurentMono& r = rem.leading();
    Monomial m = r.monomial * lead.monomial.inverse();
    for (const auto& [p, e] : m.exponents()) {
      if (e < 0) return std::nullopt;
    }
    LaurentMono t{r.coefficient / lead.coefficient, std::move(m)};
    rem = rem - b * LaurentPoly(t.coefficient, t.monomial);
    quotient.push_back(std::move(t));
  }
  return from_terms(std::move(quotient)) * (h * g.inverse());
}

namespace {

Rational eval_monomial(const Monomial& m, const ParamPoint& point, bool partial,
                       Monomial* rest) {
  Rational v = 1;
  for (const auto& [p, e] : m.exponents()) {
    auto it = point.find(p);
    if (it == point.end()) {
      if (!partial) throw std::invalid_argument("parameter '" + p.name + "' is not assigned");
      if (rest != nullptr) *rest = *rest * Monomial(p, e);
      continue;
    }
    if (it->second == 0 && e < 0) {
      throw PoleError("pole: parameter " + p.name + " = 0 appears with negative exponent");
    }
    v *= pow(it->second, e);
  }
  return v;
}

std::string describe_point(const ParamPoint& point) {
  std::string out;
  for (const auto& [p, v] : point) {
    if (!out.empty()) out += ", ";
    out += p.name + "=" + to_string(v);
  }
  return out;
}

}  // namespace

Rational LaurentPoly::evaluate(const ParamPoint& point) const {
  Rational sum = 0;
  for (const auto& t : terms_) sum += t.coefficient * eval_monomial(t.monomial, point, false, nullptr);
  return sum;
}

LaurentPoly LaurentPoly::specialize(const ParamPoint& point) const {
  std::vector<LaurentMono> out;
  out.reserve(terms_.size());
  for (const auto& t : terms_) {
    Monomial rest;
    Rational c = t.coefficient * eval_monomial(t.monomial, point, true, &rest);
    out.push_back({std::move(c), std::move(rest)});
  }
  return from_terms(std::move(out));
}

bool LaurentPoly::operator==(const LaurentPoly& o) const {
  if (terms_.size() != o.terms_.size()) return false;
  for (std::size_t i = 0; i < terms_.size(); ++i) {
    if (terms_[i].coefficient != o.terms_[i].coefficient ||
        !(terms_[i].monomial == o.terms_[i].monomial)) {
      return false;
    }
  }
  return true;
}

// ------------------------------------------------------- univariate helpers

namespace {

// Dense coefficients, index = exponent.
using Dense = std::vector<Rational>;

void trim(Dense& d) {
  while (!d.empty() && d.back() == 0) d.pop_back();
}

Dense to_dense(const LaurentPoly& p, const Param& x) {
  Dense d;
  for (const auto& t : p.terms()) {
    const int e = t.monomial.exponent(x);
    if (e < 0) throw std::logic_error("to_dense on a Laurent polynomial");
    if (static_cast<std::size_t>(e) >= d.size()) d.resize(e + 1);
    d[e] += t.coefficient;
  }
  trim(d);
  return d;
}

LaurentPoly from_dense(const Dense& d, const Param& x) {
  std::vector<LaurentMono> terms;
  for (std::size_t e = 0; e < d.size(); ++e) {
    if (d[e] != 0) terms.push_back({d[e], Monomial(x, static_cast<int>(e))});
  }
  return LaurentPoly::from_terms(std::move(terms));
}

Dense dense_rem(Dense a, const Dense& b) {
  while (a.size() >= b.size() && !a.empty()) {
    const Rational f = a.back() / b.back();
    const std::size_t shift = a.size() - b.size();
    for (std::size_t i = 0; i < b.size(); ++i) a[shift + i] -= f * b[i];
    trim(a);
  }
  return a;
}

Dense dense_gcd(Dense a, Dense b) {
  while (!b.empty()) {
    Dense r = dense_rem(a, b);
    a = std::move(b);
    b = std::move(r);
  }
  return a;
}

}  // namespace

// ------------------------------------------------------------------ Scalar

Scalar::Scalar(const Rational& c) : num_(c) {}
Scalar::Scalar(long c) : num_(Rational(c)) {}
Scalar::Scalar(const Param& p) : num_(Rational(1), Monomial(p)) {}
Scalar::Scalar(const LaurentPoly& p) : num_(p) {}

Scalar::Scalar(LaurentPoly num, LaurentPoly den) : num_(std::move(num)), den_(std::move(den)) {
  if (den_.is_zero()) throw DivisionByZero("scalar with zero denominator");
  canonicalize();
}

void Scalar::canonicalize() {
  if (den_.is_one()) return;
  if (num_.is_zero()) {
    den_ = LaurentPoly(Rational(1));
    return;
  }
  for (;;) {
    if (den_.is_monomial()) {
      const auto d = den_.leading();
      num_ = (num_ * Rational(1 / d.coefficient)) * d.monomial.inverse();
      den_ = LaurentPoly(Rational(1));
      return;
    }
    const Monomial g = den_.min_exponents();
    if (!g.is_one()) {
      den_ = den_ * g.inverse();
      num_ = num_ * g.inverse();
    }
    if (auto q = num_.divide_exact(den_)) {
      num_ = std::move(*q);
      den_ = LaurentPoly(Rational(1));
      return;
    }
    const auto den_params = den_.params();
    bool reduced = false;
    if (den_params.size() == 1) {
      const Param& x = *den_params.begin();
      const auto num_params = num_.params();
      if (num_params.empty() || (num_params.size() == 1 && *num_params.begin() == x)) {
        const Monomial h = num_.min_exponents();
        const Dense a = to_dense(num_ * h.inverse(), x);
        const Dense b = to_dense(den_, x);
        const Dense gcd = dense_gcd(a, b);
        if (gcd.size() > 1) {
          const LaurentPoly gp = from_dense(gcd, x);
          num_ = *(num_ * h.inverse()).divide_exact(gp) * h;
          den_ = *den_.divide_exact(gp);
          reduced = true;
        }
      }
    }
    if (!reduced) break;
  }
  const Rational lead = den_.leading().coefficient;
  if (lead != 1) {
    const Rational inv = 1 / lead;
    num_ = num_ * inv;
    den_ = den_ * inv;
  }
}

Rational Scalar::constant_value() const {
  if (!is_constant()) throw std::logic_error("scalar '" + to_string(*this) + "' is not constant");
  return num_.is_zero() ? Rational(0) : num_.leading().coefficient;
}

std::set<Param> Scalar::params() const {
  auto out = num_.params();
  for (const auto& p : den_.params()) out.insert(p);
  return out;
}

Scalar Scalar::operator+(const Scalar& o) const {
  if (den_ == o.den_) return Scalar(num_ + o.num_, den_);
  return Scalar(num_ * o.den_ + o.num_ * den_, den_ * o.den_);
}

Scalar Scalar::operator-(const Scalar& o) const {
  if (den_ == o.den_) return Scalar(num_ - o.num_, den_);
  return Scalar(num_ * o.den_ - o.num_ * den_, den_ * o.den_);
}

Scalar Scalar::operator-() const {
  Scalar out = *this;
  out.num_ = -out.num_;
  return out;
}

Scalar Scalar::operator*(const Scalar& o) const {
  if (den_.is_one() && o.den_.is_one()) return Scalar(num_ * o.num_);
  return Scalar(num_ * o.num_, den_ * o.den_);
}

Scalar Scalar::operator/(const Scalar& o) const {
  if (o.is_zero()) throw DivisionByZero("division by zero scalar");
  return Scalar(num_ * o.den_, den_ * o.num_);
}

Scalar Scalar::pow(int k) const {
  if (k < 0) return (Scalar(1) / *this).pow(-k);
  Scalar out(1);
  Scalar base = *this;
  while (k > 0) {
    if (k & 1) out *= base;
    k >>= 1;
    if (k > 0) base *= base;
  }
  return out;
}

bool Scalar::operator==(const Scalar& o) const {
  if (den_.is_one() && o.den_.is_one()) return num_ == o.num_;
  return num_ * o.den_ == o.num_ * den_;
}

Rational Scalar::substitute(const ParamPoint& point) const {
  const Rational d = den_.evaluate(point);
  if (d == 0) throw PoleError("denominator vanishes at " + describe_point(point));
  return num_.evaluate(point) / d;
}

Scalar Scalar::specialize(const ParamPoint& point) const {
  LaurentPoly d = den_.specialize(point);
  if (d.is_zero()) throw PoleError("denominator vanishes at " + describe_point(point));
  return Scalar(num_.specialize(point), std::move(d));
}

Scalar q_number(long n, const Param& base, int power) {
  if (power == 0) throw std::invalid_argument("q_number needs a nonzero power");
  std::vector<LaurentMono> terms;
  if (n >= 0) {
    for (long k = 0; k < n; ++k) {
      terms.push_back({Rational(1), Monomial(base, static_cast<int>(power * k))});
    }
  } else {
    for (long j = 1; j <= -n; ++j) {
      terms.push_back({Rational(-1), Monomial(base, static_cast<int>(-power * j))});
    }
  }
  return Scalar(LaurentPoly::from_terms(std::move(terms)));
}

Scalar q_number(long n, const Scalar& x) {
  Scalar sum;
  if (n >= 0) {
    Scalar xk(1);
    for (long k = 0; k < n; ++k) {
      sum += xk;
      xk *= x;
    }
  } else {
    const Scalar inv = Scalar(1) / x;
    Scalar xk = inv;
    for (long j = 1; j <= -n; ++j) {
      sum -= xk;
      xk *= inv;
    }
  }
  return sum;
}

namespace {

LaurentPoly rebase_poly(const LaurentPoly& p, const Param& base, const Param& alias) {
  std::vector<LaurentMono> terms;
  for (const auto& t : p.terms()) {
    Monomial m;
    for (const auto& [q, e] : t.monomial.exponents()) {
      if (q == base) {
        if (e % 2 != 0) {
          throw std::invalid_argument("odd power of " + base.name + " cannot be rebased onto " +
                                      alias.name);
        }
        m = m * Monomial(alias, e / 2);
      } else {
        m = m * Monomial(q, e);
      }
    }
    terms.push_back({t.coefficient, std::move(m)});
  }
  return LaurentPoly::from_terms(std::move(terms));
}

}  // namespace

Scalar rebase_even(const Scalar& x, const Param& base, const Param& alias) {
  return Scalar(rebase_poly(x.numerator(), base, alias), rebase_poly(x.denominator(), base, alias));
}

// --------------------------------------------------------------- printing

std::string to_string(const Monomial& m) {
  std::string out;
  for (const auto& [p, e] : m.exponents()) {
    if (!out.empty()) out += '*';
    out += p.name;
    if (e != 1) out += '^' + std::to_string(e);
  }
  return out.empty() ? "1" : out;
}

std::string to_string(const LaurentPoly& p) {
  if (p.is_zero()) return "0";
  std::string out;
  bool first = true;
  for (const auto& t : p.terms()) {
    const bool neg = t.coefficient < 0;
    if (first) {
      if (neg) out += '-';
    } else {
      out += neg ? " - " : " + ";
    }
    first = false;
    const Rational mag = neg ? Rational(-t.coefficient) : t.coefficient;
    if (t.monomial.is_one()) {
      out += to_string(mag);
    } else if (mag == 1) {
      out += to_string(t.monomial);
    } else {
      out += to_string(mag) + '*' + to_string(t.monomial);
    }
  }
  return out;
}

std::string to_string(const Scalar& s) {
  if (s.denominator().is_one()) return to_string(s.numerator());
  return '(' + to_string(s.numerator()) + ")/(" + to_string(s.denominator()) + ')';
}

}  // namespace quomm
