#include "quomm/expression.hpp"

#include <regex>
#include <stdexcept>

namespace quomm {

int Generator::charge() const {
  switch (kind) {
    case GeneratorKind::V:
      return 1;
    case GeneratorKind::Vb:
      return -1;
    case GeneratorKind::E:
      break;
  }
  return 0;
}

std::string Generator::name() const {
  switch (kind) {
    case GeneratorKind::E:
      return "E(" + std::to_string(a) + "," + std::to_string(b) + ")";
    case GeneratorKind::V:
      return "V(" + std::to_string(a) + ")";
    case GeneratorKind::Vb:
      return "Vb(" + std::to_string(a) + ")";
  }
  return {};
}

Generator parse_generator(const std::string& text) {
  static const std::regex e_re(R"(E\((\d+),(\d+)\))");
  static const std::regex v_re(R"((Vb|V)\((\d+)\))");
  std::smatch m;
  if (std::regex_match(text, m, e_re)) {
    return Generator::E(std::stoi(m[1]), std::stoi(m[2]));
  }
  if (std::regex_match(text, m, v_re)) {
    const int a = std::stoi(m[2]);
    return m[1] == "V" ? Generator::V(a) : Generator::Vb(a);
  }
  throw std::invalid_argument("unknown generator '" + text + "'");
}

std::string to_string(const Word& w) {
  if (w.empty()) return "1";
  std::string out;
  for (const auto& g : w) {
    if (!out.empty()) out += '*';
    out += g.name();
  }
  return out;
}

int charge(const Word& w) {
  int c = 0;
  for (const auto& g : w) c += g.charge();
  return c;
}

int parity(const Word& w) {
  int p = 0;
  for (const auto& g : w) p ^= g.is_fermion() ? 1 : 0;
  return p;
}

Expression::Expression(const Scalar& c) { add_term({}, c); }
Expression::Expression(const Generator& g) { add_term({g}, Scalar(1)); }
Expression::Expression(const Word& w, const Scalar& c) { add_term(w, c); }

std::size_t Expression::max_degree() const {
  std::size_t d = 0;
  for (const auto& [w, c] : terms_) d = std::max(d, w.size());
  return d;
}

Scalar Expression::coefficient(const Word& w) const {
  auto it = terms_.find(w);
  return it == terms_.end() ? Scalar() : it->second;
}

void Expression::add_term(const Word& w, const Scalar& c) {
  if (c.is_zero()) return;
  auto [it, inserted] = terms_.try_emplace(w, c);
  if (!inserted) {
    it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

Expression Expression::operator+(const Expression& o) const {
  Expression out = *this;
  out += o;
  return out;
}

Expression Expression::operator-(const Expression& o) const {
  Expression out = *this;
  out -= o;
  return out;
}

Expression Expression::operator-() const {
  return map_coefficients([](const Scalar& c) { return -c; });
}

Expression Expression::operator*(const Expression& o) const {
  Expression out;
  for (const auto& [w1, c1] : terms_) {
    for (const auto& [w2, c2] : o.terms_) {
      Word w = w1;
      w.insert(w.end(), w2.begin(), w2.end());
      out.add_term(w, c1 * c2);
    }
  }
  return out;
}

Expression Expression::operator*(const Scalar& c) const {
  if (c.is_zero()) return {};
  return map_coefficients([&](const Scalar& x) { return x * c; });
}

Expression& Expression::operator+=(const Expression& o) {
  for (const auto& [w, c] : o.terms_) add_term(w, c);
  return *this;
}

Expression& Expression::operator-=(const Expression& o) {
  for (const auto& [w, c] : o.terms_) add_term(w, -c);
  return *this;
}

bool Expression::operator==(const Expression& o) const {
  if (terms_.size() != o.terms_.size()) return false;
  auto i = terms_.begin();
  auto j = o.terms_.begin();
  for (; i != terms_.end(); ++i, ++j) {
    if (i->first != j->first || !(i->second == j->second)) return false;
  }
  return true;
}

Expression operator*(const Scalar& c, const Expression& e) { return e * c; }

std::string to_string(const Expression& e) {
  if (e.is_zero()) return "0";
  std::string out;
  bool first = true;
  for (const auto& [w, c] : e.terms()) {
    Scalar mag = c;
    bool neg = false;
    // Pull a leading minus out of single-term Laurent coefficients.
    if (c.is_laurent_polynomial() && c.numerator().is_monomial() &&
        c.numerator().leading().coefficient < 0) {
      neg = true;
      mag = -c;
    }
    if (first) {
      if (neg) out += "-";
    } else {
      out += neg ? " - " : " + ";
    }
    first = false;
    std::string coef = to_string(mag);
    const bool compound = !(mag.is_laurent_polynomial() && mag.numerator().is_monomial());
    if (compound) coef = "(" + coef + ")";
    if (w.empty()) {
      out += coef;
    } else if (mag.is_one()) {
      out += to_string(w);
    } else {
      out += coef + "*" + to_string(w);
    }
  }
  return out;
}

}  // namespace quomm
