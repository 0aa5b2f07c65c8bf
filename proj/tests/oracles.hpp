#pragma once

// Reference computations written independently of the library internals.

#include <algorithm>
#include <cstdint>
#include <random>
#include <vector>

#include "quomm/structure_table.hpp"

namespace oracle {

using quomm::Expression;
using quomm::Generator;
using quomm::Rational;
using quomm::Scalar;

inline Rational random_rational(std::mt19937_64& rng, long bound = 9) {
  std::uniform_int_distribution<long> num(-bound, bound);
  std::uniform_int_distribution<long> den(1, bound);
  long n = 0;
  while (n == 0) n = num(rng);
  Rational r(n, den(rng));
  r.canonicalize();
  return r;
}

/// Nonzero rational away from +-1, so q-deformations stay generic.
inline Rational generic_rational(std::mt19937_64& rng) {
  for (;;) {
    Rational r = random_rational(rng, 11);
    if (r != 1 && r != -1) return r;
  }
}

inline int delta(int a, int b) { return a == b ? 1 : 0; }

/// Undeformed graded bracket [X, Y} of spl(N,1) generators.
inline Expression classical_bracket(const Generator& x, const Generator& y) {
  using K = quomm::GeneratorKind;
  auto E = [](int a, int b) { return Expression(Generator::E(a, b)); };
  auto V = [](int a) { return Expression(Generator::V(a)); };
  auto Vb = [](int a) { return Expression(Generator::Vb(a)); };
  auto s = [](int k) { return Scalar(static_cast<long>(k)); };
  if (x.kind == K::V && y.kind == K::V) return {};
  if (x.kind == K::Vb && y.kind == K::Vb) return {};
  if (x.kind == K::V && y.kind == K::Vb) return E(x.a, y.a);
  if (x.kind == K::Vb && y.kind == K::V) return E(y.a, x.a);
  if (x.kind == K::E && y.kind == K::V) {
    const int a = x.a, b = x.b, c = y.a;
    return s(delta(c, b)) * V(a) - s(delta(a, b)) * V(c);
  }
  if (x.kind == K::E && y.kind == K::Vb) {
    const int a = x.a, b = x.b, c = y.a;
    return s(delta(a, b)) * Vb(c) - s(delta(a, c)) * Vb(b);
  }
  if (x.kind == K::E && y.kind == K::E) {
    const int a = x.a, b = x.b, c = y.a, d = y.b;
    return s(delta(c, b)) * E(a, d) - s(delta(a, d)) * E(c, b);
  }
  return -classical_bracket(y, x);  // even-odd brackets are antisymmetric
}

/// Classical spl(N,1) table assembled directly from the graded brackets:
/// XY = (-1)^{|X||Y|} YX + [X, Y}.
inline quomm::StructureTable classical_table(int n) {
  quomm::StructureTable t("classical oracle", n, quomm::standard_order(n));
  for (int a = 1; a <= n; ++a) {
    t.add_nilpotent(Generator::V(a));
    t.add_nilpotent(Generator::Vb(a));
  }
  const auto& order = t.order();
  for (std::size_t i = 0; i < order.size(); ++i) {
    for (std::size_t j = 0; j < i; ++j) {
      const Generator& x = order[i];
      const Generator& y = order[j];
      const long sign = x.is_fermion() && y.is_fermion() ? -1 : 1;
      t.set_rule(x, y, quomm::Rule{Scalar(sign), classical_bracket(x, y), {}});
    }
  }
  return t;
}

/// Rank over GF(p) of an integer matrix.
inline std::size_t modular_rank(std::vector<std::vector<long>> a, long p = 1000000007L) {
  std::size_t r = 0;
  if (a.empty()) return 0;
  const std::size_t cols = a.front().size();
  auto mod = [p](long x) { return ((x % p) + p) % p; };
  auto inv = [&](long x) {
    long result = 1, base = mod(x), e = p - 2;
    while (e > 0) {
      if (e & 1) result = static_cast<long>((__int128)result * base % p);
      base = static_cast<long>((__int128)base * base % p);
      e >>= 1;
    }
    return result;
  };
  for (auto& row : a) {
    for (auto& v : row) v = mod(v);
  }
  for (std::size_t c = 0; c < cols && r < a.size(); ++c) {
    std::size_t piv = r;
    while (piv < a.size() && a[piv][c] == 0) ++piv;
    if (piv == a.size()) continue;
    std::swap(a[r], a[piv]);
    const long ip = inv(a[r][c]);
    for (std::size_t i = 0; i < a.size(); ++i) {
      if (i == r || a[i][c] == 0) continue;
      const long f = static_cast<long>((__int128)a[i][c] * ip % p);
      for (std::size_t k = c; k < cols; ++k) {
        a[i][k] = mod(a[i][k] - static_cast<long>((__int128)f * a[r][k] % p));
      }
    }
    ++r;
  }
  return r;
}

/// Exponent vectors, over q_ab (a<b, lexicographic), of the deformed
/// even-even brackets [E_a^b, E_c^d]_{q_ac q_cb q_bd q_da} =
/// d_cb E_a^d - q_ba q_ac q_cb d_ad E_c^b, with q_ba = 1/q_ab, q_aa = 1.
inline std::vector<std::vector<long>> even_bracket_exponents(int n) {
  std::vector<std::pair<int, int>> basis;
  for (int a = 1; a <= n; ++a) {
    for (int b = a + 1; b <= n; ++b) basis.emplace_back(a, b);
  }
  auto unit = [&](int a, int b) {
    std::vector<long> v(basis.size(), 0);
    if (a == b) return v;
    const int lo = std::min(a, b), hi = std::max(a, b);
    for (std::size_t i = 0; i < basis.size(); ++i) {
      if (basis[i] == std::pair(lo, hi)) v[i] = a < b ? 1 : -1;
    }
    return v;
  };
  auto sum = [](std::vector<std::vector<long>> parts) {
    std::vector<long> out(parts.front().size(), 0);
    for (const auto& p : parts) {
      for (std::size_t i = 0; i < p.size(); ++i) out[i] += p[i];
    }
    return out;
  };
  std::vector<std::vector<long>> rows;
  for (int a = 1; a <= n; ++a) {
    for (int b = 1; b <= n; ++b) {
      for (int c = 1; c <= n; ++c) {
        for (int d = 1; d <= n; ++d) {
          if (a == c && b == d) continue;
          rows.push_back(sum({unit(a, c), unit(c, b), unit(b, d), unit(d, a)}));
          if (a == d) rows.push_back(sum({unit(b, a), unit(a, c), unit(c, b)}));
        }
      }
    }
  }
  if (rows.empty()) rows.push_back(std::vector<long>(basis.size(), 0));
  return rows;
}

/// Dense univariate polynomial arithmetic over Q (coefficient k of x^k).
using Poly = std::vector<Rational>;

inline Poly trim(Poly p) {
  while (!p.empty() && p.back() == 0) p.pop_back();
  return p;
}

inline Poly multiply(const Poly& a, const Poly& b) {
  if (a.empty() || b.empty()) return {};
  Poly out(a.size() + b.size() - 1, Rational(0));
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (std::size_t j = 0; j < b.size(); ++j) out[i + j] += a[i] * b[j];
  }
  return trim(out);
}

inline Poly add(const Poly& a, const Poly& b) {
  Poly out(std::max(a.size(), b.size()), Rational(0));
  for (std::size_t i = 0; i < a.size(); ++i) out[i] += a[i];
  for (std::size_t i = 0; i < b.size(); ++i) out[i] += b[i];
  return trim(out);
}

/// f(qx).
inline Poly dilate(const Poly& f, const Rational& q) {
  Poly out = f;
  Rational qk = 1;
  for (auto& c : out) {
    c *= qk;
    qk *= q;
  }
  return out;
}

/// (f(x) - f(qx)) / ((1 - q) x) by explicit division of the difference.
inline Poly difference_quotient(const Poly& f, const Rational& q) {
  Poly diff = f;
  const Poly fq = dilate(f, q);
  for (std::size_t i = 0; i < diff.size(); ++i) diff[i] -= fq[i];
  diff = trim(diff);
  if (diff.empty()) return {};
  // the constant term of f(x) - f(qx) is zero, so division by x is exact
  Poly out(diff.begin() + 1, diff.end());
  for (auto& c : out) c /= (1 - q);
  return trim(out);
}

/// Long division by a monic-leading divisor; returns {quotient, remainder}.
inline std::pair<Poly, Poly> divide(Poly num, const Poly& den) {
  Poly q(num.size() >= den.size() ? num.size() - den.size() + 1 : 0, Rational(0));
  num = trim(num);
  while (num.size() >= den.size() && !num.empty()) {
    const std::size_t shift = num.size() - den.size();
    const Rational f = num.back() / den.back();
    q[shift] = f;
    for (std::size_t i = 0; i < den.size(); ++i) num[i + shift] -= f * den[i];
    num = trim(num);
  }
  return {trim(q), num};
}

}  // namespace oracle
