#pragma once

#include <cstddef>
#include <map>
#include <utility>
#include <vector>

#include "json.hpp"
#include "quomm/scalar.hpp"

namespace quomm {

/// Sparse exact matrix over Q(params); zero entries are never stored.
class Matrix {
 public:
  using Index = std::pair<std::size_t, std::size_t>;

  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols) {}
  static Matrix identity(std::size_t n);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  const std::map<Index, Scalar>& entries() const { return entries_; }
  bool is_zero() const { return entries_.empty(); }

  Scalar at(std::size_t r, std::size_t c) const;
  void set(std::size_t r, std::size_t c, const Scalar& v);
  void add(std::size_t r, std::size_t c, const Scalar& v);

  Matrix operator+(const Matrix& o) const;
  Matrix operator-(const Matrix& o) const;
  Matrix operator*(const Matrix& o) const;
  Matrix operator*(const Scalar& c) const;
  bool operator==(const Matrix& o) const;

  Matrix specialize(const ParamPoint& point) const;

 private:
  void check_index(std::size_t r, std::size_t c) const;

  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::map<Index, Scalar> entries_;
};

Matrix operator*(const Scalar& c, const Matrix& m);

/// Rank over the coefficient field (fraction-free where it matters: exact).
std::size_t rank(const Matrix& m);
/// Rank of an integer matrix given row-wise, by Bareiss elimination.
std::size_t integer_rank(std::vector<std::vector<Integer>> rows);

/// Coefficients c_0..c_n of det(x I - A), c_n = 1 (Faddeev–LeVerrier).
std::vector<Scalar> characteristic_polynomial(const Matrix& a);

/// {"rows", "cols", "entries": [[row, col, "literal"], ...]}.
nlohmann::ordered_json to_json(const Matrix& m);

}  // namespace quomm
