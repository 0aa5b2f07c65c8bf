#include "quomm/matrix.hpp"

#include <stdexcept>

namespace quomm {

Matrix Matrix::identity(std::size_t n) {
  Matrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m.entries_.emplace(Index{i, i}, Scalar(1));
  return m;
}

void Matrix::check_index(std::size_t r, std::size_t c) const {
  if (r >= rows_ || c >= cols_) throw std::out_of_range("matrix index out of range");
}

Scalar Matrix::at(std::size_t r, std::size_t c) const {
  check_index(r, c);
  auto it = entries_.find({r, c});
  return it == entries_.end() ? Scalar() : it->second;
}

void Matrix::set(std::size_t r, std::size_t c, const Scalar& v) {
  check_index(r, c);
  if (v.is_zero()) {
    entries_.erase({r, c});
  } else {
    entries_[{r, c}] = v;
  }
}

void Matrix::add(std::size_t r, std::size_t c, const Scalar& v) {
  if (v.is_zero()) return;
  check_index(r, c);
  auto [it, inserted] = entries_.emplace(Index{r, c}, v);
  if (!inserted) {
    it->second += v;
    if (it->second.is_zero()) entries_.erase(it);
  }
}

Matrix Matrix::operator+(const Matrix& o) const {
  if (rows_ != o.rows_ || cols_ != o.cols_) throw std::invalid_argument("matrix shape mismatch");
  Matrix out = *this;
  for (const auto& [ij, v] : o.entries_) out.add(ij.first, ij.second, v);
  return out;
}

Matrix Matrix::operator-(const Matrix& o) const { return *this + o * Scalar(-1); }

Matrix Matrix::operator*(const Matrix& o) const {
  if (cols_ != o.rows_) throw std::invalid_argument("matrix shape mismatch");
  std::vector<std::vector<std::pair<std::size_t, const Scalar*>>> by_row(o.rows_);
  for (const auto& [ij, v] : o.entries_) by_row[ij.first].emplace_back(ij.second, &v);
  Matrix out(rows_, o.cols_);
  for (const auto& [ij, v] : entries_) {
    for (const auto& [c, w] : by_row[ij.second]) out.add(ij.first, c, v * *w);
  }
  return out;
}

Matrix Matrix::operator*(const Scalar& c) const {
  Matrix out(rows_, cols_);
  if (c.is_zero()) return out;
  for (const auto& [ij, v] : entries_) out.entries_.emplace(ij, v * c);
  return out;
}

Matrix operator*(const Scalar& c, const Matrix& m) { return m * c; }

bool Matrix::operator==(const Matrix& o) const {
  if (rows_ != o.rows_ || cols_ != o.cols_ || entries_.size() != o.entries_.size()) return false;
  auto a = entries_.begin();
  for (auto b = o.entries_.begin(); b != o.entries_.end(); ++a, ++b) {
    if (a->first != b->first || !(a->second == b->second)) return false;
  }
  return true;
}

Matrix Matrix::specialize(const ParamPoint& point) const {
  Matrix out(rows_, cols_);
  for (const auto& [ij, v] : entries_) out.set(ij.first, ij.second, v.specialize(point));
  return out;
}

std::size_t rank(const Matrix& m) {
  std::vector<std::map<std::size_t, Scalar>> rows(m.rows());
  for (const auto& [ij, v] : m.entries()) rows[ij.first].emplace(ij.second, v);
  std::size_t r = 0;
  for (std::size_t col = 0; col < m.cols() && r < rows.size(); ++col) {
    std::size_t pivot = r;
    while (pivot < rows.size() && rows[pivot].count(col) == 0) ++pivot;
    if (pivot == rows.size()) continue;
    std::swap(rows[r], rows[pivot]);
    const Scalar inv = Scalar(1) / rows[r].at(col);
    for (std::size_t i = r + 1; i < rows.size(); ++i) {
      auto it = rows[i].find(col);
      if (it == rows[i].end()) continue;
      const Scalar f = it->second * inv;
      for (const auto& [c, v] : rows[r]) {
        Scalar& x = rows[i][c];
        x -= f * v;
        if (x.is_zero()) rows[i].erase(c);
      }
    }
    ++r;
  }
  return r;
}

std::size_t integer_rank(std::vector<std::vector<Integer>> a) {
  if (a.empty()) return 0;
  const std::size_t cols = a.front().size();
  std::size_t r = 0;
  Integer prev = 1;
  for (std::size_t col = 0; col < cols && r < a.size(); ++col) {
    std::size_t pivot = r;
    while (pivot < a.size() && a[pivot][col] == 0) ++pivot;
    if (pivot == a.size()) continue;
    std::swap(a[r], a[pivot]);
    for (std::size_t i = r + 1; i < a.size(); ++i) {
      for (std::size_t j = col + 1; j < cols; ++j) {
        a[i][j] = (a[r][col] * a[i][j] - a[i][col] * a[r][j]) / prev;
      }
      a[i][col] = 0;
    }
    prev = a[r][col];
    ++r;
  }
  return r;
}

std::vector<Scalar> characteristic_polynomial(const Matrix& a) {
  if (a.rows() != a.cols()) throw std::invalid_argument("characteristic polynomial of non-square matrix");
  const std::size_t n = a.rows();
  std::vector<Scalar> c(n + 1);
  c[n] = Scalar(1);
  Matrix m(n, n);  // M_0 = 0
  const Matrix id = Matrix::identity(n);
  for (std::size_t k = 1; k <= n; ++k) {
    m = a * m + id * c[n - k + 1];
    const Matrix am = a * m;
    Scalar trace;
    for (std::size_t i = 0; i < n; ++i) trace += am.at(i, i);
    c[n - k] = -trace / Scalar(static_cast<long>(k));
  }
  return c;
}

nlohmann::ordered_json to_json(const Matrix& m) {
  nlohmann::ordered_json j;
  j["rows"] = m.rows();
  j["cols"] = m.cols();
  j["entries"] = nlohmann::ordered_json::array();
  for (const auto& [ij, v] : m.entries()) {
    j["entries"].push_back({ij.first, ij.second, to_string(v)});
  }
  return j;
}

}  // namespace quomm
