#include "quomm/qes.hpp"

#include <algorithm>
#include <future>
#include <random>
#include <stdexcept>
#include <thread>

namespace quomm {

namespace {

void extend(const StructureTable& t, Word& w, std::size_t start, std::size_t left,
            std::vector<Word>& out) {
  if (left == 0) return;
  const auto& order = t.order();
  for (std::size_t i = start; i < order.size(); ++i) {
    const Generator& g = order[i];
    w.push_back(g);
    out.push_back(w);
    // A nilpotent letter may not repeat; other letters may.
    extend(t, w, t.is_nilpotent(g) ? i + 1 : i, left - 1, out);
    w.pop_back();
  }
}

const StructureTable& table_of(const Representation& rep) {
  if (!rep.table) throw std::invalid_argument("representation has no structure table");
  return *rep.table;
}

QesOperator make_operator(const Representation& rep, const Expression& e) {
  QesOperator op;
  op.word_expression = e;
  op.action = action_of(e, rep);
  op.matrix = evaluate_in_rep(e, rep);
  op.space = rep.space;
  return op;
}

}  // namespace

std::vector<Word> canonical_words(const StructureTable& t, std::size_t max_degree) {
  std::vector<Word> out{Word{}};
  Word w;
  extend(t, w, 0, max_degree, out);
  std::stable_sort(out.begin(), out.end(),
                   [](const Word& a, const Word& b) { return a.size() < b.size(); });
  return out;
}

std::vector<QesOperator> enveloping_monomials(const Representation& rep, std::size_t max_degree) {
  const std::vector<Word> words = canonical_words(table_of(rep), max_degree);
  std::vector<QesOperator> out(words.size());
  const unsigned workers = std::max(1u, std::min(8u, std::thread::hardware_concurrency()));
  std::vector<std::future<void>> jobs;
  for (unsigned w = 0; w < workers; ++w) {
    jobs.push_back(std::async(std::launch::async, [&, w] {
      for (std::size_t i = w; i < words.size(); i += workers) {
        out[i] = make_operator(rep, Expression(words[i]));
      }
    }));
  }
  for (auto& j : jobs) j.get();
  return out;
}

bool certify_qes(const QesOperator& op) {
  int parity_seen = -1;
  for (const auto& [w, c] : op.word_expression.terms()) {
    const int p = parity(w);
    if (parity_seen >= 0 && p != parity_seen) {
      parity_seen = 2;
      break;
    }
    parity_seen = p;
  }
  std::vector<BlockPattern> patterns;
  if (parity_seen == 0) {
    patterns = {BlockPattern::diagonal};
  } else if (parity_seen == 1) {
    patterns = {BlockPattern::off_diagonal};
  }
  if (patterns.empty()) {
    // Mixed or unknown grading: only degree bounds are checked, block by block.
    const BlockOp& a = op.action;
    for (std::size_t col = 0; col < op.space.dimension(); ++col) {
      const auto [b, k] = op.space.basis(col);
      for (const auto& [key, c] : a.apply(b, k)) {
        if (!op.space.contains(key.first, key.second)) return false;
      }
    }
    return true;
  }
  return space_violations(op.action, op.space, patterns.front()).empty();
}

QesOperator random_qes_operator(const Representation& rep, std::size_t degree, std::uint64_t seed) {
  if (degree < 1) throw std::invalid_argument("degree must be >= 1");
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<long> num(-9, 9);
  std::uniform_int_distribution<long> den(1, 9);
  Expression e;
  for (const Word& w : canonical_words(table_of(rep), degree)) {
    Rational c(num(rng), den(rng));
    c.canonicalize();
    e.add_term(w, Scalar(c));
  }
  return make_operator(rep, e);
}

std::size_t span_dimension(const std::vector<Matrix>& matrices) {
  if (matrices.empty()) return 0;
  const std::size_t cols = matrices.front().rows() * matrices.front().cols();
  Matrix stacked(matrices.size(), cols);
  for (std::size_t i = 0; i < matrices.size(); ++i) {
    const Matrix& m = matrices[i];
    for (const auto& [ij, v] : m.entries()) stacked.set(i, ij.first * m.cols() + ij.second, v);
  }
  return rank(stacked);
}

}  // namespace quomm
