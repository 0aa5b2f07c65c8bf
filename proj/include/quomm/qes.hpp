#pragma once

#include <cstdint>
#include <vector>

#include "quomm/representation.hpp"

namespace quomm {

/// An element of the enveloping algebra together with its exact action and
/// matrix on the representation space.
struct QesOperator {
  Expression word_expression;
  BlockOp action;
  Matrix matrix;
  GradedSpace space;
};

/// Canonical words of length <= max_degree (the unit word first), in the
/// order of the representation's table.
std::vector<Word> canonical_words(const StructureTable& t, std::size_t max_degree);

/// Every canonical monomial up to `max_degree` with its exact matrix.
std::vector<QesOperator> enveloping_monomials(const Representation& rep, std::size_t max_degree);

/// True iff the operator maps P(n-1) ⊕ P(n) into itself (exact action, no
/// degree overflow). Even operators must also be block-diagonal and odd ones
/// block-off-diagonal.
bool certify_qes(const QesOperator& op);

/// Reproducible random rational combination of the monomials up to
/// `degree`.
QesOperator random_qes_operator(const Representation& rep, std::size_t degree, std::uint64_t seed);

/// Dimension of the linear span of the given matrices.
std::size_t span_dimension(const std::vector<Matrix>& matrices);

}  // namespace quomm
