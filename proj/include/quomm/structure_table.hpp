#pragma once

#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "quomm/expression.hpp"

namespace quomm {

/// One rewrite rule: left*right = swap * right*left + remainder, where
/// `left` comes strictly after `right` in the generator order.
struct Rule {
  Scalar swap;
  Expression remainder;
  /// Nonempty for entries that deliberately deviate from the printed
  /// relation they encode; reported as "corrected".
  std::string correction;
  /// Remainder as the relation was stated, before normal ordering. Kept
  /// only by builders; derived tables that drop terms read it.
  std::optional<Expression> as_written;

  bool operator==(const Rule& o) const { return swap == o.swap && remainder == o.remainder; }
};

using GeneratorPair = std::pair<Generator, Generator>;

std::string rule_id(const GeneratorPair& pair);

/// Thrown for ill-formed tables (builders, loader, validation).
class TableError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// The complete rewrite-rule set of one algebra.
class StructureTable {
 public:
  StructureTable() = default;
  StructureTable(std::string id, int n, std::vector<Generator> order);

  const std::string& id() const { return id_; }
  void set_id(std::string id) { id_ = std::move(id); }
  int n() const { return n_; }
  const std::vector<Generator>& order() const { return order_; }
  const std::set<Param>& params() const { return params_; }
  const std::map<GeneratorPair, Rule>& rules() const { return rules_; }
  const std::set<Generator>& nilpotents() const { return nilpotents_; }
  /// Derived parameter aliases, alias := base^2 (e.g. q := p^2).
  const std::map<Param, Param>& even_aliases() const { return even_aliases_; }

  bool contains(const Generator& g) const { return rank_.count(g) != 0; }
  /// Position in the generator order; throws TableError for foreign letters.
  int rank(const Generator& g) const;
  /// True when left*right is not in canonical order.
  bool out_of_order(const Generator& left, const Generator& right) const {
    return rank(left) > rank(right);
  }
  const Rule* rule(const Generator& left, const Generator& right) const;
  bool is_nilpotent(const Generator& g) const { return nilpotents_.count(g) != 0; }
  /// Canonical word: letters non-decreasing in the order, no nilpotent letter
  /// repeated.
  bool is_canonical(const Word& w) const;

  void set_rule(const Generator& left, const Generator& right, Rule rule);
  void add_nilpotent(const Generator& g);
  void add_param(const Param& p) { params_.insert(p); }
  void set_params(std::set<Param> params) { params_ = std::move(params); }
  void add_even_alias(const Param& alias, const Param& base) { even_aliases_[alias] = base; }
  void clear_even_aliases() { even_aliases_.clear(); }

  /// Missing rules for out-of-order pairs.
  std::vector<GeneratorPair> missing_rules() const;
  /// Throws TableError on incomplete coverage, zero swaps, non-canonical
  /// remainders, foreign generators, or even nilpotents.
  void validate() const;

  /// Maps a scalar onto a point given in terms of the table's aliases
  /// (rebases base^2 -> alias when the point names the alias), then
  /// substitutes what the point covers.
  Scalar at_point(const Scalar& x, const ParamPoint& point) const;

  /// Same rules, order, nilpotents; ids and correction labels are ignored.
  bool operator==(const StructureTable& o) const;

 private:
  std::string id_;
  int n_ = 0;
  std::vector<Generator> order_;
  std::map<Generator, int> rank_;
  std::set<Param> params_;
  std::map<GeneratorPair, Rule> rules_;
  std::set<Generator> nilpotents_;
  std::map<Param, Param> even_aliases_;
};

/// The standard generator order for spl(N,1):
/// Vb(1) < ... < Vb(N) < E(1,1) < E(1,2) < ... < E(N,N) < V(1) < ... < V(N).
std::vector<Generator> standard_order(int n);

}  // namespace quomm
