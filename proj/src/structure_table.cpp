#include "quomm/structure_table.hpp"

namespace quomm {

std::string rule_id(const GeneratorPair& pair) {
  return pair.first.name() + "*" + pair.second.name();
}

std::vector<Generator> standard_order(int n) {
  std::vector<Generator> out;
  for (int a = 1; a <= n; ++a) out.push_back(Generator::Vb(a));
  for (int a = 1; a <= n; ++a) {
    for (int b = 1; b <= n; ++b) out.push_back(Generator::E(a, b));
  }
  for (int a = 1; a <= n; ++a) out.push_back(Generator::V(a));
  return out;
}

StructureTable::StructureTable(std::string id, int n, std::vector<Generator> order)
    : id_(std::move(id)), n_(n), order_(std::move(order)) {
  for (std::size_t i = 0; i < order_.size(); ++i) {
    if (!rank_.emplace(order_[i], static_cast<int>(i)).second) {
      throw TableError("generator " + order_[i].name() + " listed twice in the order");
    }
  }
}

int StructureTable::rank(const Generator& g) const {
  auto it = rank_.find(g);
  if (it == rank_.end()) throw TableError("generator " + g.name() + " is not in table " + id_);
  return it->second;
}

const Rule* StructureTable::rule(const Generator& left, const Generator& right) const {
  auto it = rules_.find({left, right});
  return it == rules_.end() ? nullptr : &it->second;
}

bool StructureTable::is_canonical(const Word& w) const {
  for (std::size_t i = 0; i + 1 < w.size(); ++i) {
    const int r0 = rank(w[i]);
    const int r1 = rank(w[i + 1]);
    if (r0 > r1) return false;
    if (r0 == r1 && is_nilpotent(w[i])) return false;
  }
  return true;
}

void StructureTable::set_rule(const Generator& left, const Generator& right, Rule rule) {
  if (!out_of_order(left, right)) {
    throw TableError("rule " + rule_id({left, right}) + " is for a pair already in canonical order");
  }
  rules_[{left, right}] = std::move(rule);
}

void StructureTable::add_nilpotent(const Generator& g) {
  rank(g);
  if (!g.is_fermion()) throw TableError("nilpotent generator " + g.name() + " is not odd");
  nilpotents_.insert(g);
}

std::vector<GeneratorPair> StructureTable::missing_rules() const {
  std::vector<GeneratorPair> out;
  for (std::size_t i = 0; i < order_.size(); ++i) {
    for (std::size_t j = 0; j < i; ++j) {
      if (rules_.count({order_[i], order_[j]}) == 0) out.emplace_back(order_[i], order_[j]);
    }
  }
  return out;
}

void StructureTable::validate() const {
  for (const auto& g : order_) {
    if (g.a < 1 || g.a > n_ || (g.kind == GeneratorKind::E && (g.b < 1 || g.b > n_))) {
      throw TableError("generator " + g.name() + " has an index outside 1.." + std::to_string(n_));
    }
  }
  const auto missing = missing_rules();
  if (!missing.empty()) {
    throw TableError("incomplete rule coverage: no rule for " + rule_id(missing.front()));
  }
  for (const auto& g : nilpotents_) {
    if (!g.is_fermion()) throw TableError("nilpotent generator " + g.name() + " is not odd");
  }
  for (const auto& [pair, r] : rules_) {
    if (r.swap.is_zero()) throw TableError("zero swap coefficient in rule " + rule_id(pair));
    for (const auto& [w, c] : r.remainder.terms()) {
      for (const auto& g : w) {
        if (!contains(g)) {
          throw TableError("rule " + rule_id(pair) + " uses foreign generator " + g.name());
        }
      }
      if (!is_canonical(w)) {
        throw TableError("non-canonical remainder word " + to_string(w) + " in rule " +
                         rule_id(pair));
      }
    }
  }
}

Scalar StructureTable::at_point(const Scalar& x, const ParamPoint& point) const {
  Scalar y = x;
  for (const auto& [alias, base] : even_aliases_) {
    if (point.count(alias) != 0 && point.count(base) == 0) y = rebase_even(y, base, alias);
  }
  return point.empty() ? y : y.specialize(point);
}

bool StructureTable::operator==(const StructureTable& o) const {
  return n_ == o.n_ && order_ == o.order_ && nilpotents_ == o.nilpotents_ && rules_ == o.rules_;
}

}  // namespace quomm
