#include "quomm/normal_order.hpp"

#include <algorithm>
#include <atomic>
#include <mutex>
#include <thread>

namespace quomm {

Expression quommutator(const Expression& a, const Expression& b, const Scalar& q,
                       BracketSign sign) {
  const Scalar factor = sign == BracketSign::commutator ? -q : q;
  return a * b + (b * a) * factor;
}

Measure measure(const Word& w, const StructureTable& t) {
  Measure m;
  std::vector<int> ranks;
  ranks.reserve(w.size());
  for (const auto& g : w) {
    m.weighted_degree += g.is_fermion() ? 2 : 3;
    ranks.push_back(t.rank(g));
  }
  for (std::size_t i = 0; i < ranks.size(); ++i) {
    for (std::size_t j = i + 1; j < ranks.size(); ++j) {
      if (ranks[i] > ranks[j]) ++m.inversions;
    }
  }
  return m;
}

namespace {

bool reducible_at(const Word& w, std::size_t i, const StructureTable& t) {
  const int r0 = t.rank(w[i]);
  const int r1 = t.rank(w[i + 1]);
  return r0 > r1 || (r0 == r1 && t.is_nilpotent(w[i]));
}

// Replacement for w[i]*w[i+1], as an expression in full words.
Expression apply_at(const Word& w, std::size_t i, const StructureTable& t, GeneratorPair* fired) {
  const Generator& left = w[i];
  const Generator& right = w[i + 1];
  if (fired != nullptr) *fired = {left, right};
  if (left == right) return {};  // nilpotent square
  const Rule* r = t.rule(left, right);
  if (r == nullptr) throw TableError("no rule for " + rule_id({left, right}) + " in " + t.id());
  const Word prefix(w.begin(), w.begin() + static_cast<std::ptrdiff_t>(i));
  const Word suffix(w.begin() + static_cast<std::ptrdiff_t>(i) + 2, w.end());
  Expression out;
  Word swapped = prefix;
  swapped.push_back(right);
  swapped.push_back(left);
  swapped.insert(swapped.end(), suffix.begin(), suffix.end());
  out.add_term(swapped, r->swap);
  for (const auto& [rw, rc] : r->remainder.terms()) {
    Word word = prefix;
    word.insert(word.end(), rw.begin(), rw.end());
    word.insert(word.end(), suffix.begin(), suffix.end());
    out.add_term(word, rc);
  }
  return out;
}

Expression run_normalize(const Expression& e, const StructureTable& t, RewriteTrace* trace,
                         std::set<GeneratorPair>* used) {
  using Key = std::pair<Measure, Word>;
  std::map<Key, Scalar> work;
  auto push = [&](const Word& w, const Scalar& c) {
    if (c.is_zero()) return;
    Key k{measure(w, t), w};
    auto [it, inserted] = work.try_emplace(std::move(k), c);
    if (!inserted) {
      it->second += c;
      if (it->second.is_zero()) work.erase(it);
    }
  };
  for (const auto& [w, c] : e.terms()) push(w, c);

  const std::size_t limit = step_limit(e, t);
  std::size_t steps = 0;
  Expression out;
  while (!work.empty()) {
    auto it = std::prev(work.end());
    const Word w = it->first.second;
    const Scalar c = it->second;
    work.erase(it);
    auto pos = reducible_position(w, t, Strategy::leftmost);
    if (!pos) {
      out.add_term(w, c);
      continue;
    }
    if (++steps > limit) {
      throw NonTermination("rewrite guard of " + std::to_string(limit) + " steps exceeded in " +
                           t.id() + " while reducing " + to_string(w));
    }
    GeneratorPair fired;
    Expression replaced = apply_at(w, *pos, t, &fired);
    if (used != nullptr) used->insert(fired);
    if (trace != nullptr) {
      RewriteStep step;
      step.position = *pos;
      step.rule = fired;
      step.before = w;
      step.after = replaced;
      trace->steps.push_back(std::move(step));
    }
    for (const auto& [rw, rc] : replaced.terms()) push(rw, rc * c);
  }
  return out;
}

}  // namespace

std::optional<std::size_t> reducible_position(const Word& w, const StructureTable& t,
                                              Strategy strategy) {
  if (w.size() < 2) return std::nullopt;
  if (strategy == Strategy::leftmost) {
    for (std::size_t i = 0; i + 1 < w.size(); ++i) {
      if (reducible_at(w, i, t)) return i;
    }
  } else {
    for (std::size_t i = w.size() - 1; i-- > 0;) {
      if (reducible_at(w, i, t)) return i;
    }
  }
  return std::nullopt;
}

Expression rewrite_once(const Word& w, const StructureTable& t, Strategy strategy) {
  auto pos = reducible_position(w, t, strategy);
  if (!pos) return Expression(w);
  return apply_at(w, *pos, t, nullptr);
}

std::size_t step_limit(const Expression& e, const StructureTable& t) {
  const std::size_t gens = std::max<std::size_t>(1, t.order().size());
  std::size_t limit = 0;
  for (const auto& [w, c] : e.terms()) {
    const std::size_t d = w.size();
    const std::size_t inversion_bound = std::max<std::size_t>(1, d * (d - (d > 0 ? 1 : 0)) / 2);
    limit += 10 * std::max<std::size_t>(1, d * d) * inversion_bound * gens;
  }
  return std::max<std::size_t>(limit, 10);
}

NormalForm normalize(const Expression& e, const StructureTable& t) {
  NormalForm nf;
  nf.expression = run_normalize(e, t, &nf.trace, nullptr);
  return nf;
}

Expression normal_form(const Expression& e, const StructureTable& t, std::set<GeneratorPair>* used) {
  return run_normalize(e, t, nullptr, used);
}

ConsistencyReport check_overlaps(const StructureTable& t, unsigned workers) {
  std::vector<std::array<Generator, 3>> triples;
  const auto& gens = t.order();
  for (const auto& g1 : gens) {
    for (const auto& g2 : gens) {
      for (const auto& g3 : gens) {
        const Word w{g1, g2, g3};
        if (reducible_position(w, t, Strategy::leftmost)) triples.push_back({g1, g2, g3});
      }
    }
  }

  if (workers == 0) workers = std::max(1u, std::thread::hardware_concurrency());
  workers = std::min<unsigned>(workers, static_cast<unsigned>(std::max<std::size_t>(1, triples.size())));

  std::atomic<std::size_t> next{0};
  std::mutex merge_mutex;
  std::vector<ConsistencyFailure> failures;
  std::set<GeneratorPair> used_all;
  std::exception_ptr error;

  auto work = [&] {
    std::vector<ConsistencyFailure> local;
    std::set<GeneratorPair> used;
    try {
      for (std::size_t i = next++; i < triples.size(); i = next++) {
        const auto& tr = triples[i];
        const Word w{tr[0], tr[1], tr[2]};
        for (auto strategy : {Strategy::leftmost, Strategy::rightmost}) {
          if (auto pos = reducible_position(w, t, strategy)) used.insert({w[*pos], w[*pos + 1]});
        }
        const Expression left = normal_form(rewrite_once(w, t, Strategy::leftmost), t, &used);
        const Expression right = normal_form(rewrite_once(w, t, Strategy::rightmost), t, &used);
        Expression residual = left - right;
        if (!residual.is_zero()) local.push_back({tr, std::move(residual)});
      }
    } catch (...) {
      std::lock_guard lock(merge_mutex);
      if (!error) error = std::current_exception();
      next = triples.size();
    }
    std::lock_guard lock(merge_mutex);
    for (auto& f : local) failures.push_back(std::move(f));
    used_all.insert(used.begin(), used.end());
  };

  std::vector<std::thread> pool;
  for (unsigned i = 1; i < workers; ++i) pool.emplace_back(work);
  work();
  for (auto& th : pool) th.join();
  if (error) std::rethrow_exception(error);

  auto key = [&](const std::array<Generator, 3>& tr) {
    return std::array<int, 3>{t.rank(tr[0]), t.rank(tr[1]), t.rank(tr[2])};
  };
  std::sort(failures.begin(), failures.end(),
            [&](const auto& x, const auto& y) { return key(x.triple) < key(y.triple); });

  ConsistencyReport report;
  report.algebra_id = t.id();
  report.total_overlaps = triples.size();
  report.failures = std::move(failures);
  report.symbolic = !t.params().empty();
  for (const auto& [pair, rule] : t.rules()) {
    if (!rule.correction.empty() && used_all.count(pair) != 0) {
      report.corrected_rules_used.push_back(rule_id(pair));
    }
  }
  return report;
}

nlohmann::ordered_json to_json(const ConsistencyReport& report) {
  nlohmann::ordered_json j;
  j["algebra"] = report.algebra_id;
  j["mode"] = report.symbolic ? "symbolic" : "numeric";
  j["overlaps_checked"] = report.total_overlaps;
  j["passed"] = report.passed();
  auto failures = nlohmann::ordered_json::array();
  for (const auto& f : report.failures) {
    nlohmann::ordered_json item;
    item["triple"] = {f.triple[0].name(), f.triple[1].name(), f.triple[2].name()};
    item["residual"] = to_string(f.residual);
    failures.push_back(std::move(item));
  }
  j["failures"] = std::move(failures);
  j["corrected_rules_used"] = report.corrected_rules_used;
  return j;
}

}  // namespace quomm
