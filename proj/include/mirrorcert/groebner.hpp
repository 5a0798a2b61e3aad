// Copyright 2026 The mirrorcert Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef MIRRORCERT_GROEBNER_HPP
#define MIRRORCERT_GROEBNER_HPP

// Degree-truncated two-sided Groebner bases in the free algebra.
//
// A rewrite system is a set of monic rules `lead -> tail` with every tail
// word deglex-smaller than the lead. Completion processes overlap
// obstructions in increasing degree, discarding those whose overlap word is
// longer than the degree bound. Every rule can carry a trace expressing it
// as a combination  sum c * left * g_k * right  of the input generators g_k.

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <queue>
#include <sstream>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "mirrorcert/errors.hpp"
#include "mirrorcert/free_algebra.hpp"
#include "mirrorcert/ideal.hpp"

namespace mirrorcert {

/// One summand  left * g_generator * right  of an ideal combination.
struct TraceKey {
  Word left;
  std::size_t generator = 0;
  Word right;

  friend auto operator<=>(const TraceKey&, const TraceKey&) = default;
};

/// Exact ideal combination  sum coeff * left * g_k * right.
class IdealTrace {
 public:
  using TermMap = std::map<TraceKey, Rational>;

  IdealTrace() = default;

  static IdealTrace generator(std::size_t k) {
    IdealTrace t;
    t.terms_.emplace(TraceKey{{}, k, {}}, Rational(1));
    return t;
  }

  /// this += c * left * other * right.
  void add_scaled(const Rational& c, const Word& left, const IdealTrace& other, const Word& right) {
    if (c == 0) return;
    for (const auto& [key, k] : other.terms_) add_term(TraceKey{concat(left, key.left), key.generator,
                                                               concat(key.right, right)},
                                                      c * k);
  }

  void add_term(TraceKey key, const Rational& c) {
    if (c == 0) return;
    auto [it, inserted] = terms_.try_emplace(std::move(key), c);
    if (!inserted) {
      it->second += c;
      if (it->second == 0) terms_.erase(it);
    }
  }

  IdealTrace& operator*=(const Rational& c) {
    if (c == 0) {
      terms_.clear();
    } else {
      for (auto& [key, k] : terms_) k *= c;
    }
    return *this;
  }

  /// The polynomial this combination denotes.
  NCPoly expand(const std::vector<NCPoly>& generators) const {
    NCPoly out;
    for (const auto& [key, c] : terms_) out.add_product(c, key.left, generators.at(key.generator), key.right);
    return out;
  }

  bool empty() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }
  const TermMap& terms() const { return terms_; }

 private:
  TermMap terms_;
};

/// Monic polynomial  lead - tail.
struct Rule {
  Word lead;
  NCPoly tail;

  NCPoly as_poly() const {
    NCPoly p = NCPoly::monomial(lead);
    p -= tail;
    return p;
  }
};

/// Occurrence of a rule lead inside a word.
struct RuleMatch {
  std::size_t rule = 0;
  std::size_t position = 0;
};

namespace detail {

/// Rules indexed by the first symbol of their lead. The constant rule (empty
/// lead) matches every word at position 0.
class RuleIndex {
 public:
  void insert(std::size_t id, const Word& lead) {
    if (lead.empty()) {
      constant_ = id;
      return;
    }
    by_first_[lead.front()].push_back(id);
  }

  void erase(std::size_t id, const Word& lead) {
    if (lead.empty()) {
      constant_.reset();
      return;
    }
    auto& v = by_first_[lead.front()];
    v.erase(std::remove(v.begin(), v.end(), id), v.end());
  }

  void clear() {
    by_first_.clear();
    constant_.reset();
  }

  /// Leftmost occurrence of any lead; ties at one position go to the
  /// earliest inserted rule.
  template <typename LeadOf>
  std::optional<RuleMatch> find(const Word& w, const LeadOf& lead_of) const {
    if (constant_) return RuleMatch{*constant_, 0};
    for (std::size_t pos = 0; pos < w.size(); ++pos) {
      auto it = by_first_.find(w[pos]);
      if (it == by_first_.end()) continue;
      for (std::size_t id : it->second) {
        const Word& lead = lead_of(id);
        if (lead.size() > w.size() - pos) continue;
        if (std::equal(lead.begin(), lead.end(), w.begin() + static_cast<std::ptrdiff_t>(pos)))
          return RuleMatch{id, pos};
      }
    }
    return std::nullopt;
  }

 private:
  std::map<GenSymbol, std::vector<std::size_t>> by_first_;
  std::optional<std::size_t> constant_;
};

/// Generic normal-form loop: repeatedly rewrites the deglex-greatest
/// reducible word at its leftmost match. When `trace` is given it receives
/// the combination  p - NF(p) = sum c * left * rule * right, expressed
/// through the rules' own traces.
template <typename Find, typename RuleOf, typename TraceOf>
NCPoly normal_form(NCPoly work, const Find& find, const RuleOf& rule_of, const TraceOf& trace_of,
                   IdealTrace* trace) {
  NCPoly result;
  while (!work.is_zero()) {
    auto [w, c] = work.pop_leading();
    const auto m = find(w);
    if (!m) {
      result.add_term(std::move(w), c);
      continue;
    }
    const Rule& rule = rule_of(m->rule);
    const auto pos = static_cast<std::ptrdiff_t>(m->position);
    const Word left(w.begin(), w.begin() + pos);
    const Word right(w.begin() + pos + static_cast<std::ptrdiff_t>(rule.lead.size()), w.end());
    work.add_product(c, left, rule.tail, right);
    if (trace) trace->add_scaled(c, left, trace_of(m->rule), right);
  }
  return result;
}

}  // namespace detail

/// A frozen set of rewrite rules together with the metadata of the
/// completion that produced it.
class RewriteSystem {
 public:
  RewriteSystem() = default;

  /// Hand-built system. Each rule must have every tail word below its lead;
  /// rules are sorted by lead. No completion is performed.
  static RewriteSystem from_rules(std::vector<Rule> rules, std::vector<GenSymbol> alphabet,
                                  std::size_t degree_bound) {
    RewriteSystem rs;
    for (const auto& r : rules)
      for (const auto& [w, c] : r.tail.terms())
        if (word_compare(w, r.lead) >= 0)
          throw std::invalid_argument("rule tail word " + to_string(w) + " is not below lead " +
                                      to_string(r.lead));
    rs.rules_ = std::move(rules);
    rs.alphabet_ = std::move(alphabet);
    rs.degree_bound_ = degree_bound;
    rs.complete_ = false;
    rs.finalize();
    return rs;
  }

  const std::vector<Rule>& rules() const { return rules_; }
  const std::vector<GenSymbol>& alphabet() const { return alphabet_; }
  std::size_t degree_bound() const { return degree_bound_; }
  bool complete_up_to_bound() const { return complete_; }
  bool contains_one() const { return contains_one_; }

  /// Traces are present when the system was completed with tracing on.
  bool has_trace() const { return !traces_.empty() || rules_.empty(); }
  const IdealTrace& trace(std::size_t rule) const { return traces_.at(rule); }
  /// The generators traces refer to.
  const std::vector<NCPoly>& generators() const { return generators_; }
  const std::vector<Relation>& provenance() const { return provenance_; }

  std::optional<RuleMatch> find_match(const Word& w) const {
    return index_.find(w, [this](std::size_t id) -> const Word& { return rules_[id].lead; });
  }

  bool is_irreducible(const Word& w) const { return !find_match(w); }

  NCPoly normal_form(const NCPoly& p, IdealTrace* trace = nullptr) const {
    return detail::normal_form(
        p, [this](const Word& w) { return find_match(w); },
        [this](std::size_t id) -> const Rule& { return rules_[id]; },
        [this](std::size_t id) -> const IdealTrace& { return traces_[id]; }, trace);
  }

  /// Replays every rule trace against the stored generators.
  bool traces_consistent() const {
    if (traces_.size() != rules_.size()) return false;
    for (std::size_t i = 0; i < rules_.size(); ++i)
      if (!(traces_[i].expand(generators_) == rules_[i].as_poly())) return false;
    return true;
  }

 private:
  friend class Completion;

  void finalize() {
    std::vector<std::size_t> order(rules_.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::sort(order.begin(), order.end(), [this](std::size_t a, std::size_t b) {
      return word_compare(rules_[a].lead, rules_[b].lead) < 0;
    });
    std::vector<Rule> rules;
    std::vector<IdealTrace> traces;
    for (auto i : order) {
      rules.push_back(std::move(rules_[i]));
      if (!traces_.empty()) traces.push_back(std::move(traces_[i]));
    }
    rules_ = std::move(rules);
    traces_ = std::move(traces);
    contains_one_ = !rules_.empty() && rules_.front().lead.empty();
    index_.clear();
    for (std::size_t i = 0; i < rules_.size(); ++i) index_.insert(i, rules_[i].lead);
  }

  std::vector<Rule> rules_;
  std::vector<IdealTrace> traces_;
  std::vector<NCPoly> generators_;
  std::vector<Relation> provenance_;
  std::vector<GenSymbol> alphabet_;
  std::size_t degree_bound_ = 0;
  bool complete_ = true;
  bool contains_one_ = false;
  detail::RuleIndex index_;
};

struct CompletionOptions {
  /// Record ideal-combination traces for every rule.
  bool trace = false;
  /// Abort with ResourceLimitError beyond this many rules.
  std::size_t max_rules = 200000;
};

/// Mora-style completion, truncated at a degree bound.
class Completion {
 public:
  Completion(const GeneratorSet& gens, std::size_t degree_bound, CompletionOptions opts)
      : gens_(gens), bound_(degree_bound), opts_(opts) {
    if (gens.max_degree() > degree_bound)
      throw std::invalid_argument("degree bound " + std::to_string(degree_bound) +
                                  " is below the generator degree " +
                                  std::to_string(gens.max_degree()));
  }

  RewriteSystem run() {
    for (std::size_t k = 0; k < gens_.polys.size(); ++k)
      push_poly(gens_.polys[k], opts_.trace ? IdealTrace::generator(k) : IdealTrace{});

    while (!queue_.empty() && !found_one_) {
      const Task task = queue_.top();
      queue_.pop();
      NCPoly h;
      IdealTrace t;
      if (task.kind == Task::kPoly) {
        h = std::move(pending_[task.a].first);
        t = std::move(pending_[task.a].second);
      } else {
        if (!entries_[task.a].alive || !entries_[task.b].alive) continue;
        s_polynomial(task, h, t);
      }
      process(std::move(h), std::move(t));
    }
    return finish();
  }

 private:
  struct Entry {
    Rule rule;
    IdealTrace trace;
    bool alive = true;
  };

  struct Task {
    enum Kind { kPoly = 0, kPair = 1 };
    std::size_t degree;
    Kind kind;
    std::uint64_t seq;
    std::size_t a;
    std::size_t b;
    std::size_t overlap;

    // Min-heap on (degree, kind, seq).
    bool operator<(const Task& o) const {
      return std::tie(degree, kind, seq) > std::tie(o.degree, o.kind, o.seq);
    }
  };

  void push_poly(NCPoly p, IdealTrace t) {
    const std::size_t deg = p.degree();
    pending_.emplace_back(std::move(p), std::move(t));
    queue_.push(Task{deg, Task::kPoly, seq_++, pending_.size() - 1, 0, 0});
  }

  void s_polynomial(const Task& task, NCPoly& h, IdealTrace& t) const {
    const Entry& ei = entries_[task.a];
    const Entry& ej = entries_[task.b];
    const Word& u = ei.rule.lead;
    const Word& v = ej.rule.lead;
    const Word a_part(u.begin(), u.end() - static_cast<std::ptrdiff_t>(task.overlap));
    const Word c_part(v.begin() + static_cast<std::ptrdiff_t>(task.overlap), v.end());
    // (u - tu) c - a (v - tv) = a tv - tu c
    h.add_product(1, a_part, ej.rule.tail, {});
    h.add_product(-1, {}, ei.rule.tail, c_part);
    if (opts_.trace) {
      t.add_scaled(1, {}, ei.trace, c_part);
      t.add_scaled(-1, a_part, ej.trace, {});
    }
  }

  std::optional<RuleMatch> find(const Word& w) const {
    return index_.find(w, [this](std::size_t id) -> const Word& { return entries_[id].rule.lead; });
  }

  NCPoly reduce(NCPoly p, IdealTrace* trace) const {
    return detail::normal_form(
        std::move(p), [this](const Word& w) { return find(w); },
        [this](std::size_t id) -> const Rule& { return entries_[id].rule; },
        [this](std::size_t id) -> const IdealTrace& { return entries_[id].trace; }, trace);
  }

  void process(NCPoly h, IdealTrace t) {
    IdealTrace reduction;
    NCPoly nf = reduce(std::move(h), opts_.trace ? &reduction : nullptr);
    if (nf.is_zero()) return;
    if (opts_.trace) {
      // nf = h - (h - nf)
      t.add_scaled(-1, {}, reduction, {});
    }
    const Rational inv = 1 / nf.leading_coeff();
    nf *= inv;
    if (opts_.trace) t *= inv;

    auto [lead, coeff] = nf.pop_leading();
    Rule rule{std::move(lead), -nf};
    if (rule.lead.empty()) {
      // The constant 1 is in the ideal; nothing else matters.
      entries_.push_back(Entry{std::move(rule), std::move(t), true});
      found_one_ = true;
      return;
    }
    if (entries_.size() >= opts_.max_rules)
      throw ResourceLimitError("Groebner completion exceeded " + std::to_string(opts_.max_rules) +
                               " rules");

    const std::size_t id = entries_.size();
    entries_.push_back(Entry{std::move(rule), std::move(t), true});
    const Word& new_lead = entries_[id].rule.lead;

    // Rules whose lead contains the new lead are no longer inter-reduced:
    // retire them and feed their polynomial back through the queue.
    for (std::size_t j = 0; j < id; ++j) {
      Entry& e = entries_[j];
      if (!e.alive || find_factor(e.rule.lead, new_lead) == std::string::npos) continue;
      e.alive = false;
      index_.erase(j, e.rule.lead);
      push_poly(e.rule.as_poly(), opts_.trace ? e.trace : IdealTrace{});
    }
    index_.insert(id, new_lead);

    for (std::size_t j = 0; j <= id; ++j) {
      if (!entries_[j].alive) continue;
      add_overlaps(id, j);
      if (j != id) add_overlaps(j, id);
    }
  }

  /// Proper overlaps where a suffix of lead(i) equals a prefix of lead(j).
  void add_overlaps(std::size_t i, std::size_t j) {
    const Word& u = entries_[i].rule.lead;
    const Word& v = entries_[j].rule.lead;
    const std::size_t max_k = std::min(u.size(), v.size());
    for (std::size_t k = 1; k < max_k; ++k) {
      if (!std::equal(u.end() - static_cast<std::ptrdiff_t>(k), u.end(), v.begin())) continue;
      const std::size_t deg = u.size() + v.size() - k;
      if (deg > bound_) {
        truncated_ = true;
        continue;
      }
      queue_.push(Task{deg, Task::kPair, seq_++, i, j, k});
    }
  }

  RewriteSystem finish() {
    RewriteSystem rs;
    rs.alphabet_ = gens_.alphabet;
    rs.degree_bound_ = bound_;
    if (opts_.trace) {
      rs.generators_ = gens_.polys;
      rs.provenance_ = gens_.provenance;
    }
    if (found_one_) {
      rs.rules_.push_back(std::move(entries_.back().rule));
      if (opts_.trace) rs.traces_.push_back(std::move(entries_.back().trace));
      rs.complete_ = true;
      rs.finalize();
      return rs;
    }

    // Inter-reduce tails.
    for (std::size_t i = 0; i < entries_.size(); ++i) {
      Entry& e = entries_[i];
      if (!e.alive) continue;
      IdealTrace reduction;
      NCPoly tail = reduce(e.rule.tail, opts_.trace ? &reduction : nullptr);
      if (opts_.trace) {
        // lead - nf = (lead - tail) + (tail - nf)
        e.trace.add_scaled(1, {}, reduction, {});
      }
      e.rule.tail = std::move(tail);
    }
    for (auto& e : entries_) {
      if (!e.alive) continue;
      rs.rules_.push_back(std::move(e.rule));
      if (opts_.trace) rs.traces_.push_back(std::move(e.trace));
    }
    rs.complete_ = !truncated_;
    rs.finalize();
    return rs;
  }

  const GeneratorSet& gens_;
  std::size_t bound_;
  CompletionOptions opts_;
  std::vector<Entry> entries_;
  detail::RuleIndex index_;
  std::vector<std::pair<NCPoly, IdealTrace>> pending_;
  std::priority_queue<Task> queue_;
  std::uint64_t seq_ = 0;
  bool truncated_ = false;
  bool found_one_ = false;
};

/// Completes `gens` up to `degree_bound`. Stops as soon as the constant 1
/// becomes a rule.
inline RewriteSystem complete(const GeneratorSet& gens, std::size_t degree_bound,
                              CompletionOptions opts = {}) {
  return Completion(gens, degree_bound, opts).run();
}

/// Normal form of p modulo rs.
inline NCPoly reduce(const NCPoly& p, const RewriteSystem& rs) { return rs.normal_form(p); }

/// Normal form plus the combination  p - NF(p) = sum c * left * g_k * right
/// over the generators of rs. Requires a traced system.
struct TracedReduction {
  NCPoly normal_form;
  IdealTrace trace;
};

inline TracedReduction reduce_traced(const NCPoly& p, const RewriteSystem& rs) {
  if (!rs.has_trace()) throw std::logic_error("rewrite system was completed without traces");
  TracedReduction out;
  out.normal_form = rs.normal_form(p, &out.trace);
  return out;
}

enum class Membership { kYes, kNoUpToBound };

/// A zero normal form is a sound membership proof even for truncated
/// systems; a nonzero one only says "not found within the bound".
inline Membership ideal_membership(const NCPoly& p, const RewriteSystem& rs) {
  return rs.normal_form(p).is_zero() ? Membership::kYes : Membership::kNoUpToBound;
}

/// Text form: header comments, then one `lead -> tail` line per rule in
/// deglex order of leads.
inline std::string serialize(const RewriteSystem& rs) {
  std::ostringstream os;
  os << "# mirrorcert rewrite system\n";
  os << "# order: deglex (side, question, answer)\n";
  os << "# degree_bound: " << rs.degree_bound() << "\n";
  os << "# complete_up_to_bound: " << (rs.complete_up_to_bound() ? "true" : "false") << "\n";
  os << "# contains_one: " << (rs.contains_one() ? "true" : "false") << "\n";
  os << "# rules: " << rs.rules().size() << "\n";
  for (const auto& r : rs.rules()) os << to_string(r.lead) << " -> " << to_string(r.tail) << "\n";
  return os.str();
}

}  // namespace mirrorcert

#endif  // MIRRORCERT_GROEBNER_HPP
