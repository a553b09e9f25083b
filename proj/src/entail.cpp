#include "mfd/entail.hpp"

#include <algorithm>
#include <unordered_map>

#include "mfd/member.hpp"

namespace mfd {

bool is_valid_path(const RewritePath& path, const Theory& theory) {
  const AttributeMultiset* previous = &path.start;
  for (const auto& step : path.steps) {
    if (!theory.contains(step.rule)) return false;
    if (multiset_union(step.rule.antecedent, step.remainder) != *previous) return false;
    if (multiset_union(step.rule.consequent, step.remainder) != step.result) return false;
    previous = &step.result;
  }
  return true;
}

std::vector<RewriteStep> rewrite_successors(const AttributeMultiset& w, const Theory& theory) {
  std::vector<RewriteStep> out;
  for (const auto& rule : theory.unique_formulas()) {
    if (auto rest = divides(rule.antecedent, w)) {
      AttributeMultiset result = multiset_union(rule.consequent, *rest);
      out.push_back({rule, std::move(*rest), std::move(result)});
    }
  }
  return out;
}

ProofTree certificate_from_path(const RewritePath& path, const AttributeMultiset& goal) {
  ProofTree proof = derive_ref(path.start);
  for (const auto& step : path.steps) proof = derive_rwt(proof, ProofTree::hypothesis(step.rule));
  return derive_pro(proof, goal);
}

std::string_view verdict_name(const Verdict& v) {
  switch (v.index()) {
    case 0:
      return "proved";
    case 1:
      return "refuted";
    default:
      return "unknown";
  }
}

namespace {

// Dense encoding of the multisets occurring in one search problem.
class VariableIndex {
 public:
  VariableIndex(const Theory& theory, const Mfd& query) {
    std::set<std::string> vars = theory.variables();
    for (const auto& v : variables_of(query)) vars.insert(v);
    names_.assign(vars.begin(), vars.end());
  }

  std::size_t size() const { return names_.size(); }
  const std::vector<std::string>& names() const { return names_; }

  std::vector<std::uint32_t> encode(const AttributeMultiset& a) const {
    std::vector<std::uint32_t> out(names_.size(), 0);
    for (const auto& [name, n] : a) {
      const auto it = std::lower_bound(names_.begin(), names_.end(), name);
      out[static_cast<std::size_t>(it - names_.begin())] = static_cast<std::uint32_t>(n);
    }
    return out;
  }

  AttributeMultiset decode(const std::vector<std::uint32_t>& v) const {
    AttributeMultiset out;
    for (std::size_t i = 0; i < v.size(); ++i) out.add(names_[i], v[i]);
    return out;
  }

 private:
  std::vector<std::string> names_;
};

using Dense = std::vector<std::uint32_t>;

struct DenseHash {
  std::size_t operator()(const Dense& v) const noexcept {
    std::size_t h = v.size();
    for (auto x : v) h ^= x + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
    return h;
  }
};

bool dense_leq(const Dense& a, const Dense& b) {
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] > b[i]) return false;
  }
  return true;
}

}  // namespace

// --- breadth-first rewriting search --------------------------------------------------

struct RewriteSearch::Impl {
  struct Node {
    Dense state;
    std::size_t parent;
    std::size_t rule;
  };
  static constexpr std::size_t kNone = static_cast<std::size_t>(-1);

  VariableIndex index;
  std::vector<Mfd> rules;
  std::vector<std::pair<Dense, Dense>> dense_rules;
  Mfd query;
  Dense goal;
  std::size_t budget;

  std::vector<Node> nodes;
  std::unordered_map<Dense, std::size_t, DenseHash> seen;
  std::vector<std::size_t> frontier;
  std::size_t layers = 0;
  bool running = true;
  bool exhausted = false;
  std::optional<Proved> proved;

  Impl(const Theory& theory, const Mfd& q, std::size_t node_budget)
      : index(theory, q), rules(theory.unique_formulas()), query(q), goal(index.encode(q.consequent)),
        budget(std::max<std::size_t>(node_budget, 1)) {
    for (const auto& r : rules) dense_rules.emplace_back(index.encode(r.antecedent), index.encode(r.consequent));
    add(index.encode(q.antecedent), kNone, kNone);
    frontier.push_back(0);
    if (dense_leq(goal, nodes[0].state)) finish(0);
  }

  bool add(Dense state, std::size_t parent, std::size_t rule) {
    auto [it, inserted] = seen.try_emplace(state, nodes.size());
    if (!inserted) return false;
    nodes.push_back({std::move(state), parent, rule});
    return true;
  }

  void finish(std::size_t node) {
    std::vector<std::size_t> chain;
    for (std::size_t i = node; i != kNone; i = nodes[i].parent) chain.push_back(i);
    std::reverse(chain.begin(), chain.end());
    RewritePath path;
    path.start = query.antecedent;
    for (std::size_t k = 1; k < chain.size(); ++k) {
      const Node& n = nodes[chain[k]];
      const Mfd& rule = rules[n.rule];
      AttributeMultiset result = index.decode(n.state);
      AttributeMultiset remainder = *divides(rule.consequent, result);
      path.steps.push_back({rule, std::move(remainder), std::move(result)});
    }
    ProofTree certificate = certificate_from_path(path, query.consequent);
    proved = Proved{std::move(path), std::move(certificate)};
    running = false;
  }

  bool step() {
    if (!running) return false;
    std::vector<std::size_t> next;
    const Count cap = multiplicity_cap();
    for (std::size_t id : frontier) {
      for (std::size_t r = 0; r < dense_rules.size(); ++r) {
        const auto& [ante, cons] = dense_rules[r];
        const Dense& current = nodes[id].state;
        if (!dense_leq(ante, current)) continue;
        Dense succ = current;
        for (std::size_t i = 0; i < succ.size(); ++i) {
          const Count v = Count{succ[i]} - ante[i] + cons[i];
          if (v > cap) throw MultiplicityOverflow("multiplicity of '" + index.names()[i] + "' exceeds cap");
          succ[i] = static_cast<std::uint32_t>(v);
        }
        if (seen.count(succ)) continue;
        if (nodes.size() >= budget) {
          running = false;
          return false;
        }
        add(std::move(succ), id, r);
        const std::size_t added = nodes.size() - 1;
        if (dense_leq(goal, nodes[added].state)) {
          ++layers;
          finish(added);
          return false;
        }
        next.push_back(added);
      }
    }
    ++layers;
    frontier = std::move(next);
    if (frontier.empty()) {
      exhausted = true;
      running = false;
    }
    return running;
  }
};

RewriteSearch::RewriteSearch(const Theory& theory, const Mfd& query, std::size_t node_budget)
    : impl_(std::make_unique<Impl>(theory, query, node_budget)) {}
RewriteSearch::~RewriteSearch() = default;
RewriteSearch::RewriteSearch(RewriteSearch&&) noexcept = default;
RewriteSearch& RewriteSearch::operator=(RewriteSearch&&) noexcept = default;

bool RewriteSearch::step() { return impl_->step(); }
bool RewriteSearch::active() const { return impl_->running; }
const std::optional<Proved>& RewriteSearch::result() const { return impl_->proved; }

void RewriteSearch::fill(SearchReport& report) const {
  report.bfs_nodes = impl_->nodes.size();
  report.bfs_layers = impl_->layers;
  report.bfs_exhausted = impl_->exhausted;
}

std::variant<Proved, Unknown> bfs_prove(const Theory& theory, const Mfd& query, std::size_t node_budget) {
  RewriteSearch search(theory, query, node_budget);
  while (search.step()) {
  }
  if (search.result()) return *search.result();
  Unknown unknown;
  search.fill(unknown.report);
  return unknown;
}

// --- countermodel search ---------------------------------------------------------------

struct CountermodelSearch::Impl {
  struct DenseFormula {
    std::vector<std::pair<std::size_t, Count>> lhs;
    std::vector<std::pair<std::size_t, Count>> rhs;
    std::size_t ready;  // number of leading variables needed
  };

  VariableIndex index;
  std::vector<DenseFormula> theory_formulas;
  DenseFormula query;
  PomonoidEnumerator algebras;
  std::size_t budget;

  std::size_t evaluations = 0;
  std::size_t algebras_checked = 0;
  bool running = true;
  bool exhausted = false;
  std::optional<Countermodel> found;

  // Per-algebra scratch.
  const FinitePomonoid* algebra = nullptr;
  std::vector<std::size_t> assignment;
  std::vector<std::vector<std::size_t>> by_level;  // theory formula ids ready at each level
  bool budget_hit = false;

  Impl(const Theory& theory, const Mfd& q, std::size_t max_size, std::size_t evaluation_budget)
      : index(theory, q), query(compile(q)), algebras(max_size), budget(evaluation_budget) {
    for (const auto& f : theory.unique_formulas()) theory_formulas.push_back(compile(f));
    by_level.resize(index.size() + 1);
    for (std::size_t i = 0; i < theory_formulas.size(); ++i) by_level[theory_formulas[i].ready].push_back(i);
  }

  DenseFormula compile(const Mfd& f) const {
    DenseFormula out{{}, {}, 0};
    auto side = [&](const AttributeMultiset& a, std::vector<std::pair<std::size_t, Count>>& dst) {
      const Dense d = index.encode(a);
      for (std::size_t i = 0; i < d.size(); ++i) {
        if (d[i] > 0) {
          dst.emplace_back(i, d[i]);
          out.ready = std::max(out.ready, i + 1);
        }
      }
    };
    side(f.antecedent, out.lhs);
    side(f.consequent, out.rhs);
    return out;
  }

  std::size_t value(const std::vector<std::pair<std::size_t, Count>>& side) const {
    std::size_t acc = algebra->unit();
    for (const auto& [var, n] : side) acc = algebra->times(acc, elem_power(*algebra, assignment[var], n));
    return acc;
  }

  bool holds(const DenseFormula& f) const { return algebra->leq(value(f.lhs), value(f.rhs)); }

  // Depth-first over assignments in lexicographic order; `level` variables
  // are fixed. Returns true when a countermodel is found.
  bool search(std::size_t level) {
    for (std::size_t id : by_level[level]) {
      if (!holds(theory_formulas[id])) return false;
    }
    if (query.ready == level && holds(query)) return false;
    if (level == index.size()) return true;
    for (std::size_t v = 0; v < algebra->size(); ++v) {
      if (evaluations >= budget) {
        budget_hit = true;
        return false;
      }
      ++evaluations;
      assignment[level] = v;
      if (search(level + 1)) return true;
      if (budget_hit) return false;
    }
    return false;
  }

  bool step() {
    if (!running) return false;
    auto next = algebras.next();
    if (!next) {
      exhausted = true;
      running = false;
      return false;
    }
    algebra = &*next;
    assignment.assign(index.size(), 0);
    const bool hit = search(0);
    if (budget_hit) {
      running = false;
      return false;
    }
    ++algebras_checked;
    if (hit) {
      Countermodel cm{*next, {}};
      for (std::size_t i = 0; i < index.size(); ++i) cm.assignment.emplace(index.names()[i], assignment[i]);
      found = std::move(cm);
      running = false;
      return false;
    }
    return true;
  }
};

CountermodelSearch::CountermodelSearch(const Theory& theory, const Mfd& query, std::size_t max_size,
                                       std::size_t evaluation_budget)
    : impl_(std::make_unique<Impl>(theory, query, max_size, evaluation_budget)) {}
CountermodelSearch::~CountermodelSearch() = default;
CountermodelSearch::CountermodelSearch(CountermodelSearch&&) noexcept = default;
CountermodelSearch& CountermodelSearch::operator=(CountermodelSearch&&) noexcept = default;

bool CountermodelSearch::step() { return impl_->step(); }
bool CountermodelSearch::active() const { return impl_->running; }
const std::optional<Countermodel>& CountermodelSearch::result() const { return impl_->found; }

void CountermodelSearch::fill(SearchReport& report) const {
  report.model_evaluations = impl_->evaluations;
  report.algebras_checked = impl_->algebras_checked;
  report.models_exhausted = impl_->exhausted;
}

std::variant<Refuted, Unknown> find_countermodel(const Theory& theory, const Mfd& query, std::size_t max_size,
                                                 std::size_t evaluation_budget) {
  CountermodelSearch search(theory, query, max_size, evaluation_budget);
  while (search.step()) {
  }
  if (search.result()) return Refuted{*search.result()};
  Unknown unknown;
  search.fill(unknown.report);
  return unknown;
}

// --- decision ----------------------------------------------------------------------------

Verdict decide(const Theory& theory, const Mfd& query, const Budgets& budgets) {
  if (is_non_contracting_theory(theory)) {
    MemberResult m = member(theory, query);
    if (!m.result) return Refuted{};
    ProofTree certificate = certificate_from_path(m.trace.path, query.consequent);
    return Proved{std::move(m.trace.path), std::move(certificate)};
  }

  RewriteSearch prover(theory, query, budgets.bfs_nodes);
  CountermodelSearch refuter(theory, query, budgets.max_algebra_size, budgets.model_evaluations);
  while (prover.active() || refuter.active()) {
    prover.step();
    if (prover.result()) return *prover.result();
    refuter.step();
    if (refuter.result()) return Refuted{*refuter.result()};
  }
  Unknown unknown;
  prover.fill(unknown.report);
  refuter.fill(unknown.report);
  return unknown;
}

std::optional<Count> deduction_witness(const Theory& theory, const AttributeMultiset& a, const AttributeMultiset& b,
                                       Count n_max, const Budgets& budgets) {
  for (Count n = 0; n <= n_max; ++n) {
    if (std::holds_alternative<Proved>(decide(theory, Mfd{multiset_power(a, n), b}, budgets))) return n;
  }
  return std::nullopt;
}

std::set<std::string> classical_closure(const Theory& theory, const std::set<std::string>& attributes) {
  std::set<std::string> closure = attributes;
  bool changed = true;
  while (changed) {
    changed = false;
    for (const auto& f : theory) {
      const bool fires = std::all_of(f.antecedent.begin(), f.antecedent.end(),
                                     [&](const auto& entry) { return closure.count(entry.first) > 0; });
      if (!fires) continue;
      for (const auto& [name, n] : f.consequent) changed |= closure.insert(name).second;
    }
  }
  return closure;
}

bool classical_entails(const Theory& theory, const Mfd& query) {
  const auto closure = classical_closure(theory, query.antecedent.support());
  return std::all_of(query.consequent.begin(), query.consequent.end(),
                     [&](const auto& entry) { return closure.count(entry.first) > 0; });
}

}  // namespace mfd
