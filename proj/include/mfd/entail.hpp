#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <variant>
#include <vector>

#include "mfd/algebra.hpp"
#include "mfd/formula.hpp"
#include "mfd/proof.hpp"

namespace mfd {

// One rewrite: previous = rule.antecedent * remainder, result = rule.consequent * remainder.
struct RewriteStep {
  Mfd rule;
  AttributeMultiset remainder;
  AttributeMultiset result;
};

struct RewritePath {
  AttributeMultiset start;
  std::vector<RewriteStep> steps;

  const AttributeMultiset& end() const { return steps.empty() ? start : steps.back().result; }
};

// Checks that every step uses a rule of `theory` and chains correctly.
bool is_valid_path(const RewritePath& path, const Theory& theory);

// All one-step rewrites of `w`, one per applicable formula, in theory order.
std::vector<RewriteStep> rewrite_successors(const AttributeMultiset& w, const Theory& theory);

// Turns a path from A to some B*C into an Ax/Cut proof of A => B: reflexivity,
// one rewriting step per path step, then projection.
ProofTree certificate_from_path(const RewritePath& path, const AttributeMultiset& goal);

struct Budgets {
  std::size_t bfs_nodes = 100'000;
  std::size_t model_evaluations = 1'000'000;
  std::size_t max_algebra_size = 5;
};

struct Proved {
  RewritePath path;
  ProofTree certificate;
};

// Finite pomonoid plus an assignment of its elements to the variables.
struct Countermodel {
  FinitePomonoid algebra;
  std::map<std::string, std::size_t, std::less<>> assignment;

  Evaluation<FinitePomonoid> evaluation() const { return {algebra, assignment}; }
};

struct Refuted {
  // Empty when the verdict comes from the non-contracting decision procedure.
  std::optional<Countermodel> countermodel;

  bool by_member_algorithm() const { return !countermodel.has_value(); }
};

struct SearchReport {
  std::size_t bfs_nodes = 0;
  std::size_t bfs_layers = 0;
  // The reachable rewrite graph was explored completely without success.
  bool bfs_exhausted = false;
  std::size_t model_evaluations = 0;
  std::size_t algebras_checked = 0;
  // Every algebra up to the size limit was scanned without success.
  bool models_exhausted = false;
};

struct Unknown {
  SearchReport report;
};

using Verdict = std::variant<Proved, Refuted, Unknown>;

std::string_view verdict_name(const Verdict& v);

// Breadth-first search over the rewrite graph, stepping one layer at a time.
class RewriteSearch {
 public:
  RewriteSearch(const Theory& theory, const Mfd& query, std::size_t node_budget);
  ~RewriteSearch();
  RewriteSearch(RewriteSearch&&) noexcept;
  RewriteSearch& operator=(RewriteSearch&&) noexcept;

  // Expands the next layer. Returns false once the search has stopped
  // (success, exhaustion or budget).
  bool step();
  bool active() const;
  const std::optional<Proved>& result() const;
  void fill(SearchReport& report) const;

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

std::variant<Proved, Unknown> bfs_prove(const Theory& theory, const Mfd& query, std::size_t node_budget);

// Scans enumerated pomonoids in order, one algebra per step, for a model of
// the theory that violates the query.
class CountermodelSearch {
 public:
  CountermodelSearch(const Theory& theory, const Mfd& query, std::size_t max_size, std::size_t evaluation_budget);
  ~CountermodelSearch();
  CountermodelSearch(CountermodelSearch&&) noexcept;
  CountermodelSearch& operator=(CountermodelSearch&&) noexcept;

  bool step();
  bool active() const;
  const std::optional<Countermodel>& result() const;
  void fill(SearchReport& report) const;

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

std::variant<Refuted, Unknown> find_countermodel(const Theory& theory, const Mfd& query, std::size_t max_size,
                                                 std::size_t evaluation_budget);

// Non-contracting theories go through the member algorithm; anything else
// alternates one BFS layer with one algebra sweep until either side
// succeeds or both run out of budget.
Verdict decide(const Theory& theory, const Mfd& query, const Budgets& budgets = {});

// Least n <= n_max such that theory proves A^n => B.
std::optional<Count> deduction_witness(const Theory& theory, const AttributeMultiset& a, const AttributeMultiset& b,
                                       Count n_max, const Budgets& budgets = {});

// Classical FD entailment on the supports (set-based attribute closure).
bool classical_entails(const Theory& theory, const Mfd& query);

// Attribute-set closure of `attributes` under the support collapse of `theory`.
std::set<std::string> classical_closure(const Theory& theory, const std::set<std::string>& attributes);

}  // namespace mfd
