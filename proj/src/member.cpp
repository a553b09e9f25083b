#include "mfd/member.hpp"

namespace mfd {

std::string fresh_variable(const Theory& theory, const Mfd& query) {
  const auto& used = theory.variables();
  const auto in_query = variables_of(query);
  for (std::size_t i = 0;; ++i) {
    std::string candidate = "_y" + std::to_string(i);
    if (!used.count(candidate) && !in_query.count(candidate)) return candidate;
  }
}

MemberResult member(const Theory& theory, const Mfd& query) {
  for (const auto& f : theory) {
    if (!is_non_contracting(f)) throw ContractingTheory(f);
  }

  MemberTrace trace;
  trace.fresh_var = fresh_variable(theory, query);
  const std::string& y = trace.fresh_var;

  std::vector<Mfd> delta = theory.unique_formulas();
  AttributeMultiset by = query.consequent;
  by.add(y, 1);
  delta.push_back(Mfd{query.consequent, by});
  const std::size_t goal_rule = delta.size() - 1;

  std::int64_t n = 0;
  for (const auto& rule : delta) n += static_cast<std::int64_t>(rule.antecedent.total());
  trace.counter_initial = n;

  AttributeMultiset w = query.antecedent;
  trace.path.start = w;
  AttributeMultiset last;
  do {
    last = w;
    MemberIteration pass;
    for (std::size_t i = 0; i < delta.size(); ++i) {
      const Mfd& rule = delta[i];
      auto rest = divides(rule.antecedent, w);
      if (!rest) continue;
      AttributeMultiset next = multiset_union(rule.consequent, *rest);
      if (i != goal_rule) trace.path.steps.push_back({rule, *rest, next});
      w = std::move(next);
      pass.fired.push_back(rule);
    }
    pass.snapshot = w;
    trace.iterations.push_back(std::move(pass));
    --n;
  } while (!(last == w || n <= 0 || w[y] > 0));

  trace.counter_final = n;
  trace.result = w[y] > 0;
  return {trace.result, std::move(trace)};
}

}  // namespace mfd
