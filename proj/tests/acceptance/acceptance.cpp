// Acceptance suite: one PASS/FAIL line per criterion. Exit status is the
// number of failed criteria.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "mfd/io.hpp"

using namespace mfd;

namespace {

// Tolerances against printed degrees.
constexpr double kTwoDecimalTol = 0.005;
constexpr double kFourDecimalTol = 0.0005;

// Runtime limits in seconds.
constexpr double kLimitC1 = 1.0;
constexpr double kLimitC2 = 1.0;
constexpr double kLimitC3 = 120.0;
constexpr double kLimitC4 = 10.0;
constexpr double kLimitC5 = 120.0;
constexpr double kLimitC6 = 60.0;
constexpr double kLimitC7 = 60.0;
constexpr double kLimitC8 = 120.0;
constexpr double kLimitC9 = 120.0;
constexpr double kLimitC10 = 60.0;

constexpr std::uint32_t kSeed = 20240607;

using Clock = std::chrono::steady_clock;
using UnitRelation = RankedRelation<UnitIntervalPomonoid>;

std::string data(const char* file) { return std::string(MFD_DATA_DIR "/") + file; }

UnitRelation load_relation(const char* file) { return std::get<UnitRelation>(relation_from_json(load_json(data(file)))); }

struct Outcome {
  bool pass = true;
  std::ostringstream detail;

  void require(bool ok, const std::string& what) {
    if (!ok) {
      if (!pass) detail << "; ";
      detail << "FAILED " << what;
      pass = false;
    }
  }
};

std::string fmt(double x, int digits = 4) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.*f", digits, x);
  return buf;
}

int failures = 0;

void criterion(int id, const char* title, double limit, const std::function<void(Outcome&)>& body) {
  Outcome o;
  const auto t0 = Clock::now();
  try {
    body(o);
  } catch (const std::exception& e) {
    o.require(false, std::string("exception: ") + e.what());
  }
  const double secs = std::chrono::duration<double>(Clock::now() - t0).count();
  o.require(secs < limit, "runtime " + fmt(secs, 2) + "s >= " + fmt(limit, 0) + "s");
  if (!o.pass) ++failures;
  std::cout << (o.pass ? "[PASS] " : "[FAIL] ") << "C" << id << " " << title << " (" << fmt(secs, 3) << "s)";
  const std::string d = o.detail.str();
  if (!d.empty()) std::cout << ": " << d;
  std::cout << std::endl;
}

// Plain table-driven evaluation, kept apart from the library's evaluate().
std::size_t table_value(const FinitePomonoid& alg, const std::map<std::string, std::size_t, std::less<>>& e,
                        const AttributeMultiset& a) {
  std::size_t acc = alg.unit();
  for (const auto& [p, n] : a) {
    for (Count k = 0; k < n; ++k) acc = alg.times(acc, e.at(p));
  }
  return acc;
}

bool table_satisfies(const FinitePomonoid& alg, const std::map<std::string, std::size_t, std::less<>>& e,
                     const Mfd& f) {
  return alg.leq(table_value(alg, e, f.antecedent), table_value(alg, e, f.consequent));
}

// Calls `visit` on every evaluation of `vars` into `alg` until it returns false.
bool for_each_evaluation(const FinitePomonoid& alg, const std::vector<std::string>& vars,
                         const std::function<bool(const std::map<std::string, std::size_t, std::less<>>&)>& visit) {
  std::vector<std::size_t> values(vars.size(), 0);
  std::map<std::string, std::size_t, std::less<>> e;
  while (true) {
    for (std::size_t i = 0; i < vars.size(); ++i) e[vars[i]] = values[i];
    if (!visit(e)) return false;
    std::size_t k = 0;
    while (k < values.size() && ++values[k] == alg.size()) values[k++] = 0;
    if (k == values.size()) return true;
  }
}

std::vector<std::string> variables(const Theory& t, const Mfd& q) {
  std::set<std::string> vs = t.variables();
  for (const auto& v : variables_of(q)) vs.insert(v);
  return {vs.begin(), vs.end()};
}

// Does `q` hold in every model of `t` over the given algebras?
bool holds_in_all_models(const std::vector<FinitePomonoid>& algebras, const Theory& t, const Mfd& q) {
  const auto vars = variables(t, q);
  for (const auto& alg : algebras) {
    const bool ok = for_each_evaluation(alg, vars, [&](const auto& e) {
      for (const auto& f : t) {
        if (!table_satisfies(alg, e, f)) return true;
      }
      return table_satisfies(alg, e, q);
    });
    if (!ok) return false;
  }
  return true;
}

AttributeMultiset random_side(std::mt19937& rng, int vars, int max_mult) {
  static const char* names[] = {"p", "q", "r", "s", "t", "u"};
  std::uniform_int_distribution<int> mult(0, max_mult);
  AttributeMultiset a;
  for (int v = 0; v < vars; ++v) a.add(names[v], static_cast<Count>(mult(rng)));
  return a;
}

Theory random_theory(std::mt19937& rng, int max_formulas, int vars, int max_mult) {
  std::uniform_int_distribution<int> count(1, max_formulas);
  Theory t;
  const int k = count(rng);
  for (int i = 0; i < k; ++i) t.add(Mfd{random_side(rng, vars, max_mult), random_side(rng, vars, max_mult)});
  return t;
}

bool near(double x, double printed, double tol) { return std::fabs(x - printed) <= tol; }

}  // namespace

int main() {
  std::cout << "acceptance suite, seed " << kSeed << std::endl;

  criterion(1, "ranked relation: (LOCATION & AREA) => PRICE degrees and satisfaction", kLimitC1, [](Outcome& o) {
    struct Printed {
      int i, j;
      double lhs, rhs;
    };
    const Printed printed[] = {{1, 2, 0.73, 0.85}, {1, 3, 0.34, 0.83}, {1, 4, 0.66, 0.89},
                               {2, 3, 0.47, 0.97}, {2, 4, 0.73, 0.75}, {3, 4, 0.37, 0.74}};
    const auto rel = load_relation("house_relation.json");
    const auto la = parse_multiset("LOCATION AREA"), p = parse_multiset("PRICE");
    int truncation_matches = 0;
    for (const auto& pr : printed) {
      const double lhs = tuple_similarity(rel, pr.i - 1, pr.j - 1, la);
      const double rhs = tuple_similarity(rel, pr.i - 1, pr.j - 1, p);
      const std::string pair = "(" + std::to_string(pr.i) + "," + std::to_string(pr.j) + ")";
      o.require(near(lhs, pr.lhs, kTwoDecimalTol), pair + " L&A " + fmt(lhs, 5) + " vs " + fmt(pr.lhs, 2));
      o.require(near(rhs, pr.rhs, kTwoDecimalTol), pair + " P " + fmt(rhs, 5) + " vs " + fmt(pr.rhs, 2));
      truncation_matches += std::floor(lhs * 100) / 100 == pr.lhs;
      truncation_matches += std::floor(rhs * 100) / 100 == pr.rhs;
    }
    o.require(satisfies_relation(rel, parse_mfd("LOCATION AREA -> PRICE")).holds, "satisfies_relation");
    if (o.pass) o.detail << "all 12 degrees within " << kTwoDecimalTol;
    std::cout << "[INFO] C1 printed degrees equal exact degrees truncated to 2 decimals in " << truncation_matches
              << "/12 cases" << std::endl;
  });

  criterion(2, "ranked relation: violation, inserted tuple, weakened dependency", kLimitC2, [](Outcome& o) {
    const auto rel = load_relation("house_relation.json");
    const Mfd pl = parse_mfd("PRICE -> LOCATION");
    o.require(!satisfies_relation(rel, pl).holds, "PRICE => LOCATION violated");
    bool pair13 = false;
    for (const auto& v : violations(rel, pl)) {
      if (v.i == 0 && v.j == 2) {
        pair13 = true;
        o.require(near(v.antecedent, 0.83, kTwoDecimalTol), "(1,3) P " + fmt(v.antecedent, 5) + " vs 0.83");
        o.require(near(v.consequent, 0.35, kTwoDecimalTol), "(1,3) L " + fmt(v.consequent, 5) + " vs 0.35");
      }
    }
    o.require(pair13, "pair (1,3) among the violations");

    const auto ins = load_relation("house_inserted.json");
    const Mfd lap = parse_mfd("LOCATION AREA -> PRICE");
    const Mfd laap = parse_mfd("LOCATION AREA AREA -> PRICE");
    const auto first = satisfies_relation(ins, lap);
    o.require(!first.holds, "(L&A) => P violated after insertion");
    if (!first.holds) {
      o.require(near(first.violation->antecedent, 0.8263, kFourDecimalTol) &&
                    near(first.violation->consequent, 0.8187, kFourDecimalTol),
                "first violation " + fmt(first.violation->antecedent) + " vs " + fmt(first.violation->consequent));
    }
    struct Printed {
      std::size_t other;
      double lhs, laa, rhs;
    };
    const Printed printed[] = {{1, 0.8263, 0.8156, 0.8187}, {3, 0.6268, 0.5315, 0.6219}};
    const std::size_t fresh = ins.size() - 1;
    for (const auto& pr : printed) {
      const double lhs = tuple_similarity(ins, fresh, pr.other, lap.antecedent);
      const double laa = tuple_similarity(ins, fresh, pr.other, laap.antecedent);
      const double rhs = tuple_similarity(ins, fresh, pr.other, lap.consequent);
      const std::string tag = "new vs " + std::to_string(pr.other + 1);
      o.require(near(lhs, pr.lhs, kFourDecimalTol), tag + " L&A " + fmt(lhs, 5));
      o.require(near(laa, pr.laa, kFourDecimalTol), tag + " L&A&A " + fmt(laa, 5));
      o.require(near(rhs, pr.rhs, kFourDecimalTol), tag + " P " + fmt(rhs, 5));
      o.require(lhs > rhs, tag + " L&A not <= P");
      o.require(laa <= rhs, tag + " L&A&A <= P");
    }
    o.require(satisfies_relation(ins, laap).holds, "(L&A&A) => P holds after insertion");
  });

  criterion(3, "non-linear example: proof of pp => qq, refutation of p => q, no linear countermodel", kLimitC3,
            [](Outcome& o) {
              const Theory t = parse_theory(read_file(data("linear.theory")));
              const auto proved = decide(t, parse_mfd("p p -> q q"));
              const auto* p = std::get_if<Proved>(&proved);
              o.require(p != nullptr, "pp => qq proved");
              if (p) {
                o.require(p->path.steps.size() == 4, "4-step path (got " + std::to_string(p->path.steps.size()) + ")");
                o.require(is_valid_path(p->path, t), "path valid");
                o.require(check_proof(p->certificate, t) == parse_mfd("p p -> q q"), "certificate checks");
              }
              const Mfd pq = parse_mfd("p -> q");
              const auto refuted = decide(t, pq);
              const auto* r = std::get_if<Refuted>(&refuted);
              o.require(r && r->countermodel, "p => q refuted by a countermodel");
              if (r && r->countermodel) {
                const auto& cm = *r->countermodel;
                o.require(cm.algebra.size() <= 5, "witness size <= 5");
                o.require(validate(cm.algebra).empty(), "witness validates");
                bool model = true;
                for (const auto& f : t) model = model && table_satisfies(cm.algebra, cm.assignment, f);
                o.require(model && !table_satisfies(cm.algebra, cm.assignment, pq), "witness re-checked");
                o.detail << "witness size " << cm.algebra.size() << (cm.algebra.is_linear() ? " linear" : " non-linear");
              }
              std::size_t linear = 0, models = 0;
              bool refutes = false;
              const auto vars = variables(t, pq);
              for (const auto& alg : enumerate_pomonoids(5)) {
                if (!alg.is_linear()) continue;
                ++linear;
                for_each_evaluation(alg, vars, [&](const auto& e) {
                  for (const auto& f : t) {
                    if (!table_satisfies(alg, e, f)) return true;
                  }
                  ++models;
                  if (!table_satisfies(alg, e, pq)) refutes = true;
                  return !refutes;
                });
              }
              o.require(!refutes, "no linear countermodel up to size 5");
              o.detail << ", " << linear << " linear algebras, " << models << " linear models checked";
            });

  criterion(4, "additivity and accumulation fail, witnesses of size <= 3", kLimitC4, [](Outcome& o) {
    const std::pair<const char*, const char*> cases[] = {{"additivity.theory", "p -> q r"},
                                                         {"accumulation.theory", "p -> q r s"}};
    for (const auto& [file, query] : cases) {
      const Theory t = parse_theory(read_file(data(file)));
      const Mfd q = parse_mfd(query);
      const auto r = find_countermodel(t, q, 3, 1'000'000);
      const auto* ref = std::get_if<Refuted>(&r);
      o.require(ref != nullptr, std::string(file) + " refuted");
      if (!ref) continue;
      const auto& cm = *ref->countermodel;
      o.require(cm.algebra.size() <= 3, std::string(file) + " witness size");
      o.require(validate(cm.algebra).empty(), std::string(file) + " witness validates");
      bool model = true;
      for (const auto& f : t) model = model && table_satisfies(cm.algebra, cm.assignment, f);
      o.require(model, std::string(file) + " witness models the theory");
      o.require(!table_satisfies(cm.algebra, cm.assignment, q), std::string(file) + " witness refutes");
      if (!o.detail.str().empty()) o.detail << ", ";
      o.detail << file << " size " << cm.algebra.size();
    }
  });

  criterion(5, "soundness: bfs proofs hold in all models of size <= 3", kLimitC5, [](Outcome& o) {
    std::mt19937 rng(kSeed + 5);
    const auto algebras = enumerate_pomonoids(3);
    int proved = 0, violations = 0;
    for (int k = 0; k < 200; ++k) {
      const Theory t = random_theory(rng, 3, 3, 2);
      const Mfd q{random_side(rng, 3, 2), random_side(rng, 3, 2)};
      const auto r = bfs_prove(t, q, 100'000);
      const auto* p = std::get_if<Proved>(&r);
      if (!p) continue;
      ++proved;
      if (check_proof(p->certificate, t) != q || !holds_in_all_models(algebras, t, q)) ++violations;
    }
    o.require(violations == 0, std::to_string(violations) + " violations");
    o.require(proved > 0, "some proofs found");
    o.detail << proved << "/200 proved, " << violations << " violations";
  });

  criterion(6, "member agrees with bfs, loop bound respected", kLimitC6, [](Outcome& o) {
    std::mt19937 rng(kSeed + 6);
    std::uniform_int_distribution<int> extra(0, 2);
    int disagreements = 0, bound_breaks = 0, positive = 0;
    for (int k = 0; k < 200; ++k) {
      Theory t;
      const int n = std::uniform_int_distribution<int>(1, 3)(rng);
      for (int i = 0; i < n; ++i) {
        const auto a = random_side(rng, 3, 2);
        t.add(Mfd{a, multiset_union(a, random_side(rng, 3, 1))});
      }
      const Mfd q{random_side(rng, 3, 2), random_side(rng, 3, 2)};
      const auto m = member(t, q);
      const bool bfs = std::holds_alternative<Proved>(bfs_prove(t, q, 100'000));
      disagreements += m.result != bfs;
      positive += m.result;
      std::int64_t bound = 1 + static_cast<std::int64_t>(q.consequent.total());
      for (const auto& f : t.unique_formulas()) bound += static_cast<std::int64_t>(f.antecedent.total());
      bound_breaks += static_cast<std::int64_t>(m.trace.iterations.size()) > bound;
    }
    o.require(disagreements == 0, std::to_string(disagreements) + " disagreements");
    o.require(bound_breaks == 0, std::to_string(bound_breaks) + " loop-bound violations");
    o.detail << positive << "/200 provable, 0 disagreements required";
  });

  criterion(7, "Boolean collapse: booleanized decide equals classical closure", kLimitC7, [](Outcome& o) {
    std::mt19937 rng(kSeed + 7);
    static const char* names[] = {"a", "b", "c", "d", "e", "f"};
    std::uniform_int_distribution<int> bit(0, 2);
    int disagreements = 0, entailed = 0, member_path = 0;
    for (int k = 0; k < 100; ++k) {
      const int attrs = std::uniform_int_distribution<int>(2, 6)(rng);
      const int fds = std::uniform_int_distribution<int>(1, 6)(rng);
      auto random_set = [&]() {
        AttributeMultiset s;
        for (int v = 0; v < attrs; ++v) {
          if (bit(rng) == 0) s.add(names[v]);
        }
        return s;
      };
      Theory classical, normal;
      for (int i = 0; i < fds; ++i) {
        const auto a = random_set(), b = random_set();
        classical.add(Mfd{a, b});
        normal.add(Mfd{a, support_of(multiset_union(a, b))});
      }
      const Mfd q{random_set(), random_set()};
      std::set<std::string> extra;
      for (const auto& v : variables_of(q)) extra.insert(v);
      const Theory boolean = booleanize(normal, extra);
      member_path += is_non_contracting_theory(boolean);
      const auto v = decide(boolean, q);
      const bool expected = classical_entails(classical, q);
      entailed += expected;
      if (std::holds_alternative<Unknown>(v) || std::holds_alternative<Proved>(v) != expected) ++disagreements;
    }
    o.require(disagreements == 0, std::to_string(disagreements) + " disagreements");
    o.require(member_path == 100, "member fast path on every instance");
    o.detail << entailed << "/100 classically entailed";
  });

  criterion(8, "local deduction: theory + {1 => A} proves 1 => B iff some A^n => B, n <= 6", kLimitC8,
            [](Outcome& o) {
              std::mt19937 rng(kSeed + 8);
              Budgets budgets;
              budgets.bfs_nodes = 20'000;
              budgets.model_evaluations = 200'000;
              budgets.max_algebra_size = 4;
              int settled = 0, skipped = 0, disagreements = 0, attempts = 0, positive = 0;
              while (settled < 50 && attempts < 1000) {
                ++attempts;
                const Theory t = random_theory(rng, 2, 3, 2);
                const auto a = random_side(rng, 3, 1), b = random_side(rng, 3, 1);
                Theory extended = t;
                extended.add(Mfd{{}, a});
                const auto lhs = decide(extended, Mfd{{}, b}, budgets);
                if (std::holds_alternative<Unknown>(lhs)) {
                  ++skipped;
                  continue;
                }
                std::optional<Count> least;
                bool unsettled = false;
                for (Count n = 0; n <= 6 && !least; ++n) {
                  const auto v = decide(t, Mfd{multiset_power(a, n), b}, budgets);
                  if (std::holds_alternative<Proved>(v)) least = n;
                  if (std::holds_alternative<Unknown>(v)) unsettled = true;
                }
                if (!least && unsettled) {
                  ++skipped;
                  continue;
                }
                ++settled;
                const bool left = std::holds_alternative<Proved>(lhs);
                positive += left;
                const auto witness = deduction_witness(t, a, b, 6, budgets);
                if (left != least.has_value() || witness != least) ++disagreements;
              }
              o.require(settled == 50, "only " + std::to_string(settled) + " settled instances");
              o.require(disagreements == 0, std::to_string(disagreements) + " disagreements");
              o.detail << settled << " settled (" << positive << " provable), " << skipped << " skipped of "
                       << attempts << ", skip rate " << fmt(100.0 * skipped / std::max(attempts, 1), 1) << "%";
            });

  criterion(9, "downset completion of every pomonoid of size <= 4", kLimitC9, [](Outcome& o) {
    int checked = 0, bad = 0;
    for (const auto& p : enumerate_pomonoids(4)) {
      ++checked;
      const auto dc = downset_completion(p);
      const auto& l = dc.lattice;
      bool ok = validate(l).empty();
      // adjointness again, spelled out
      for (std::size_t x = 0; x < l.size(); ++x) {
        for (std::size_t y = 0; y < l.size(); ++y) {
          for (std::size_t z = 0; z < l.size(); ++z) {
            ok = ok && (l.leq(l.times(x, y), z) == l.leq(x, l.residuum(y, z)));
          }
        }
      }
      const auto& h = dc.embedding;
      ok = ok && h[p.unit()] == l.unit();
      for (std::size_t a = 0; a < p.size(); ++a) {
        for (std::size_t b = 0; b < p.size(); ++b) {
          ok = ok && h[p.times(a, b)] == l.times(h[a], h[b]);
          ok = ok && p.leq(a, b) == l.leq(h[a], h[b]);
          ok = ok && (a == b) == (h[a] == h[b]);
        }
      }
      bad += !ok;
    }
    o.require(bad == 0, std::to_string(bad) + " failures");
    o.detail << checked << " pomonoids completed";
  });

  criterion(10, "triviality equals validity in all pomonoids of size <= 3", kLimitC10, [](Outcome& o) {
    std::mt19937 rng(kSeed + 10);
    const auto algebras = enumerate_pomonoids(3);
    int disagreements = 0, trivial = 0;
    for (int k = 0; k < 500; ++k) {
      const int vars = std::uniform_int_distribution<int>(1, 3)(rng);
      Mfd f{random_side(rng, vars, 2), random_side(rng, vars, 2)};
      // bias towards trivial shapes so both outcomes are exercised
      if (k % 3 == 0) f.antecedent = multiset_union(f.antecedent, f.consequent);
      const bool brute = holds_in_all_models(algebras, Theory{}, f);
      trivial += is_trivial(f);
      disagreements += brute != is_trivial(f);
    }
    o.require(disagreements == 0, std::to_string(disagreements) + " disagreements");
    o.detail << trivial << "/500 trivial";
  });

  std::cout << (failures == 0 ? "all criteria passed" : std::to_string(failures) + " criteria failed") << std::endl;
  return failures;
}
