#include "mfd/cli.hpp"

#include <algorithm>
#include <iomanip>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>

#include "mfd/io.hpp"

namespace mfd::cli {

namespace {

struct Config {
  std::string theory;
  std::string query;
  std::string relation;
  std::string algebra;
  Budgets budgets;
  bool json = false;
  bool trace = false;
  bool all = false;
  std::uint64_t seed = 0;
};

// A path, or an inline theory such as "{p -> q; q -> r}".
Theory load_theory(const std::string& source) {
  if (!source.empty() && source.front() == '{') {
    if (source.back() != '}') throw ParseError(1, source.size(), "unterminated inline theory");
    std::string body = source.substr(1, source.size() - 2);
    std::replace(body.begin(), body.end(), ';', '\n');
    std::replace(body.begin(), body.end(), ',', '\n');
    return parse_theory(body);
  }
  return parse_theory(read_file(source));
}

std::string format_degree(const UnitIntervalPomonoid&, double x) {
  std::ostringstream s;
  s << std::fixed << std::setprecision(4) << x;
  return s.str();
}

std::string format_degree(const FinitePomonoid& alg, std::size_t x) { return alg.name(x); }

json degree_json(const UnitIntervalPomonoid&, double x) { return x; }
json degree_json(const FinitePomonoid& alg, std::size_t x) { return alg.name(x); }

void print_algebra(std::ostream& out, const FinitePomonoid& a) {
  std::size_t width = 1;
  for (const auto& n : a.names()) width = std::max(width, n.size());
  const auto cell = [&](const std::string& s) { out << ' ' << std::setw(static_cast<int>(width)) << s; };
  out << "  order (row <= column):\n    ";
  cell("");
  for (const auto& n : a.names()) cell(n);
  out << '\n';
  for (std::size_t i = 0; i < a.size(); ++i) {
    out << "    ";
    cell(a.name(i));
    for (std::size_t j = 0; j < a.size(); ++j) cell(a.leq(i, j) ? "x" : ".");
    out << '\n';
  }
  out << "  product:\n    ";
  cell("*");
  for (const auto& n : a.names()) cell(n);
  out << '\n';
  for (std::size_t i = 0; i < a.size(); ++i) {
    out << "    ";
    cell(a.name(i));
    for (std::size_t j = 0; j < a.size(); ++j) cell(a.name(a.times(i, j)));
    out << '\n';
  }
}

void print_path(std::ostream& out, const RewritePath& path) {
  out << "  " << to_string(path.start) << '\n';
  for (const auto& s : path.steps) out << "  => " << to_string(s.result) << "    [" << to_string(s.rule) << "]\n";
}

void print_countermodel(std::ostream& out, const Countermodel& cm) {
  out << "witness algebra (" << cm.algebra.size() << " elements, " << (cm.algebra.is_linear() ? "linear" : "non-linear")
      << "):\n";
  print_algebra(out, cm.algebra);
  out << "evaluation:";
  for (const auto& [name, x] : cm.assignment) out << ' ' << name << '=' << cm.algebra.name(x);
  out << '\n';
}

int print_verdict(std::ostream& out, const Verdict& v, bool as_json) {
  if (as_json) {
    out << verdict_to_json(v).dump(2) << '\n';
  } else if (const auto* p = std::get_if<Proved>(&v)) {
    out << "proved\nrewrite path (" << p->path.steps.size() << " steps):\n";
    print_path(out, p->path);
    out << "certificate:\n" << to_sexpr(p->certificate) << '\n';
  } else if (const auto* r = std::get_if<Refuted>(&v)) {
    out << "refuted\n";
    if (r->by_member_algorithm()) {
      out << "witness: member-algorithm\n";
    } else {
      print_countermodel(out, *r->countermodel);
    }
  } else {
    const auto& rep = std::get<Unknown>(v).report;
    out << "unknown (budget exhausted)\n"
        << "  bfs: " << rep.bfs_nodes << " nodes, " << rep.bfs_layers << " layers"
        << (rep.bfs_exhausted ? ", reachable set exhausted" : "") << '\n'
        << "  models: " << rep.model_evaluations << " evaluations over " << rep.algebras_checked << " algebras"
        << (rep.models_exhausted ? ", size limit reached" : "") << '\n';
  }
  switch (v.index()) {
    case 0:
      return ok;
    case 1:
      return refuted;
    default:
      return unknown;
  }
}

int cmd_decide(const Config& c, std::ostream& out) {
  const Theory theory = load_theory(c.theory);
  const Mfd query = parse_mfd(c.query);
  return print_verdict(out, decide(theory, query, c.budgets), c.json);
}

int cmd_countermodel(const Config& c, std::ostream& out) {
  const Theory theory = load_theory(c.theory);
  const Mfd query = parse_mfd(c.query);
  auto found = find_countermodel(theory, query, c.budgets.max_algebra_size, c.budgets.model_evaluations);
  Verdict v = std::visit([](auto&& x) -> Verdict { return std::move(x); }, std::move(found));
  return print_verdict(out, v, c.json);
}

int cmd_member(const Config& c, std::ostream& out) {
  const Theory theory = load_theory(c.theory);
  const Mfd query = parse_mfd(c.query);
  const MemberResult m = member(theory, query);
  if (c.json) {
    json doc = member_to_json(m);
    if (!c.trace) doc.erase("iterations");
    out << doc.dump(2) << '\n';
  } else {
    out << (m.result ? "true" : "false") << '\n';
    if (c.trace) {
      out << "fresh variable: " << m.trace.fresh_var << "\nN: " << m.trace.counter_initial << '\n';
      for (std::size_t k = 0; k < m.trace.iterations.size(); ++k) {
        const auto& it = m.trace.iterations[k];
        out << "iteration " << k + 1 << ": W = " << to_string(it.snapshot) << "  fired:";
        if (it.fired.empty()) out << " none";
        for (const auto& f : it.fired) out << " [" << to_string(f) << "]";
        out << '\n';
      }
      out << "final N: " << m.trace.counter_final << '\n';
    }
  }
  return m.result ? ok : refuted;
}

template <class Alg>
int check_relation(const RankedRelation<Alg>& rel, const Theory& theory, const Config& c, std::ostream& out) {
  const auto found = first_violation(rel, theory);
  if (c.json) {
    json doc = {{"holds", !found}, {"tuples", rel.size()}};
    if (found) {
      json pairs = json::array();
      for (const auto& v : violations(rel, found->formula)) {
        pairs.push_back({{"i", v.i + 1},
                         {"j", v.j + 1},
                         {"antecedent", degree_json(rel.algebra(), v.antecedent)},
                         {"consequent", degree_json(rel.algebra(), v.consequent)}});
      }
      doc["formula"] = to_string(found->formula);
      doc["violations"] = pairs;
    }
    out << doc.dump(2) << '\n';
    return found ? refuted : ok;
  }
  if (!found) {
    out << "ok: relation (" << rel.size() << " tuples) satisfies all " << theory.size() << " formulas\n";
    return ok;
  }
  const auto& alg = rel.algebra();
  auto line = [&](const PairDegrees<Alg>& d) {
    out << "  tuples (" << d.i + 1 << ", " << d.j + 1 << "): " << format_degree(alg, d.antecedent)
        << " not <= " << format_degree(alg, d.consequent) << '\n';
  };
  out << "violated: " << to_string(found->formula) << '\n';
  if (c.all) {
    for (const auto& d : violations(rel, found->formula)) line(d);
  } else {
    line(found->pair);
  }
  return refuted;
}

int cmd_check(const Config& c, std::ostream& out) {
  const AnyRelation rel = relation_from_json(load_json(c.relation));
  const Theory theory = load_theory(c.theory);
  return std::visit([&](const auto& r) { return check_relation(r, theory, c, out); }, rel);
}

int cmd_classify(const Config& c, std::ostream& out) {
  const Theory theory = load_theory(c.theory);
  std::vector<std::string> contracting, trivial;
  for (const auto& f : theory.unique_formulas()) {
    if (!is_non_contracting(f)) contracting.push_back(to_string(f));
    if (is_trivial(f)) trivial.push_back(to_string(f));
  }
  if (c.json) {
    out << json{{"formulas", theory.size()},
                {"non_contracting", contracting.empty()},
                {"contracting_formulas", contracting},
                {"trivial_formulas", trivial}}
               .dump(2)
        << '\n';
    return ok;
  }
  auto list = [&](const std::vector<std::string>& xs) {
    if (xs.empty()) {
      out << "none\n";
      return;
    }
    for (std::size_t i = 0; i < xs.size(); ++i) out << (i ? ", " : "") << xs[i];
    out << '\n';
  };
  out << "formulas: " << theory.size() << '\n';
  out << "non-contracting: " << (contracting.empty() ? "true" : "false") << '\n';
  out << "contracting formulas: ";
  list(contracting);
  out << "trivial formulas: ";
  list(trivial);
  return ok;
}

int cmd_boolify(const Config& c, std::ostream& out) {
  out << format_theory(booleanize(load_theory(c.theory)));
  return ok;
}

int cmd_complete(const Config& c, std::ostream& out) {
  const FinitePomonoid p = algebra_from_json(load_json(c.algebra));
  const DownsetCompletion dc = downset_completion(p);
  if (c.json) {
    json doc = lattice_to_json(dc.lattice);
    json embedding = json::object();
    for (std::size_t i = 0; i < p.size(); ++i) embedding[p.name(i)] = dc.lattice.name(dc.embedding[i]);
    doc["embedding"] = embedding;
    out << doc.dump(2) << '\n';
    return ok;
  }
  const auto& l = dc.lattice;
  out << "downset completion: " << l.size() << " elements\n";
  print_algebra(out, l.pomonoid());
  out << "  residuum (row -> column):\n";
  for (std::size_t i = 0; i < l.size(); ++i) {
    out << "    " << l.name(i) << ":";
    for (std::size_t j = 0; j < l.size(); ++j) out << ' ' << l.name(l.residuum(i, j));
    out << '\n';
  }
  out << "embedding:";
  for (std::size_t i = 0; i < p.size(); ++i) out << ' ' << p.name(i) << "->" << l.name(dc.embedding[i]);
  out << '\n';
  return ok;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Config c;
  CLI::App app{"Reasoning about monoidal functional dependencies", "mfd"};
  app.require_subcommand(1, 1);
  app.add_flag("--json", c.json, "Machine-readable output");
  app.add_option("--seed", c.seed, "Random seed (accepted for scripting; all commands are deterministic)");

  auto budget_opts = [&](CLI::App* sub) {
    sub->add_option("--budget-bfs", c.budgets.bfs_nodes, "BFS node budget")->check(CLI::PositiveNumber);
    sub->add_option("--budget-models", c.budgets.model_evaluations, "Countermodel evaluation budget")
        ->check(CLI::PositiveNumber);
    sub->add_option("--max-size", c.budgets.max_algebra_size, "Largest algebra to enumerate")
        ->check(CLI::Range(std::size_t{1}, kDefaultEnumerationCap));
  };

  auto* decide_cmd = app.add_subcommand("decide", "Decide whether a theory proves a query");
  decide_cmd->add_option("theory", c.theory, "Theory file or inline {f; g}")->required();
  decide_cmd->add_option("query", c.query, "Query, e.g. 'p p -> q q'")->required();
  budget_opts(decide_cmd);

  auto* member_cmd = app.add_subcommand("member", "Decision procedure for non-contracting theories");
  member_cmd->add_option("theory", c.theory)->required();
  member_cmd->add_option("query", c.query)->required();
  member_cmd->add_flag("--trace", c.trace, "Print W and fired rules per iteration");

  auto* check_cmd = app.add_subcommand("check", "Check a ranked relation against a theory");
  check_cmd->add_option("relation", c.relation, "Relation JSON file")->required();
  check_cmd->add_option("theory", c.theory)->required();
  check_cmd->add_flag("--all", c.all, "List every violating pair of the first violated formula");

  auto* cm_cmd = app.add_subcommand("countermodel", "Search finite algebras for a countermodel");
  cm_cmd->add_option("theory", c.theory)->required();
  cm_cmd->add_option("query", c.query)->required();
  budget_opts(cm_cmd);

  auto* classify_cmd = app.add_subcommand("classify", "Report contracting and trivial formulas");
  classify_cmd->add_option("theory", c.theory)->required();

  auto* boolify_cmd = app.add_subcommand("boolify", "Add p -> p p for every variable");
  boolify_cmd->add_option("theory", c.theory)->required();

  auto* complete_cmd = app.add_subcommand("complete-algebra", "Downset completion of a finite pomonoid");
  complete_cmd->add_option("algebra", c.algebra, "Algebra JSON file")->required();

  for (auto* sub : app.get_subcommands({})) sub->fallthrough();

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return ok;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return ok;
  } catch (const CLI::ParseError& e) {
    err << "mfd: " << e.what() << '\n';
    return usage;
  }

  try {
    if (decide_cmd->parsed()) return cmd_decide(c, out);
    if (member_cmd->parsed()) return cmd_member(c, out);
    if (check_cmd->parsed()) return cmd_check(c, out);
    if (cm_cmd->parsed()) return cmd_countermodel(c, out);
    if (classify_cmd->parsed()) return cmd_classify(c, out);
    if (boolify_cmd->parsed()) return cmd_boolify(c, out);
    if (complete_cmd->parsed()) return cmd_complete(c, out);
  } catch (const ParseError& e) {
    err << "mfd: parse error at " << e.what() << '\n';
    return usage;
  } catch (const ContractingTheory& e) {
    err << "mfd: " << e.what() << '\n';
    return rejected;
  } catch (const AttributeOutsideScheme& e) {
    err << "mfd: scheme mismatch: " << e.what() << '\n';
    return rejected;
  } catch (const InvalidAlgebra& e) {
    err << "mfd: " << e.what() << '\n';
    return usage;
  } catch (const InputError& e) {
    err << "mfd: " << e.what() << '\n';
    return usage;
  } catch (const RelationError& e) {
    err << "mfd: " << e.what() << '\n';
    return usage;
  } catch (const ShapeError& e) {
    err << "mfd: " << e.what() << '\n';
    return usage;
  } catch (const std::exception& e) {
    err << "mfd: internal error: " << e.what() << '\n';
    return internal;
  }
  return usage;
}

}  // namespace mfd::cli
