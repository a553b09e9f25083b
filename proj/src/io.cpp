#include "mfd/io.hpp"

#include <fstream>
#include <sstream>

namespace mfd {

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open '" + path.string() + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

json load_json(const std::filesystem::path& path) {
  try {
    return json::parse(read_file(path));
  } catch (const json::parse_error& e) {
    throw InputError(path.string() + ": " + e.what());
  }
}

namespace {

const json& field(const json& doc, const char* key) {
  if (!doc.is_object()) throw InputError("expected a JSON object");
  auto it = doc.find(key);
  if (it == doc.end()) throw InputError(std::string("missing field '") + key + "'");
  return *it;
}

template <class T>
T get_as(const json& v, const std::string& what) {
  try {
    return v.get<T>();
  } catch (const json::exception&) {
    throw InputError(what + " has the wrong type");
  }
}

std::size_t element_index(const std::vector<std::string>& names, const json& v, const std::string& what) {
  const auto name = get_as<std::string>(v, what);
  for (std::size_t i = 0; i < names.size(); ++i) {
    if (names[i] == name) return i;
  }
  throw InputError(what + ": unknown element '" + name + "'");
}

}  // namespace

FinitePomonoid algebra_from_json(const json& doc) {
  const auto names = get_as<std::vector<std::string>>(field(doc, "elements"), "elements");
  const std::size_t n = names.size();
  if (n == 0) throw InputError("algebra has no elements");

  std::vector<std::vector<bool>> leq(n, std::vector<bool>(n, false));
  if (doc.contains("leq")) {
    const auto rows = get_as<std::vector<std::vector<int>>>(doc["leq"], "leq");
    if (rows.size() != n) throw InputError("leq has the wrong number of rows");
    for (std::size_t i = 0; i < n; ++i) {
      if (rows[i].size() != n) throw InputError("leq row " + std::to_string(i) + " has the wrong width");
      for (std::size_t j = 0; j < n; ++j) leq[i][j] = rows[i][j] != 0;
    }
  } else if (doc.contains("order")) {
    for (std::size_t i = 0; i < n; ++i) leq[i][i] = true;
    for (const auto& pair : doc["order"]) {
      if (!pair.is_array() || pair.size() != 2) throw InputError("order entries must be [lower, upper] pairs");
      leq[element_index(names, pair[0], "order")][element_index(names, pair[1], "order")] = true;
    }
    for (std::size_t k = 0; k < n; ++k) {
      for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
          if (leq[i][k] && leq[k][j]) leq[i][j] = true;
        }
      }
    }
  } else {
    throw InputError("algebra needs either 'leq' or 'order'");
  }

  const json& rows = field(doc, "times");
  if (!rows.is_array() || rows.size() != n) throw InputError("times has the wrong number of rows");
  std::vector<std::vector<std::size_t>> times(n, std::vector<std::size_t>(n));
  for (std::size_t i = 0; i < n; ++i) {
    if (!rows[i].is_array() || rows[i].size() != n) {
      throw InputError("times row " + std::to_string(i) + " has the wrong width");
    }
    for (std::size_t j = 0; j < n; ++j) times[i][j] = element_index(names, rows[i][j], "times");
  }
  const std::size_t unit = element_index(names, field(doc, "unit"), "unit");
  return FinitePomonoid(names, leq, times, unit);
}

json algebra_to_json(const FinitePomonoid& algebra) {
  json leq = json::array();
  json times = json::array();
  for (std::size_t i = 0; i < algebra.size(); ++i) {
    json lrow = json::array();
    json trow = json::array();
    for (std::size_t j = 0; j < algebra.size(); ++j) {
      lrow.push_back(algebra.leq(i, j) ? 1 : 0);
      trow.push_back(algebra.name(algebra.times(i, j)));
    }
    leq.push_back(std::move(lrow));
    times.push_back(std::move(trow));
  }
  return {{"elements", algebra.names()}, {"unit", algebra.name(algebra.unit())}, {"leq", leq}, {"times", times}};
}

json lattice_to_json(const FiniteResiduatedLattice& lattice) {
  json doc = algebra_to_json(lattice.pomonoid());
  auto table = [&](auto op) {
    json rows = json::array();
    for (std::size_t i = 0; i < lattice.size(); ++i) {
      json row = json::array();
      for (std::size_t j = 0; j < lattice.size(); ++j) row.push_back(lattice.name(op(i, j)));
      rows.push_back(std::move(row));
    }
    return rows;
  };
  doc["bottom"] = lattice.name(lattice.bottom());
  doc["meet"] = table([&](auto a, auto b) { return lattice.meet(a, b); });
  doc["join"] = table([&](auto a, auto b) { return lattice.join(a, b); });
  doc["residuum"] = table([&](auto a, auto b) { return lattice.residuum(a, b); });
  return doc;
}

// --- relations ------------------------------------------------------------------------------

namespace {

DomainValue value_from_json(const json& v, const std::string& where) {
  if (v.is_number()) return v.get<double>();
  if (v.is_string()) return v.get<std::string>();
  if (v.is_array()) {
    std::vector<double> xs;
    for (const auto& x : v) {
      if (!x.is_number()) throw InputError(where + ": vector components must be numbers");
      xs.push_back(x.get<double>());
    }
    return xs;
  }
  throw InputError(where + ": unsupported value");
}

double unit_degree(const json& v, const std::string& where) {
  if (v.is_number()) return v.get<double>();
  if (v.is_string()) {
    const auto s = v.get<std::string>();
    if (s == "0") return 0.0;
    if (s == "1") return 1.0;
  }
  throw InputError(where + ": expected a number in [0, 1]");
}

template <class Alg, class ElementOf>
RankedRelation<Alg> build_relation(std::shared_ptr<const Alg> algebra, const json& doc, ElementOf element_of) {
  const auto scheme = get_as<std::vector<std::string>>(field(doc, "scheme"), "scheme");
  SimilaritySpace<Alg> space{algebra, {}, {}};

  const json& domains = field(doc, "domains");
  const json& sims = field(doc, "similarity");
  for (const auto& p : scheme) {
    if (!domains.contains(p)) throw InputError("no domain for attribute '" + p + "'");
    space.domains.emplace(p, Domain::parse(get_as<std::string>(domains[p], "domain of " + p)));
    if (!sims.contains(p)) throw InputError("no similarity for attribute '" + p + "'");
    const json& s = sims[p];
    const auto kind = get_as<std::string>(field(s, "kind"), "similarity kind of " + p);
    const std::string where = "similarity of " + p;
    if (kind == "exp_euclidean") {
      if constexpr (std::is_same_v<Alg, UnitIntervalPomonoid>) {
        space.similarity.emplace(p, exp_euclidean_similarity(get_as<double>(field(s, "c"), where + ".c")));
      } else {
        throw InputError(where + ": exp_euclidean needs a unit-interval algebra");
      }
    } else if (kind == "equality") {
      space.similarity.emplace(p, equality_similarity(*algebra, element_of(field(s, "bottom"), where)));
    } else if (kind == "table") {
      const auto labels = get_as<std::vector<std::string>>(field(s, "labels"), where + ".labels");
      std::vector<std::vector<typename Alg::element>> values;
      for (const auto& row : field(s, "values")) {
        auto& out = values.emplace_back();
        for (const auto& x : row) out.push_back(element_of(x, where));
      }
      space.similarity.emplace(p, table_similarity(*algebra, labels, std::move(values)));
    } else {
      throw InputError(where + ": unknown kind '" + kind + "'");
    }
  }

  std::vector<typename RankedRelation<Alg>::Tuple> tuples;
  const json& rows = field(doc, "tuples");
  if (!rows.is_array()) throw InputError("tuples must be an array");
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (!rows[i].is_array()) throw InputError("tuple " + std::to_string(i + 1) + " must be an array");
    auto& t = tuples.emplace_back();
    for (const auto& v : rows[i]) t.push_back(value_from_json(v, "tuple " + std::to_string(i + 1)));
  }
  return RankedRelation<Alg>(scheme, std::move(tuples), std::move(space));
}

}  // namespace

AnyRelation relation_from_json(const json& doc) {
  const json& alg = field(doc, "algebra");
  std::variant<UnitIntervalPomonoid, FinitePomonoid> algebra = UnitIntervalPomonoid{};
  if (alg.is_string()) {
    try {
      algebra = builtin_algebra(alg.get<std::string>());
    } catch (const std::invalid_argument& e) {
      throw InputError(e.what());
    }
  } else {
    FinitePomonoid finite = algebra_from_json(alg);
    if (auto bad = validate(finite); !bad.empty()) throw InvalidAlgebra(std::move(bad));
    algebra = std::move(finite);
  }

  if (auto* unit = std::get_if<UnitIntervalPomonoid>(&algebra)) {
    auto ptr = std::make_shared<const UnitIntervalPomonoid>(*unit);
    return build_relation(ptr, doc, [](const json& v, const std::string& where) { return unit_degree(v, where); });
  }
  auto ptr = std::make_shared<const FinitePomonoid>(std::get<FinitePomonoid>(algebra));
  return build_relation(ptr, doc, [ptr](const json& v, const std::string& where) {
    return element_index(ptr->names(), v, where);
  });
}

// --- results --------------------------------------------------------------------------------

json mfd_to_json(const Mfd& f) { return to_string(f); }

json path_to_json(const RewritePath& path) {
  json steps = json::array();
  for (const auto& s : path.steps) {
    steps.push_back({{"rule", to_string(s.rule)}, {"context", to_string(s.remainder)}, {"result", to_string(s.result)}});
  }
  return {{"start", to_string(path.start)}, {"steps", steps}};
}

namespace {

json report_to_json(const SearchReport& r) {
  return {{"bfs_nodes", r.bfs_nodes},
          {"bfs_layers", r.bfs_layers},
          {"bfs_exhausted", r.bfs_exhausted},
          {"model_evaluations", r.model_evaluations},
          {"algebras_checked", r.algebras_checked},
          {"models_exhausted", r.models_exhausted}};
}

}  // namespace

json verdict_to_json(const Verdict& v) {
  json out = {{"verdict", verdict_name(v)}};
  if (const auto* p = std::get_if<Proved>(&v)) {
    out["path"] = path_to_json(p->path);
    out["certificate"] = to_sexpr(p->certificate, false);
  } else if (const auto* r = std::get_if<Refuted>(&v)) {
    if (r->by_member_algorithm()) {
      out["witness"] = "member-algorithm";
    } else {
      const auto& cm = *r->countermodel;
      json assignment = json::object();
      for (const auto& [name, x] : cm.assignment) assignment[name] = cm.algebra.name(x);
      out["witness"] = {{"algebra", algebra_to_json(cm.algebra)}, {"assignment", assignment}};
    }
  } else {
    out["report"] = report_to_json(std::get<Unknown>(v).report);
  }
  return out;
}

json member_to_json(const MemberResult& m) {
  json iterations = json::array();
  for (const auto& it : m.trace.iterations) {
    json fired = json::array();
    for (const auto& f : it.fired) fired.push_back(to_string(f));
    iterations.push_back({{"W", to_string(it.snapshot)}, {"fired", fired}});
  }
  return {{"result", m.result},
          {"fresh_var", m.trace.fresh_var},
          {"counter_initial", m.trace.counter_initial},
          {"counter_final", m.trace.counter_final},
          {"iterations", iterations}};
}

}  // namespace mfd
