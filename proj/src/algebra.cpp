#include "mfd/algebra.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <numeric>
#include <random>
#include <set>

namespace mfd {

std::string AxiomViolation::to_string() const {
  std::string out = axiom;
  if (!witness.empty()) {
    out += " (";
    for (std::size_t i = 0; i < witness.size(); ++i) {
      if (i > 0) out += ", ";
      out += witness[i];
    }
    out += ")";
  }
  return out;
}

namespace {

std::string join_violations(const std::vector<AxiomViolation>& violations) {
  std::string out = "invalid algebra:";
  for (const auto& v : violations) out += " " + v.to_string() + ";";
  return out;
}

template <class T>
std::vector<T> flatten(const std::vector<std::vector<T>>& rows, std::size_t n, const char* what) {
  if (rows.size() != n) {
    throw ShapeError(std::string(what) + " table has " + std::to_string(rows.size()) + " rows, expected " +
                     std::to_string(n));
  }
  std::vector<T> flat;
  flat.reserve(n * n);
  for (std::size_t i = 0; i < n; ++i) {
    if (rows[i].size() != n) {
      throw ShapeError(std::string(what) + " table row " + std::to_string(i) + " has " +
                       std::to_string(rows[i].size()) + " entries, expected " + std::to_string(n));
    }
    flat.insert(flat.end(), rows[i].begin(), rows[i].end());
  }
  return flat;
}

std::vector<std::size_t> flatten_elements(const std::vector<std::vector<std::size_t>>& rows, std::size_t n,
                                          const char* what) {
  auto flat = flatten(rows, n, what);
  for (auto x : flat) {
    if (x >= n) throw ShapeError(std::string(what) + " table entry " + std::to_string(x) + " out of range");
  }
  return flat;
}

template <class T>
std::vector<std::vector<T>> unflatten(const std::vector<T>& flat, std::size_t n) {
  std::vector<std::vector<T>> rows(n);
  for (std::size_t i = 0; i < n; ++i) rows[i].assign(flat.begin() + i * n, flat.begin() + (i + 1) * n);
  return rows;
}

}  // namespace

InvalidAlgebra::InvalidAlgebra(std::vector<AxiomViolation> violations)
    : std::invalid_argument(join_violations(violations)), violations_(std::move(violations)) {}

// --- FinitePomonoid --------------------------------------------------------------

FinitePomonoid::FinitePomonoid(std::vector<std::string> names, const std::vector<std::vector<bool>>& leq,
                               const std::vector<std::vector<element>>& times, element unit)
    : n_(leq.size()), names_(std::move(names)), unit_(unit) {
  if (n_ == 0) throw ShapeError("algebra must have at least one element");
  if (names_.empty()) {
    for (std::size_t i = 0; i < n_; ++i) names_.push_back("e" + std::to_string(i));
  }
  if (names_.size() != n_) throw ShapeError("number of names does not match table size");
  if (std::set<std::string>(names_.begin(), names_.end()).size() != n_) {
    throw ShapeError("element names must be distinct");
  }
  for (auto b : flatten(leq, n_, "leq")) leq_.push_back(b ? 1 : 0);
  times_ = flatten_elements(times, n_, "times");
  if (unit_ >= n_) throw ShapeError("unit out of range");
}

std::optional<FinitePomonoid::element> FinitePomonoid::find(std::string_view name) const {
  for (std::size_t i = 0; i < n_; ++i) {
    if (names_[i] == name) return i;
  }
  return std::nullopt;
}

std::vector<std::vector<bool>> FinitePomonoid::leq_matrix() const {
  std::vector<std::vector<bool>> rows(n_, std::vector<bool>(n_));
  for (std::size_t a = 0; a < n_; ++a) {
    for (std::size_t b = 0; b < n_; ++b) rows[a][b] = leq(a, b);
  }
  return rows;
}

std::vector<std::vector<FinitePomonoid::element>> FinitePomonoid::times_table() const {
  return unflatten(times_, n_);
}

bool FinitePomonoid::is_linear() const {
  for (std::size_t a = 0; a < n_; ++a) {
    for (std::size_t b = 0; b < n_; ++b) {
      if (!leq(a, b) && !leq(b, a)) return false;
    }
  }
  return true;
}

FiniteResiduatedLattice::FiniteResiduatedLattice(FinitePomonoid reduct, const std::vector<std::vector<element>>& meet,
                                                 const std::vector<std::vector<element>>& join,
                                                 const std::vector<std::vector<element>>& residuum, element bottom)
    : reduct_(std::move(reduct)), bottom_(bottom) {
  const std::size_t n = reduct_.size();
  meet_ = flatten_elements(meet, n, "meet");
  join_ = flatten_elements(join, n, "join");
  residuum_ = flatten_elements(residuum, n, "residuum");
  if (bottom_ >= n) throw ShapeError("bottom out of range");
}

std::vector<std::vector<std::size_t>> FiniteResiduatedLattice::meet_table() const { return unflatten(meet_, size()); }
std::vector<std::vector<std::size_t>> FiniteResiduatedLattice::join_table() const { return unflatten(join_, size()); }
std::vector<std::vector<std::size_t>> FiniteResiduatedLattice::residuum_table() const {
  return unflatten(residuum_, size());
}

// --- UnitIntervalPomonoid ----------------------------------------------------------

std::string_view UnitIntervalPomonoid::name() const {
  switch (kind_) {
    case TNorm::product:
      return "product";
    case TNorm::minimum:
      return "min";
    case TNorm::lukasiewicz:
      return "lukasiewicz";
  }
  return "unknown";
}

UnitIntervalPomonoid::element UnitIntervalPomonoid::times(element a, element b) const {
  switch (kind_) {
    case TNorm::product:
      return a * b;
    case TNorm::minimum:
      return std::min(a, b);
    case TNorm::lukasiewicz:
      return std::max(0.0, a + b - 1.0);
  }
  return 0.0;
}

std::string UnitIntervalPomonoid::format(element a) const {
  std::array<char, 32> buf{};
  auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), a);
  return std::string(buf.data(), ptr);
}

FinitePomonoid boolean_chain() {
  return FinitePomonoid({"0", "1"}, {{true, true}, {false, true}}, {{0, 0}, {0, 1}}, 1);
}

BuiltinAlgebra builtin_algebra(std::string_view name) {
  if (name == "product") return UnitIntervalPomonoid(TNorm::product);
  if (name == "min" || name == "minimum") return UnitIntervalPomonoid(TNorm::minimum);
  if (name == "lukasiewicz") return UnitIntervalPomonoid(TNorm::lukasiewicz);
  if (name == "bool2") return boolean_chain();
  throw std::invalid_argument("unknown built-in algebra '" + std::string(name) + "'");
}

// --- validation ------------------------------------------------------------------

std::vector<AxiomViolation> validate(const FinitePomonoid& alg) {
  std::vector<AxiomViolation> out;
  const std::size_t n = alg.size();
  auto nm = [&](std::size_t a) { return alg.name(a); };
  // Report only the first witness per axiom.
  auto report = [&](const char* axiom, std::vector<std::string> witness) {
    for (const auto& v : out) {
      if (v.axiom == axiom) return;
    }
    out.push_back({axiom, std::move(witness)});
  };

  for (std::size_t a = 0; a < n; ++a) {
    if (!alg.leq(a, a)) report("reflexivity", {nm(a)});
    if (!alg.leq(a, alg.unit())) report("integrality", {nm(a), nm(alg.unit())});
    if (alg.times(a, alg.unit()) != a || alg.times(alg.unit(), a) != a) report("unit", {nm(a)});
    for (std::size_t b = 0; b < n; ++b) {
      if (a != b && alg.leq(a, b) && alg.leq(b, a)) report("antisymmetry", {nm(a), nm(b)});
      if (alg.times(a, b) != alg.times(b, a)) report("commutativity", {nm(a), nm(b)});
      for (std::size_t c = 0; c < n; ++c) {
        if (alg.leq(a, b) && alg.leq(b, c) && !alg.leq(a, c)) report("transitivity", {nm(a), nm(b), nm(c)});
        if (alg.times(alg.times(a, b), c) != alg.times(a, alg.times(b, c))) {
          report("associativity", {nm(a), nm(b), nm(c)});
        }
        if (alg.leq(a, b) && !alg.leq(alg.times(a, c), alg.times(b, c))) {
          report("monotonicity", {nm(a), nm(b), nm(c)});
        }
      }
    }
  }
  return out;
}

std::vector<AxiomViolation> validate(const FiniteResiduatedLattice& alg) {
  auto out = validate(alg.pomonoid());
  const std::size_t n = alg.size();
  auto nm = [&](std::size_t a) { return alg.name(a); };
  auto report = [&](const char* axiom, std::vector<std::string> witness) {
    for (const auto& v : out) {
      if (v.axiom == axiom) return;
    }
    out.push_back({axiom, std::move(witness)});
  };

  for (std::size_t a = 0; a < n; ++a) {
    if (!alg.leq(alg.bottom(), a)) report("bottom", {nm(alg.bottom()), nm(a)});
    for (std::size_t b = 0; b < n; ++b) {
      const auto m = alg.meet(a, b);
      const auto j = alg.join(a, b);
      if (alg.leq(a, b) != (m == a)) report("meet-order", {nm(a), nm(b)});
      if (alg.leq(a, b) != (j == b)) report("join-order", {nm(a), nm(b)});
      if (!alg.leq(m, a) || !alg.leq(m, b)) report("meet", {nm(a), nm(b)});
      if (!alg.leq(a, j) || !alg.leq(b, j)) report("join", {nm(a), nm(b)});
      for (std::size_t c = 0; c < n; ++c) {
        if (alg.leq(c, a) && alg.leq(c, b) && !alg.leq(c, m)) report("meet", {nm(a), nm(b), nm(c)});
        if (alg.leq(a, c) && alg.leq(b, c) && !alg.leq(j, c)) report("join", {nm(a), nm(b), nm(c)});
        if (alg.leq(alg.times(a, b), c) != alg.leq(a, alg.residuum(b, c))) {
          report("adjointness", {nm(a), nm(b), nm(c)});
        }
      }
    }
  }
  return out;
}

std::vector<AxiomViolation> validate(const UnitIntervalPomonoid& alg, std::size_t samples, std::uint64_t seed) {
  constexpr double kTol = 1e-12;
  std::vector<AxiomViolation> out;
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> uni(0.0, 1.0);
  auto fmt = [&](double x) { return alg.format(x); };
  auto report = [&](const char* axiom, std::vector<std::string> witness) {
    for (const auto& v : out) {
      if (v.axiom == axiom) return;
    }
    out.push_back({axiom, std::move(witness)});
  };
  const std::array<double, 4> corners{0.0, 1.0, 0.5, 0.25};
  for (std::size_t i = 0; i < samples + corners.size() * corners.size(); ++i) {
    double a = uni(rng), b = uni(rng), c = uni(rng);
    if (i >= samples) {
      a = corners[(i - samples) / corners.size()];
      b = corners[(i - samples) % corners.size()];
    }
    if (std::abs(alg.times(a, alg.unit()) - a) > kTol) report("unit", {fmt(a)});
    if (std::abs(alg.times(a, b) - alg.times(b, a)) > kTol) report("commutativity", {fmt(a), fmt(b)});
    if (std::abs(alg.times(alg.times(a, b), c) - alg.times(a, alg.times(b, c))) > kTol) {
      report("associativity", {fmt(a), fmt(b), fmt(c)});
    }
    const double lo = std::min(a, b), hi = std::max(a, b);
    if (alg.times(lo, c) > alg.times(hi, c) + kTol) report("monotonicity", {fmt(lo), fmt(hi), fmt(c)});
    if (!alg.contains(alg.times(a, b))) report("closure", {fmt(a), fmt(b)});
  }
  return out;
}

// --- enumeration -------------------------------------------------------------------

namespace {

using Perm = std::vector<std::size_t>;

std::vector<std::string> default_names(std::size_t n) {
  if (n == 1) return {"1"};
  std::vector<std::string> names{"0"};
  for (std::size_t i = 1; i + 1 < n; ++i) {
    names.push_back(i <= 26 ? std::string(1, static_cast<char>('a' + i - 1)) : "m" + std::to_string(i));
  }
  names.push_back("1");
  return names;
}

// Row-major <= matrix over n elements with 0 = bottom and n-1 = top.
using OrderCode = std::vector<std::uint8_t>;

OrderCode relabel(const OrderCode& code, std::size_t n, const Perm& perm) {
  OrderCode out(n * n);
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = 0; b < n; ++b) out[perm[a] * n + perm[b]] = code[a * n + b];
  }
  return out;
}

// All permutations of {0..n-1} fixing 0 and n-1.
std::vector<Perm> middle_permutations(std::size_t n) {
  std::vector<Perm> perms;
  Perm p(n);
  std::iota(p.begin(), p.end(), 0);
  if (n <= 2) return {p};
  do {
    perms.push_back(p);
  } while (std::next_permutation(p.begin() + 1, p.end() - 1));
  return perms;
}

// Bounded partial orders on n elements, one per isomorphism class, each in
// its lexicographically least labelling, sorted.
std::vector<OrderCode> bounded_posets(std::size_t n) {
  if (n == 1) return {OrderCode{1}};
  const std::size_t m = n - 2;
  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = i + 1; j < m; ++j) pairs.emplace_back(i, j);
  }
  const auto perms = middle_permutations(n);
  std::set<OrderCode> canonical;
  std::vector<int> choice(pairs.size(), 0);
  std::size_t combos = 1;
  for (std::size_t k = 0; k < pairs.size(); ++k) combos *= 3;
  for (std::size_t code = 0; code < combos; ++code) {
    std::size_t rest = code;
    std::vector<std::uint8_t> less(m * m, 0);
    for (std::size_t k = 0; k < pairs.size(); ++k) {
      const auto [i, j] = pairs[k];
      const int c = static_cast<int>(rest % 3);
      rest /= 3;
      if (c == 1) less[i * m + j] = 1;
      if (c == 2) less[j * m + i] = 1;
    }
    bool transitive = true;
    for (std::size_t a = 0; a < m && transitive; ++a) {
      for (std::size_t b = 0; b < m && transitive; ++b) {
        if (!less[a * m + b]) continue;
        for (std::size_t c = 0; c < m; ++c) {
          if (less[b * m + c] && !less[a * m + c]) {
            transitive = false;
            break;
          }
        }
      }
    }
    if (!transitive) continue;
    OrderCode full(n * n, 0);
    for (std::size_t a = 0; a < n; ++a) {
      full[a * n + a] = 1;
      full[0 * n + a] = 1;
      full[a * n + (n - 1)] = 1;
    }
    for (std::size_t a = 0; a < m; ++a) {
      for (std::size_t b = 0; b < m; ++b) {
        if (less[a * m + b]) full[(a + 1) * n + (b + 1)] = 1;
      }
    }
    OrderCode best = full;
    for (const auto& p : perms) best = std::min(best, relabel(full, n, p));
    canonical.insert(best);
  }
  return {canonical.begin(), canonical.end()};
}

// Backtracking over the commutative multiplication tables compatible with
// a bounded order. Bottom and top rows are forced by integrality.
class TableSearch {
 public:
  TableSearch(std::size_t n, const OrderCode& order) : n_(n), order_(order) {
    for (const auto& p : middle_permutations(n)) {
      if (relabel(order, n, p) == order) automorphisms_.push_back(p);
    }
    for (std::size_t i = 1; i + 1 < n; ++i) {
      for (std::size_t j = i; j + 1 < n; ++j) cells_.emplace_back(i, j);
    }
    table_.assign(n * n, kUnset);
    for (std::size_t a = 0; a < n; ++a) {
      set(0, a, 0);
      set(n - 1, a, a);
    }
  }

  void run(std::vector<FinitePomonoid>& out) { extend(0, out); }

 private:
  static constexpr std::size_t kUnset = static_cast<std::size_t>(-1);

  bool leq(std::size_t a, std::size_t b) const { return order_[a * n_ + b] != 0; }
  std::size_t at(std::size_t a, std::size_t b) const { return table_[a * n_ + b]; }
  void set(std::size_t a, std::size_t b, std::size_t v) {
    table_[a * n_ + b] = v;
    table_[b * n_ + a] = v;
  }

  // Monotonicity of the freshly set cell (i,j) against assigned cells.
  bool monotone_at(std::size_t i, std::size_t j) const {
    const std::size_t v = at(i, j);
    for (auto [c, other] : {std::pair{j, i}, std::pair{i, j}}) {
      for (std::size_t k = 0; k < n_; ++k) {
        const std::size_t w = at(k, c);
        if (w == kUnset) continue;
        if (leq(k, other) && !leq(w, v)) return false;
        if (leq(other, k) && !leq(v, w)) return false;
      }
    }
    return true;
  }

  bool associative() const {
    for (std::size_t a = 0; a < n_; ++a) {
      for (std::size_t b = 0; b < n_; ++b) {
        for (std::size_t c = 0; c < n_; ++c) {
          if (at(at(a, b), c) != at(a, at(b, c))) return false;
        }
      }
    }
    return true;
  }

  bool orbit_minimal() const {
    for (const auto& p : automorphisms_) {
      std::vector<std::size_t> image(n_ * n_);
      for (std::size_t a = 0; a < n_; ++a) {
        for (std::size_t b = 0; b < n_; ++b) image[p[a] * n_ + p[b]] = p[at(a, b)];
      }
      if (image < table_) return false;
    }
    return true;
  }

  void extend(std::size_t k, std::vector<FinitePomonoid>& out) {
    if (k == cells_.size()) {
      if (!associative() || !orbit_minimal()) return;
      std::vector<std::vector<bool>> leq_rows(n_, std::vector<bool>(n_));
      std::vector<std::vector<std::size_t>> rows(n_, std::vector<std::size_t>(n_));
      for (std::size_t a = 0; a < n_; ++a) {
        for (std::size_t b = 0; b < n_; ++b) {
          leq_rows[a][b] = leq(a, b);
          rows[a][b] = at(a, b);
        }
      }
      out.emplace_back(default_names(n_), leq_rows, rows, n_ - 1);
      return;
    }
    const auto [i, j] = cells_[k];
    for (std::size_t v = 0; v < n_; ++v) {
      if (!leq(v, i) || !leq(v, j)) continue;
      set(i, j, v);
      if (monotone_at(i, j)) extend(k + 1, out);
    }
    set(i, j, kUnset);
  }

  std::size_t n_;
  OrderCode order_;
  std::vector<Perm> automorphisms_;
  std::vector<std::pair<std::size_t, std::size_t>> cells_;
  std::vector<std::size_t> table_;
};

}  // namespace

PomonoidEnumerator::PomonoidEnumerator(std::size_t max_size, std::size_t cap) : max_size_(max_size) {
  if (max_size == 0) throw std::invalid_argument("max_size must be positive");
  if (max_size > cap) {
    throw EnumerationCapExceeded("max_size " + std::to_string(max_size) + " exceeds enumeration cap " +
                                 std::to_string(cap));
  }
}

void PomonoidEnumerator::load_size(std::size_t n) {
  buffer_.clear();
  position_ = 0;
  if (n == 1) {
    buffer_.emplace_back(default_names(1), std::vector<std::vector<bool>>{{true}},
                         std::vector<std::vector<std::size_t>>{{0}}, 0);
    return;
  }
  for (const auto& order : bounded_posets(n)) TableSearch(n, order).run(buffer_);
}

std::optional<FinitePomonoid> PomonoidEnumerator::next() {
  while (position_ >= buffer_.size()) {
    if (current_size_ >= max_size_) return std::nullopt;
    load_size(++current_size_);
  }
  return buffer_[position_++];
}

std::vector<FinitePomonoid> enumerate_pomonoids(std::size_t max_size, std::size_t cap) {
  std::vector<FinitePomonoid> out;
  PomonoidEnumerator it(max_size, cap);
  while (auto p = it.next()) out.push_back(std::move(*p));
  return out;
}

std::optional<std::vector<std::size_t>> find_isomorphism(const FinitePomonoid& from, const FinitePomonoid& to) {
  const std::size_t n = from.size();
  if (to.size() != n) return std::nullopt;
  std::vector<std::size_t> p(n);
  std::iota(p.begin(), p.end(), 0);
  do {
    if (p[from.unit()] != to.unit()) continue;
    bool ok = true;
    for (std::size_t a = 0; a < n && ok; ++a) {
      for (std::size_t b = 0; b < n && ok; ++b) {
        ok = from.leq(a, b) == to.leq(p[a], p[b]) && p[from.times(a, b)] == to.times(p[a], p[b]);
      }
    }
    if (ok) return p;
  } while (std::next_permutation(p.begin(), p.end()));
  return std::nullopt;
}

// --- downset completion ------------------------------------------------------------

DownsetCompletion downset_completion(const FinitePomonoid& pomonoid) {
  if (auto violations = validate(pomonoid); !violations.empty()) throw InvalidAlgebra(std::move(violations));
  const std::size_t n = pomonoid.size();
  if (n > 62) throw std::length_error("downset completion supports at most 62 elements");
  using Mask = std::uint64_t;

  auto down = [&](std::size_t y) {
    Mask m = 0;
    for (std::size_t x = 0; x < n; ++x) {
      if (pomonoid.leq(x, y)) m |= Mask{1} << x;
    }
    return m;
  };
  std::vector<Mask> principal(n);
  for (std::size_t y = 0; y < n; ++y) principal[y] = down(y);

  // Every downset of a finite poset is a union of principal downsets.
  std::set<Mask> found{0};
  std::vector<Mask> frontier{0};
  while (!frontier.empty()) {
    std::vector<Mask> next;
    for (Mask d : frontier) {
      for (Mask p : principal) {
        if (found.insert(d | p).second) next.push_back(d | p);
      }
    }
    frontier = std::move(next);
  }
  std::vector<Mask> sets(found.begin(), found.end());
  std::sort(sets.begin(), sets.end(), [](Mask a, Mask b) {
    const int pa = __builtin_popcountll(a), pb = __builtin_popcountll(b);
    if (pa != pb) return pa < pb;
    // Lexicographic on the sorted member indices.
    for (std::size_t i = 0; i < 64; ++i) {
      const bool ia = (a >> i) & 1U, ib = (b >> i) & 1U;
      if (ia != ib) return ia;
    }
    return false;
  });
  const std::size_t k = sets.size();
  std::map<Mask, std::size_t> index;
  for (std::size_t i = 0; i < k; ++i) index[sets[i]] = i;

  auto product = [&](Mask x, Mask y) {
    Mask z = 0;
    for (std::size_t a = 0; a < n; ++a) {
      if (!((x >> a) & 1U)) continue;
      for (std::size_t b = 0; b < n; ++b) {
        if ((y >> b) & 1U) z |= principal[pomonoid.times(a, b)];
      }
    }
    return z;
  };

  std::vector<std::string> names;
  std::vector<std::vector<std::size_t>> members(k);
  for (std::size_t i = 0; i < k; ++i) {
    std::string name = "{";
    for (std::size_t a = 0; a < n; ++a) {
      if (!((sets[i] >> a) & 1U)) continue;
      if (name.size() > 1) name += ",";
      name += pomonoid.name(a);
      members[i].push_back(a);
    }
    names.push_back(name + "}");
  }

  std::vector<std::vector<bool>> leq(k, std::vector<bool>(k));
  std::vector<std::vector<std::size_t>> times(k, std::vector<std::size_t>(k)), meet = times, join = times,
                                                                                 residuum = times;
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t j = 0; j < k; ++j) {
      const Mask x = sets[i], y = sets[j];
      leq[i][j] = (x & ~y) == 0;
      times[i][j] = index.at(product(x, y));
      meet[i][j] = index.at(x & y);
      join[i][j] = index.at(x | y);
      Mask r = 0;
      for (std::size_t z = 0; z < n; ++z) {
        if ((product(x, principal[z]) & ~y) == 0) r |= Mask{1} << z;
      }
      residuum[i][j] = index.at(r);
    }
  }
  const Mask full = n == 64 ? ~Mask{0} : (Mask{1} << n) - 1;
  FinitePomonoid reduct(std::move(names), leq, times, index.at(full));
  FiniteResiduatedLattice lattice(std::move(reduct), meet, join, residuum, index.at(0));

  std::vector<std::size_t> embedding(n);
  for (std::size_t y = 0; y < n; ++y) embedding[y] = index.at(principal[y]);
  return {std::move(lattice), std::move(embedding), std::move(members)};
}

}  // namespace mfd
