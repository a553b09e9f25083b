#pragma once

#include <concepts>
#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "mfd/formula.hpp"

namespace mfd {

// Structure of truth degrees: a partially ordered commutative monoid whose
// unit is the greatest element.
template <class A>
concept Pomonoid = requires(const A& alg, const typename A::element& x) {
  { alg.unit() } -> std::convertible_to<typename A::element>;
  { alg.times(x, x) } -> std::convertible_to<typename A::element>;
  { alg.leq(x, x) } -> std::convertible_to<bool>;
  { alg.contains(x) } -> std::convertible_to<bool>;
  { alg.format(x) } -> std::convertible_to<std::string>;
};

// One failed axiom together with the elements that witness the failure.
struct AxiomViolation {
  std::string axiom;
  std::vector<std::string> witness;

  std::string to_string() const;
};

// Ragged or out-of-range algebra tables.
class ShapeError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Input structure failed validation; carries the violations found.
class InvalidAlgebra : public std::invalid_argument {
 public:
  explicit InvalidAlgebra(std::vector<AxiomViolation> violations);
  const std::vector<AxiomViolation>& violations() const { return violations_; }

 private:
  std::vector<AxiomViolation> violations_;
};

class FinitePomonoid {
 public:
  using element = std::size_t;

  // Tables are indexed by element position. Empty `names` yields e0, e1, ...
  // Throws ShapeError on ragged tables or indices out of range; the
  // algebraic axioms are checked separately by validate().
  FinitePomonoid(std::vector<std::string> names, const std::vector<std::vector<bool>>& leq,
                 const std::vector<std::vector<element>>& times, element unit);

  std::size_t size() const { return n_; }
  bool leq(element a, element b) const { return leq_[a * n_ + b] != 0; }
  element times(element a, element b) const { return times_[a * n_ + b]; }
  element unit() const { return unit_; }
  bool contains(element a) const { return a < n_; }

  const std::string& name(element a) const { return names_.at(a); }
  std::string format(element a) const { return name(a); }
  std::optional<element> find(std::string_view name) const;
  const std::vector<std::string>& names() const { return names_; }

  std::vector<std::vector<bool>> leq_matrix() const;
  std::vector<std::vector<element>> times_table() const;

  // Total order?
  bool is_linear() const;

  friend bool operator==(const FinitePomonoid&, const FinitePomonoid&) = default;

 private:
  std::size_t n_;
  std::vector<std::string> names_;
  std::vector<std::uint8_t> leq_;
  std::vector<element> times_;
  element unit_;
};

// Finite integral commutative residuated lattice. Keeps its pomonoid
// reduct so it can be used wherever a Pomonoid is expected.
class FiniteResiduatedLattice {
 public:
  using element = std::size_t;

  FiniteResiduatedLattice(FinitePomonoid reduct, const std::vector<std::vector<element>>& meet,
                          const std::vector<std::vector<element>>& join,
                          const std::vector<std::vector<element>>& residuum, element bottom);

  const FinitePomonoid& pomonoid() const { return reduct_; }

  std::size_t size() const { return reduct_.size(); }
  bool leq(element a, element b) const { return reduct_.leq(a, b); }
  element times(element a, element b) const { return reduct_.times(a, b); }
  element unit() const { return reduct_.unit(); }
  bool contains(element a) const { return reduct_.contains(a); }
  const std::string& name(element a) const { return reduct_.name(a); }
  std::string format(element a) const { return reduct_.format(a); }
  std::optional<element> find(std::string_view name) const { return reduct_.find(name); }

  element meet(element a, element b) const { return meet_[a * size() + b]; }
  element join(element a, element b) const { return join_[a * size() + b]; }
  element residuum(element a, element b) const { return residuum_[a * size() + b]; }
  element bottom() const { return bottom_; }

  std::vector<std::vector<element>> meet_table() const;
  std::vector<std::vector<element>> join_table() const;
  std::vector<std::vector<element>> residuum_table() const;

 private:
  FinitePomonoid reduct_;
  std::vector<element> meet_;
  std::vector<element> join_;
  std::vector<element> residuum_;
  element bottom_;
};

enum class TNorm { product, minimum, lukasiewicz };

// The real unit interval with its natural order and a t-norm.
class UnitIntervalPomonoid {
 public:
  using element = double;

  explicit UnitIntervalPomonoid(TNorm kind = TNorm::product) : kind_(kind) {}

  TNorm kind() const { return kind_; }
  std::string_view name() const;

  element unit() const { return 1.0; }
  element times(element a, element b) const;
  bool leq(element a, element b) const { return a <= b; }
  bool contains(element a) const { return a >= 0.0 && a <= 1.0; }
  std::string format(element a) const;

  friend bool operator==(const UnitIntervalPomonoid&, const UnitIntervalPomonoid&) = default;

 private:
  TNorm kind_;
};

static_assert(Pomonoid<FinitePomonoid>);
static_assert(Pomonoid<FiniteResiduatedLattice>);
static_assert(Pomonoid<UnitIntervalPomonoid>);

// Two-element Boolean chain 0 < 1 with classical conjunction.
FinitePomonoid boolean_chain();

using BuiltinAlgebra = std::variant<UnitIntervalPomonoid, FinitePomonoid>;

// "product", "min", "lukasiewicz" or "bool2". Throws std::invalid_argument.
BuiltinAlgebra builtin_algebra(std::string_view name);

std::vector<AxiomViolation> validate(const FinitePomonoid& algebra);
std::vector<AxiomViolation> validate(const FiniteResiduatedLattice& algebra);
// Numerical spot check on random triples, tolerance 1e-12.
std::vector<AxiomViolation> validate(const UnitIntervalPomonoid& algebra, std::size_t samples = 2000,
                                     std::uint64_t seed = 1);

template <Pomonoid Alg>
typename Alg::element elem_power(const Alg& algebra, typename Alg::element a, Count n) {
  auto result = algebra.unit();
  auto base = a;
  while (n > 0) {
    if (n & 1U) result = algebra.times(result, base);
    n >>= 1U;
    if (n > 0) base = algebra.times(base, base);
  }
  return result;
}

// --- evaluations ---------------------------------------------------------------

class UnassignedAttribute : public std::out_of_range {
 public:
  explicit UnassignedAttribute(std::string attribute)
      : std::out_of_range("attribute '" + attribute + "' is not assigned"), attribute_(std::move(attribute)) {}
  const std::string& attribute() const { return attribute_; }

 private:
  std::string attribute_;
};

// Assignment of algebra elements to attribute names.
template <Pomonoid Alg>
class Evaluation {
 public:
  using element = typename Alg::element;
  using Assignment = std::map<std::string, element, std::less<>>;

  Evaluation(std::shared_ptr<const Alg> algebra, Assignment assignment)
      : algebra_(std::move(algebra)), assignment_(std::move(assignment)) {
    for (const auto& [name, value] : assignment_) {
      if (!algebra_->contains(value)) {
        throw std::invalid_argument("value assigned to '" + name + "' is outside the carrier");
      }
    }
  }
  Evaluation(const Alg& algebra, Assignment assignment)
      : Evaluation(std::make_shared<const Alg>(algebra), std::move(assignment)) {}

  const Alg& algebra() const { return *algebra_; }
  const std::shared_ptr<const Alg>& algebra_ptr() const { return algebra_; }
  const Assignment& assignment() const { return assignment_; }

  element operator()(std::string_view attribute) const {
    auto it = assignment_.find(attribute);
    if (it == assignment_.end()) throw UnassignedAttribute(std::string(attribute));
    return it->second;
  }

 private:
  std::shared_ptr<const Alg> algebra_;
  Assignment assignment_;
};

// Product of e(p)^A(p) over the support of A; the unit for top.
template <Pomonoid Alg>
typename Alg::element evaluate(const Evaluation<Alg>& e, const AttributeMultiset& a) {
  const Alg& alg = e.algebra();
  auto result = alg.unit();
  for (const auto& [name, n] : a) result = alg.times(result, elem_power(alg, e(name), n));
  return result;
}

template <Pomonoid Alg>
bool satisfies(const Evaluation<Alg>& e, const Mfd& f) {
  return e.algebra().leq(evaluate(e, f.antecedent), evaluate(e, f.consequent));
}

template <Pomonoid Alg>
bool is_model(const Evaluation<Alg>& e, const Theory& theory) {
  for (const auto& f : theory) {
    if (!satisfies(e, f)) return false;
  }
  return true;
}

// --- enumeration ---------------------------------------------------------------

constexpr std::size_t kDefaultEnumerationCap = 6;

class EnumerationCapExceeded : public std::length_error {
 public:
  using std::length_error::length_error;
};

// Pull-based stream of every finite integral commutative pomonoid with at
// most `max_size` elements, one per isomorphism class.
// 
// Order: carrier size, then the <= matrix (lexicographic, row-major), then
// the multiplication table. Elements are named 0 (bottom), a, b, ... and 1
// (unit, the top); a finite integral pomonoid always has a least element,
// namely the product of all elements.
class PomonoidEnumerator {
 public:
  explicit PomonoidEnumerator(std::size_t max_size, std::size_t cap = kDefaultEnumerationCap);

  std::optional<FinitePomonoid> next();

 private:
  void load_size(std::size_t n);

  std::size_t max_size_;
  std::size_t current_size_ = 0;
  std::vector<FinitePomonoid> buffer_;
  std::size_t position_ = 0;
};

std::vector<FinitePomonoid> enumerate_pomonoids(std::size_t max_size, std::size_t cap = kDefaultEnumerationCap);

// An isomorphism between two finite pomonoids, if one exists (brute force).
std::optional<std::vector<std::size_t>> find_isomorphism(const FinitePomonoid& from, const FinitePomonoid& to);

// --- downset completion ----------------------------------------------------------

struct DownsetCompletion {
  FiniteResiduatedLattice lattice;
  // Element of the pomonoid -> its principal downset in `lattice`.
  std::vector<std::size_t> embedding;
  // Member elements of each downset, indexed like `lattice`.
  std::vector<std::vector<std::size_t>> downsets;
};

// Embeds `pomonoid` into the residuated lattice of its downward closed
// subsets ordered by inclusion. Throws InvalidAlgebra if `pomonoid` fails
// validation.
DownsetCompletion downset_completion(const FinitePomonoid& pomonoid);

}  // namespace mfd
