#pragma once

#include <compare>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "mfd/multiset.hpp"

namespace mfd {

// A monoidal functional dependency `antecedent => consequent`.
struct Mfd {
  AttributeMultiset antecedent;
  AttributeMultiset consequent;

  friend bool operator==(const Mfd&, const Mfd&) = default;
  friend std::strong_ordering operator<=>(const Mfd&, const Mfd&) = default;
};

// Finite ordered collection of MFDs. Storage keeps duplicates; reasoning
// routines work on `unique_formulas()`.
class Theory {
 public:
  Theory() = default;
  explicit Theory(std::vector<Mfd> formulas);
  Theory(std::initializer_list<Mfd> formulas) : Theory(std::vector<Mfd>(formulas)) {}

  void add(Mfd f);

  const std::vector<Mfd>& formulas() const { return formulas_; }
  // Formulas with later duplicates dropped, first-occurrence order kept.
  std::vector<Mfd> unique_formulas() const;
  // Union of the supports of all formulas.
  const std::set<std::string>& variables() const { return variables_; }

  std::size_t size() const { return formulas_.size(); }
  bool empty() const { return formulas_.empty(); }
  bool contains(const Mfd& f) const;

  auto begin() const { return formulas_.begin(); }
  auto end() const { return formulas_.end(); }

 private:
  std::vector<Mfd> formulas_;
  std::set<std::string> variables_;
};

// Attributes occurring in `f`.
std::set<std::string> variables_of(const Mfd& f);

// True iff `f` is an instance of the axiom AB => B.
bool is_trivial(const Mfd& f);

// True iff the consequent pointwise dominates the antecedent.
bool is_non_contracting(const Mfd& f);
bool is_non_contracting_theory(const Theory& theory);

// Adds p => pp for every variable of `theory` and every name in `extra_vars`.
Theory booleanize(const Theory& theory, const std::set<std::string>& extra_vars = {});

// --- text format -----------------------------------------------------------

class ParseError : public std::runtime_error {
 public:
  ParseError(std::size_t line, std::size_t column, const std::string& message);
  std::size_t line() const { return line_; }
  std::size_t column() const { return column_; }
  // Message without the position prefix.
  const std::string& detail() const { return detail_; }

 private:
  std::size_t line_;
  std::size_t column_;
  std::string detail_;
};

// True for identifiers accepted as attribute names by the grammar.
bool is_attribute_name(std::string_view token);

AttributeMultiset parse_multiset(std::string_view text);
Mfd parse_mfd(std::string_view text);
Theory parse_theory(std::string_view text);

std::string to_string(const Mfd& f);
std::string format_theory(const Theory& theory);

}  // namespace mfd
