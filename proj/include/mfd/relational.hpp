#pragma once

#include <cmath>
#include <concepts>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <type_traits>
#include <variant>
#include <vector>

#include "mfd/algebra.hpp"
#include "mfd/formula.hpp"

namespace mfd {

using DomainValue = std::variant<double, std::vector<double>, std::string>;

struct Domain {
  enum class Kind { scalar, vector, token };
  Kind kind = Kind::scalar;
  // Number of coordinates for vector domains.
  std::size_t dimension = 0;

  bool admits(const DomainValue& v) const;
  std::string to_string() const;

  static Domain scalar() { return {Kind::scalar, 0}; }
  static Domain vector(std::size_t n) { return {Kind::vector, n}; }
  static Domain token() { return {Kind::token, 0}; }
  // "scalar", "token" or "vectorN".
  static Domain parse(std::string_view text);
};

std::string format_value(const DomainValue& v);

class AttributeOutsideScheme : public std::invalid_argument {
 public:
  explicit AttributeOutsideScheme(std::string attribute)
      : std::invalid_argument("attribute '" + attribute + "' is not in the relation scheme"),
        attribute_(std::move(attribute)) {}
  const std::string& attribute() const { return attribute_; }

 private:
  std::string attribute_;
};

// Malformed relation: missing similarity, tuple of wrong width, value
// outside its domain, non-reflexive similarity, ...
class RelationError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

template <Pomonoid Alg>
using Similarity = std::function<typename Alg::element(const DomainValue&, const DomainValue&)>;

// Euclidean distance of two scalars or two equally long vectors.
double euclidean_distance(const DomainValue& a, const DomainValue& b);

// exp(-10^-c * d(a, b)) on the unit interval.
Similarity<UnitIntervalPomonoid> exp_euclidean_similarity(double c);

// Unit on equal values, `bottom` otherwise.
template <Pomonoid Alg>
Similarity<Alg> equality_similarity(const Alg& algebra, typename Alg::element bottom) {
  if (!algebra.contains(bottom)) throw RelationError("equality similarity: element outside the carrier");
  const auto unit = algebra.unit();
  if (algebra.leq(unit, bottom)) throw RelationError("equality similarity needs an element other than the unit");
  return [unit, bottom](const DomainValue& a, const DomainValue& b) { return a == b ? unit : bottom; };
}

// Lookup table over token labels; the diagonal must be the unit.
template <Pomonoid Alg>
Similarity<Alg> table_similarity(const Alg& algebra, std::vector<std::string> labels,
                                 std::vector<std::vector<typename Alg::element>> values) {
  const std::size_t n = labels.size();
  if (values.size() != n) throw RelationError("similarity table has the wrong number of rows");
  std::map<std::string, std::size_t> index;
  for (std::size_t i = 0; i < n; ++i) {
    if (!index.emplace(labels[i], i).second) throw RelationError("duplicate label '" + labels[i] + "'");
    if (values[i].size() != n) throw RelationError("similarity table row '" + labels[i] + "' has the wrong width");
    for (const auto& v : values[i]) {
      if (!algebra.contains(v)) throw RelationError("similarity table entry outside the carrier");
    }
    const auto d = values[i][i];
    if (!(algebra.leq(algebra.unit(), d) && algebra.leq(d, algebra.unit()))) {
      throw RelationError("similarity table is not reflexive at '" + labels[i] + "'");
    }
  }
  return [index = std::move(index), values = std::move(values)](const DomainValue& a, const DomainValue& b) {
    const auto* sa = std::get_if<std::string>(&a);
    const auto* sb = std::get_if<std::string>(&b);
    if (!sa || !sb) throw RelationError("table similarity applies to tokens only");
    auto ia = index.find(*sa);
    auto ib = index.find(*sb);
    if (ia == index.end() || ib == index.end()) {
      throw RelationError("token '" + (ia == index.end() ? *sa : *sb) + "' missing from similarity table");
    }
    return values[ia->second][ib->second];
  };
}

template <Pomonoid Alg>
struct SimilaritySpace {
  std::shared_ptr<const Alg> algebra;
  std::map<std::string, Domain, std::less<>> domains;
  std::map<std::string, Similarity<Alg>, std::less<>> similarity;
};

// Finite list of tuples over an ordered scheme. Tuples are bags: duplicates
// are kept. Construction checks that every tuple is total and well typed
// and that each similarity is reflexive on the values that occur.
template <Pomonoid Alg>
class RankedRelation {
 public:
  using element = typename Alg::element;
  using Tuple = std::vector<DomainValue>;

  RankedRelation(std::vector<std::string> scheme, std::vector<Tuple> tuples, SimilaritySpace<Alg> space)
      : scheme_(std::move(scheme)), tuples_(std::move(tuples)), space_(std::move(space)) {
    if (!space_.algebra) throw RelationError("similarity space has no algebra");
    for (std::size_t k = 0; k < scheme_.size(); ++k) {
      const std::string& p = scheme_[k];
      if (!is_attribute_name(p)) throw RelationError("'" + p + "' is not a valid attribute name");
      if (!column_.emplace(p, k).second) throw RelationError("attribute '" + p + "' listed twice");
      if (!space_.domains.count(p)) throw RelationError("no domain for attribute '" + p + "'");
      if (!space_.similarity.count(p)) throw RelationError("no similarity for attribute '" + p + "'");
    }
    for (std::size_t i = 0; i < tuples_.size(); ++i) {
      const Tuple& t = tuples_[i];
      if (t.size() != scheme_.size()) {
        throw RelationError("tuple " + std::to_string(i + 1) + " has " + std::to_string(t.size()) + " values, expected " +
                            std::to_string(scheme_.size()));
      }
      for (std::size_t k = 0; k < t.size(); ++k) {
        const std::string& p = scheme_[k];
        const Domain& dom = space_.domains.find(p)->second;
        if (!dom.admits(t[k])) {
          throw RelationError("tuple " + std::to_string(i + 1) + ": value " + format_value(t[k]) + " of '" + p +
                              "' is not in domain " + dom.to_string());
        }
        const auto self = space_.similarity.find(p)->second(t[k], t[k]);
        if (!(algebra().leq(algebra().unit(), self) && algebra().contains(self))) {
          throw RelationError("similarity on '" + p + "' is not reflexive at " + format_value(t[k]));
        }
      }
    }
  }

  const Alg& algebra() const { return *space_.algebra; }
  const std::vector<std::string>& scheme() const { return scheme_; }
  const std::vector<Tuple>& tuples() const { return tuples_; }
  std::size_t size() const { return tuples_.size(); }
  const SimilaritySpace<Alg>& space() const { return space_; }

  bool in_scheme(std::string_view p) const { return column_.find(p) != column_.end(); }

  const DomainValue& value(std::size_t i, std::string_view p) const {
    auto it = column_.find(p);
    if (it == column_.end()) throw AttributeOutsideScheme(std::string(p));
    return tuples_.at(i)[it->second];
  }

  element similarity(std::string_view p, std::size_t i, std::size_t j) const {
    auto it = space_.similarity.find(p);
    if (it == space_.similarity.end()) throw AttributeOutsideScheme(std::string(p));
    return it->second(value(i, p), value(j, p));
  }

  // A copy with one more tuple at the end.
  RankedRelation with_tuple(Tuple t) const {
    auto tuples = tuples_;
    tuples.push_back(std::move(t));
    return RankedRelation(scheme_, std::move(tuples), space_);
  }

 private:
  std::vector<std::string> scheme_;
  std::vector<Tuple> tuples_;
  SimilaritySpace<Alg> space_;
  std::map<std::string, std::size_t, std::less<>> column_;
};

template <Pomonoid Alg>
void require_in_scheme(const RankedRelation<Alg>& rel, const AttributeMultiset& a) {
  for (const auto& [p, n] : a) {
    if (!rel.in_scheme(p)) throw AttributeOutsideScheme(p);
  }
}

// Degree to which tuples i and j agree on A: the product over p of
// sim_p(t_i(p), t_j(p))^A(p).
template <Pomonoid Alg>
typename Alg::element tuple_similarity(const RankedRelation<Alg>& rel, std::size_t i, std::size_t j,
                                       const AttributeMultiset& a) {
  require_in_scheme(rel, a);
  const Alg& alg = rel.algebra();
  auto result = alg.unit();
  for (const auto& [p, n] : a) result = alg.times(result, elem_power(alg, rel.similarity(p, i, j), n));
  return result;
}

template <Pomonoid Alg>
struct PairDegrees {
  std::size_t i;
  std::size_t j;
  typename Alg::element antecedent;
  typename Alg::element consequent;
};

template <Pomonoid Alg>
struct RelationCheck {
  bool holds = true;
  // First violating ordered pair in row-major order.
  std::optional<PairDegrees<Alg>> violation;
};

// Degrees on both sides for every ordered pair, row-major.
template <Pomonoid Alg>
std::vector<PairDegrees<Alg>> pair_degrees(const RankedRelation<Alg>& rel, const Mfd& f) {
  require_in_scheme(rel, f.antecedent);
  require_in_scheme(rel, f.consequent);
  std::vector<PairDegrees<Alg>> out;
  out.reserve(rel.size() * rel.size());
  for (std::size_t i = 0; i < rel.size(); ++i) {
    for (std::size_t j = 0; j < rel.size(); ++j) {
      out.push_back({i, j, tuple_similarity(rel, i, j, f.antecedent), tuple_similarity(rel, i, j, f.consequent)});
    }
  }
  return out;
}

template <Pomonoid Alg>
std::vector<PairDegrees<Alg>> violations(const RankedRelation<Alg>& rel, const Mfd& f) {
  std::vector<PairDegrees<Alg>> out;
  for (auto& d : pair_degrees(rel, f)) {
    if (!rel.algebra().leq(d.antecedent, d.consequent)) out.push_back(d);
  }
  return out;
}

template <Pomonoid Alg>
RelationCheck<Alg> satisfies_relation(const RankedRelation<Alg>& rel, const Mfd& f) {
  require_in_scheme(rel, f.antecedent);
  require_in_scheme(rel, f.consequent);
  for (std::size_t i = 0; i < rel.size(); ++i) {
    for (std::size_t j = 0; j < rel.size(); ++j) {
      auto lhs = tuple_similarity(rel, i, j, f.antecedent);
      auto rhs = tuple_similarity(rel, i, j, f.consequent);
      if (!rel.algebra().leq(lhs, rhs)) return {false, PairDegrees<Alg>{i, j, lhs, rhs}};
    }
  }
  return {true, std::nullopt};
}

template <Pomonoid Alg>
struct TheoryViolation {
  Mfd formula;
  PairDegrees<Alg> pair;
};

// First formula of the theory (in order) that the relation violates.
template <Pomonoid Alg>
std::optional<TheoryViolation<Alg>> first_violation(const RankedRelation<Alg>& rel, const Theory& theory) {
  for (const auto& f : theory) {
    require_in_scheme(rel, f.antecedent);
    require_in_scheme(rel, f.consequent);
  }
  for (const auto& f : theory) {
    auto check = satisfies_relation(rel, f);
    if (!check.holds) return TheoryViolation<Alg>{f, *check.violation};
  }
  return std::nullopt;
}

template <Pomonoid Alg>
bool relation_models(const RankedRelation<Alg>& rel, const Theory& theory) {
  return !first_violation(rel, theory).has_value();
}

namespace detail {

template <Pomonoid Alg>
DomainValue encode_element(const Alg& alg, typename Alg::element x) {
  if constexpr (std::is_floating_point_v<typename Alg::element>) {
    return x;
  } else {
    return alg.format(x);
  }
}

template <Pomonoid Alg>
typename Alg::element decode_element(const Alg& alg, const DomainValue& v) {
  if constexpr (std::is_floating_point_v<typename Alg::element>) {
    return std::get<double>(v);
  } else {
    auto found = alg.find(std::get<std::string>(v));
    if (!found) throw RelationError("unknown element '" + std::get<std::string>(v) + "'");
    return *found;
  }
}

}  // namespace detail

// The two-tuple relation {t1, t2} with t1(p) = 1 and t2(p) = e(p) on `scheme`.
// Values are carrier elements; two values are similar to the degree of
// their product, and every value to itself to degree 1.
template <Pomonoid Alg>
RankedRelation<Alg> evaluation_to_relation(const Evaluation<Alg>& e, const std::vector<std::string>& scheme) {
  const auto& algp = e.algebra_ptr();
  const Alg& alg = *algp;
  const Domain dom = std::is_floating_point_v<typename Alg::element> ? Domain::scalar() : Domain::token();
  Similarity<Alg> sim = [algp](const DomainValue& a, const DomainValue& b) {
    if (a == b) return algp->unit();
    return algp->times(detail::decode_element(*algp, a), detail::decode_element(*algp, b));
  };
  SimilaritySpace<Alg> space{algp, {}, {}};
  typename RankedRelation<Alg>::Tuple t1, t2;
  for (const auto& p : scheme) {
    space.domains.emplace(p, dom);
    space.similarity.emplace(p, sim);
    t1.push_back(detail::encode_element(alg, alg.unit()));
    t2.push_back(detail::encode_element(alg, e(p)));
  }
  return RankedRelation<Alg>(scheme, {std::move(t1), std::move(t2)}, std::move(space));
}

// One evaluation per ordered tuple pair (i, j), row-major, with
// e(p) = sim_p(t_i(p), t_j(p)).
template <Pomonoid Alg>
std::vector<Evaluation<Alg>> relation_to_evaluations(const RankedRelation<Alg>& rel) {
  std::vector<Evaluation<Alg>> out;
  for (std::size_t i = 0; i < rel.size(); ++i) {
    for (std::size_t j = 0; j < rel.size(); ++j) {
      typename Evaluation<Alg>::Assignment assignment;
      for (const auto& p : rel.scheme()) assignment.emplace(p, rel.similarity(p, i, j));
      out.emplace_back(rel.space().algebra, std::move(assignment));
    }
  }
  return out;
}

}  // namespace mfd
