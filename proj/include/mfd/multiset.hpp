#pragma once

#include <compare>
#include <cstdint>
#include <initializer_list>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>

namespace mfd {

// Raised when a multiplicity would exceed the configured cap.
class MultiplicityOverflow : public std::overflow_error {
 public:
  using std::overflow_error::overflow_error;
};

using Count = std::uint64_t;

constexpr Count kDefaultMultiplicityCap = (Count{1} << 31) - 1;

// Upper bound on any stored multiplicity. Process-wide, defaults to 2^31-1.
Count multiplicity_cap();
void set_multiplicity_cap(Count cap);

// Finite-support map from attribute names to positive multiplicities.
// 
// Absent attributes have multiplicity zero; zero entries are never stored,
// so two multisets compare equal iff they agree on every attribute. The
// empty multiset is the top formula (written `1` in theory text).
class AttributeMultiset {
 public:
  using Entries = std::map<std::string, Count, std::less<>>;

  AttributeMultiset() = default;
  AttributeMultiset(std::initializer_list<std::pair<const std::string, Count>> init);
  explicit AttributeMultiset(Entries entries);

  static AttributeMultiset top() { return {}; }
  static AttributeMultiset singleton(std::string attribute);

  Count operator[](std::string_view attribute) const;

  const Entries& entries() const { return entries_; }
  bool is_top() const { return entries_.empty(); }
  // Number of distinct attributes.
  std::size_t support_size() const { return entries_.size(); }
  // Sum of all multiplicities.
  Count total() const;
  std::set<std::string> support() const;

  // Adds `n` occurrences of `attribute`, checking the multiplicity cap.
  void add(const std::string& attribute, Count n = 1);

  auto begin() const { return entries_.begin(); }
  auto end() const { return entries_.end(); }

  friend bool operator==(const AttributeMultiset&, const AttributeMultiset&) = default;
  friend std::strong_ordering operator<=>(const AttributeMultiset& a, const AttributeMultiset& b) {
    return a.entries_ <=> b.entries_;
  }

 private:
  Entries entries_;
};

// Pointwise sum (AB).
AttributeMultiset multiset_union(const AttributeMultiset& a, const AttributeMultiset& b);

// n-fold union of `a` with itself; power(a, 0) is top.
AttributeMultiset multiset_power(const AttributeMultiset& a, Count n);

// Pointwise a(p) <= b(p).
bool contained_in(const AttributeMultiset& a, const AttributeMultiset& b);

// Returns X with `whole` = `part` X, if `part` is pointwise below `whole`.
std::optional<AttributeMultiset> divides(const AttributeMultiset& part, const AttributeMultiset& whole);

// Support collapse: every multiplicity set to one.
AttributeMultiset support_of(const AttributeMultiset& a);

// Space-separated attribute tokens, repeated per multiplicity; "1" for top.
std::string to_string(const AttributeMultiset& a);

}  // namespace mfd

template <>
struct std::hash<mfd::AttributeMultiset> {
  std::size_t operator()(const mfd::AttributeMultiset& a) const noexcept;
};
