#include "mfd/multiset.hpp"

#include <atomic>
#include <functional>

namespace mfd {

namespace {

std::atomic<Count> g_multiplicity_cap{kDefaultMultiplicityCap};

Count checked_add(Count a, Count b, std::string_view attribute) {
  const Count cap = multiplicity_cap();
  if (a > cap || b > cap - a) {
    throw MultiplicityOverflow("multiplicity of '" + std::string(attribute) + "' exceeds cap " +
                               std::to_string(cap));
  }
  return a + b;
}

}  // namespace

Count multiplicity_cap() { return g_multiplicity_cap.load(std::memory_order_relaxed); }

void set_multiplicity_cap(Count cap) {
  if (cap == 0) throw std::invalid_argument("multiplicity cap must be positive");
  g_multiplicity_cap.store(cap, std::memory_order_relaxed);
}

AttributeMultiset::AttributeMultiset(std::initializer_list<std::pair<const std::string, Count>> init) {
  for (const auto& [name, n] : init) add(name, n);
}

AttributeMultiset::AttributeMultiset(Entries entries) {
  for (const auto& [name, n] : entries) add(name, n);
}

AttributeMultiset AttributeMultiset::singleton(std::string attribute) {
  AttributeMultiset result;
  result.add(attribute, 1);
  return result;
}

Count AttributeMultiset::operator[](std::string_view attribute) const {
  auto it = entries_.find(attribute);
  return it == entries_.end() ? 0 : it->second;
}

Count AttributeMultiset::total() const {
  Count sum = 0;
  for (const auto& [name, n] : entries_) sum += n;
  return sum;
}

std::set<std::string> AttributeMultiset::support() const {
  std::set<std::string> result;
  for (const auto& [name, n] : entries_) result.insert(name);
  return result;
}

void AttributeMultiset::add(const std::string& attribute, Count n) {
  if (n == 0) return;
  auto [it, inserted] = entries_.try_emplace(attribute, 0);
  it->second = checked_add(it->second, n, attribute);
}

AttributeMultiset multiset_union(const AttributeMultiset& a, const AttributeMultiset& b) {
  AttributeMultiset result = a;
  for (const auto& [name, n] : b) result.add(name, n);
  return result;
}

AttributeMultiset multiset_power(const AttributeMultiset& a, Count n) {
  AttributeMultiset result;
  if (n == 0) return result;
  const Count cap = multiplicity_cap();
  for (const auto& [name, m] : a) {
    if (m > cap / n) {
      throw MultiplicityOverflow("multiplicity of '" + name + "' exceeds cap " + std::to_string(cap));
    }
    result.add(name, m * n);
  }
  return result;
}

bool contained_in(const AttributeMultiset& a, const AttributeMultiset& b) {
  for (const auto& [name, n] : a) {
    if (b[name] < n) return false;
  }
  return true;
}

std::optional<AttributeMultiset> divides(const AttributeMultiset& part, const AttributeMultiset& whole) {
  if (!contained_in(part, whole)) return std::nullopt;
  AttributeMultiset::Entries rest;
  for (const auto& [name, n] : whole) {
    const Count left = n - part[name];
    if (left > 0) rest.emplace(name, left);
  }
  return AttributeMultiset(std::move(rest));
}

AttributeMultiset support_of(const AttributeMultiset& a) {
  AttributeMultiset result;
  for (const auto& [name, n] : a) result.add(name, 1);
  return result;
}

std::string to_string(const AttributeMultiset& a) {
  if (a.is_top()) return "1";
  std::string out;
  for (const auto& [name, n] : a) {
    for (Count i = 0; i < n; ++i) {
      if (!out.empty()) out += ' ';
      out += name;
    }
  }
  return out;
}

}  // namespace mfd

std::size_t std::hash<mfd::AttributeMultiset>::operator()(const mfd::AttributeMultiset& a) const noexcept {
  std::size_t seed = 0x9e3779b97f4a7c15ULL;
  for (const auto& [name, n] : a) {
    seed ^= std::hash<std::string>{}(name) + 0x9e3779b97f4a7c15ULL + (seed << 6) + (seed >> 2);
    seed ^= std::hash<mfd::Count>{}(n) + 0x9e3779b97f4a7c15ULL + (seed << 6) + (seed >> 2);
  }
  return seed;
}
