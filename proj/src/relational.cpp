#include "mfd/relational.hpp"

#include <charconv>
#include <cmath>

namespace mfd {

bool Domain::admits(const DomainValue& v) const {
  switch (kind) {
    case Kind::scalar:
      return std::holds_alternative<double>(v) && std::isfinite(std::get<double>(v));
    case Kind::vector: {
      const auto* xs = std::get_if<std::vector<double>>(&v);
      if (!xs || xs->size() != dimension) return false;
      for (double x : *xs) {
        if (!std::isfinite(x)) return false;
      }
      return true;
    }
    case Kind::token:
      return std::holds_alternative<std::string>(v);
  }
  return false;
}

std::string Domain::to_string() const {
  switch (kind) {
    case Kind::scalar:
      return "scalar";
    case Kind::vector:
      return "vector" + std::to_string(dimension);
    case Kind::token:
      return "token";
  }
  return "?";
}

Domain Domain::parse(std::string_view text) {
  if (text == "scalar") return scalar();
  if (text == "token") return token();
  if (text.starts_with("vector")) {
    std::string_view digits = text.substr(6);
    std::size_t n = 0;
    auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), n);
    if (ec == std::errc{} && ptr == digits.data() + digits.size() && n > 0) return vector(n);
  }
  throw RelationError("unknown domain '" + std::string(text) + "'");
}

namespace {

std::string format_double(double x) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, ptr);
}

}  // namespace

std::string format_value(const DomainValue& v) {
  if (const auto* x = std::get_if<double>(&v)) return format_double(*x);
  if (const auto* s = std::get_if<std::string>(&v)) return "'" + *s + "'";
  std::string out = "[";
  const auto& xs = std::get<std::vector<double>>(v);
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (i) out += ", ";
    out += format_double(xs[i]);
  }
  return out + "]";
}

double euclidean_distance(const DomainValue& a, const DomainValue& b) {
  if (const auto* x = std::get_if<double>(&a)) {
    const auto* y = std::get_if<double>(&b);
    if (!y) throw RelationError("distance between a scalar and a non-scalar");
    return std::abs(*x - *y);
  }
  const auto* xs = std::get_if<std::vector<double>>(&a);
  const auto* ys = std::get_if<std::vector<double>>(&b);
  if (!xs || !ys) throw RelationError("Euclidean distance needs numeric values");
  if (xs->size() != ys->size()) {
    throw RelationError("dimension mismatch: " + std::to_string(xs->size()) + " vs " + std::to_string(ys->size()));
  }
  double sum = 0.0;
  for (std::size_t i = 0; i < xs->size(); ++i) {
    const double d = (*xs)[i] - (*ys)[i];
    sum += d * d;
  }
  return std::sqrt(sum);
}

Similarity<UnitIntervalPomonoid> exp_euclidean_similarity(double c) {
  if (!std::isfinite(c)) throw RelationError("exp_euclidean: c must be finite");
  const double scale = std::pow(10.0, -c);
  return [scale](const DomainValue& a, const DomainValue& b) { return std::exp(-scale * euclidean_distance(a, b)); };
}

}  // namespace mfd
