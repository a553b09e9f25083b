#include <doctest.h>

#include <random>

#include "mfd/multiset.hpp"

using namespace mfd;

namespace {

AttributeMultiset random_multiset(std::mt19937& rng) {
  static const char* names[] = {"p", "q", "r", "s"};
  std::uniform_int_distribution<int> mult(0, 3);
  AttributeMultiset a;
  for (const char* n : names) a.add(n, static_cast<Count>(mult(rng)));
  return a;
}

}  // namespace

TEST_SUITE("multiset") {
  TEST_CASE("zero multiplicities are not stored") {
    AttributeMultiset a{{"p", 0}, {"q", 2}};
    CHECK(a.support_size() == 1);
    CHECK(a["p"] == 0);
    CHECK(a["q"] == 2);
    CHECK(a == AttributeMultiset{{"q", 2}});
    CHECK(AttributeMultiset::top().is_top());
  }

  TEST_CASE("union") {
    CHECK(multiset_union({{"p", 1}}, {{"p", 1}, {"q", 1}}) == AttributeMultiset{{"p", 2}, {"q", 1}});
    CHECK(multiset_union(AttributeMultiset::top(), {{"loc", 1}}) == AttributeMultiset{{"loc", 1}});
    CHECK(multiset_union({{"LOCATION", 1}, {"AREA", 1}}, {{"AREA", 1}}) ==
          AttributeMultiset{{"LOCATION", 1}, {"AREA", 2}});
  }

  TEST_CASE("power") {
    CHECK(multiset_power({{"p", 1}}, 0).is_top());
    CHECK(multiset_power({{"p", 1}, {"q", 2}}, 3) == AttributeMultiset{{"p", 3}, {"q", 6}});
    CHECK(multiset_power({{"p", 1}}, 2) == AttributeMultiset{{"p", 2}});
  }

  TEST_CASE("divides") {
    CHECK(divides({{"p", 1}}, {{"p", 2}, {"q", 1}}) == AttributeMultiset{{"p", 1}, {"q", 1}});
    CHECK_FALSE(divides({{"p", 2}}, {{"p", 1}}).has_value());
    const AttributeMultiset a{{"x", 4}};
    CHECK(divides(AttributeMultiset::top(), a) == a);
  }

  TEST_CASE("algebraic laws on random multisets") {
    std::mt19937 rng(7);
    for (int k = 0; k < 500; ++k) {
      const auto a = random_multiset(rng), b = random_multiset(rng), c = random_multiset(rng);
      CHECK(multiset_union(a, b) == multiset_union(b, a));
      CHECK(multiset_union(a, multiset_union(b, c)) == multiset_union(multiset_union(a, b), c));
      CHECK(multiset_union(a, AttributeMultiset::top()) == a);

      // divides(E, W) = X iff E X = W
      const auto q = divides(a, b);
      bool pointwise = true;
      for (const auto& [p, n] : a) pointwise = pointwise && n <= b[p];
      CHECK(q.has_value() == pointwise);
      if (q) CHECK(multiset_union(a, *q) == b);
      CHECK(divides(a, multiset_union(a, c)) == c);

      const Count m = static_cast<Count>(k % 4), n = static_cast<Count>((k / 4) % 3);
      CHECK(multiset_power(a, m + n) == multiset_union(multiset_power(a, m), multiset_power(a, n)));
      CHECK(contained_in(a, b) == pointwise);
    }
  }

  TEST_CASE("support and totals") {
    const AttributeMultiset a{{"p", 2}, {"q", 1}};
    CHECK(a.total() == 3);
    CHECK(a.support() == std::set<std::string>{"p", "q"});
    CHECK(support_of(a) == AttributeMultiset{{"p", 1}, {"q", 1}});
    CHECK(to_string(a) == "p p q");
    CHECK(to_string(AttributeMultiset::top()) == "1");
  }

  TEST_CASE("multiplicity cap") {
    const Count saved = multiplicity_cap();
    set_multiplicity_cap(10);
    AttributeMultiset a{{"p", 6}};
    CHECK_THROWS_AS(a.add("p", 5), MultiplicityOverflow);
    CHECK_THROWS_AS(multiset_union(a, a), MultiplicityOverflow);
    CHECK_THROWS_AS(multiset_power(a, 2), MultiplicityOverflow);
    CHECK_NOTHROW(multiset_power(AttributeMultiset{{"p", 5}}, 2));
    set_multiplicity_cap(saved);
    CHECK(multiplicity_cap() == kDefaultMultiplicityCap);
  }

  TEST_CASE("hash agrees with equality") {
    const AttributeMultiset a{{"p", 1}, {"q", 2}};
    AttributeMultiset b;
    b.add("q", 2);
    b.add("p");
    CHECK(std::hash<AttributeMultiset>{}(a) == std::hash<AttributeMultiset>{}(b));
  }
}
