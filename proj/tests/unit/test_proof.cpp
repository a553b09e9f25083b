#include <doctest.h>

#include <random>

#include "mfd/algebra.hpp"
#include "mfd/proof.hpp"

using namespace mfd;

namespace {

ProofTree hyp(std::string_view f) { return ProofTree::hypothesis(parse_mfd(f)); }

// Every evaluation over `vars` in every pomonoid up to size 3 that models
// `theory` also satisfies `f`.
bool semantically_follows(const Theory& theory, const Mfd& f) {
  std::set<std::string> vars = theory.variables();
  for (const auto& v : variables_of(f)) vars.insert(v);
  const std::vector<std::string> names(vars.begin(), vars.end());
  for (const auto& alg : enumerate_pomonoids(3)) {
    std::vector<std::size_t> values(names.size(), 0);
    while (true) {
      Evaluation<FinitePomonoid>::Assignment a;
      for (std::size_t i = 0; i < names.size(); ++i) a[names[i]] = values[i];
      Evaluation<FinitePomonoid> e(alg, a);
      if (is_model(e, theory) && !satisfies(e, f)) return false;
      std::size_t k = 0;
      while (k < values.size() && ++values[k] == alg.size()) values[k++] = 0;
      if (k == values.size()) break;
    }
  }
  return true;
}

}  // namespace

TEST_SUITE("proof") {
  TEST_CASE("check_proof on the weakened dependency") {
    const Theory t = parse_theory("LOCATION AREA -> PRICE");
    const auto tree = ProofTree::cut(hyp("LOCATION AREA -> PRICE"),
                                     ProofTree::axiom(parse_multiset("AREA"), parse_multiset("PRICE")));
    CHECK(check_proof(tree, t) == parse_mfd("LOCATION AREA AREA -> PRICE"));
  }

  TEST_CASE("axiom shape") {
    const auto ax = ProofTree::axiom(parse_multiset("p"), parse_multiset("q"));
    CHECK(ax.conclusion() == parse_mfd("p q -> q"));
    CHECK(check_proof(ax, Theory{}) == parse_mfd("p q -> q"));
    CHECK(ax.kind() == ProofTree::Kind::axiom);
    CHECK(ax.axiom_context() == parse_multiset("p"));
    CHECK(ax.axiom_kept() == parse_multiset("q"));
  }

  TEST_CASE("checker rejects bad trees") {
    const Theory t = parse_theory("p -> q");
    try {
      ProofTree::cut(hyp("p -> q"), hyp("r -> s"));
      FAIL("cut should reject");
    } catch (const ProofError& e) {
      CHECK(e.kind() == ProofError::Kind::cut_mismatch);
    }
    try {
      check_proof(hyp("q -> r"), t);
      FAIL("foreign hypothesis");
    } catch (const ProofError& e) {
      CHECK(e.kind() == ProofError::Kind::hypothesis_not_in_theory);
    }
    try {
      check_proof(ProofTree::axiom(parse_multiset("p"), parse_multiset("q"), parse_mfd("p -> q")), t);
      FAIL("malformed axiom");
    } catch (const ProofError& e) {
      CHECK(e.kind() == ProofError::Kind::malformed_axiom);
    }
    try {
      check_proof(ProofTree::cut(hyp("p -> q"), ProofTree::axiom({}, parse_multiset("q")), parse_mfd("p -> p")), t);
      FAIL("wrong stored conclusion");
    } catch (const ProofError& e) {
      CHECK(e.kind() == ProofError::Kind::cut_mismatch);
    }
    try {
      check_proof(ProofTree::cut(hyp("p -> q"), hyp("p -> q"), parse_mfd("p -> q")), t);
      FAIL("unchecked cut with mismatched middle");
    } catch (const ProofError& e) {
      CHECK(e.kind() == ProofError::Kind::cut_mismatch);
    }
  }

  TEST_CASE("derived rules") {
    const Theory t = parse_theory("p -> q\nq -> r\np -> r\nloc area -> price\nprice -> tax\na -> b");
    auto concl = [&](const ProofTree& tree) { return check_proof(tree, t); };

    CHECK(concl(derive_tra(hyp("p -> q"), hyp("q -> r"))) == parse_mfd("p -> r"));
    CHECK(concl(derive_tra(derive_ref(parse_multiset("p")), hyp("p -> q"))) == parse_mfd("p -> q"));
    CHECK(concl(derive_tra(hyp("loc area -> price"), hyp("price -> tax"))) == parse_mfd("loc area -> tax"));
    CHECK_THROWS_AS(derive_tra(hyp("p -> q"), hyp("p -> r")), ProofError);

    CHECK(concl(derive_aug(hyp("p -> q"), {})) == parse_mfd("p -> q"));
    CHECK(concl(derive_aug(hyp("p -> q"), parse_multiset("r"))) == parse_mfd("p r -> q r"));
    CHECK(concl(derive_aug(hyp("p -> q"), parse_multiset("p"))) == parse_mfd("p p -> q p"));

    CHECK(concl(derive_ref(parse_multiset("p p"))) == parse_mfd("p p -> p p"));

    // from AC => AC and A => B infer AC => BC, with A = p, C = r
    const auto ref = derive_ref(parse_multiset("p r"));
    CHECK(concl(derive_rwt(ref, hyp("p -> q"))) == parse_mfd("p r -> q r"));
    CHECK_THROWS_AS(derive_rwt(hyp("p -> q"), hyp("r -> q")), ProofError);

    CHECK(concl(derive_pro(derive_aug(hyp("p -> q"), parse_multiset("r")), parse_multiset("q"))) ==
          parse_mfd("p r -> q"));
    CHECK_THROWS_AS(derive_pro(hyp("p -> q"), parse_multiset("r")), ProofError);

    CHECK(concl(derive_weak_additivity(hyp("p -> q"), hyp("p -> r"))) == parse_mfd("p p -> q r"));
    const Theory tops = parse_theory("p -> 1");
    CHECK(check_proof(derive_weak_additivity(hyp("p -> 1"), hyp("p -> 1")), tops) == parse_mfd("p p -> 1"));
    CHECK(concl(derive_weak_additivity(hyp("a -> b"), hyp("a -> b"))) == parse_mfd("a a -> b b"));
    CHECK_THROWS_AS(derive_weak_additivity(hyp("p -> q"), hyp("q -> r")), ProofError);
  }

  TEST_CASE("size and depth") {
    const auto tree = derive_tra(hyp("p -> q"), hyp("q -> r"));
    CHECK(tree.size() >= 3);
    CHECK(tree.depth() >= 2);
    CHECK(hyp("p -> q").size() == 1);
    CHECK(hyp("p -> q").depth() == 1);
  }

  TEST_CASE("s-expression round trip") {
    const Theory t = parse_theory("p -> q\np -> r");
    const auto tree = derive_weak_additivity(hyp("p -> q"), hyp("p -> r"));
    for (bool pretty : {true, false}) {
      const auto back = parse_sexpr(to_sexpr(tree, pretty));
      CHECK(check_proof(back, t) == check_proof(tree, t));
      CHECK(to_sexpr(back, false) == to_sexpr(tree, false));
    }
    CHECK(to_sexpr(ProofTree::axiom(parse_multiset("p"), parse_multiset("q")), false) == "(ax \"p\" \"q\")");
    CHECK_THROWS_AS(parse_sexpr("(cut (hyp \"p -> q\")"), ParseError);
    CHECK_THROWS_AS(parse_sexpr("(lemma \"p -> q\")"), ParseError);
    CHECK_THROWS_AS(parse_sexpr("(hyp \"p ->\")"), ParseError);
    // a certificate with a forged conclusion parses but does not check
    const auto forged = parse_sexpr("(cut (hyp \"p -> q\") (ax \"1\" \"q\") \"p -> q r\") ; comment");
    CHECK_THROWS_AS(check_proof(forged, t), ProofError);
  }

  TEST_CASE("checked trees are sound in small pomonoids") {
    std::mt19937 rng(21);
    const char* vars[] = {"p", "q", "r"};
    std::uniform_int_distribution<int> mult(0, 2), var(0, 2), op(0, 5);
    for (int round = 0; round < 25; ++round) {
      Theory t;
      std::vector<ProofTree> pool;
      for (int i = 0; i < 2; ++i) {
        Mfd f;
        for (const char* v : vars) {
          f.antecedent.add(v, static_cast<Count>(mult(rng) > 1));
          f.consequent.add(v, static_cast<Count>(mult(rng)));
        }
        t.add(f);
        pool.push_back(ProofTree::hypothesis(f));
      }
      for (int step = 0; step < 8; ++step) {
        const auto& a = pool[std::uniform_int_distribution<std::size_t>(0, pool.size() - 1)(rng)];
        const auto& b = pool[std::uniform_int_distribution<std::size_t>(0, pool.size() - 1)(rng)];
        AttributeMultiset c = AttributeMultiset::singleton(vars[var(rng)]);
        try {
          switch (op(rng)) {
            case 0:
              pool.push_back(derive_aug(a, c));
              break;
            case 1:
              pool.push_back(derive_tra(a, b));
              break;
            case 2:
              pool.push_back(derive_weak_additivity(a, b));
              break;
            case 3:
              pool.push_back(derive_rwt(a, b));
              break;
            case 4:
              pool.push_back(derive_pro(a, c));
              break;
            default:
              pool.push_back(ProofTree::cut(a, b));
          }
        } catch (const ProofError&) {
        }
      }
      for (const auto& tree : pool) {
        const Mfd concl = check_proof(tree, t);
        CHECK(semantically_follows(t, concl));
      }
    }
  }
}
