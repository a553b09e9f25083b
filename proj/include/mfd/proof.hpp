#pragma once

#include <memory>
#include <stdexcept>
#include <string>
#include <string_view>

#include "mfd/formula.hpp"

namespace mfd {

// Immutable proof tree over the Ax/Cut system.
// 
//   Ax:  AB => B
//   Cut: from A => B and BC => D infer AC => D
// 
// Every node stores its conclusion. Trees built through the checked
// factories are well formed by construction; trees read from certificates
// are verified by check_proof().
class ProofTree {
 public:
  enum class Kind { hypothesis, axiom, cut };

  static ProofTree hypothesis(Mfd f);
  // Axiom instance with context `a` and kept part `b`, concluding AB => B.
  static ProofTree axiom(AttributeMultiset a, AttributeMultiset b);
  // Axiom node claiming an arbitrary conclusion (unchecked).
  static ProofTree axiom(AttributeMultiset a, AttributeMultiset b, Mfd claimed);
  // Cut node with the conclusion computed from its premises. Throws
  // ProofError(cut_mismatch) if the left consequent does not divide the
  // right antecedent.
  static ProofTree cut(ProofTree left, ProofTree right);
  // Cut node claiming `conclusion` (unchecked).
  static ProofTree cut(ProofTree left, ProofTree right, Mfd conclusion);

  Kind kind() const;
  const Mfd& conclusion() const;

  // Premises of a cut node.
  const ProofTree& left() const;
  const ProofTree& right() const;
  // Parameters of an axiom node.
  const AttributeMultiset& axiom_context() const;
  const AttributeMultiset& axiom_kept() const;

  // Number of nodes.
  std::size_t size() const;
  std::size_t depth() const;

 private:
  struct Node;
  explicit ProofTree(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
  std::shared_ptr<const Node> node_;
};

class ProofError : public std::runtime_error {
 public:
  enum class Kind { hypothesis_not_in_theory, malformed_axiom, cut_mismatch, premise_mismatch };
  ProofError(Kind kind, const std::string& message) : std::runtime_error(message), kind_(kind) {}
  Kind kind() const { return kind_; }

 private:
  Kind kind_;
};

// Verifies every node and returns the root conclusion, which is then
// provable from `theory`.
Mfd check_proof(const ProofTree& tree, const Theory& theory);

// Derived rules, each expanded into Ax/Cut. Preconditions are checked and
// violations raise ProofError(premise_mismatch).

// A => A.
ProofTree derive_ref(const AttributeMultiset& a);
// From A => B and B => C infer A => C.
ProofTree derive_tra(const ProofTree& ab, const ProofTree& bc);
// From A => B infer AC => BC.
ProofTree derive_aug(const ProofTree& ab, const AttributeMultiset& c);
// From A => BC and C => D infer A => BD; C is the antecedent of `cd`.
ProofTree derive_rwt(const ProofTree& abc, const ProofTree& cd);
// From A => BC infer A => B.
ProofTree derive_pro(const ProofTree& abc, const AttributeMultiset& b);
// From A => B and A => C infer AA => BC.
ProofTree derive_weak_additivity(const ProofTree& ab, const ProofTree& ac);

// Certificates: (hyp "<mfd>"), (ax "<A>" "<B>"), (cut <left> <right> "<mfd>").

std::string to_sexpr(const ProofTree& tree, bool pretty = true);
// Throws ParseError on malformed text. The result is not checked.
ProofTree parse_sexpr(std::string_view text);

}  // namespace mfd
