#include "mfd/proof.hpp"

#include <cctype>
#include <unordered_set>
#include <vector>

namespace mfd {

struct ProofTree::Node {
  Kind kind;
  Mfd conclusion;
  AttributeMultiset ax_context;
  AttributeMultiset ax_kept;
  std::vector<ProofTree> premises;  // left, right for cuts
};

namespace {

std::string describe(const Mfd& f) { return "'" + to_string(f) + "'"; }

}  // namespace

ProofTree ProofTree::hypothesis(Mfd f) {
  return ProofTree(std::make_shared<const Node>(Node{Kind::hypothesis, std::move(f), {}, {}, {}}));
}

ProofTree ProofTree::axiom(AttributeMultiset a, AttributeMultiset b) {
  Mfd conclusion{multiset_union(a, b), b};
  return axiom(std::move(a), std::move(b), std::move(conclusion));
}

ProofTree ProofTree::axiom(AttributeMultiset a, AttributeMultiset b, Mfd claimed) {
  return ProofTree(
      std::make_shared<const Node>(Node{Kind::axiom, std::move(claimed), std::move(a), std::move(b), {}}));
}

ProofTree ProofTree::cut(ProofTree left, ProofTree right) {
  const Mfd& l = left.conclusion();
  const Mfd& r = right.conclusion();
  auto rest = divides(l.consequent, r.antecedent);
  if (!rest) {
    throw ProofError(ProofError::Kind::cut_mismatch, "cut: consequent of " + describe(l) +
                                                         " does not divide antecedent of " + describe(r));
  }
  Mfd conclusion{multiset_union(l.antecedent, *rest), r.consequent};
  return cut(std::move(left), std::move(right), std::move(conclusion));
}

ProofTree ProofTree::cut(ProofTree left, ProofTree right, Mfd conclusion) {
  return ProofTree(std::make_shared<const Node>(
      Node{Kind::cut, std::move(conclusion), {}, {}, {std::move(left), std::move(right)}}));
}

ProofTree::Kind ProofTree::kind() const { return node_->kind; }
const Mfd& ProofTree::conclusion() const { return node_->conclusion; }

const ProofTree& ProofTree::left() const {
  if (kind() != Kind::cut) throw std::logic_error("left() on a non-cut proof node");
  return node_->premises[0];
}

const ProofTree& ProofTree::right() const {
  if (kind() != Kind::cut) throw std::logic_error("right() on a non-cut proof node");
  return node_->premises[1];
}

const AttributeMultiset& ProofTree::axiom_context() const {
  if (kind() != Kind::axiom) throw std::logic_error("axiom_context() on a non-axiom proof node");
  return node_->ax_context;
}

const AttributeMultiset& ProofTree::axiom_kept() const {
  if (kind() != Kind::axiom) throw std::logic_error("axiom_kept() on a non-axiom proof node");
  return node_->ax_kept;
}

std::size_t ProofTree::size() const {
  std::size_t count = 0;
  std::vector<const Node*> stack{node_.get()};
  while (!stack.empty()) {
    const Node* n = stack.back();
    stack.pop_back();
    ++count;
    if (n->kind == Kind::cut) {
      stack.push_back(n->premises[0].node_.get());
      stack.push_back(n->premises[1].node_.get());
    }
  }
  return count;
}

std::size_t ProofTree::depth() const {
  std::size_t best = 0;
  std::vector<std::pair<const Node*, std::size_t>> stack{{node_.get(), 1}};
  while (!stack.empty()) {
    auto [n, d] = stack.back();
    stack.pop_back();
    best = std::max(best, d);
    if (n->kind == Kind::cut) {
      stack.emplace_back(n->premises[0].node_.get(), d + 1);
      stack.emplace_back(n->premises[1].node_.get(), d + 1);
    }
  }
  return best;
}

Mfd check_proof(const ProofTree& tree, const Theory& theory) {
  // Post-order walk; shared subtrees are verified once.
  std::unordered_set<const void*> verified;
  std::vector<std::pair<const ProofTree*, bool>> stack{{&tree, false}};
  while (!stack.empty()) {
    auto [t, expanded] = stack.back();
    stack.pop_back();
    const void* key = &t->conclusion();
    if (verified.count(key)) continue;

    switch (t->kind()) {
      case ProofTree::Kind::hypothesis:
        if (!theory.contains(t->conclusion())) {
          throw ProofError(ProofError::Kind::hypothesis_not_in_theory,
                           "hypothesis " + describe(t->conclusion()) + " is not in the theory");
        }
        break;
      case ProofTree::Kind::axiom: {
        const Mfd expected{multiset_union(t->axiom_context(), t->axiom_kept()), t->axiom_kept()};
        if (t->conclusion() != expected) {
          throw ProofError(ProofError::Kind::malformed_axiom, "axiom node concludes " + describe(t->conclusion()) +
                                                                  " but its instance is " + describe(expected));
        }
        break;
      }
      case ProofTree::Kind::cut: {
        if (!expanded) {
          stack.emplace_back(t, true);
          stack.emplace_back(&t->right(), false);
          stack.emplace_back(&t->left(), false);
          continue;
        }
        const Mfd& l = t->left().conclusion();
        const Mfd& r = t->right().conclusion();
        auto rest = divides(l.consequent, r.antecedent);
        if (!rest) {
          throw ProofError(ProofError::Kind::cut_mismatch, "cut: consequent of " + describe(l) +
                                                               " does not divide antecedent of " + describe(r));
        }
        const Mfd expected{multiset_union(l.antecedent, *rest), r.consequent};
        if (t->conclusion() != expected) {
          throw ProofError(ProofError::Kind::cut_mismatch,
                           "cut concludes " + describe(t->conclusion()) + " but premises give " + describe(expected));
        }
        break;
      }
    }
    verified.insert(key);
  }
  return tree.conclusion();
}

// --- derived rules -------------------------------------------------------------------

ProofTree derive_ref(const AttributeMultiset& a) { return ProofTree::axiom(AttributeMultiset::top(), a); }

ProofTree derive_tra(const ProofTree& ab, const ProofTree& bc) {
  if (ab.conclusion().consequent != bc.conclusion().antecedent) {
    throw ProofError(ProofError::Kind::premise_mismatch, "tra: consequent of " + describe(ab.conclusion()) +
                                                             " differs from antecedent of " +
                                                             describe(bc.conclusion()));
  }
  return ProofTree::cut(ab, bc);
}

ProofTree derive_aug(const ProofTree& ab, const AttributeMultiset& c) {
  return ProofTree::cut(ab, ProofTree::axiom(AttributeMultiset::top(), multiset_union(ab.conclusion().consequent, c)));
}

ProofTree derive_rwt(const ProofTree& abc, const ProofTree& cd) {
  const AttributeMultiset& c = cd.conclusion().antecedent;
  auto b = divides(c, abc.conclusion().consequent);
  if (!b) {
    throw ProofError(ProofError::Kind::premise_mismatch, "rwt: antecedent of " + describe(cd.conclusion()) +
                                                             " does not divide consequent of " +
                                                             describe(abc.conclusion()));
  }
  // CB => DB by augmentation, then transitivity.
  return ProofTree::cut(abc, derive_aug(cd, *b));
}

ProofTree derive_pro(const ProofTree& abc, const AttributeMultiset& b) {
  auto c = divides(b, abc.conclusion().consequent);
  if (!c) {
    throw ProofError(ProofError::Kind::premise_mismatch,
                     "pro: '" + to_string(b) + "' does not divide consequent of " + describe(abc.conclusion()));
  }
  return ProofTree::cut(abc, ProofTree::axiom(*c, b));
}

ProofTree derive_weak_additivity(const ProofTree& ab, const ProofTree& ac) {
  if (ab.conclusion().antecedent != ac.conclusion().antecedent) {
    throw ProofError(ProofError::Kind::premise_mismatch, "weak additivity: antecedents of " +
                                                             describe(ab.conclusion()) + " and " +
                                                             describe(ac.conclusion()) + " differ");
  }
  // A => C cut against AC => BC, itself a cut of A => B with BC => BC.
  const auto& c = ac.conclusion().consequent;
  return ProofTree::cut(ac, derive_aug(ab, c));
}

// --- certificates ---------------------------------------------------------------------

namespace {

std::string quote(const std::string& s) { return "\"" + s + "\""; }

void write_sexpr(const ProofTree& t, bool pretty, std::size_t indent, std::string& out) {
  switch (t.kind()) {
    case ProofTree::Kind::hypothesis:
      out += "(hyp " + quote(to_string(t.conclusion())) + ")";
      return;
    case ProofTree::Kind::axiom:
      out += "(ax " + quote(to_string(t.axiom_context())) + " " + quote(to_string(t.axiom_kept())) + ")";
      return;
    case ProofTree::Kind::cut: {
      const std::string sep = pretty ? "\n" + std::string(indent + 2, ' ') : " ";
      out += "(cut";
      out += sep;
      write_sexpr(t.left(), pretty, indent + 2, out);
      out += sep;
      write_sexpr(t.right(), pretty, indent + 2, out);
      out += sep;
      out += quote(to_string(t.conclusion())) + ")";
      return;
    }
  }
}

class SexprReader {
 public:
  explicit SexprReader(std::string_view text) : text_(text) {}

  ProofTree read_all() {
    ProofTree t = read_tree();
    skip_space();
    if (pos_ != text_.size()) fail("trailing input after certificate");
    return t;
  }

 private:
  [[noreturn]] void fail(const std::string& msg) const {
    std::size_t line = 1, col = 1;
    for (std::size_t i = 0; i < pos_ && i < text_.size(); ++i) {
      if (text_[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
    throw ParseError(line, col, msg);
  }

  void skip_space() {
    while (pos_ < text_.size()) {
      if (std::isspace(static_cast<unsigned char>(text_[pos_]))) {
        ++pos_;
      } else if (text_[pos_] == ';') {
        while (pos_ < text_.size() && text_[pos_] != '\n') ++pos_;
      } else {
        break;
      }
    }
  }

  void expect(char c) {
    skip_space();
    if (pos_ >= text_.size() || text_[pos_] != c) fail(std::string("expected '") + c + "'");
    ++pos_;
  }

  bool peek(char c) {
    skip_space();
    return pos_ < text_.size() && text_[pos_] == c;
  }

  std::string symbol() {
    skip_space();
    const std::size_t start = pos_;
    while (pos_ < text_.size() && std::isalpha(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    if (start == pos_) fail("expected a node keyword");
    return std::string(text_.substr(start, pos_ - start));
  }

  std::string string_literal() {
    skip_space();
    if (pos_ >= text_.size() || text_[pos_] != '"') fail("expected a quoted string");
    const std::size_t start = ++pos_;
    while (pos_ < text_.size() && text_[pos_] != '"') ++pos_;
    if (pos_ >= text_.size()) fail("unterminated string");
    return std::string(text_.substr(start, pos_++ - start));
  }

  template <class F>
  auto parse_inner(F&& parse, const std::string& s) {
    try {
      return parse(s);
    } catch (const ParseError& e) {
      fail("in \"" + s + "\": " + e.detail());
    }
  }

  ProofTree read_tree() {
    expect('(');
    const std::string head = symbol();
    if (head == "hyp") {
      auto f = parse_inner(parse_mfd, string_literal());
      expect(')');
      return ProofTree::hypothesis(std::move(f));
    }
    if (head == "ax") {
      auto a = parse_inner(parse_multiset, string_literal());
      auto b = parse_inner(parse_multiset, string_literal());
      if (peek('"')) {
        auto claimed = parse_inner(parse_mfd, string_literal());
        expect(')');
        return ProofTree::axiom(std::move(a), std::move(b), std::move(claimed));
      }
      expect(')');
      return ProofTree::axiom(std::move(a), std::move(b));
    }
    if (head == "cut") {
      ProofTree left = read_tree();
      ProofTree right = read_tree();
      auto conclusion = parse_inner(parse_mfd, string_literal());
      expect(')');
      return ProofTree::cut(std::move(left), std::move(right), std::move(conclusion));
    }
    fail("unknown node '" + head + "'");
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

}  // namespace

std::string to_sexpr(const ProofTree& tree, bool pretty) {
  std::string out;
  write_sexpr(tree, pretty, 0, out);
  return out;
}

ProofTree parse_sexpr(std::string_view text) { return SexprReader(text).read_all(); }

}  // namespace mfd
