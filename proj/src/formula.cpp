#include "mfd/formula.hpp"

#include <algorithm>
#include <cctype>
#include <optional>

namespace mfd {

Theory::Theory(std::vector<Mfd> formulas) {
  for (auto& f : formulas) add(std::move(f));
}

void Theory::add(Mfd f) {
  for (const auto& [name, n] : f.antecedent) variables_.insert(name);
  for (const auto& [name, n] : f.consequent) variables_.insert(name);
  formulas_.push_back(std::move(f));
}

std::vector<Mfd> Theory::unique_formulas() const {
  std::vector<Mfd> result;
  std::set<Mfd> seen;
  for (const auto& f : formulas_) {
    if (seen.insert(f).second) result.push_back(f);
  }
  return result;
}

bool Theory::contains(const Mfd& f) const {
  return std::find(formulas_.begin(), formulas_.end(), f) != formulas_.end();
}

std::set<std::string> variables_of(const Mfd& f) {
  auto vars = f.antecedent.support();
  for (const auto& [name, n] : f.consequent) vars.insert(name);
  return vars;
}

bool is_trivial(const Mfd& f) { return contained_in(f.consequent, f.antecedent); }

bool is_non_contracting(const Mfd& f) { return contained_in(f.antecedent, f.consequent); }

bool is_non_contracting_theory(const Theory& theory) {
  return std::all_of(theory.begin(), theory.end(), [](const Mfd& f) { return is_non_contracting(f); });
}

Theory booleanize(const Theory& theory, const std::set<std::string>& extra_vars) {
  Theory result = theory;
  std::set<std::string> vars = theory.variables();
  vars.insert(extra_vars.begin(), extra_vars.end());
  for (const auto& p : vars) {
    result.add(Mfd{AttributeMultiset::singleton(p), AttributeMultiset{{p, 2}}});
  }
  return result;
}

// --- parsing -----------------------------------------------------------------

ParseError::ParseError(std::size_t line, std::size_t column, const std::string& message)
    : std::runtime_error(std::to_string(line) + ":" + std::to_string(column) + ": " + message),
      line_(line),
      column_(column),
      detail_(message) {}

bool is_attribute_name(std::string_view token) {
  if (token.empty() || !std::isalpha(static_cast<unsigned char>(token.front()))) return false;
  if (token == "top") return false;
  return std::all_of(token.begin(), token.end(), [](char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_';
  });
}

namespace {

bool is_word_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; }

struct Lexeme {
  enum class Kind { word, arrow } kind;
  std::string text;
  std::size_t column;  // 1-based
};

// Splits one line into words and arrows; stops at '#'.
std::vector<Lexeme> lex_line(std::string_view line, std::size_t line_no) {
  std::vector<Lexeme> out;
  std::size_t i = 0;
  while (i < line.size()) {
    const char c = line[i];
    if (c == '#') break;
    if (std::isspace(static_cast<unsigned char>(c))) {
      ++i;
    } else if (c == '-' && i + 1 < line.size() && line[i + 1] == '>') {
      out.push_back({Lexeme::Kind::arrow, "->", i + 1});
      i += 2;
    } else if (is_word_char(c)) {
      const std::size_t start = i;
      while (i < line.size() && is_word_char(line[i])) ++i;
      out.push_back({Lexeme::Kind::word, std::string(line.substr(start, i - start)), start + 1});
    } else {
      throw ParseError(line_no, i + 1, std::string("unexpected character '") + c + "'");
    }
  }
  return out;
}

AttributeMultiset side_from(const std::vector<Lexeme>& words, std::size_t line_no, std::size_t end_column,
                            const char* which) {
  if (words.empty()) {
    throw ParseError(line_no, end_column, std::string("empty ") + which + " (use 1 for top)");
  }
  const bool explicit_top = words.size() == 1 && (words[0].text == "1" || words[0].text == "top");
  if (explicit_top) return AttributeMultiset::top();

  AttributeMultiset result;
  for (const auto& w : words) {
    if (w.text == "1" || w.text == "top") {
      throw ParseError(line_no, w.column, "reserved token '" + w.text + "' used as attribute name");
    }
    if (w.text.front() == '_') {
      throw ParseError(line_no, w.column, "names starting with '_' are reserved: '" + w.text + "'");
    }
    if (!is_attribute_name(w.text)) {
      throw ParseError(line_no, w.column, "invalid attribute name '" + w.text + "'");
    }
    result.add(w.text, 1);
  }
  return result;
}

// Returns nullopt for blank/comment-only lines.
std::optional<Mfd> parse_line(std::string_view line, std::size_t line_no) {
  const auto lexemes = lex_line(line, line_no);
  if (lexemes.empty()) return std::nullopt;

  std::vector<Lexeme> lhs, rhs;
  const Lexeme* arrow = nullptr;
  for (const auto& lx : lexemes) {
    if (lx.kind == Lexeme::Kind::arrow) {
      if (arrow != nullptr) throw ParseError(line_no, lx.column, "second '->' in formula");
      arrow = &lx;
    } else {
      (arrow == nullptr ? lhs : rhs).push_back(lx);
    }
  }
  if (arrow == nullptr) throw ParseError(line_no, lexemes.front().column, "missing '->'");

  Mfd f;
  f.antecedent = side_from(lhs, line_no, arrow->column, "antecedent");
  f.consequent = side_from(rhs, line_no, arrow->column + 2, "consequent");
  return f;
}

}  // namespace

AttributeMultiset parse_multiset(std::string_view text) {
  auto lexemes = lex_line(text, 1);
  for (const auto& lx : lexemes) {
    if (lx.kind == Lexeme::Kind::arrow) throw ParseError(1, lx.column, "unexpected '->' in multiset");
  }
  return side_from(lexemes, 1, text.size() + 1, "multiset");
}

Mfd parse_mfd(std::string_view text) {
  if (text.find('\n') != std::string_view::npos) {
    throw ParseError(1, text.find('\n') + 1, "formula must be a single line");
  }
  auto f = parse_line(text, 1);
  if (!f) throw ParseError(1, 1, "empty formula");
  return *f;
}

Theory parse_theory(std::string_view text) {
  Theory theory;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const std::size_t nl = text.find('\n', pos);
    std::string_view line = text.substr(pos, nl == std::string_view::npos ? std::string_view::npos : nl - pos);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    ++line_no;
    if (auto f = parse_line(line, line_no)) theory.add(std::move(*f));
    if (nl == std::string_view::npos) break;
    pos = nl + 1;
  }
  return theory;
}

std::string to_string(const Mfd& f) { return to_string(f.antecedent) + " -> " + to_string(f.consequent); }

std::string format_theory(const Theory& theory) {
  std::string out;
  for (const auto& f : theory) {
    out += to_string(f);
    out += '\n';
  }
  return out;
}

}  // namespace mfd
