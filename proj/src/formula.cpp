#include "apartness_lab/formula.hpp"

#include <algorithm>
#include <cctype>
#include <utility>
#include <vector>

namespace apartness_lab {

namespace {

std::size_t mix(std::size_t seed, std::size_t value) {
  return seed ^ (value + 0x9e3779b97f4a7c15ULL + (seed << 6) + (seed >> 2));
}

}  // namespace

Formula Formula::atom(std::string name) {
  if (!is_valid_atom_name(name)) {
    throw std::invalid_argument("invalid atom name '" + name + "'");
  }
  auto node = std::make_shared<Node>();
  node->kind = Kind::Atom;
  node->hash = mix(std::hash<std::string>{}(name), 1);
  node->name = std::move(name);
  return Formula(std::move(node));
}

Formula Formula::bottom() {
  static const Formula instance = [] {
    auto node = std::make_shared<Node>();
    node->kind = Kind::Bottom;
    node->hash = 0x51ed270b;
    return Formula(std::move(node));
  }();
  return instance;
}

Formula Formula::top() {
  static const Formula instance = [] {
    auto node = std::make_shared<Node>();
    node->kind = Kind::Top;
    node->hash = 0x7a3c0f19;
    return Formula(std::move(node));
  }();
  return instance;
}

Formula Formula::make_binary(Kind kind, Formula lhs, Formula rhs) {
  auto node = std::make_shared<Node>();
  node->kind = kind;
  node->depth = 1 + std::max(lhs.depth(), rhs.depth());
  node->hash = mix(mix(static_cast<std::size_t>(kind) * 0x100000001b3ULL, lhs.hash()), rhs.hash());
  node->lhs.emplace(std::move(lhs));
  node->rhs.emplace(std::move(rhs));
  return Formula(std::move(node));
}

Formula Formula::conj(Formula lhs, Formula rhs) {
  return make_binary(Kind::And, std::move(lhs), std::move(rhs));
}
Formula Formula::disj(Formula lhs, Formula rhs) {
  return make_binary(Kind::Or, std::move(lhs), std::move(rhs));
}
Formula Formula::implies(Formula lhs, Formula rhs) {
  return make_binary(Kind::Implies, std::move(lhs), std::move(rhs));
}
Formula Formula::negation(Formula operand) { return implies(std::move(operand), bottom()); }
Formula Formula::iff(Formula lhs, Formula rhs) {
  return conj(implies(lhs, rhs), implies(rhs, lhs));
}

const Formula& Formula::lhs() const {
  if (!node_->lhs) throw std::logic_error("lhs() of a leaf formula");
  return *node_->lhs;
}

const Formula& Formula::rhs() const {
  if (!node_->rhs) throw std::logic_error("rhs() of a leaf formula");
  return *node_->rhs;
}

bool Formula::is_negation() const {
  return kind() == Kind::Implies && rhs().kind() == Kind::Bottom;
}

bool operator==(const Formula& a, const Formula& b) {
  if (a.node_ == b.node_) return true;
  if (a.hash() != b.hash() || a.kind() != b.kind() || a.depth() != b.depth()) return false;
  if (a.kind() == Formula::Kind::Atom) return a.name() == b.name();
  if (!a.is_binary()) return true;
  return a.lhs() == b.lhs() && a.rhs() == b.rhs();
}

bool operator<(const Formula& a, const Formula& b) {
  if (a.node_ == b.node_) return false;
  if (a.kind() != b.kind()) return a.kind() < b.kind();
  if (a.kind() == Formula::Kind::Atom) return a.name() < b.name();
  if (!a.is_binary()) return false;
  if (a.lhs() != b.lhs()) return a.lhs() < b.lhs();
  return a.rhs() < b.rhs();
}

ParseError::ParseError(const std::string& message, std::size_t position)
    : std::runtime_error(message + " at position " + std::to_string(position)),
      position_(position) {}

bool is_valid_atom_name(std::string_view name) {
  if (name.empty() || !std::isalpha(static_cast<unsigned char>(name.front()))) return false;
  for (char c : name) {
    if (!std::isalnum(static_cast<unsigned char>(c)) && c != '_') return false;
  }
  return name != "bot" && name != "top";
}

// ---------------------------------------------------------------------------
// Parser

namespace {

enum class Tok { Ident, Bot, Top, Not, And, Or, Imp, Iff, LParen, RParen, End };

struct Token {
  Tok type;
  std::string text;
  std::size_t pos;
};

std::vector<Token> tokenize(std::string_view text) {
  std::vector<Token> out;
  std::size_t i = 0;
  while (i < text.size()) {
    char c = text[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      ++i;
      continue;
    }
    std::size_t start = i;
    if (std::isalpha(static_cast<unsigned char>(c))) {
      while (i < text.size() &&
             (std::isalnum(static_cast<unsigned char>(text[i])) || text[i] == '_')) {
        ++i;
      }
      std::string word(text.substr(start, i - start));
      Tok type = word == "bot" ? Tok::Bot : word == "top" ? Tok::Top : Tok::Ident;
      out.push_back({type, std::move(word), start});
      continue;
    }
    switch (c) {
      case '~': out.push_back({Tok::Not, "~", start}); ++i; continue;
      case '&': out.push_back({Tok::And, "&", start}); ++i; continue;
      case '|': out.push_back({Tok::Or, "|", start}); ++i; continue;
      case '(': out.push_back({Tok::LParen, "(", start}); ++i; continue;
      case ')': out.push_back({Tok::RParen, ")", start}); ++i; continue;
      default: break;
    }
    if (text.substr(i, 2) == "->") {
      out.push_back({Tok::Imp, "->", start});
      i += 2;
    } else if (text.substr(i, 3) == "<->") {
      out.push_back({Tok::Iff, "<->", start});
      i += 3;
    } else {
      throw ParseError(std::string("unknown token '") + c + "'", start);
    }
  }
  out.push_back({Tok::End, "", text.size()});
  return out;
}

class Parser {
 public:
  explicit Parser(std::vector<Token> tokens) : tokens_(std::move(tokens)) {}

  Formula parse_all() {
    Formula result = parse_iff();
    if (peek().type != Tok::End) {
      throw ParseError("unexpected '" + peek().text + "'", peek().pos);
    }
    return result;
  }

 private:
  const Token& peek() const { return tokens_[next_]; }
  const Token& advance() { return tokens_[next_++]; }
  bool accept(Tok type) {
    if (peek().type != type) return false;
    ++next_;
    return true;
  }

  Formula parse_iff() {
    Formula lhs = parse_imp();
    if (!accept(Tok::Iff)) return lhs;
    Formula rhs = parse_imp();
    if (peek().type == Tok::Iff) {
      throw ParseError("'<->' does not associate; parenthesize the chain", peek().pos);
    }
    return Formula::iff(std::move(lhs), std::move(rhs));
  }

  Formula parse_imp() {
    Formula lhs = parse_or();
    if (!accept(Tok::Imp)) return lhs;
    return Formula::implies(std::move(lhs), parse_imp());
  }

  Formula parse_or() {
    Formula acc = parse_and();
    while (accept(Tok::Or)) acc = Formula::disj(std::move(acc), parse_and());
    return acc;
  }

  Formula parse_and() {
    Formula acc = parse_unary();
    while (accept(Tok::And)) acc = Formula::conj(std::move(acc), parse_unary());
    return acc;
  }

  Formula parse_unary() {
    const Token& tok = advance();
    switch (tok.type) {
      case Tok::Not: return Formula::negation(parse_unary());
      case Tok::Ident: return Formula::atom(tok.text);
      case Tok::Bot: return Formula::bottom();
      case Tok::Top: return Formula::top();
      case Tok::LParen: {
        Formula inner = parse_iff();
        if (!accept(Tok::RParen)) {
          throw ParseError("expected ')'", peek().pos);
        }
        return inner;
      }
      case Tok::End: throw ParseError("unexpected end of input", tok.pos);
      default: throw ParseError("unexpected '" + tok.text + "'", tok.pos);
    }
  }

  std::vector<Token> tokens_;
  std::size_t next_ = 0;
};

// ---------------------------------------------------------------------------
// Printer

// Binding strength of the outermost construct as it will be displayed.
enum Level : int { kIff = 0, kImp = 1, kOr = 2, kAnd = 3, kUnary = 4 };

bool is_iff_shape(const Formula& f) {
  if (f.kind() != Formula::Kind::And) return false;
  const Formula& l = f.lhs();
  const Formula& r = f.rhs();
  return l.kind() == Formula::Kind::Implies && r.kind() == Formula::Kind::Implies &&
         l.lhs() == r.rhs() && l.rhs() == r.lhs();
}

int display_level(const Formula& f) {
  switch (f.kind()) {
    case Formula::Kind::And: return is_iff_shape(f) ? kIff : kAnd;
    case Formula::Kind::Or: return kOr;
    case Formula::Kind::Implies: return f.is_negation() ? kUnary : kImp;
    default: return kUnary;
  }
}

void render(const Formula& f, int min_level, std::string& out);

void render_bare(const Formula& f, std::string& out) {
  switch (f.kind()) {
    case Formula::Kind::Atom: out += f.name(); return;
    case Formula::Kind::Bottom: out += "bot"; return;
    case Formula::Kind::Top: out += "top"; return;
    case Formula::Kind::And:
      if (is_iff_shape(f)) {
        render(f.lhs().lhs(), kImp, out);
        out += " <-> ";
        render(f.lhs().rhs(), kImp, out);
      } else {
        render(f.lhs(), kAnd, out);
        out += " & ";
        render(f.rhs(), kUnary, out);
      }
      return;
    case Formula::Kind::Or:
      render(f.lhs(), kOr, out);
      out += " | ";
      render(f.rhs(), kAnd, out);
      return;
    case Formula::Kind::Implies:
      if (f.is_negation()) {
        out += '~';
        render(f.lhs(), kUnary, out);
      } else {
        render(f.lhs(), kOr, out);
        out += " -> ";
        render(f.rhs(), kImp, out);
      }
      return;
  }
}

void render(const Formula& f, int min_level, std::string& out) {
  if (display_level(f) < min_level) {
    out += '(';
    render_bare(f, out);
    out += ')';
  } else {
    render_bare(f, out);
  }
}

void collect_atoms(const Formula& f, std::set<std::string>& out) {
  if (f.is_atom()) {
    out.insert(f.name());
  } else if (f.is_binary()) {
    collect_atoms(f.lhs(), out);
    collect_atoms(f.rhs(), out);
  }
}

}  // namespace

Formula parse(std::string_view text) { return Parser(tokenize(text)).parse_all(); }

std::string print(const Formula& formula) {
  std::string out;
  render(formula, kIff, out);
  return out;
}

Formula substitute(const Formula& formula, const std::string& atom, const Formula& replacement) {
  switch (formula.kind()) {
    case Formula::Kind::Atom: return formula.name() == atom ? replacement : formula;
    case Formula::Kind::Bottom:
    case Formula::Kind::Top: return formula;
    case Formula::Kind::And:
      return Formula::conj(substitute(formula.lhs(), atom, replacement),
                           substitute(formula.rhs(), atom, replacement));
    case Formula::Kind::Or:
      return Formula::disj(substitute(formula.lhs(), atom, replacement),
                           substitute(formula.rhs(), atom, replacement));
    case Formula::Kind::Implies:
      return Formula::implies(substitute(formula.lhs(), atom, replacement),
                              substitute(formula.rhs(), atom, replacement));
  }
  return formula;
}

Formula apart_instantiate(const Formula& apart, const Formula& lhs, const Formula& rhs,
                          const std::string& first, const std::string& second) {
  std::set<std::string> lhs_atoms = free_atoms(lhs);
  if (!lhs_atoms.count(second)) {
    return substitute(substitute(apart, first, lhs), second, rhs);
  }
  std::set<std::string> taken = free_atoms(apart);
  taken.insert(lhs_atoms.begin(), lhs_atoms.end());
  std::set<std::string> rhs_atoms = free_atoms(rhs);
  taken.insert(rhs_atoms.begin(), rhs_atoms.end());
  const std::string placeholder = fresh_atom(taken, second);
  Formula renamed = substitute(apart, second, Formula::atom(placeholder));
  return substitute(substitute(renamed, first, lhs), placeholder, rhs);
}

std::set<std::string> free_atoms(const Formula& formula) {
  std::set<std::string> out;
  collect_atoms(formula, out);
  return out;
}

std::string fresh_atom(const std::set<std::string>& taken, const std::string& stem) {
  if (!taken.count(stem) && is_valid_atom_name(stem)) return stem;
  for (int i = 1;; ++i) {
    std::string candidate = stem + "_" + std::to_string(i);
    if (!taken.count(candidate)) return candidate;
  }
}

std::size_t formula_size(const Formula& formula) {
  if (!formula.is_binary()) return 1;
  return 1 + formula_size(formula.lhs()) + formula_size(formula.rhs());
}

}  // namespace apartness_lab
