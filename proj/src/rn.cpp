#include "apartness_lab/rn.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace apartness_lab {

RNElement RNElement::d(int n) {
  if (n < 0) throw std::invalid_argument("negative Rieger-Nishimura index");
  return n == 0 ? bot() : RNElement(Tag::D, n);
}

RNElement RNElement::i(int n) {
  if (n < 0) throw std::invalid_argument("negative Rieger-Nishimura index");
  return n == 0 ? bot() : RNElement(Tag::I, n);
}

std::string RNElement::to_string(bool unicode) const {
  switch (tag_) {
    case Tag::Bot: return unicode ? "⊥" : "bot";
    case Tag::Top: return unicode ? "⊤" : "top";
    case Tag::D: return "d_" + std::to_string(index_);
    case Tag::I: return "i_" + std::to_string(index_);
  }
  return "?";
}

bool rn_leq(const RNElement& a, const RNElement& b) {
  using Tag = RNElement::Tag;
  if (a.tag() == Tag::Bot || b.tag() == Tag::Top) return true;
  if (a.tag() == Tag::Top || b.tag() == Tag::Bot) return false;
  const int n = a.index(), m = b.index();
  if (a.tag() == Tag::D && b.tag() == Tag::D) return n <= m;
  if (a.tag() == Tag::I && b.tag() == Tag::I) return n == m || n + 1 < m;
  // d_n <= i_m and i_n <= d_m both hold exactly when n < m.
  return n < m;
}

namespace {

// Every operation result stays within two indices of its arguments; the unit
// tests confirm this against a much larger truncation.
std::vector<RNElement> candidates(const RNElement& a, const RNElement& b) {
  return rn_truncation(std::max(a.index(), b.index()) + 2);
}

// The element of `pool` that lies below (or above, when `greatest` is false)
// every other member of `pool`.
RNElement extremum(const std::vector<RNElement>& pool, bool greatest, const char* what) {
  for (const auto& c : pool) {
    bool dominant = std::all_of(pool.begin(), pool.end(), [&](const RNElement& other) {
      return greatest ? rn_leq(other, c) : rn_leq(c, other);
    });
    if (dominant) return c;
  }
  throw std::logic_error(std::string("no ") + what + " in the Rieger-Nishimura candidate set");
}

}  // namespace

RNElement rn_meet(const RNElement& a, const RNElement& b) {
  std::vector<RNElement> lower;
  for (const auto& c : candidates(a, b)) {
    if (rn_leq(c, a) && rn_leq(c, b)) lower.push_back(c);
  }
  return extremum(lower, true, "meet");
}

RNElement rn_join(const RNElement& a, const RNElement& b) {
  std::vector<RNElement> upper;
  for (const auto& c : candidates(a, b)) {
    if (rn_leq(a, c) && rn_leq(b, c)) upper.push_back(c);
  }
  return extremum(upper, false, "join");
}

RNElement rn_implies(const RNElement& a, const RNElement& b) {
  if (rn_leq(a, b)) return RNElement::top();
  std::vector<RNElement> admissible;
  for (const auto& c : candidates(a, b)) {
    if (rn_leq(rn_meet(a, c), b)) admissible.push_back(c);
  }
  return extremum(admissible, true, "implication");
}

RNElement rn_negation(const RNElement& a) { return rn_implies(a, RNElement::bot()); }

std::vector<RNElement> rn_truncation(int max_index) {
  std::vector<RNElement> out;
  out.reserve(2 * std::max(max_index, 0) + 2);
  out.push_back(RNElement::bot());
  for (int n = 1; n <= max_index; ++n) out.push_back(RNElement::d(n));
  for (int n = 1; n <= max_index; ++n) out.push_back(RNElement::i(n));
  out.push_back(RNElement::top());
  return out;
}

namespace {

RNElement eval_one_atom(const Formula& formula) {
  switch (formula.kind()) {
    case Formula::Kind::Atom: return RNElement::d(1);
    case Formula::Kind::Bottom: return RNElement::bot();
    case Formula::Kind::Top: return RNElement::top();
    case Formula::Kind::And:
      return rn_meet(eval_one_atom(formula.lhs()), eval_one_atom(formula.rhs()));
    case Formula::Kind::Or:
      return rn_join(eval_one_atom(formula.lhs()), eval_one_atom(formula.rhs()));
    case Formula::Kind::Implies:
      return rn_implies(eval_one_atom(formula.lhs()), eval_one_atom(formula.rhs()));
  }
  return RNElement::bot();
}

}  // namespace

RNElement rn_eval_formula(const Formula& formula) {
  if (free_atoms(formula).size() > 1) {
    throw std::invalid_argument("Rieger-Nishimura evaluation needs at most one atom, got '" +
                                print(formula) + "'");
  }
  return eval_one_atom(formula);
}

Formula rn_to_formula(const RNElement& a, const std::string& atom) {
  switch (a.tag()) {
    case RNElement::Tag::Bot: return Formula::bottom();
    case RNElement::Tag::Top: return Formula::top();
    default: break;
  }
  Formula d = Formula::atom(atom);
  Formula i = Formula::negation(d);
  for (int n = 1; n < a.index(); ++n) {
    Formula next_d = Formula::disj(i, d);
    Formula next_i = Formula::implies(i, d);
    d = std::move(next_d);
    i = std::move(next_i);
  }
  return a.tag() == RNElement::Tag::D ? d : i;
}

std::string rn_hasse_dot(int max_index, bool unicode) {
  if (max_index < 1) throw std::invalid_argument("Hasse diagram depth must be at least 1");
  const auto nodes = rn_truncation(max_index);
  std::ostringstream out;
  out << "digraph rieger_nishimura {\n";
  out << "  rankdir=BT;\n";
  out << "  node [shape=plaintext];\n";
  for (const auto& a : nodes) {
    out << "  \"" << a.to_string(false) << "\" [label=\"" << a.to_string(unicode) << "\"];\n";
  }
  for (const auto& lo : nodes) {
    for (const auto& hi : nodes) {
      if (lo == hi || !rn_leq(lo, hi)) continue;
      bool is_cover = std::none_of(nodes.begin(), nodes.end(), [&](const RNElement& mid) {
        return mid != lo && mid != hi && rn_leq(lo, mid) && rn_leq(mid, hi);
      });
      if (is_cover) {
        out << "  \"" << lo.to_string(false) << "\" -> \"" << hi.to_string(false) << "\";\n";
      }
    }
  }
  out << "}\n";
  return out.str();
}

}  // namespace apartness_lab
