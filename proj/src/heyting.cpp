#include "apartness_lab/heyting.hpp"

#include <algorithm>
#include <bit>
#include <functional>
#include <sstream>

namespace apartness_lab {

namespace {

std::string downset_name(std::uint32_t mask) {
  std::string out = "{";
  bool first = true;
  for (int i = 0; i < 32; ++i) {
    if (!(mask >> i & 1u)) continue;
    if (!first) out += ',';
    out += std::to_string(i);
    first = false;
  }
  return out + "}";
}

}  // namespace

HeytingAlgebra HeytingAlgebra::from_tables(std::vector<std::string> names,
                                           std::vector<std::uint8_t> leq,
                                           std::vector<Element> meet, std::vector<Element> join,
                                           std::vector<Element> impl, Element bot, Element top) {
  const std::size_t n = names.size();
  if (n == 0) throw std::invalid_argument("a Heyting algebra needs at least one element");
  if (n > kMaxSize) throw std::invalid_argument("algebra too large");
  for (const auto* table : {&meet, &join, &impl}) {
    if (table->size() != n * n) throw std::invalid_argument("operation table has wrong size");
    for (Element e : *table) {
      if (e >= n) throw std::invalid_argument("operation table entry out of range");
    }
  }
  if (leq.size() != n * n) throw std::invalid_argument("order table has wrong size");
  if (bot >= n || top >= n) throw std::invalid_argument("bot/top out of range");
  HeytingAlgebra h;
  h.names_ = std::move(names);
  h.leq_ = std::move(leq);
  for (auto& b : h.leq_) b = b != 0;
  h.meet_ = std::move(meet);
  h.join_ = std::move(join);
  h.impl_ = std::move(impl);
  h.bot_ = bot;
  h.top_ = top;
  return h;
}

HeytingAlgebra from_poset_downsets(const Poset& poset) {
  const std::size_t n = poset.size();
  if (n > 20) throw std::invalid_argument("poset too large for downset enumeration");
  std::vector<std::uint32_t> downsets;
  for (std::uint32_t mask = 0; mask < (std::uint32_t{1} << n); ++mask) {
    bool closed = true;
    for (std::size_t i = 0; i < n && closed; ++i) {
      if ((mask >> i & 1u) && (poset.down(i) & ~mask)) closed = false;
    }
    if (closed) {
      downsets.push_back(mask);
      if (downsets.size() > HeytingAlgebra::kMaxSize) {
        throw std::invalid_argument("poset has more than 255 downsets");
      }
    }
  }
  std::sort(downsets.begin(), downsets.end(), [](std::uint32_t a, std::uint32_t b) {
    int pa = std::popcount(a), pb = std::popcount(b);
    return pa != pb ? pa < pb : a < b;
  });
  const std::size_t m = downsets.size();
  auto index_of = [&](std::uint32_t mask) {
    auto it = std::find(downsets.begin(), downsets.end(), mask);
    return static_cast<Element>(it - downsets.begin());
  };
  // Largest downset inside `mask`: elements whose whole principal downset lies in it.
  auto interior = [&](std::uint32_t mask) {
    std::uint32_t out = 0;
    for (std::size_t i = 0; i < n; ++i) {
      if ((poset.down(i) & ~mask) == 0) out |= std::uint32_t{1} << i;
    }
    return out;
  };
  const std::uint32_t all = n == 32 ? ~0u : (std::uint32_t{1} << n) - 1;

  HeytingAlgebra h;
  h.names_.reserve(m);
  for (auto d : downsets) h.names_.push_back(downset_name(d));
  h.leq_.resize(m * m);
  h.meet_.resize(m * m);
  h.join_.resize(m * m);
  h.impl_.resize(m * m);
  for (std::size_t a = 0; a < m; ++a) {
    for (std::size_t b = 0; b < m; ++b) {
      const std::uint32_t da = downsets[a], db = downsets[b];
      const std::size_t k = a * m + b;
      h.leq_[k] = (da & ~db) == 0;
      h.meet_[k] = index_of(da & db);
      h.join_[k] = index_of(da | db);
      h.impl_[k] = index_of(interior((all & ~da) | db));
    }
  }
  h.bot_ = 0;
  h.top_ = static_cast<Element>(m - 1);
  h.source_ = poset;
  return h;
}

bool AxiomReport::all_passed() const { return first_failure() == nullptr; }

const AxiomCheck* AxiomReport::first_failure() const {
  for (const auto& c : checks) {
    if (!c.passed) return &c;
  }
  return nullptr;
}

const AxiomCheck& AxiomReport::get(std::string_view name) const {
  for (const auto& c : checks) {
    if (c.name == name) return c;
  }
  throw std::out_of_range("no axiom check named '" + std::string(name) + "'");
}

AxiomReport verify_axioms(const HeytingAlgebra& h) {
  const auto n = static_cast<Element>(h.size() - 1);
  AxiomReport report;
  // Each check scans tuples in lexicographic order and records the first failure.
  auto check1 = [&](std::string name, std::string detail, auto&& ok) {
    AxiomCheck c{std::move(name), true, {}, std::move(detail)};
    for (int a = 0; a <= n && c.passed; ++a) {
      if (!ok(Element(a))) c = {c.name, false, {Element(a)}, c.detail};
    }
    report.checks.push_back(std::move(c));
  };
  auto check2 = [&](std::string name, std::string detail, auto&& ok) {
    AxiomCheck c{std::move(name), true, {}, std::move(detail)};
    for (int a = 0; a <= n && c.passed; ++a) {
      for (int b = 0; b <= n && c.passed; ++b) {
        if (!ok(Element(a), Element(b))) c = {c.name, false, {Element(a), Element(b)}, c.detail};
      }
    }
    report.checks.push_back(std::move(c));
  };
  auto check3 = [&](std::string name, std::string detail, auto&& ok) {
    AxiomCheck c{std::move(name), true, {}, std::move(detail)};
    for (int a = 0; a <= n && c.passed; ++a) {
      for (int b = 0; b <= n && c.passed; ++b) {
        for (int d = 0; d <= n && c.passed; ++d) {
          if (!ok(Element(a), Element(b), Element(d))) {
            c = {c.name, false, {Element(a), Element(b), Element(d)}, c.detail};
          }
        }
      }
    }
    report.checks.push_back(std::move(c));
  };

  check1("order-reflexive", "a <= a", [&](Element a) { return h.leq(a, a); });
  check2("order-antisymmetric", "a <= b and b <= a imply a = b",
         [&](Element a, Element b) { return a == b || !(h.leq(a, b) && h.leq(b, a)); });
  check3("order-transitive", "a <= b <= c implies a <= c", [&](Element a, Element b, Element c) {
    return !(h.leq(a, b) && h.leq(b, c)) || h.leq(a, c);
  });
  check1("bounds", "bot <= a <= top",
         [&](Element a) { return h.leq(h.bot(), a) && h.leq(a, h.top()); });
  check3("meet-glb", "meet(a,b) is the greatest lower bound",
         [&](Element a, Element b, Element c) {
           Element m = h.meet(a, b);
           if (!h.leq(m, a) || !h.leq(m, b)) return false;
           return !(h.leq(c, a) && h.leq(c, b)) || h.leq(c, m);
         });
  check3("join-lub", "join(a,b) is the least upper bound", [&](Element a, Element b, Element c) {
    Element j = h.join(a, b);
    if (!h.leq(a, j) || !h.leq(b, j)) return false;
    return !(h.leq(a, c) && h.leq(b, c)) || h.leq(j, c);
  });
  check2("order-agreement", "a <= b iff meet(a,b) = a iff join(a,b) = b iff impl(a,b) = top",
         [&](Element a, Element b) {
           bool le = h.leq(a, b);
           return le == (h.meet(a, b) == a) && le == (h.join(a, b) == b) &&
                  le == (h.impl(a, b) == h.top());
         });
  check3("distributive", "meet(a, join(b,c)) = join(meet(a,b), meet(a,c))",
         [&](Element a, Element b, Element c) {
           return h.meet(a, h.join(b, c)) == h.join(h.meet(a, b), h.meet(a, c));
         });
  check3("residuation", "impl(a,b) is the largest c with meet(a,c) <= b",
         [&](Element a, Element b, Element c) {
           Element i = h.impl(a, b);
           if (!h.leq(h.meet(a, i), b)) return false;
           return !h.leq(h.meet(a, c), b) || h.leq(c, i);
         });
  return report;
}

Element eval(const HeytingAlgebra& h, const Formula& formula, const Assignment& assignment) {
  switch (formula.kind()) {
    case Formula::Kind::Atom: {
      auto it = assignment.find(formula.name());
      if (it == assignment.end()) throw EvalError("unbound atom '" + formula.name() + "'");
      if (it->second >= h.size()) throw EvalError("atom '" + formula.name() + "' out of range");
      return it->second;
    }
    case Formula::Kind::Bottom: return h.bot();
    case Formula::Kind::Top: return h.top();
    case Formula::Kind::And:
      return h.meet(eval(h, formula.lhs(), assignment), eval(h, formula.rhs(), assignment));
    case Formula::Kind::Or:
      return h.join(eval(h, formula.lhs(), assignment), eval(h, formula.rhs(), assignment));
    case Formula::Kind::Implies:
      return h.impl(eval(h, formula.lhs(), assignment), eval(h, formula.rhs(), assignment));
  }
  return h.bot();
}

CompiledTerm::CompiledTerm(const Formula& formula, const std::vector<std::string>& atoms) {
  std::function<std::size_t(const Formula&)> emit = [&](const Formula& f) -> std::size_t {
    switch (f.kind()) {
      case Formula::Kind::Atom: {
        auto it = std::find(atoms.begin(), atoms.end(), f.name());
        if (it == atoms.end()) throw EvalError("unbound atom '" + f.name() + "'");
        code_.push_back({Op::Slot, static_cast<std::uint8_t>(it - atoms.begin())});
        return 1;
      }
      case Formula::Kind::Bottom: code_.push_back({Op::Bot, 0}); return 1;
      case Formula::Kind::Top: code_.push_back({Op::Top, 0}); return 1;
      default: break;
    }
    std::size_t l = emit(f.lhs());
    std::size_t r = emit(f.rhs());
    Op op = f.kind() == Formula::Kind::And ? Op::And
            : f.kind() == Formula::Kind::Or ? Op::Or
                                            : Op::Implies;
    code_.push_back({op, 0});
    return std::max(l, r + 1);
  };
  max_stack_ = emit(formula);
}

Element CompiledTerm::eval(const HeytingAlgebra& h, std::span<const Element> values) const {
  std::vector<Element> stack;
  stack.reserve(max_stack_);
  for (const Instr& in : code_) {
    switch (in.op) {
      case Op::Slot: stack.push_back(values[in.slot]); break;
      case Op::Bot: stack.push_back(h.bot()); break;
      case Op::Top: stack.push_back(h.top()); break;
      default: {
        Element r = stack.back();
        stack.pop_back();
        Element l = stack.back();
        stack.back() = in.op == Op::And ? h.meet(l, r)
                       : in.op == Op::Or ? h.join(l, r)
                                         : h.impl(l, r);
      }
    }
  }
  return stack.back();
}

IdentityResult holds_identity(const HeytingAlgebra& h, const Formula& lhs, const Formula& rhs) {
  std::set<std::string> atom_set = free_atoms(lhs);
  for (auto& a : free_atoms(rhs)) atom_set.insert(a);
  std::vector<std::string> atoms(atom_set.begin(), atom_set.end());
  CompiledTerm left(lhs, atoms), right(rhs, atoms);
  std::vector<Element> values(atoms.size(), 0);
  const std::size_t n = h.size();
  while (true) {
    if (left.eval(h, values) != right.eval(h, values)) {
      IdentityResult result{false, Assignment{}};
      for (std::size_t i = 0; i < atoms.size(); ++i) (*result.counterexample)[atoms[i]] = values[i];
      return result;
    }
    // Odometer over assignments, last atom fastest.
    std::size_t pos = atoms.size();
    while (pos > 0) {
      --pos;
      if (++values[pos] < n) break;
      values[pos] = 0;
      if (pos == 0) return {};
    }
    if (atoms.empty()) return {};
  }
}

bool is_boolean(const HeytingAlgebra& h) {
  bool excluded_middle = true, double_negation = true;
  for (std::size_t a = 0; a < h.size(); ++a) {
    const auto x = static_cast<Element>(a);
    excluded_middle = excluded_middle && h.join(x, h.neg(x)) == h.top();
    double_negation = double_negation && h.neg(h.neg(x)) == x;
  }
  if (excluded_middle != double_negation) {
    throw std::logic_error("excluded middle and double negation disagree; tables are not Heyting");
  }
  return excluded_middle;
}

bool satisfies_wlem(const HeytingAlgebra& h) {
  for (std::size_t a = 0; a < h.size(); ++a) {
    const auto x = static_cast<Element>(a);
    if (h.join(h.neg(x), h.neg(h.neg(x))) != h.top()) return false;
  }
  return true;
}

bool isomorphic(const HeytingAlgebra& a, const HeytingAlgebra& b) {
  const std::size_t n = a.size();
  if (n != b.size()) return false;
  // Per-element invariants: how many elements lie below/above, and the length of
  // the chain x, ~x, ~~x, ... until it repeats.
  auto signature = [](const HeytingAlgebra& h, Element x) {
    int below = 0, above = 0;
    for (std::size_t y = 0; y < h.size(); ++y) {
      below += h.leq(static_cast<Element>(y), x);
      above += h.leq(x, static_cast<Element>(y));
    }
    std::vector<Element> orbit{x};
    while (true) {
      Element next = h.neg(orbit.back());
      if (std::find(orbit.begin(), orbit.end(), next) != orbit.end()) break;
      orbit.push_back(next);
    }
    return std::tuple<int, int, std::size_t>(below, above, orbit.size());
  };
  std::vector<std::tuple<int, int, std::size_t>> sig_a(n), sig_b(n);
  for (std::size_t x = 0; x < n; ++x) {
    sig_a[x] = signature(a, static_cast<Element>(x));
    sig_b[x] = signature(b, static_cast<Element>(x));
  }
  {
    auto sa = sig_a, sb = sig_b;
    std::sort(sa.begin(), sa.end());
    std::sort(sb.begin(), sb.end());
    if (sa != sb) return false;
  }
  // Assign elements of `a` in an order that fixes bot and top first.
  std::vector<Element> order;
  order.push_back(a.bot());
  if (a.top() != a.bot()) order.push_back(a.top());
  for (std::size_t x = 0; x < n; ++x) {
    if (x != a.bot() && x != a.top()) order.push_back(static_cast<Element>(x));
  }
  std::vector<int> image(n, -1);
  std::vector<bool> used(n, false);

  auto full_check = [&] {
    for (std::size_t x = 0; x < n; ++x) {
      for (std::size_t y = 0; y < n; ++y) {
        const auto ex = static_cast<Element>(x), ey = static_cast<Element>(y);
        const auto fx = static_cast<Element>(image[x]), fy = static_cast<Element>(image[y]);
        if (image[a.meet(ex, ey)] != b.meet(fx, fy) || image[a.join(ex, ey)] != b.join(fx, fy) ||
            image[a.impl(ex, ey)] != b.impl(fx, fy)) {
          return false;
        }
      }
    }
    return image[a.bot()] == b.bot() && image[a.top()] == b.top();
  };

  std::function<bool(std::size_t)> extend = [&](std::size_t depth) -> bool {
    if (depth == n) return full_check();
    const Element x = order[depth];
    for (std::size_t cand = 0; cand < n; ++cand) {
      const auto y = static_cast<Element>(cand);
      if (used[cand] || sig_a[x] != sig_b[cand]) continue;
      if (x == a.bot() && y != b.bot()) continue;
      if (x == a.top() && y != b.top()) continue;
      bool consistent = true;
      for (std::size_t k = 0; k < depth && consistent; ++k) {
        const Element z = order[k];
        const auto fz = static_cast<Element>(image[z]);
        consistent = a.leq(x, z) == b.leq(y, fz) && a.leq(z, x) == b.leq(fz, y);
      }
      if (!consistent) continue;
      image[x] = cand;
      used[cand] = true;
      if (extend(depth + 1)) return true;
      image[x] = -1;
      used[cand] = false;
    }
    return false;
  };
  return extend(0);
}

std::vector<HeytingAlgebra> enumerate_algebras(std::size_t max_poset_size) {
  std::vector<HeytingAlgebra> out;
  for (std::size_t size = 0; size <= max_poset_size; ++size) {
    const auto& posets = posets_of_size(size);
    for (std::size_t k = 0; k < posets.size(); ++k) {
      HeytingAlgebra h = from_poset_downsets(posets[k]);
      h.set_label("P" + std::to_string(size) + "." + std::to_string(k));
      out.push_back(std::move(h));
    }
  }
  return out;
}

std::string export_algebra(const HeytingAlgebra& h) {
  std::ostringstream out;
  const std::size_t n = h.size();
  if (!h.label().empty()) out << "label: " << h.label() << '\n';
  out << "elements: " << n << '\n';
  out << "names:";
  for (const auto& name : h.names()) out << ' ' << name;
  out << '\n';
  out << "bot: " << int(h.bot()) << '\n';
  out << "top: " << int(h.top()) << '\n';
  auto table = [&](const char* title, auto&& cell) {
    out << title << ":\n";
    for (std::size_t a = 0; a < n; ++a) {
      for (std::size_t b = 0; b < n; ++b) {
        if (b) out << ' ';
        out << int(cell(static_cast<Element>(a), static_cast<Element>(b)));
      }
      out << '\n';
    }
  };
  table("leq", [&](Element a, Element b) { return h.leq(a, b) ? 1 : 0; });
  table("meet", [&](Element a, Element b) { return h.meet(a, b); });
  table("join", [&](Element a, Element b) { return h.join(a, b); });
  table("impl", [&](Element a, Element b) { return h.impl(a, b); });
  return out.str();
}

HeytingAlgebra parse_algebra(std::string_view text) {
  std::istringstream in{std::string(text)};
  std::string key;
  std::string label;
  std::size_t n = 0;
  std::vector<std::string> names;
  int bot = -1, top = -1;
  std::map<std::string, std::vector<int>> tables;
  auto fail = [](const std::string& why) {
    throw std::invalid_argument("algebra text: " + why);
  };
  while (in >> key) {
    if (key == "label:") {
      in >> label;
    } else if (key == "elements:") {
      if (!(in >> n) || n == 0) fail("bad element count");
    } else if (key == "names:") {
      names.resize(n);
      for (auto& name : names) {
        if (!(in >> name)) fail("missing names");
      }
    } else if (key == "bot:") {
      in >> bot;
    } else if (key == "top:") {
      in >> top;
    } else if (key == "leq:" || key == "meet:" || key == "join:" || key == "impl:") {
      auto& t = tables[key.substr(0, key.size() - 1)];
      t.resize(n * n);
      for (auto& v : t) {
        if (!(in >> v) || v < 0 || static_cast<std::size_t>(v) >= std::max<std::size_t>(n, 2)) {
          fail("bad entry in " + key);
        }
      }
    } else {
      fail("unknown key '" + key + "'");
    }
  }
  if (n == 0 || names.size() != n || bot < 0 || top < 0 || tables.size() != 4) {
    fail("incomplete description");
  }
  auto as_elements = [](const std::vector<int>& v) {
    return std::vector<Element>(v.begin(), v.end());
  };
  auto h = HeytingAlgebra::from_tables(
      std::move(names), std::vector<std::uint8_t>(tables["leq"].begin(), tables["leq"].end()),
      as_elements(tables["meet"]), as_elements(tables["join"]), as_elements(tables["impl"]),
      static_cast<Element>(bot), static_cast<Element>(top));
  h.set_label(label);
  return h;
}

}  // namespace apartness_lab
