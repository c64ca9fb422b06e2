#include "apartness_lab/clone.hpp"

#include <algorithm>
#include <bit>
#include <functional>
#include <mutex>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_map>

namespace apartness_lab {

BinaryFunction::BinaryFunction(std::size_t size, std::vector<Element> table)
    : size_(size), table_(std::move(table)) {
  if (table_.size() != size * size) {
    throw std::invalid_argument("binary function table must have size*size entries");
  }
  for (Element e : table_) {
    if (e >= size) throw std::invalid_argument("binary function entry out of range");
  }
}

BinaryFunction BinaryFunction::constant(std::size_t size, Element value) {
  return BinaryFunction(size, std::vector<Element>(size * size, value));
}

namespace {

using Bits = std::vector<std::uint64_t>;

bool subset(const Bits& a, const Bits& b) {
  for (std::size_t w = 0; w < a.size(); ++w) {
    if (a[w] & ~b[w]) return false;
  }
  return true;
}

bool test(const Bits& a, std::size_t q) { return (a[q >> 6] >> (q & 63)) & 1u; }
void set(Bits& a, std::size_t q) { a[q >> 6] |= std::uint64_t{1} << (q & 63); }

struct BitsHash {
  std::size_t operator()(const Bits& b) const {
    return std::hash<std::string_view>{}(
        std::string_view(reinterpret_cast<const char*>(b.data()), b.size() * 8));
  }
};

// Straight-line program over x, y, bot, top; operands always precede their uses.
struct Line {
  enum class Op : std::uint8_t { X, Y, Bot, Top, And, Or, Implies } op;
  std::uint32_t lhs = 0, rhs = 0;
};

constexpr std::size_t kMaxJoinIrreducibles = 16;

}  // namespace

struct Clone::Impl {
  HeytingAlgebra algebra;
  std::size_t n = 0;       // elements of the algebra
  std::size_t k = 0;       // join-irreducibles of the algebra
  std::size_t plane = 0;   // words per join-irreducible plane
  std::size_t words = 0;   // k * plane
  std::vector<Element> ji;                     // join-irreducible elements
  std::vector<std::vector<std::size_t>> ji_below;  // indices j' with ji[j'] <= ji[j]
  std::vector<std::uint32_t> elem_mask;        // element -> set of ji indices below it
  std::vector<int> mask_elem;                  // inverse of elem_mask, -1 elsewhere
  std::vector<std::size_t> points;             // valid bit positions
  Bits all;

  std::vector<Bits> principal;  // per bit position: intersection of generators containing it
  std::vector<Line> program;
  struct Generator {
    Bits set;
    std::uint32_t line;
  };
  std::vector<Generator> generators;

  // Final quotient order, in a linear extension.
  struct Rep {
    Bits down;
    std::uint32_t line;
  };
  std::vector<Rep> reps;

  std::vector<BinaryFunction> functions;
  bool capped = false;
  std::unordered_map<std::string, std::size_t> position;  // table bytes -> index in functions

  static std::string key(const std::vector<Element>& table) {
    return {reinterpret_cast<const char*>(table.data()), table.size() * sizeof(Element)};
  }

  mutable std::once_flag tables_once;
  mutable std::vector<std::vector<Element>> line_tables;

  explicit Impl(HeytingAlgebra h) : algebra(std::move(h)) {}

  std::size_t bit_of(std::size_t j, std::size_t cell) const { return j * plane * 64 + cell; }

  std::uint32_t emit(Line::Op op, std::uint32_t lhs = 0, std::uint32_t rhs = 0) {
    program.push_back({op, lhs, rhs});
    return static_cast<std::uint32_t>(program.size() - 1);
  }

  std::uint32_t chain(Line::Op op, const std::vector<std::uint32_t>& lines, Line::Op empty) {
    if (lines.empty()) return emit(empty);
    std::uint32_t acc = lines.front();
    for (std::size_t i = 1; i < lines.size(); ++i) acc = emit(op, acc, lines[i]);
    return acc;
  }

  void setup() {
    const HeytingAlgebra& h = algebra;
    n = h.size();
    for (std::size_t e = 0; e < n; ++e) {
      const auto x = static_cast<Element>(e);
      if (x == h.bot()) continue;
      Element below = h.bot();
      for (std::size_t f = 0; f < n; ++f) {
        const auto y = static_cast<Element>(f);
        if (y != x && h.leq(y, x)) below = h.join(below, y);
      }
      if (below != x) ji.push_back(x);
    }
    k = ji.size();
    if (k > kMaxJoinIrreducibles) {
      throw std::invalid_argument("clone computation supports at most 16 join-irreducibles");
    }
    ji_below.resize(k);
    for (std::size_t j = 0; j < k; ++j) {
      for (std::size_t i = 0; i < k; ++i) {
        if (h.leq(ji[i], ji[j])) ji_below[j].push_back(i);
      }
    }
    elem_mask.assign(n, 0);
    mask_elem.assign(std::size_t{1} << k, -1);
    for (std::size_t e = 0; e < n; ++e) {
      for (std::size_t j = 0; j < k; ++j) {
        if (h.leq(ji[j], static_cast<Element>(e))) elem_mask[e] |= 1u << j;
      }
      mask_elem[elem_mask[e]] = static_cast<int>(e);
    }
    const std::size_t cells = n * n;
    plane = (cells + 63) / 64;
    words = k * plane;
    all.assign(words, 0);
    for (std::size_t j = 0; j < k; ++j) {
      for (std::size_t c = 0; c < cells; ++c) {
        points.push_back(bit_of(j, c));
        set(all, bit_of(j, c));
      }
    }
    principal.assign(words * 64, all);
  }

  Bits encode(const std::vector<Element>& table) const {
    Bits out(words, 0);
    for (std::size_t c = 0; c < table.size(); ++c) {
      const std::uint32_t m = elem_mask[table[c]];
      for (std::size_t j = 0; j < k; ++j) {
        if (m >> j & 1u) set(out, bit_of(j, c));
      }
    }
    return out;
  }

  std::vector<Element> decode(const Bits& bits) const {
    std::vector<Element> table(n * n);
    for (std::size_t c = 0; c < table.size(); ++c) {
      std::uint32_t m = 0;
      for (std::size_t j = 0; j < k; ++j) {
        if (test(bits, bit_of(j, c))) m |= 1u << j;
      }
      table[c] = static_cast<Element>(mask_elem[m]);
    }
    return table;
  }

  // Pointwise Heyting implication of two downsets of Q.
  Bits implication(const Bits& a, const Bits& b) const {
    Bits out(words, 0);
    for (std::size_t j = 0; j < k; ++j) {
      for (std::size_t w = 0; w < plane; ++w) {
        std::uint64_t acc = ~std::uint64_t{0};
        for (std::size_t i : ji_below[j]) acc &= ~a[i * plane + w] | b[i * plane + w];
        out[j * plane + w] = acc & all[j * plane + w];
      }
    }
    return out;
  }

  bool is_member(const Bits& g) const {
    for (std::size_t q : points) {
      if (test(g, q) && !subset(principal[q], g)) return false;
    }
    return true;
  }

  void add_generator(Bits g, std::uint32_t line) {
    for (std::size_t q : points) {
      if (!test(g, q)) continue;
      Bits& p = principal[q];
      for (std::size_t w = 0; w < words; ++w) p[w] &= g[w];
    }
    generators.push_back({std::move(g), line});
  }

  // One representative point per distinct principal downset, ordered by size.
  std::vector<std::size_t> representatives() const {
    std::unordered_map<Bits, std::size_t, BitsHash> seen;
    std::vector<std::size_t> out;
    for (std::size_t q : points) {
      if (seen.emplace(principal[q], q).second) out.push_back(q);
    }
    auto weight = [&](std::size_t q) {
      std::size_t c = 0;
      for (auto w : principal[q]) c += std::popcount(w);
      return c;
    };
    std::stable_sort(out.begin(), out.end(),
                     [&](std::size_t a, std::size_t b) { return weight(a) < weight(b); });
    return out;
  }

  // Line computing the principal downset of point q: meet of the generators holding q.
  std::uint32_t principal_line(std::size_t q) {
    std::vector<std::uint32_t> parts;
    for (const auto& g : generators) {
      if (test(g.set, q)) parts.push_back(g.line);
    }
    return chain(Line::Op::And, parts, Line::Op::Top);
  }

  void close() {
    const std::uint32_t x_line = emit(Line::Op::X);
    const std::uint32_t y_line = emit(Line::Op::Y);
    emit(Line::Op::Bot);
    emit(Line::Op::Top);
    {
      std::vector<Element> px(n * n), py(n * n);
      for (std::size_t a = 0; a < n; ++a) {
        for (std::size_t b = 0; b < n; ++b) {
          px[a * n + b] = static_cast<Element>(a);
          py[a * n + b] = static_cast<Element>(b);
        }
      }
      add_generator(encode(px), x_line);
      add_generator(encode(py), y_line);
    }

    bool changed = true;
    while (changed) {
      changed = false;
      const std::vector<std::size_t> round = representatives();
      const std::size_t m = round.size();
      std::vector<Bits> down(m);
      std::vector<std::uint32_t> down_line(m);
      for (std::size_t r = 0; r < m; ++r) {
        down[r] = principal[round[r]];
        down_line[r] = principal_line(round[r]);
      }
      // Co-principal member for each point: everything not above it.
      std::vector<Bits> co(m);
      std::vector<std::optional<std::uint32_t>> co_line(m);
      for (std::size_t r = 0; r < m; ++r) {
        co[r].assign(words, 0);
        for (std::size_t s = 0; s < m; ++s) {
          if (!test(down[s], round[r])) {
            for (std::size_t w = 0; w < words; ++w) co[r][w] |= down[s][w];
          }
        }
      }
      auto co_line_of = [&](std::size_t r) {
        if (!co_line[r]) {
          std::vector<std::uint32_t> parts;
          for (std::size_t s = 0; s < m; ++s) {
            if (!test(down[s], round[r])) parts.push_back(down_line[s]);
          }
          co_line[r] = chain(Line::Op::Or, parts, Line::Op::Bot);
        }
        return *co_line[r];
      };
      for (std::size_t p = 0; p < m; ++p) {
        for (std::size_t q = 0; q < m; ++q) {
          Bits g = implication(down[p], co[q]);
          if (is_member(g)) continue;
          const std::uint32_t line = emit(Line::Op::Implies, down_line[p], co_line_of(q));
          add_generator(std::move(g), line);
          changed = true;
        }
      }
    }

    for (std::size_t q : representatives()) reps.push_back({principal[q], principal_line(q)});
  }

  // Lists the members contained in `ceiling` (all of them when null), stopping
  // after `cap`. Returns false when the cap cut the listing short.
  bool enumerate(std::size_t cap, const Bits* ceiling, std::vector<BinaryFunction>& out) const {
    const std::size_t m = reps.size();
    std::vector<std::vector<std::size_t>> strictly_below(m);
    std::vector<char> fits(m, 1);
    for (std::size_t r = 0; r < m; ++r) {
      if (ceiling != nullptr) fits[r] = subset(reps[r].down, *ceiling) ? 1 : 0;
      for (std::size_t s = 0; s < r; ++s) {
        if (reps[s].down != reps[r].down && subset(reps[s].down, reps[r].down)) {
          strictly_below[r].push_back(s);
        }
      }
    }
    std::vector<char> included(m, 0);
    std::vector<Bits> acc(m + 1, Bits(words, 0));
    // Depth-first over a linear extension: rep r may join only if everything below it has.
    std::function<bool(std::size_t)> visit = [&](std::size_t r) -> bool {
      if (r == m) {
        if (out.size() >= cap) return false;
        out.emplace_back(n, decode(acc[m]));
        return true;
      }
      included[r] = 0;
      acc[r + 1] = acc[r];
      if (!visit(r + 1)) return false;
      bool allowed = fits[r] && std::all_of(strictly_below[r].begin(), strictly_below[r].end(),
                                            [&](std::size_t s) { return included[s] != 0; });
      if (allowed) {
        included[r] = 1;
        for (std::size_t w = 0; w < words; ++w) acc[r + 1][w] = acc[r][w] | reps[r].down[w];
        if (!visit(r + 1)) return false;
        included[r] = 0;
      }
      return true;
    };
    return visit(0);
  }

  // Maximal representatives inside the member with bits `d`.
  std::vector<std::size_t> cover_reps(const Bits& d) const {
    std::vector<std::size_t> inside;
    for (std::size_t r = 0; r < reps.size(); ++r) {
      if (subset(reps[r].down, d)) inside.push_back(r);
    }
    std::vector<std::size_t> maximal;
    for (std::size_t r : inside) {
      bool dominated = std::any_of(inside.begin(), inside.end(), [&](std::size_t s) {
        return s != r && reps[s].down != reps[r].down && subset(reps[r].down, reps[s].down);
      });
      if (!dominated) maximal.push_back(r);
    }
    return maximal;
  }

  const std::vector<std::vector<Element>>& tables() const {
    std::call_once(tables_once, [this] {
      const HeytingAlgebra& h = algebra;
      const std::size_t cells = n * n;
      line_tables.resize(program.size());
      for (std::size_t l = 0; l < program.size(); ++l) {
        auto& t = line_tables[l];
        t.resize(cells);
        const Line& line = program[l];
        for (std::size_t c = 0; c < cells; ++c) {
          switch (line.op) {
            case Line::Op::X: t[c] = static_cast<Element>(c / n); break;
            case Line::Op::Y: t[c] = static_cast<Element>(c % n); break;
            case Line::Op::Bot: t[c] = h.bot(); break;
            case Line::Op::Top: t[c] = h.top(); break;
            case Line::Op::And:
              t[c] = h.meet(line_tables[line.lhs][c], line_tables[line.rhs][c]);
              break;
            case Line::Op::Or:
              t[c] = h.join(line_tables[line.lhs][c], line_tables[line.rhs][c]);
              break;
            case Line::Op::Implies:
              t[c] = h.impl(line_tables[line.lhs][c], line_tables[line.rhs][c]);
              break;
          }
        }
      }
    });
    return line_tables;
  }
};

Clone::Clone(std::unique_ptr<Impl> impl) : impl_(std::move(impl)) {}
Clone::Clone(Clone&&) noexcept = default;
Clone& Clone::operator=(Clone&&) noexcept = default;
Clone::~Clone() = default;

Clone Clone::compute(const HeytingAlgebra& h, std::size_t cap) {
  if (cap < 4) throw std::invalid_argument("clone cap must be at least 4");
  auto impl = std::make_unique<Impl>(h);
  impl->setup();
  impl->close();
  impl->capped = !impl->enumerate(cap, nullptr, impl->functions);
  impl->position.reserve(impl->functions.size());
  for (std::size_t i = 0; i < impl->functions.size(); ++i)
    impl->position.emplace(Impl::key(impl->functions[i].table()), i);
  return Clone(std::move(impl));
}

const std::vector<BinaryFunction>& Clone::functions() const { return impl_->functions; }
bool Clone::capped() const { return impl_->capped; }
std::size_t Clone::join_irreducibles() const { return impl_->reps.size(); }

Clone::Bounded Clone::members_below(const BinaryFunction& ceiling, std::size_t cap) const {
  if (ceiling.size() != impl_->n) throw std::invalid_argument("ceiling has the wrong size");
  Bounded result;
  const Bits bits = impl_->encode(ceiling.table());
  result.capped = !impl_->enumerate(cap, &bits, result.functions);
  return result;
}

bool Clone::contains(const BinaryFunction& f) const {
  return f.size() == impl_->n && impl_->is_member(impl_->encode(f.table()));
}

std::optional<std::size_t> Clone::find(const BinaryFunction& f) const {
  if (f.size() != impl_->n) return std::nullopt;
  const auto it = impl_->position.find(Impl::key(f.table()));
  if (it == impl_->position.end()) return std::nullopt;
  return it->second;
}

Formula Clone::witness(std::size_t k) const {
  const Impl& impl = *impl_;
  const auto& program = impl.program;
  std::vector<std::optional<Formula>> memo(program.size());
  std::function<Formula(std::uint32_t)> build = [&](std::uint32_t l) -> Formula {
    if (memo[l]) return *memo[l];
    const Line& line = program[l];
    Formula f = [&] {
      switch (line.op) {
        case Line::Op::X: return Formula::atom(kFirstVar);
        case Line::Op::Y: return Formula::atom(kSecondVar);
        case Line::Op::Bot: return Formula::bottom();
        case Line::Op::Top: return Formula::top();
        case Line::Op::And: return Formula::conj(build(line.lhs), build(line.rhs));
        case Line::Op::Or: return Formula::disj(build(line.lhs), build(line.rhs));
        case Line::Op::Implies: return Formula::implies(build(line.lhs), build(line.rhs));
      }
      return Formula::bottom();
    }();
    memo[l] = f;
    return f;
  };
  const auto cover = impl.cover_reps(impl.encode(impl.functions.at(k).table()));
  if (cover.empty()) return Formula::bottom();
  Formula acc = build(impl.reps[cover.front()].line);
  for (std::size_t i = 1; i < cover.size(); ++i) {
    acc = Formula::disj(acc, build(impl.reps[cover[i]].line));
  }
  return acc;
}

BinaryFunction Clone::evaluate_witness(std::size_t k) const {
  const Impl& impl = *impl_;
  const auto& tables = impl.tables();
  const auto cover = impl.cover_reps(impl.encode(impl.functions.at(k).table()));
  std::vector<Element> out(impl.n * impl.n, impl.algebra.bot());
  for (std::size_t r : cover) {
    const auto& t = tables[impl.reps[r].line];
    for (std::size_t c = 0; c < out.size(); ++c) out[c] = impl.algebra.join(out[c], t[c]);
  }
  return BinaryFunction(impl.n, std::move(out));
}

std::size_t Clone::witness_tree_size(std::size_t k, std::size_t limit) const {
  const Impl& impl = *impl_;
  std::vector<std::size_t> sizes(impl.program.size());
  for (std::size_t l = 0; l < impl.program.size(); ++l) {
    const Line& line = impl.program[l];
    if (line.op == Line::Op::And || line.op == Line::Op::Or || line.op == Line::Op::Implies) {
      sizes[l] = std::min(limit, 1 + sizes[line.lhs] + sizes[line.rhs]);
    } else {
      sizes[l] = 1;
    }
  }
  const auto cover = impl.cover_reps(impl.encode(impl.functions.at(k).table()));
  if (cover.empty()) return 1;
  std::size_t total = cover.size() - 1;
  for (std::size_t r : cover) total = std::min(limit, total + sizes[impl.reps[r].line]);
  return total;
}

}  // namespace apartness_lab
