#include <algorithm>
#include <random>
#include <set>

#include "apartness_lab/apartness.hpp"
#include "apartness_lab/poset.hpp"
#include "doctest.h"
#include "oracles.hpp"

using namespace apartness_lab;

namespace {

HeytingAlgebra chain3() { return from_poset_downsets(parse_poset("elements: 2\n0 < 1\n")); }
HeytingAlgebra boolean4() { return from_poset_downsets(parse_poset("elements: 2\n")); }
HeytingAlgebra fork5() { return from_poset_downsets(parse_poset("elements: 3\n0 < 2\n1 < 2\n")); }
HeytingAlgebra boolean2() { return from_poset_downsets(parse_poset("elements: 1\n")); }

// CH3 elements in enumeration order.
constexpr Element kBot = 0, kA = 1, kTop = 2;

std::vector<Element> unary(const HeytingAlgebra& h, Element (*op)(const HeytingAlgebra&, Element)) {
  std::vector<Element> t;
  for (Element e = 0; e < h.size(); ++e) t.push_back(op(h, e));
  return t;
}
Element negation(const HeytingAlgebra& h, Element e) { return h.neg(e); }
Element double_negation(const HeytingAlgebra& h, Element e) { return h.neg(h.neg(e)); }
Element identity(const HeytingAlgebra&, Element e) { return e; }

}  // namespace

TEST_CASE("term functions") {
  const HeytingAlgebra b4 = boolean4();
  // B4 elements: bot, {0}, {1}, top; {1} is the complement of {0}.
  CHECK(candidate1(b4).at(1, 2) == b4.top());
  CHECK(candidate2(chain3()).at(kBot, kTop) == kTop);
  for (const auto& h : enumerate_algebras(3)) {
    CHECK(term_function(h, Formula::bottom()) == BinaryFunction::constant(h.size(), h.bot()));
    for (Element x = 0; x < h.size(); ++x) CHECK(candidate1(h).at(x, x) == h.bot());
  }
  CHECK_THROWS_AS(term_function(b4, parse("x & z")), EvalError);
}

TEST_CASE("candidate 1 on the three-element chain fails cotransitivity at (bot, top, a)") {
  const ApartnessReport r = check_apartness(chain3(), candidate1(chain3()));
  CHECK(r.irreflexive);
  CHECK(r.symmetric);
  CHECK_FALSE(r.cotransitive);
  CHECK(r.cotransitive_witness == std::vector<Element>{kBot, kTop, kA});
}

TEST_CASE("candidate 2 on the three-element chain is a nontrivial apartness, not tight") {
  const ApartnessReport r = check_apartness(chain3(), candidate2(chain3()));
  CHECK(r.is_apartness());
  CHECK_FALSE(r.trivial);
  CHECK_FALSE(r.tight);
  CHECK_FALSE(r.tight_witness.empty());
}

TEST_CASE("candidate 1 on B4 is a tight apartness") {
  const ApartnessReport r = check_apartness(boolean4(), candidate1(boolean4()));
  CHECK(r.is_apartness());
  CHECK(r.tight);
  CHECK_FALSE(r.trivial);
}

TEST_CASE("the two candidates and the double-negation form") {
  const HeytingAlgebra ch3 = chain3();
  CHECK(candidate2(ch3) == term_function(ch3, double_negation_apartness_term()));
  CHECK(candidate1(boolean4()) == candidate2(boolean4()));
  CHECK(candidate1(ch3) != candidate2(ch3));
}

TEST_CASE("constant bot is the trivial apartness") {
  for (const auto& h : enumerate_algebras(3)) {
    const ApartnessReport r = check_apartness(h, BinaryFunction::constant(h.size(), h.bot()));
    CHECK(r.is_apartness());
    CHECK(r.trivial);
    CHECK(r.tight == h.is_trivial());
  }
  CHECK_THROWS_AS(check_apartness(chain3(), candidate1(boolean4())), std::invalid_argument);
}

TEST_CASE("set-level relations on the two-element algebra") {
  const HeytingAlgebra two = boolean2();
  // Inequality of truth values: the standard apartness on {0, 1}.
  const BinaryFunction neq(2, {0, 1, 1, 0});
  CHECK(check_apartness(two, neq).is_tight_apartness());
  const BinaryFunction full(2, {1, 1, 1, 1});
  CHECK_FALSE(check_apartness(two, full).irreflexive);
}

TEST_CASE("clone of small algebras") {
  const auto algebras = enumerate_algebras(1);
  CHECK(binary_clone(algebras[0]).size() == 1);
  const Clone two = binary_clone(algebras[1]);
  CHECK(two.size() == 16);
  CHECK_FALSE(two.capped());
  CHECK(binary_clone(boolean4()).contains(candidate1(boolean4())));
  CHECK_THROWS_AS(binary_clone(chain3(), 3), std::invalid_argument);
}

TEST_CASE("clone agrees with naive pairwise closure") {
  for (const auto& h : enumerate_algebras(4)) {
    const Clone c = binary_clone(h);
    if (c.size() > 400) continue;  // pairwise closure is quadratic per round
    INFO(h.label());
    std::set<std::vector<Element>> mine;
    for (const auto& f : c.functions()) mine.insert(f.table());
    CHECK(mine.size() == c.size());
    CHECK(mine == oracle::naive_clone(h));
  }
}

TEST_CASE("clone witnesses evaluate to their tables") {
  for (const auto& h : enumerate_algebras(4)) {
    const Clone c = binary_clone(h);
    if (c.capped()) continue;
    INFO(h.label());
    for (std::size_t k = 0; k < c.size(); ++k) REQUIRE(c.evaluate_witness(k) == c.functions()[k]);
    // Expanded witnesses, where small enough to evaluate as trees.
    for (std::size_t k = 0; k < c.size(); k += std::max<std::size_t>(1, c.size() / 50)) {
      if (c.witness_tree_size(k, 2000) < 2000) CHECK(term_function(h, c.witness(k)) == c.functions()[k]);
    }
  }
}

TEST_CASE("clone is closed under the operations") {
  std::mt19937_64 rng(3);
  for (const auto& h : enumerate_algebras(4)) {
    const Clone c = binary_clone(h);
    INFO(h.label());
    const auto& fs = c.functions();
    std::uniform_int_distribution<std::size_t> pick(0, fs.size() - 1);
    const std::size_t pairs = std::min<std::size_t>(fs.size() * fs.size(), 3000);
    for (std::size_t k = 0; k < pairs; ++k) {
      const BinaryFunction& f = fs.size() <= 54 ? fs[k / fs.size()] : fs[pick(rng)];
      const BinaryFunction& g = fs.size() <= 54 ? fs[k % fs.size()] : fs[pick(rng)];
      std::vector<Element> m(f.table().size()), j(m.size()), i(m.size());
      for (std::size_t cell = 0; cell < m.size(); ++cell) {
        m[cell] = h.meet(f.table()[cell], g.table()[cell]);
        j[cell] = h.join(f.table()[cell], g.table()[cell]);
        i[cell] = h.impl(f.table()[cell], g.table()[cell]);
      }
      REQUIRE(c.contains(BinaryFunction(h.size(), m)));
      REQUIRE(c.contains(BinaryFunction(h.size(), j)));
      REQUIRE(c.contains(BinaryFunction(h.size(), i)));
    }
    if (!c.capped()) {
      std::size_t found = 0;
      for (std::size_t k = 0; k < fs.size(); ++k) found += c.find(fs[k]) == k;
      CHECK(found == fs.size());
    }
  }
}

TEST_CASE("capped clone and members below a ceiling") {
  const HeytingAlgebra ch3 = chain3();
  const Clone capped = binary_clone(ch3, 10);
  CHECK(capped.capped());
  CHECK(capped.size() == 10);
  // Membership stays exact beyond the listed members.
  CHECK(capped.contains(candidate2(ch3)));
  const Clone full = binary_clone(ch3);
  std::size_t below = 0;
  for (const auto& f : full.functions()) {
    bool fits = true;
    for (Element x = 0; x < 3; ++x) fits = fits && f.at(x, x) == ch3.bot();
    below += fits;
  }
  std::vector<Element> ceiling(9, ch3.top());
  for (Element x = 0; x < 3; ++x) ceiling[x * 3 + x] = ch3.bot();
  const auto listed = capped.members_below(BinaryFunction(3, ceiling), 1000);
  CHECK_FALSE(listed.capped);
  CHECK(listed.functions.size() == below);
}

TEST_CASE("reducts") {
  const HeytingAlgebra ch3 = chain3();
  const ReductReport top = top_reduct(ch3, candidate2(ch3));
  CHECK(top.equals_negation);
  CHECK(top.table == unary(ch3, negation));
  const ReductReport bottom = bottom_reduct(ch3, candidate2(ch3));
  CHECK(bottom.equals_double_negation);
  CHECK(bottom.table == unary(ch3, double_negation));
  CHECK(bottom.smallest_rn == RNElement::i(2));

  const HeytingAlgebra b4 = boolean4();
  const ReductReport b = bottom_reduct(b4, candidate1(b4));
  CHECK(b.equals_identity);
  CHECK(b.table == unary(b4, identity));

  const BinaryFunction zero = BinaryFunction::constant(3, ch3.bot());
  CHECK(top_reduct(ch3, zero).constant_bot);
  CHECK(bottom_reduct(ch3, zero).constant_bot);
  CHECK(top_reduct(ch3, zero).smallest_rn == RNElement::bot());
}

TEST_CASE("smallest lattice term for a unary table") {
  const HeytingAlgebra ch3 = chain3();
  // On a Boolean algebra double negation is the identity, so d_1 is the smallest.
  CHECK(smallest_rn_term_for(boolean4(), unary(boolean4(), double_negation)) == RNElement::d(1));
  CHECK(smallest_rn_term_for(ch3, unary(ch3, negation)) == RNElement::i(1));
  // Not term-definable: swaps bot and top.
  CHECK_FALSE(smallest_rn_term_for(ch3, {kTop, kA, kBot}).has_value());
}

TEST_CASE("symbolic reducts") {
  CHECK(reduct_rn(candidate2_term(), ReductSide::Top) == RNElement::i(1));
  CHECK(reduct_rn(candidate2_term(), ReductSide::Bottom) == RNElement::i(2));
  CHECK(reduct_rn(candidate1_term(), ReductSide::Bottom) == RNElement::d(1));
  CHECK(reduct_rn(candidate1_term(), ReductSide::Top) == RNElement::i(1));
  CHECK_THROWS(reduct_rn(parse("x & z"), ReductSide::Top));
}

TEST_CASE("inequalities") {
  CHECK(verify_inequalities(chain3(), candidate2(chain3())).all_passed());
  CHECK(verify_inequalities(boolean4(), candidate1(boolean4())).all_passed());
  // Raise f(a, ~~a) = f(a, top) from bot to a.
  BinaryFunction corrupted = candidate2(chain3());
  corrupted.at(kA, kTop) = kA;
  const InequalityReport r = verify_inequalities(chain3(), corrupted);
  CHECK_FALSE(r.apart_from_double_negation);
  CHECK(r.apart_from_double_negation_witness == std::vector<Element>{kA});
}

TEST_CASE("classification of the three examples") {
  const ClassificationReport ch3 = classify(chain3());
  CHECK(ch3.wlem);
  CHECK_FALSE(ch3.boolean);
  CHECK(ch3.nontrivial_apartness_functions == 1);
  CHECK(ch3.tight_apartness_functions == 0);
  CHECK(ch3.unique_equals_candidate2);
  CHECK(ch3.all_passed());
  REQUIRE(ch3.reduct_checks.size() == 1);
  CHECK(ch3.reduct_checks[0].witness_term == "~(x <-> y)");
  CHECK(ch3.reduct_checks[0].bottom_reduct_rn == "i_2");

  const ClassificationReport f5 = classify(fork5());
  CHECK_FALSE(f5.wlem);
  CHECK(f5.nontrivial_apartness_functions == 0);
  CHECK(f5.all_passed());

  const ClassificationReport b4 = classify(boolean4());
  CHECK(b4.boolean);
  CHECK(b4.nontrivial_apartness_functions == 1);
  CHECK(b4.tight_apartness_functions == 1);
  CHECK(b4.unique_equals_candidate2);
  CHECK(b4.reduct_checks[0].equals_candidate1);
  CHECK(b4.all_passed());

  const ClassificationReport one = classify(enumerate_algebras(0)[0]);
  CHECK(one.trivial_algebra);
  CHECK(one.theorem_verdicts.empty());
}

TEST_CASE("a capped clone makes the existence claims inconclusive") {
  const ClassificationReport r = classify(chain3(), 10);
  CHECK(r.capped);
  CHECK_FALSE(r.all_passed());
  REQUIRE(r.first_unpassed() != nullptr);
  CHECK(r.first_unpassed()->verdict == Verdict::Inconclusive);
  for (const auto& v : r.theorem_verdicts) CHECK(v.verdict != Verdict::Fail);
}

TEST_CASE("verdicts are consistent with the counts") {
  for (const auto& h : enumerate_algebras(4)) {
    const ClassificationReport r = classify(h);
    if (r.trivial_algebra || r.capped) continue;
    INFO(h.label());
    CHECK(r.all_passed());
    CHECK((r.nontrivial_apartness_functions > 0) == r.wlem);
    CHECK((r.tight_apartness_functions > 0) == r.boolean);
    CHECK(r.unique_equals_candidate2 == r.wlem);
  }
}

TEST_CASE("irreflexive search agrees with the full listing") {
  for (const auto& h : enumerate_algebras(4)) {
    if (h.is_trivial()) continue;
    const Clone c = binary_clone(h);
    const IrreflexiveSearch s = search_irreflexive_members(h, c);
    INFO(h.label());
    CHECK_FALSE(s.capped);
    CHECK((s.nontrivial_apartness_functions > 0) == satisfies_wlem(h));
    CHECK(s.nontrivial_equal_candidate2);
    if (!c.capped()) {
      const ClassificationReport r = classify(h);
      CHECK(s.apartness_functions == r.apartness_functions);
      CHECK(s.tight_apartness_functions == r.tight_apartness_functions);
    }
  }
}
