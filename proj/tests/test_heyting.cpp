#include <algorithm>

#include "apartness_lab/heyting.hpp"
#include "apartness_lab/poset.hpp"
#include "doctest.h"
#include "oracles.hpp"

using namespace apartness_lab;

namespace {

HeytingAlgebra chain3() { return from_poset_downsets(parse_poset("elements: 2\n0 < 1\n")); }
HeytingAlgebra boolean4() { return from_poset_downsets(parse_poset("elements: 2\n")); }
// Two minimal points under a common top; its downsets form the five-element
// algebra without weak excluded middle.
HeytingAlgebra fork5() { return from_poset_downsets(parse_poset("elements: 3\n0 < 2\n1 < 2\n")); }

Assignment at(const char* atom, Element e) { return {{atom, e}}; }

}  // namespace

TEST_CASE("poset classes by size agree with brute-force relabeling") {
  for (int n = 0; n <= 4; ++n) {
    INFO("size " << n);
    CHECK(posets_of_size(n).size() == oracle::poset_classes(n));
  }
  CHECK(posets_of_size(5).size() == 63);
  // Known counts of unlabeled posets.
  CHECK(posets_of_size(6).size() == 318);
}

TEST_CASE("poset parsing and validation") {
  const Poset p = parse_poset("# comment\nelements: 3\n0 < 1\n1 < 2\n");
  CHECK(p.leq(0, 2));
  CHECK_FALSE(p.leq(2, 0));
  CHECK(p.covers().size() == 2);
  CHECK_THROWS_AS(parse_poset("elements: 2\n0 < 1\n1 < 0\n"), std::invalid_argument);
  CHECK_THROWS_AS(parse_poset("elements: 2\n0 < 5\n"), std::invalid_argument);
  CHECK_THROWS_AS(parse_poset("0 < 1\n"), std::invalid_argument);
  CHECK(parse_poset(format_poset(p)) == p);
  CHECK_THROWS(Poset::from_up_masks({0b11, 0b11}));  // 0 <= 1 and 1 <= 0
}

TEST_CASE("downset construction: chain, antichain and empty poset") {
  const HeytingAlgebra ch3 = chain3();
  REQUIRE(ch3.size() == 3);
  // Elements by downset size: bot = {}, a = {0}, top = {0, 1}.
  const Element bot = 0, a = 1, top = 2;
  CHECK(ch3.bot() == bot);
  CHECK(ch3.top() == top);
  CHECK(ch3.leq(bot, a));
  CHECK(ch3.leq(a, top));
  CHECK(ch3.impl(a, bot) == bot);
  CHECK(ch3.impl(top, a) == a);
  CHECK(ch3.impl(a, a) == top);
  CHECK(ch3.neg(bot) == top);

  const HeytingAlgebra b4 = boolean4();
  REQUIRE(b4.size() == 4);
  for (Element x = 0; x < 4; ++x) {
    CHECK(b4.join(x, b4.neg(x)) == b4.top());
    CHECK(b4.meet(x, b4.neg(x)) == b4.bot());
  }
  CHECK(is_boolean(b4));

  const HeytingAlgebra one = from_poset_downsets(parse_poset("elements: 0\n"));
  CHECK(one.size() == 1);
  CHECK(one.is_trivial());
}

TEST_CASE("algebra size equals the number of downsets") {
  for (std::size_t n = 0; n <= 5; ++n) {
    for (const Poset& p : posets_of_size(n)) {
      CHECK(from_poset_downsets(p).size() == oracle::count_downsets(p));
    }
  }
}

TEST_CASE("axioms hold for the small examples") {
  CHECK(verify_axioms(chain3()).all_passed());
  CHECK(verify_axioms(boolean4()).all_passed());
  CHECK(verify_axioms(fork5()).all_passed());
}

TEST_CASE("a lowered implication is caught as a residuation failure") {
  const HeytingAlgebra ch3 = chain3();
  std::vector<Element> impl(ch3.impl_table().begin(), ch3.impl_table().end());
  // impl(a, bot) is bot already; lower impl(bot, a) from top to a.
  impl[0 * 3 + 1] = 1;
  const HeytingAlgebra broken = HeytingAlgebra::from_tables(
      ch3.names(), {ch3.leq_table().begin(), ch3.leq_table().end()},
      {ch3.meet_table().begin(), ch3.meet_table().end()},
      {ch3.join_table().begin(), ch3.join_table().end()}, impl, ch3.bot(), ch3.top());
  const AxiomReport report = verify_axioms(broken);
  CHECK_FALSE(report.all_passed());
  const AxiomCheck& residuation = report.get("residuation");
  CHECK_FALSE(residuation.passed);
  CHECK_FALSE(residuation.witness.empty());
  CHECK(report.get("distributive").passed);
}

TEST_CASE("a non-distributive lattice fails distributivity") {
  // M3: bot, three atoms, top.
  const std::size_t n = 5;
  std::vector<std::uint8_t> leq(n * n, 0);
  std::vector<Element> meet(n * n), join(n * n), impl(n * n, 4);
  for (Element x = 0; x < n; ++x)
    for (Element y = 0; y < n; ++y) {
      const bool le = x == y || x == 0 || y == 4;
      leq[x * n + y] = le;
      meet[x * n + y] = x == y ? x : (x == 4 ? y : (y == 4 ? x : 0));
      join[x * n + y] = x == y ? x : (x == 0 ? y : (y == 0 ? x : 4));
    }
  const auto h = HeytingAlgebra::from_tables({"0", "a", "b", "c", "1"}, leq, meet, join, impl, 0, 4);
  const AxiomReport report = verify_axioms(h);
  CHECK_FALSE(report.get("distributive").passed);
  CHECK(report.get("distributive").witness.size() == 3);
}

TEST_CASE("evaluation") {
  const HeytingAlgebra ch3 = chain3();
  CHECK(eval(ch3, parse("~a"), at("a", 1)) == 0);
  for (const auto& h : enumerate_algebras(3)) {
    for (Element e = 0; e < h.size(); ++e) CHECK(eval(h, parse("top -> y"), at("y", e)) == e);
    CHECK(eval(h, Formula::bottom(), {}) == h.bot());
  }
  CHECK_THROWS_AS(eval(ch3, parse("a & b"), at("a", 1)), EvalError);
}

TEST_CASE("identities") {
  const Formula x = Formula::atom("x"), y = Formula::atom("y");
  CHECK(holds_identity(boolean4(), parse("x -> y"), parse("~x | y")).holds);
  const IdentityResult lem = holds_identity(chain3(), parse("x | ~x"), Formula::top());
  CHECK_FALSE(lem.holds);
  REQUIRE(lem.counterexample.has_value());
  CHECK(lem.counterexample->at("x") == 1);
  CHECK_FALSE(holds_identity(chain3(), parse("x -> y"), parse("~x | y")).holds);
  for (const auto& h : enumerate_algebras(4)) {
    CHECK(holds_identity(h, x, x).holds);
    CHECK(holds_identity(h, parse("~~~x"), parse("~x")).holds);
    CHECK(holds_identity(h, parse("x & (y | x)"), x).holds);
  }
}

TEST_CASE("boolean and weak excluded middle predicates") {
  CHECK_FALSE(is_boolean(chain3()));
  CHECK(satisfies_wlem(chain3()));
  CHECK(is_boolean(boolean4()));
  CHECK(satisfies_wlem(boolean4()));
  CHECK_FALSE(satisfies_wlem(fork5()));
  CHECK(is_boolean(from_poset_downsets(parse_poset("elements: 0\n"))));

  // In the fork algebra, {0} has negation {1} and double negation {0}; their join misses the top.
  const HeytingAlgebra f5 = fork5();
  const Element p = 1, q = 2, pq = 3;
  CHECK(f5.neg(p) == q);
  CHECK(f5.neg(f5.neg(p)) == p);
  CHECK(f5.join(f5.neg(p), f5.neg(f5.neg(p))) == pq);
  CHECK(pq != f5.top());

  for (const auto& h : enumerate_algebras(5)) {
    if (is_boolean(h)) CHECK(satisfies_wlem(h));
  }
}

TEST_CASE("isomorphism") {
  CHECK(isomorphic(chain3(), chain3()));
  CHECK_FALSE(isomorphic(chain3(), boolean4()));
  const HeytingAlgebra f5 = fork5();
  // The dual poset gives a different five-element algebra: a new bottom under B4.
  const HeytingAlgebra dual = from_poset_downsets(parse_poset("elements: 3\n0 < 1\n0 < 2\n"));
  CHECK(dual.size() == 5);
  CHECK(satisfies_wlem(dual));
  CHECK_FALSE(isomorphic(f5, dual));
  // Relabeling a poset never changes the algebra up to isomorphism.
  const Poset p = parse_poset("elements: 4\n0 < 1\n2 < 1\n2 < 3\n");
  CHECK(isomorphic(from_poset_downsets(p), from_poset_downsets(p.permuted({3, 1, 0, 2}))));
}

TEST_CASE("enumeration") {
  const auto up_to_1 = enumerate_algebras(1);
  REQUIRE(up_to_1.size() == 2);
  CHECK(up_to_1[0].size() == 1);
  CHECK(up_to_1[1].size() == 2);

  const auto up_to_2 = enumerate_algebras(2);
  REQUIRE(up_to_2.size() == 4);
  CHECK(std::any_of(up_to_2.begin(), up_to_2.end(), [](const auto& h) { return isomorphic(h, chain3()); }));
  CHECK(std::any_of(up_to_2.begin(), up_to_2.end(), [](const auto& h) { return isomorphic(h, boolean4()); }));

  const auto up_to_3 = enumerate_algebras(3);
  CHECK(up_to_3.size() == 9);
  CHECK(std::any_of(up_to_3.begin(), up_to_3.end(), [](const auto& h) { return isomorphic(h, fork5()); }));

  const auto up_to_4 = enumerate_algebras(4);
  CHECK(up_to_4.size() == 25);
  for (std::size_t i = 0; i < up_to_4.size(); ++i) {
    CHECK(verify_axioms(up_to_4[i]).all_passed());
    for (std::size_t j = 0; j < i; ++j) {
      if (up_to_4[i].size() == up_to_4[j].size()) CHECK_FALSE(isomorphic(up_to_4[i], up_to_4[j]));
    }
  }
}

TEST_CASE("export and parse round trip") {
  for (const auto& h : enumerate_algebras(4)) {
    const HeytingAlgebra back = parse_algebra(export_algebra(h));
    CHECK(back.size() == h.size());
    CHECK(back.label() == h.label());
    CHECK(std::equal(back.impl_table().begin(), back.impl_table().end(), h.impl_table().begin()));
    CHECK(std::equal(back.meet_table().begin(), back.meet_table().end(), h.meet_table().begin()));
    CHECK(export_algebra(back) == export_algebra(h));
  }
  CHECK_THROWS(parse_algebra("elements: 2\n"));
}
