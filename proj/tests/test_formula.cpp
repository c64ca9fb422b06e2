#include <random>

#include "apartness_lab/formula.hpp"
#include "apartness_lab/suite.hpp"
#include "doctest.h"

using namespace apartness_lab;

namespace {

Formula A(const char* n) { return Formula::atom(n); }

}  // namespace

TEST_CASE("implication associates to the right") {
  CHECK(parse("P -> Q -> R") == Formula::implies(A("P"), Formula::implies(A("Q"), A("R"))));
  CHECK(print(parse("P -> Q -> R")) == "P -> Q -> R");
  CHECK(print(parse("(P -> Q) -> R")) == "(P -> Q) -> R");
}

TEST_CASE("negated biconditional desugars to the Heyting signature") {
  const Formula p = A("P"), q = A("Q");
  const Formula expected = Formula::implies(
      Formula::conj(Formula::implies(p, q), Formula::implies(q, p)), Formula::bottom());
  CHECK(parse("~(P <-> Q)") == expected);
}

TEST_CASE("exclusive-or shaped term parses with & binding tighter than |") {
  const Formula p = A("P"), q = A("Q");
  CHECK(parse("(P & ~Q) | (~P & Q)") ==
        Formula::disj(Formula::conj(p, Formula::negation(q)), Formula::conj(Formula::negation(p), q)));
  CHECK(parse("P & ~Q | ~P & Q") == parse("(P & ~Q) | (~P & Q)"));
}

TEST_CASE("printing constants and negation") {
  CHECK(print(Formula::bottom()) == "bot");
  CHECK(print(Formula::top()) == "top");
  CHECK(print(Formula::negation(A("P"))) == "~P");
  CHECK(print(parse("~~P")) == "~~P");
  CHECK(print(parse("P -> bot")) == "~P");
}

TEST_CASE("left associativity of & and |") {
  CHECK(parse("P & Q & R") == Formula::conj(Formula::conj(A("P"), A("Q")), A("R")));
  CHECK(parse("P | Q | R") == Formula::disj(Formula::disj(A("P"), A("Q")), A("R")));
  CHECK(print(Formula::conj(A("P"), Formula::conj(A("Q"), A("R")))) == "P & (Q & R)");
}

TEST_CASE("parse errors carry positions") {
  auto position_of = [](const char* text) -> long {
    try {
      parse(text);
    } catch (const ParseError& e) {
      return static_cast<long>(e.position());
    }
    return -1;
  };
  CHECK(position_of("P ->") == 4);
  CHECK(position_of("P $ Q") == 2);
  CHECK(position_of("(P & Q") == 6);
  CHECK(position_of("P <-> Q <-> R") >= 0);
  CHECK(position_of("bot(") >= 0);
  CHECK_THROWS_AS(parse(""), ParseError);
  CHECK_THROWS_AS(parse("top & "), ParseError);
}

TEST_CASE("reserved words are not atoms") {
  CHECK(parse("bot") == Formula::bottom());
  CHECK(parse("top") == Formula::top());
  CHECK_FALSE(is_valid_atom_name("bot"));
  CHECK_FALSE(is_valid_atom_name("1x"));
  CHECK(is_valid_atom_name("bottom"));
  CHECK(is_valid_atom_name("x_1"));
  CHECK_THROWS(Formula::atom("top"));
}

TEST_CASE("substitution follows the recursive equations") {
  CHECK(substitute(parse("P & Q"), "P", Formula::bottom()) == parse("bot & Q"));
  CHECK(substitute(A("Q"), "P", Formula::top()) == A("Q"));
  CHECK(substitute(A("P"), "P", A("P")) == A("P"));
  CHECK(substitute(parse("P -> P | R"), "P", parse("S & T")) == parse("S & T -> S & T | R"));
}

TEST_CASE("apartness instantiation") {
  const Formula c2 = parse("~(P <-> Q)");
  const Formula c1 = parse("(P & ~Q) | (~P & Q)");
  CHECK(apart_instantiate(c2, Formula::bottom(), A("R")) == parse("~(bot <-> R)"));
  CHECK(apart_instantiate(c2, A("P"), A("P")) == parse("~(P <-> P)"));
  CHECK(apart_instantiate(c1, Formula::bottom(), Formula::top()) ==
        parse("(bot & ~top) | (~bot & top)"));
}

TEST_CASE("instantiation does not capture Q inside the first argument") {
  const Formula c2 = parse("~(P <-> Q)");
  // Naive sequential substitution would also rewrite the Q of the first argument.
  CHECK(apart_instantiate(c2, A("Q"), A("R")) == parse("~(Q <-> R)"));
  CHECK(apart_instantiate(c2, parse("Q & S"), parse("Q")) == parse("~(Q & S <-> Q)"));
}

TEST_CASE("free atoms") {
  CHECK(free_atoms(parse("~(P <-> Q)")) == std::set<std::string>{"P", "Q"});
  CHECK(free_atoms(Formula::bottom()).empty());
  CHECK(free_atoms(substitute(parse("P | Q"), "P", A("R"))) == std::set<std::string>{"Q", "R"});
  CHECK(fresh_atom({"Z", "Z1"}) != "Z");
}

TEST_CASE("round trip on random formulas up to depth 7") {
  std::mt19937_64 rng(20241019);
  const std::vector<std::string> atoms = {"P", "Q", "R", "a1", "b_c"};
  for (int k = 0; k < 3000; ++k) {
    const Formula f = random_formula(rng, atoms, 7);
    const std::string text = print(f);
    INFO(text);
    REQUIRE(parse(text) == f);
    CHECK(f.depth() <= 7);
  }
}

TEST_CASE("substitution properties on random formulas") {
  std::mt19937_64 rng(7);
  const std::vector<std::string> atoms = {"P", "Q", "R"};
  for (int k = 0; k < 1000; ++k) {
    const Formula phi = random_formula(rng, atoms, 5);
    const Formula psi = random_formula(rng, {"R", "S"}, 3);
    const Formula out = substitute(phi, "P", psi);
    std::set<std::string> bound = free_atoms(phi);
    const bool had_p = bound.erase("P") > 0;
    for (const auto& a : free_atoms(psi)) bound.insert(a);
    const auto got = free_atoms(out);
    CHECK(std::includes(bound.begin(), bound.end(), got.begin(), got.end()));
    if (had_p) CHECK(got == bound);
    CHECK(substitute(phi, "P", Formula::atom("P")) == phi);
  }
}
