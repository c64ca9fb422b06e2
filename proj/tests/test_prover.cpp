#include <random>

#include "apartness_lab/heyting.hpp"
#include "apartness_lab/prover.hpp"
#include "apartness_lab/suite.hpp"
#include "doctest.h"
#include "oracles.hpp"

using namespace apartness_lab;

namespace {

bool proves(const char* text) { return ipc_prove(parse(text)); }

// Every countermodel must really refute the formula at its root.
void check_refutes(const Formula& f, const KripkeModel& m) {
  CHECK_FALSE(oracle::forces(m, 0, f));
  CHECK_FALSE(m.forces(0, f));
  for (std::size_t w = 0; w < m.worlds(); ++w) CHECK(m.forces(w, f) == oracle::forces(m, w, f));
}

}  // namespace

TEST_CASE("intuitionistic theorems") {
  CHECK(proves("P -> P"));
  CHECK(proves("bot -> P"));
  CHECK(proves("top"));
  CHECK(proves("P -> ~~P"));
  CHECK(proves("~~~P -> ~P"));
  CHECK(proves("~~(P | ~P)"));
  CHECK(proves("(P -> Q) -> (Q -> R) -> P -> R"));
  CHECK(proves("(P | Q) & ~P -> Q"));
  CHECK(proves("((P -> Q) -> P) -> ~~P"));
  CHECK(proves("~(P | Q) <-> ~P & ~Q"));
  CHECK(proves("(P & Q -> R) <-> (P -> Q -> R)"));
  CHECK(proves("~~(~~P -> P)"));
}

TEST_CASE("classical tautologies that fail intuitionistically") {
  for (const char* text : {"P | ~P", "~~P -> P", "((P -> Q) -> P) -> P", "(P -> Q) | (Q -> P)",
                           "~P | ~~P", "~(P & Q) -> ~P | ~Q", "(~P -> Q | R) -> (~P -> Q) | (~P -> R)"}) {
    INFO(text);
    const Formula f = parse(text);
    CHECK_FALSE(ipc_prove(f));
    const auto m = kripke_countermodel(f, 6);
    REQUIRE(m.has_value());
    check_refutes(f, *m);
  }
}

TEST_CASE("countermodel shapes") {
  const auto lem = kripke_countermodel(parse("P | ~P"), 6);
  REQUIRE(lem);
  CHECK(lem->worlds() == 2);
  const auto wlem = kripke_countermodel(parse("~P | ~~P"), 6);
  REQUIRE(wlem);
  CHECK(wlem->worlds() == 3);
  CHECK(wlem->to_text().rfind("worlds: 3 (root w0)", 0) == 0);
  CHECK(wlem->to_dot().find("digraph kripke") != std::string::npos);
  // Smallest models come first, so one world is never enough for a classical tautology.
  CHECK_FALSE(kripke_countermodel(parse("~~P -> P"), 1).has_value());
  CHECK_FALSE(kripke_countermodel(parse("P -> P"), 6).has_value());
  CHECK_THROWS_AS(kripke_countermodel(parse("P"), 0), std::invalid_argument);
  CHECK_THROWS_AS(kripke_countermodel(parse("P"), kMaxKripkeWorlds + 1), std::invalid_argument);
}

TEST_CASE("Kripke model validation") {
  const Poset chain = parse_poset("elements: 2\n0 < 1\n");
  CHECK_NOTHROW(KripkeModel(chain, {"P"}, {0b10}));
  // P at the root but not above it breaks persistence.
  CHECK_THROWS_AS(KripkeModel(chain, {"P"}, {0b01}), std::invalid_argument);
  // Two minimal worlds: no root.
  CHECK_THROWS_AS(KripkeModel(parse_poset("elements: 2\n"), {"P"}, {0}), std::invalid_argument);
  CHECK_THROWS_AS(KripkeModel(chain, {"P", "Q"}, {0}), std::invalid_argument);
  const KripkeModel m(chain, {"P"}, {0b10});
  CHECK(m.truth_set("P") == 0b10);
  CHECK(m.forcing_set(parse("~~P")) == 0b11);
  CHECK(m.forcing_set(parse("P | ~P")) == 0b10);
}

TEST_CASE("derivations replay rule by rule") {
  std::mt19937_64 rng(5);
  std::size_t replayed = 0;
  auto check = [&](const Formula& f) {
    Derivation d;
    if (!ipc_prove(f, &d)) return;
    std::string why;
    INFO(print(f));
    CHECK(d.conclusion.succedent == f);
    CHECK(d.conclusion.antecedent.empty());
    CHECK_MESSAGE(oracle::replay(d, &why), why);
    ++replayed;
  };
  for (const char* text : {"P -> P", "(P -> Q) -> (Q -> R) -> P -> R", "~~(P | ~P)",
                           "((P -> Q) -> P) -> ~~P", "~(P <-> Q) -> ~(Q <-> P)"})
    check(parse(text));
  for (int k = 0; k < 400; ++k) check(random_formula(rng, {"P", "Q"}, 4));
  for (const auto& e : check_corpus().entries) check(e.formula);
  CHECK(replayed > 30);
}

TEST_CASE("derivation text") {
  Derivation d;
  REQUIRE(ipc_prove(parse("P -> P"), &d));
  CHECK(d.rule == "R-imp");
  CHECK(d.size() == 2);
  CHECK(d.to_text() == "=> P -> P   [R-imp]\n  P => P   [Ax]\n");
}

TEST_CASE("decide") {
  const Decision valid = decide(parse("P -> ~~P"));
  CHECK(valid.outcome == Outcome::Valid);
  CHECK(valid.derivation.has_value());
  const Decision invalid = decide(parse("~P | ~~P"));
  CHECK(invalid.outcome == Outcome::Invalid);
  REQUIRE(invalid.countermodel.has_value());
  CHECK(invalid.searched_worlds == 3);
  CHECK(to_string(Outcome::Undecided) == "undecided");
  // With a single world only classical refutations are found.
  const Decision small = decide(parse("P | ~P"), 1);
  CHECK(small.outcome == Outcome::Undecided);
  CHECK(small.searched_worlds == 1);
}

TEST_CASE("corpus") {
  const CorpusReport r = check_corpus();
  CHECK(r.entries.size() == 7);
  CHECK(r.all_matched());
  for (const auto& e : r.entries) {
    if (e.expected == Outcome::Invalid) {
      REQUIRE(e.decision.countermodel.has_value());
      check_refutes(e.formula, *e.decision.countermodel);
    }
  }
}

TEST_CASE("provable formulas hold in every small algebra") {
  const auto algebras = enumerate_algebras(3);
  std::mt19937_64 rng(17);
  std::size_t proven = 0;
  for (int k = 0; k < 300; ++k) {
    const Formula f = random_formula(rng, {"P", "Q"}, 4);
    const Decision d = decide(f);
    INFO(print(f));
    REQUIRE(d.outcome != Outcome::Undecided);
    if (d.outcome == Outcome::Valid) {
      ++proven;
      for (const auto& h : algebras) CHECK(holds_identity(h, f, Formula::top()).holds);
    } else {
      check_refutes(f, *d.countermodel);
    }
  }
  CHECK(proven > 0);
}
