#include <algorithm>

#include "apartness_lab/prover.hpp"
#include "apartness_lab/rn.hpp"
#include "apartness_lab/suite.hpp"
#include "doctest.h"

using namespace apartness_lab;

namespace {

RNElement D(int n) { return RNElement::d(n); }
RNElement I(int n) { return RNElement::i(n); }

// Operations computed by exhaustive search over a whole truncation, as a finite lattice.
struct FiniteTruncation {
  std::vector<RNElement> elems;
  explicit FiniteTruncation(int max_index) : elems(rn_truncation(max_index)) {}

  RNElement greatest(const std::function<bool(const RNElement&)>& in) const {
    std::vector<RNElement> set;
    for (const auto& c : elems) if (in(c)) set.push_back(c);
    for (const auto& c : set)
      if (std::all_of(set.begin(), set.end(), [&](const RNElement& o) { return rn_leq(o, c); })) return c;
    throw std::logic_error("no greatest element");
  }
  RNElement least(const std::function<bool(const RNElement&)>& in) const {
    std::vector<RNElement> set;
    for (const auto& c : elems) if (in(c)) set.push_back(c);
    for (const auto& c : set)
      if (std::all_of(set.begin(), set.end(), [&](const RNElement& o) { return rn_leq(c, o); })) return c;
    throw std::logic_error("no least element");
  }
  RNElement meet(const RNElement& a, const RNElement& b) const {
    return greatest([&](const RNElement& c) { return rn_leq(c, a) && rn_leq(c, b); });
  }
  RNElement join(const RNElement& a, const RNElement& b) const {
    return least([&](const RNElement& c) { return rn_leq(a, c) && rn_leq(b, c); });
  }
  RNElement implies(const RNElement& a, const RNElement& b) const {
    return greatest([&](const RNElement& c) { return rn_leq(meet(a, c), b); });
  }
};

}  // namespace

TEST_CASE("order clauses") {
  CHECK(rn_leq(D(1), I(2)));
  CHECK_FALSE(rn_leq(I(1), I(2)));
  CHECK(rn_leq(I(1), I(3)));
  CHECK(rn_leq(D(2), D(5)));
  CHECK_FALSE(rn_leq(D(2), I(2)));
  CHECK(rn_leq(I(2), D(3)));
  CHECK_FALSE(rn_leq(I(2), D(2)));
  CHECK(rn_leq(RNElement::bot(), I(7)));
  CHECK(rn_leq(D(9), RNElement::top()));
  CHECK_FALSE(rn_leq(RNElement::top(), D(9)));
  CHECK(D(0) == RNElement::bot());
  CHECK(I(0) == RNElement::bot());
}

TEST_CASE("defining recurrences") {
  CHECK(rn_join(I(1), D(1)) == D(2));
  CHECK(rn_implies(I(1), D(1)) == I(2));
  for (int n = 1; n <= 10; ++n) {
    CHECK(rn_join(I(n), D(n)) == D(n + 1));
    CHECK(rn_implies(I(n), D(n)) == I(n + 1));
  }
  CHECK(rn_negation(D(1)) == I(1));
  for (const auto& a : rn_truncation(10)) CHECK(rn_meet(a, RNElement::top()) == a);
}

TEST_CASE("bounded candidate search matches the finite truncation of index 24") {
  const FiniteTruncation big(24);
  for (const auto& a : rn_truncation(20)) {
    for (const auto& b : rn_truncation(20)) {
      CHECK(rn_meet(a, b) == big.meet(a, b));
      CHECK(rn_join(a, b) == big.join(a, b));
      CHECK(rn_implies(a, b) == big.implies(a, b));
    }
  }
}

TEST_CASE("order axioms up to index 12 and adjunction up to index 8") {
  CHECK(check_rn_order(12).passed);
  CHECK(check_rn_adjunction(8).passed);
}

TEST_CASE("normal forms of one-atom formulas") {
  CHECK(rn_eval_formula(parse("~y")) == I(1));
  CHECK(rn_eval_formula(parse("~~y")) == I(2));
  CHECK(rn_eval_formula(parse("y | ~y")) == D(2));
  CHECK(rn_eval_formula(parse("~~~y")) == I(1));
  CHECK(rn_eval_formula(parse("y -> y")) == RNElement::top());
  CHECK(rn_eval_formula(parse("bot")) == RNElement::bot());
  CHECK(rn_eval_formula(parse("z & z")) == D(1));  // any single atom plays the generator
  CHECK_THROWS_AS(rn_eval_formula(parse("x & y")), std::invalid_argument);
  // The double negation normal form is the one the prover confirms.
  CHECK(ipc_prove(parse("~~y <-> (~y -> y)")));
}

TEST_CASE("defining terms") {
  CHECK(rn_to_formula(I(1)) == parse("~y"));
  CHECK(rn_to_formula(D(2)) == parse("~y | y"));
  CHECK(rn_to_formula(RNElement::bot()) == Formula::bottom());
  CHECK(rn_to_formula(RNElement::top()) == Formula::top());
  for (const auto& a : rn_truncation(8)) CHECK(rn_eval_formula(rn_to_formula(a)) == a);
  CHECK(rn_to_formula(D(4)).depth() == 4);
}

TEST_CASE("one-atom validity agrees with the top element") {
  for (const auto& f : all_formulas({"y"}, 2)) {
    INFO(print(f));
    CHECK(ipc_prove(f) == (rn_eval_formula(f) == RNElement::top()));
  }
}

TEST_CASE("Hasse diagram") {
  const std::string one = rn_hasse_dot(1, true);
  CHECK(one.find("\"bot\" -> \"d_1\"") != std::string::npos);
  CHECK(one.find("\"bot\" -> \"i_1\"") != std::string::npos);
  CHECK(one.find("label=\"⊥\"") != std::string::npos);
  CHECK(rn_hasse_dot(1, false).find("label=\"bot\"") != std::string::npos);
  for (int depth = 2; depth <= 6; ++depth) {
    const std::string dot = rn_hasse_dot(depth, false);
    CHECK(dot.find("\"d_1\" -> \"d_2\"") != std::string::npos);
    CHECK(dot.find("\"i_1\" -> \"i_2\"") == std::string::npos);
    CHECK(dot.find("\"d_1\" -> \"i_2\"") != std::string::npos);
    CHECK(dot.find("\"i_1\" -> \"d_2\"") != std::string::npos);
  }
  CHECK_THROWS(rn_hasse_dot(0, false));
}

TEST_CASE("printing") {
  CHECK(D(3).to_string() == "d_3");
  CHECK(I(12).to_string(true) == "i_12");
  CHECK(RNElement::bot().to_string(true) == "⊥");
  CHECK(RNElement::top().to_string(false) == "top");
}
