#include "apartness_lab/apartness.hpp"

#include <algorithm>
#include <stdexcept>
#include <string_view>

namespace apartness_lab {

Formula candidate1_term() {
  static const Formula term = parse("(x & ~y) | (~x & y)");
  return term;
}

Formula candidate2_term() {
  static const Formula term = parse("~(x <-> y)");
  return term;
}

Formula double_negation_apartness_term() {
  static const Formula term = parse("(~~x & ~y) | (~x & ~~y)");
  return term;
}

BinaryFunction term_function(const HeytingAlgebra& h, const Formula& term) {
  const CompiledTerm compiled(term, {kFirstVar, kSecondVar});
  const std::size_t n = h.size();
  std::vector<Element> table(n * n);
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = 0; b < n; ++b) {
      const Element args[2] = {static_cast<Element>(a), static_cast<Element>(b)};
      table[a * n + b] = compiled.eval(h, args);
    }
  }
  return BinaryFunction(n, std::move(table));
}

BinaryFunction candidate1(const HeytingAlgebra& h) { return term_function(h, candidate1_term()); }
BinaryFunction candidate2(const HeytingAlgebra& h) { return term_function(h, candidate2_term()); }

namespace {

void require_matching(const HeytingAlgebra& h, const BinaryFunction& f) {
  if (f.size() != h.size()) {
    throw std::invalid_argument("binary function has " + std::to_string(f.size()) +
                                " elements but the algebra has " + std::to_string(h.size()));
  }
}

}  // namespace

ApartnessReport check_apartness(const HeytingAlgebra& h, const BinaryFunction& f) {
  require_matching(h, f);
  const std::size_t n = h.size();
  ApartnessReport r;
  for (std::size_t a = 0; a < n; ++a) {
    const auto x = static_cast<Element>(a);
    if (r.irreflexive && f.at(x, x) != h.bot()) {
      r.irreflexive = false;
      r.irreflexive_witness = {x};
    }
    for (std::size_t b = 0; b < n; ++b) {
      const auto y = static_cast<Element>(b);
      const Element xy = f.at(x, y);
      if (r.symmetric && xy != f.at(y, x)) {
        r.symmetric = false;
        r.symmetric_witness = {x, y};
      }
      if (r.trivial && xy != h.bot()) {
        r.trivial = false;
        r.nontrivial_witness = {x, y};
      }
      if (r.tight && !h.leq(h.meet(h.neg(xy), x), y)) {
        r.tight = false;
        r.tight_witness = {x, y};
      }
      if (!r.cotransitive) continue;
      for (std::size_t c = 0; c < n; ++c) {
        const auto z = static_cast<Element>(c);
        if (!h.leq(xy, h.join(f.at(x, z), f.at(z, y)))) {
          r.cotransitive = false;
          r.cotransitive_witness = {x, y, z};
          break;
        }
      }
    }
  }
  return r;
}

Clone binary_clone(const HeytingAlgebra& h, std::size_t cap) { return Clone::compute(h, cap); }

namespace {

ReductReport reduct_at(const HeytingAlgebra& h, const BinaryFunction& f, Element fixed) {
  require_matching(h, f);
  ReductReport r;
  const std::size_t n = h.size();
  r.table.resize(n);
  r.equals_negation = r.equals_identity = r.equals_double_negation = r.constant_bot = true;
  for (std::size_t a = 0; a < n; ++a) {
    const auto y = static_cast<Element>(a);
    const Element v = f.at(fixed, y);
    r.table[a] = v;
    r.equals_negation = r.equals_negation && v == h.neg(y);
    r.equals_identity = r.equals_identity && v == y;
    r.equals_double_negation = r.equals_double_negation && v == h.neg(h.neg(y));
    r.constant_bot = r.constant_bot && v == h.bot();
  }
  r.smallest_rn = smallest_rn_term_for(h, r.table);
  return r;
}

}  // namespace

ReductReport top_reduct(const HeytingAlgebra& h, const BinaryFunction& f) {
  return reduct_at(h, f, h.top());
}

ReductReport bottom_reduct(const HeytingAlgebra& h, const BinaryFunction& f) {
  return reduct_at(h, f, h.bot());
}

std::optional<RNElement> smallest_rn_term_for(const HeytingAlgebra& h,
                                              const std::vector<Element>& table) {
  const std::size_t n = h.size();
  if (table.size() != n) throw std::invalid_argument("unary table has the wrong size");
  auto constant = [&](Element e) { return std::vector<Element>(n, e); };
  std::vector<RNElement> matches;
  if (table == constant(h.bot())) matches.push_back(RNElement::bot());
  if (table == constant(h.top())) matches.push_back(RNElement::top());
  // Tables of d_n and i_n; once both are constantly top every later term is too.
  std::vector<Element> d(n), i(n);
  for (std::size_t a = 0; a < n; ++a) {
    d[a] = static_cast<Element>(a);
    i[a] = h.neg(static_cast<Element>(a));
  }
  const std::vector<Element> top = constant(h.top());
  for (int index = 1;; ++index) {
    if (d == table) matches.push_back(RNElement::d(index));
    if (i == table) matches.push_back(RNElement::i(index));
    if (d == top && i == top) break;
    if (index > 4 * static_cast<int>(n) + 8) {
      throw std::logic_error("Rieger-Nishimura terms did not stabilize on a finite algebra");
    }
    std::vector<Element> next_d(n), next_i(n);
    for (std::size_t a = 0; a < n; ++a) {
      next_d[a] = h.join(i[a], d[a]);
      next_i[a] = h.impl(i[a], d[a]);
    }
    d = std::move(next_d);
    i = std::move(next_i);
  }
  for (const auto& candidate : matches) {
    if (std::all_of(matches.begin(), matches.end(),
                    [&](const RNElement& other) { return rn_leq(candidate, other); })) {
      return candidate;
    }
  }
  if (!matches.empty()) throw std::logic_error("matching Rieger-Nishimura terms have no least");
  return std::nullopt;
}

RNElement reduct_rn(const Formula& term, ReductSide side) {
  for (const auto& atom : free_atoms(term)) {
    if (atom != kFirstVar && atom != kSecondVar) {
      throw std::invalid_argument("reduct_rn: term mentions atom '" + atom + "'");
    }
  }
  const Formula fixed = side == ReductSide::Top ? Formula::top() : Formula::bottom();
  return rn_eval_formula(substitute(term, kFirstVar, fixed));
}

InequalityReport verify_inequalities(const HeytingAlgebra& h, const BinaryFunction& f) {
  require_matching(h, f);
  InequalityReport r;
  const std::size_t n = h.size();
  for (std::size_t a = 0; a < n; ++a) {
    const auto x = static_cast<Element>(a);
    const Element nnx = h.neg(h.neg(x));
    if (r.apart_from_double_negation && f.at(x, nnx) != h.bot()) {
      r.apart_from_double_negation = false;
      r.apart_from_double_negation_witness = {x};
    }
    for (std::size_t b = 0; b < n && r.double_negation_bound; ++b) {
      const auto y = static_cast<Element>(b);
      if (!h.leq(h.meet(nnx, h.neg(h.neg(y))), f.at(x, h.neg(y)))) {
        r.double_negation_bound = false;
        r.double_negation_bound_witness = {x, y};
      }
    }
  }
  return r;
}

IrreflexiveSearch search_irreflexive_members(const HeytingAlgebra& h, const Clone& clone,
                                             std::size_t cap) {
  const std::size_t n = h.size();
  std::vector<Element> ceiling(n * n, h.top());
  for (std::size_t a = 0; a < n; ++a) ceiling[a * n + a] = h.bot();
  const Clone::Bounded below = clone.members_below(BinaryFunction(n, std::move(ceiling)), cap);
  IrreflexiveSearch result;
  result.irreflexive_members = below.functions.size();
  result.capped = below.capped;
  const BinaryFunction c2 = candidate2(h);
  for (const auto& f : below.functions) {
    const ApartnessReport r = check_apartness(h, f);
    if (!r.is_apartness()) continue;
    ++result.apartness_functions;
    if (r.tight) ++result.tight_apartness_functions;
    if (r.trivial) continue;
    ++result.nontrivial_apartness_functions;
    if (f != c2) result.nontrivial_equal_candidate2 = false;
  }
  return result;
}

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::Pass: return "pass";
    case Verdict::Fail: return "fail";
    case Verdict::Inconclusive: return "inconclusive";
  }
  return "?";
}

bool ClassificationReport::all_passed() const { return first_unpassed() == nullptr; }

const TheoremVerdict* ClassificationReport::first_unpassed() const {
  for (const auto& v : theorem_verdicts) {
    if (v.verdict != Verdict::Pass) return &v;
  }
  return nullptr;
}

namespace {

constexpr std::size_t kWitnessPrintLimit = 64;

// Prefers the named candidate terms when they define the same function.
std::string describe_witness(const Clone& clone, std::size_t k, const BinaryFunction& c1,
                             const BinaryFunction& c2) {
  const BinaryFunction& f = clone.functions()[k];
  if (f == c2) return print(candidate2_term());
  if (f == c1) return print(candidate1_term());
  const std::size_t size = clone.witness_tree_size(k, kWitnessPrintLimit + 1);
  if (size <= kWitnessPrintLimit) return print(clone.witness(k));
  return "<shared term, more than " + std::to_string(kWitnessPrintLimit) + " nodes>";
}

std::string rn_name(const std::optional<RNElement>& e) { return e ? e->to_string() : "none"; }

}  // namespace

ClassificationReport classify(const HeytingAlgebra& h, std::size_t cap) {
  ClassificationReport report;
  report.algebra_id = h.label();
  report.algebra_size = h.size();
  if (h.is_trivial()) {
    report.trivial_algebra = true;
    report.wlem = report.boolean = true;
    report.clone_size = binary_clone(h, cap).size();
    return report;
  }
  report.wlem = satisfies_wlem(h);
  report.boolean = is_boolean(h);

  const BinaryFunction c1 = candidate1(h);
  const BinaryFunction c2 = candidate2(h);
  report.candidate1_is_apartness = check_apartness(h, c1).is_apartness();
  report.candidate2_is_apartness = check_apartness(h, c2).is_apartness();

  const Clone clone = binary_clone(h, cap);
  report.clone_size = clone.size();
  report.capped = clone.capped();

  bool uniqueness_ok = true, reducts_ok = true, inequalities_ok = true;
  std::string uniqueness_detail, reducts_detail, inequalities_detail;
  for (std::size_t k = 0; k < clone.size(); ++k) {
    const BinaryFunction& f = clone.functions()[k];
    // Irreflexivity is the cheapest axiom to refute; most members fail it.
    bool irreflexive = true;
    for (std::size_t a = 0; a < h.size() && irreflexive; ++a) {
      irreflexive = f.at(static_cast<Element>(a), static_cast<Element>(a)) == h.bot();
    }
    if (!irreflexive) continue;
    const ApartnessReport ar = check_apartness(h, f);
    if (!ar.is_apartness()) continue;
    ++report.apartness_functions;
    if (ar.tight) ++report.tight_apartness_functions;
    if (ar.trivial) continue;
    ++report.nontrivial_apartness_functions;

    ApartnessFinding finding;
    finding.clone_index = k;
    finding.witness_term = describe_witness(clone, k, c1, c2);
    finding.tight = ar.tight;
    finding.equals_candidate1 = f == c1;
    finding.equals_candidate2 = f == c2;
    const ReductReport top = top_reduct(h, f);
    const ReductReport bottom = bottom_reduct(h, f);
    finding.top_reduct_is_negation = top.equals_negation;
    finding.bottom_reduct_is_identity = bottom.equals_identity;
    finding.bottom_reduct_is_double_negation = bottom.equals_double_negation;
    finding.top_reduct_rn = rn_name(top.smallest_rn);
    finding.bottom_reduct_rn = rn_name(bottom.smallest_rn);
    finding.inequalities_pass = verify_inequalities(h, f).all_passed();

    const std::string where = "clone member #" + std::to_string(k);
    if (uniqueness_ok && (!finding.equals_candidate2 ||
                          (report.boolean && !finding.equals_candidate1))) {
      uniqueness_ok = false;
      uniqueness_detail = where + " differs from " +
                          (finding.equals_candidate2 ? "candidate 1" : "candidate 2");
    }
    if (reducts_ok && !(finding.top_reduct_is_negation && (finding.bottom_reduct_is_identity ||
                                                         finding.bottom_reduct_is_double_negation))) {
      reducts_ok = false;
      reducts_detail = where + " has top reduct " + finding.top_reduct_rn + " and bottom reduct " +
                       finding.bottom_reduct_rn;
    }
    if (inequalities_ok && !finding.inequalities_pass) {
      inequalities_ok = false;
      inequalities_detail = where + " violates an inequality";
    }
    report.reduct_checks.push_back(std::move(finding));
  }
  report.unique_equals_candidate2 =
      report.nontrivial_apartness_functions == 1 && report.reduct_checks.front().equals_candidate2;

  const bool capped = report.capped;
  auto existence = [&](const char* name, bool found, bool expected, const std::string& what) {
    TheoremVerdict v{name, Verdict::Pass, ""};
    if (found && !expected) {
      v.verdict = Verdict::Fail;
      v.detail = what + " found although the property does not hold";
    } else if (capped) {
      v.verdict = Verdict::Inconclusive;
      v.detail = "clone capped at " + std::to_string(report.clone_size) + " members";
    } else if (found != expected) {
      v.verdict = Verdict::Fail;
      v.detail = what + " missing although the property holds";
    }
    return v;
  };
  auto universal = [&](const char* name, bool ok, const std::string& detail) {
    TheoremVerdict v{name, ok ? Verdict::Pass : Verdict::Fail, ok ? "" : detail};
    if (ok && capped) {
      v.verdict = Verdict::Inconclusive;
      v.detail = "holds for the " + std::to_string(report.clone_size) + " listed members only";
    }
    return v;
  };
  auto direct = [](const char* name, bool ok, const std::string& detail) {
    return TheoremVerdict{name, ok ? Verdict::Pass : Verdict::Fail, ok ? "" : detail};
  };

  report.theorem_verdicts.push_back(existence(kVerdictCharacterization,
                                              report.nontrivial_apartness_functions > 0,
                                              report.wlem, "nontrivial apartness"));
  report.theorem_verdicts.push_back(existence(
      kVerdictBoolean, report.tight_apartness_functions > 0, report.boolean, "tight apartness"));
  report.theorem_verdicts.push_back(universal(kVerdictUniqueness, uniqueness_ok, uniqueness_detail));
  report.theorem_verdicts.push_back(universal(kVerdictReducts, reducts_ok, reducts_detail));
  report.theorem_verdicts.push_back(
      universal(kVerdictInequalities, inequalities_ok, inequalities_detail));
  report.theorem_verdicts.push_back(direct(kVerdictCandidate1,
                                           report.candidate1_is_apartness == report.boolean,
                                           "candidate 1 apartness status disagrees with booleanness"));
  report.theorem_verdicts.push_back(direct(kVerdictCandidate2,
                                           report.candidate2_is_apartness == report.wlem,
                                           "candidate 2 apartness status disagrees with WLEM"));
  return report;
}

}  // namespace apartness_lab
