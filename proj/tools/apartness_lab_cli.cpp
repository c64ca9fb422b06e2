// Command-line front end: classification sweeps, the prover, countermodels,
// Rieger-Nishimura normal forms and the full self-check.

#include <filesystem>
#include <iostream>
#include <thread>

#include "CLI11.hpp"
#include "apartness_lab/apartness.hpp"
#include "apartness_lab/formula.hpp"
#include "apartness_lab/heyting.hpp"
#include "apartness_lab/poset.hpp"
#include "apartness_lab/prover.hpp"
#include "apartness_lab/report.hpp"
#include "apartness_lab/rn.hpp"
#include "apartness_lab/suite.hpp"

namespace al = apartness_lab;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitNegative = 1;  // invalid formula, failed verdict, missing countermodel
constexpr int kExitError = 2;
constexpr int kExitUndecided = 3;

struct Options {
  std::size_t enumerate = 0;
  std::vector<std::string> poset_files;
  std::size_t clone_cap = al::kDefaultCloneCap;
  std::size_t max_worlds = al::kDefaultMaxWorlds;
  std::string format = "text";
  bool dot = false;
  bool ascii = false;
  bool quiet = false;
  bool export_tables = false;
  int depth = 4;
  std::size_t max_poset_size = 4;
  unsigned jobs = std::max(1u, std::thread::hardware_concurrency());
  std::string formula;
};

int run_classify(const Options& o) {
  if (o.enumerate == 0 && o.poset_files.empty()) {
    std::cerr << "classify: give --enumerate <n> or --poset <file>\n";
    return kExitError;
  }
  std::vector<al::HeytingAlgebra> algebras;
  if (o.enumerate > 0) algebras = al::enumerate_algebras(o.enumerate);
  for (const auto& path : o.poset_files) {
    al::HeytingAlgebra h = al::from_poset_downsets(al::read_poset_file(path));
    h.set_label(std::filesystem::path(path).stem().string());
    algebras.push_back(std::move(h));
  }
  const auto reports = al::classify_all(algebras, o.clone_cap, o.jobs);
  if (o.format == "records") {
    std::cout << al::format_records(reports);
  } else {
    for (const auto& r : reports) std::cout << al::format_report_text(r) << "\n";
  }
  for (const auto& r : reports) {
    if (const al::TheoremVerdict* v = r.first_unpassed()) {
      std::cerr << "not passed: " << r.algebra_id << " " << v->name << " (" << al::to_string(v->verdict)
                << ")\n";
      return kExitNegative;
    }
  }
  return kExitOk;
}

int run_prove(const Options& o) {
  const al::Formula f = al::parse(o.formula);
  const al::Decision d = al::decide(f, o.max_worlds);
  std::cout << al::to_string(d.outcome) << ": " << al::print(f) << "\n";
  switch (d.outcome) {
    case al::Outcome::Valid:
      if (!o.quiet) std::cout << d.derivation->to_text();
      return kExitOk;
    case al::Outcome::Invalid:
      if (!o.quiet) std::cout << (o.dot ? d.countermodel->to_dot() : d.countermodel->to_text());
      return kExitNegative;
    case al::Outcome::Undecided:
      std::cout << "no proof, and no countermodel with at most " << d.searched_worlds << " worlds\n";
      return kExitUndecided;
  }
  return kExitError;
}

int run_countermodel(const Options& o) {
  const al::Formula f = al::parse(o.formula);
  const auto model = al::kripke_countermodel(f, o.max_worlds);
  if (!model) {
    std::cout << "no countermodel with at most " << o.max_worlds << " worlds\n";
    return kExitNegative;
  }
  std::cout << (o.dot ? model->to_dot() : model->to_text());
  return kExitOk;
}

int run_rn_normalize(const Options& o) {
  const al::Formula f = al::parse(o.formula);
  const al::RNElement e = al::rn_eval_formula(f);
  const auto atoms = al::free_atoms(f);
  const std::string atom = atoms.empty() ? "y" : *atoms.begin();
  std::cout << e.to_string(!o.ascii) << "\n" << al::print(al::rn_to_formula(e, atom)) << "\n";
  return kExitOk;
}

int run_rn_hasse(const Options& o) {
  if (o.dot) {
    std::cout << al::rn_hasse_dot(o.depth, !o.ascii);
    return kExitOk;
  }
  if (o.depth < 1) throw std::invalid_argument("Hasse diagram depth must be at least 1");
  const auto nodes = al::rn_truncation(o.depth);
  for (const auto& lo : nodes) {
    for (const auto& hi : nodes) {
      if (lo == hi || !al::rn_leq(lo, hi)) continue;
      const bool cover = std::none_of(nodes.begin(), nodes.end(), [&](const al::RNElement& m) {
        return m != lo && m != hi && al::rn_leq(lo, m) && al::rn_leq(m, hi);
      });
      if (cover) std::cout << lo.to_string(!o.ascii) << " < " << hi.to_string(!o.ascii) << "\n";
    }
  }
  return kExitOk;
}

int run_enumerate(const Options& o) {
  for (const auto& h : al::enumerate_algebras(o.enumerate)) {
    if (o.export_tables) {
      std::cout << al::export_algebra(h) << "\n";
      continue;
    }
    std::cout << h.label() << "  elements " << h.size() << "  boolean " << (al::is_boolean(h) ? "yes" : "no")
              << "  wlem " << (al::satisfies_wlem(h) ? "yes" : "no") << "\n";
  }
  return kExitOk;
}

int run_corpus(const Options& o) {
  bool ok = true;
  auto show = [&](const al::CheckResult& r) {
    ok = ok && r.passed;
    std::cout << (r.passed ? "[pass] " : "[FAIL] ") << r.name << " (" << r.seconds << " s)";
    if (!r.detail.empty()) std::cout << ": " << r.detail;
    std::cout << std::endl;
  };

  const al::CorpusReport corpus = al::check_corpus(o.max_worlds);
  for (const auto& e : corpus.entries) {
    std::cout << "  " << (e.matched() ? "ok  " : "BAD ") << al::to_string(e.decision.outcome) << "  "
              << al::print(e.formula) << "   (" << e.label << ")\n";
  }
  show(al::check_prover_corpus(o.max_worlds));

  const auto algebras = al::enumerate_algebras(o.max_poset_size);
  show(al::check_heyting_axioms(algebras));
  show(al::check_candidate_characterization(algebras, 1));
  show(al::check_candidate_characterization(algebras, 2));
  const auto sweep = al::sweep_classification(o.max_poset_size, o.clone_cap, o.jobs);
  // Posets of size <= 3 must classify without hitting the cap.
  show(al::check_classification(sweep, 3, o.clone_cap));
  show(al::check_reducts(sweep));
  show(al::check_inequalities(sweep));
  show(al::check_parser_round_trip(2000, 1));
  show(al::check_rn_order(12));
  show(al::check_rn_adjunction(8));
  show(al::check_rn_freeness(1500, 20000, 7));
  show(al::check_cross_oracle(algebras, 1000, 11));
  std::cout << (ok ? "all checks passed" : "some checks failed") << "\n";
  return ok ? kExitOk : kExitNegative;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Finite Heyting algebras, apartness terms and intuitionistic proof search"};
  app.require_subcommand(1);
  Options o;

  auto* classify = app.add_subcommand("classify", "classify the apartness terms of algebras");
  classify->add_option("--enumerate", o.enumerate, "all algebras from posets with at most n elements")
      ->check(CLI::Range(1, 5));
  classify->add_option("--poset", o.poset_files, "poset file(s), one algebra each")
      ->check(CLI::ExistingFile);
  classify->add_option("--clone-cap", o.clone_cap, "most clone members to list")
      ->check(CLI::Range(std::size_t{4}, std::size_t{100000000}));
  classify->add_option("--format", o.format, "text or records")
      ->check(CLI::IsMember({"text", "records"}));
  classify->add_option("--jobs", o.jobs, "algebras classified in parallel")->check(CLI::PositiveNumber);

  auto* prove = app.add_subcommand("prove", "decide intuitionistic validity");
  prove->add_option("formula", o.formula, "formula")->required();
  prove->add_option("--max-worlds", o.max_worlds, "largest countermodel")
      ->check(CLI::Range(std::size_t{1}, al::kMaxKripkeWorlds));
  prove->add_flag("--dot", o.dot, "print a countermodel as DOT");
  prove->add_flag("--quiet", o.quiet, "verdict only");

  auto* countermodel = app.add_subcommand("countermodel", "search for a refuting Kripke model");
  countermodel->add_option("formula", o.formula, "formula")->required();
  countermodel->add_option("--max-worlds", o.max_worlds, "largest model")
      ->check(CLI::Range(std::size_t{1}, al::kMaxKripkeWorlds));
  countermodel->add_flag("--dot", o.dot, "print as DOT");

  auto* rn = app.add_subcommand("rn", "the Rieger-Nishimura lattice");
  rn->require_subcommand(1);
  auto* normalize = rn->add_subcommand("normalize", "normal form of a one-atom formula");
  normalize->add_option("formula", o.formula, "formula")->required();
  normalize->add_flag("--ascii", o.ascii, "ASCII names for bot and top");
  auto* hasse = rn->add_subcommand("hasse", "Hasse diagram of a truncation");
  hasse->add_option("--depth", o.depth, "largest index")->check(CLI::Range(1, 1000));
  hasse->add_flag("--dot", o.dot, "print as DOT");
  hasse->add_flag("--ascii", o.ascii, "ASCII labels");

  auto* enumerate = app.add_subcommand("enumerate", "list the algebras from small posets");
  enumerate->add_option("--max", o.enumerate, "largest poset")->check(CLI::Range(0, 7))->required();
  enumerate->add_flag("--export", o.export_tables, "print full operation tables");

  auto* corpus = app.add_subcommand("corpus", "run the formula corpus and every invariant suite");
  corpus->add_option("--max-poset-size", o.max_poset_size, "largest poset swept")
      ->check(CLI::Range(0, 5));
  corpus->add_option("--clone-cap", o.clone_cap, "most clone members to list")
      ->check(CLI::Range(std::size_t{4}, std::size_t{100000000}));
  corpus->add_option("--max-worlds", o.max_worlds, "largest countermodel")
      ->check(CLI::Range(std::size_t{1}, al::kMaxKripkeWorlds));
  corpus->add_option("--jobs", o.jobs, "algebras classified in parallel")->check(CLI::PositiveNumber);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitError;
  }

  try {
    if (*classify) return run_classify(o);
    if (*prove) return run_prove(o);
    if (*countermodel) return run_countermodel(o);
    if (*normalize) return run_rn_normalize(o);
    if (*hasse) return run_rn_hasse(o);
    if (*enumerate) return run_enumerate(o);
    if (*corpus) return run_corpus(o);
  } catch (const al::ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
  }
  return kExitError;
}
