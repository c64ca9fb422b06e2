#include "apartness_lab/report.hpp"

#include <sstream>
#include <stdexcept>

#include "json.hpp"

namespace apartness_lab {

namespace {

using nlohmann::json;

const char* yes_no(bool b) { return b ? "yes" : "no"; }

Verdict verdict_from(const std::string& s) {
  if (s == "pass") return Verdict::Pass;
  if (s == "fail") return Verdict::Fail;
  if (s == "inconclusive") return Verdict::Inconclusive;
  throw std::runtime_error("unknown verdict '" + s + "'");
}

json to_json(const ClassificationReport& r) {
  json findings = json::array();
  for (const auto& f : r.reduct_checks) {
    findings.push_back({{"clone_index", f.clone_index},
                        {"witness_term", f.witness_term},
                        {"tight", f.tight},
                        {"equals_candidate1", f.equals_candidate1},
                        {"equals_candidate2", f.equals_candidate2},
                        {"top_reduct_is_negation", f.top_reduct_is_negation},
                        {"bottom_reduct_is_identity", f.bottom_reduct_is_identity},
                        {"bottom_reduct_is_double_negation", f.bottom_reduct_is_double_negation},
                        {"top_reduct_rn", f.top_reduct_rn},
                        {"bottom_reduct_rn", f.bottom_reduct_rn},
                        {"inequalities_pass", f.inequalities_pass}});
  }
  json verdicts = json::array();
  for (const auto& v : r.theorem_verdicts) {
    verdicts.push_back({{"name", v.name}, {"verdict", to_string(v.verdict)}, {"detail", v.detail}});
  }
  // nlohmann::json keeps keys sorted, so the serialized field order is fixed.
  return {{"algebra_id", r.algebra_id},
          {"algebra_size", r.algebra_size},
          {"trivial_algebra", r.trivial_algebra},
          {"wlem", r.wlem},
          {"boolean", r.boolean},
          {"clone_size", r.clone_size},
          {"capped", r.capped},
          {"apartness_functions", r.apartness_functions},
          {"nontrivial_apartness_functions", r.nontrivial_apartness_functions},
          {"tight_apartness_functions", r.tight_apartness_functions},
          {"unique_equals_candidate2", r.unique_equals_candidate2},
          {"candidate1_is_apartness", r.candidate1_is_apartness},
          {"candidate2_is_apartness", r.candidate2_is_apartness},
          {"reduct_checks", findings},
          {"theorem_verdicts", verdicts}};
}

ClassificationReport from_json(const json& j) {
  ClassificationReport r;
  j.at("algebra_id").get_to(r.algebra_id);
  j.at("algebra_size").get_to(r.algebra_size);
  j.at("trivial_algebra").get_to(r.trivial_algebra);
  j.at("wlem").get_to(r.wlem);
  j.at("boolean").get_to(r.boolean);
  j.at("clone_size").get_to(r.clone_size);
  j.at("capped").get_to(r.capped);
  j.at("apartness_functions").get_to(r.apartness_functions);
  j.at("nontrivial_apartness_functions").get_to(r.nontrivial_apartness_functions);
  j.at("tight_apartness_functions").get_to(r.tight_apartness_functions);
  j.at("unique_equals_candidate2").get_to(r.unique_equals_candidate2);
  j.at("candidate1_is_apartness").get_to(r.candidate1_is_apartness);
  j.at("candidate2_is_apartness").get_to(r.candidate2_is_apartness);
  for (const auto& f : j.at("reduct_checks")) {
    ApartnessFinding a;
    f.at("clone_index").get_to(a.clone_index);
    f.at("witness_term").get_to(a.witness_term);
    f.at("tight").get_to(a.tight);
    f.at("equals_candidate1").get_to(a.equals_candidate1);
    f.at("equals_candidate2").get_to(a.equals_candidate2);
    f.at("top_reduct_is_negation").get_to(a.top_reduct_is_negation);
    f.at("bottom_reduct_is_identity").get_to(a.bottom_reduct_is_identity);
    f.at("bottom_reduct_is_double_negation").get_to(a.bottom_reduct_is_double_negation);
    f.at("top_reduct_rn").get_to(a.top_reduct_rn);
    f.at("bottom_reduct_rn").get_to(a.bottom_reduct_rn);
    f.at("inequalities_pass").get_to(a.inequalities_pass);
    r.reduct_checks.push_back(std::move(a));
  }
  for (const auto& v : j.at("theorem_verdicts")) {
    r.theorem_verdicts.push_back({v.at("name").get<std::string>(),
                                  verdict_from(v.at("verdict").get<std::string>()),
                                  v.at("detail").get<std::string>()});
  }
  return r;
}

}  // namespace

std::string format_report_text(const ClassificationReport& r) {
  std::ostringstream out;
  out << "algebra " << r.algebra_id << " (" << r.algebra_size << " elements)\n";
  if (r.trivial_algebra) {
    out << "  trivial algebra: skipped\n";
    return out.str();
  }
  out << "  weak excluded middle: " << yes_no(r.wlem) << "   boolean: " << yes_no(r.boolean) << "\n";
  out << "  clone: " << r.clone_size << " binary functions" << (r.capped ? " (capped)" : "") << "\n";
  out << "  apartness functions: " << r.apartness_functions
      << "   nontrivial: " << r.nontrivial_apartness_functions
      << "   tight: " << r.tight_apartness_functions << "\n";
  out << "  candidate 1 is an apartness: " << yes_no(r.candidate1_is_apartness)
      << "   candidate 2: " << yes_no(r.candidate2_is_apartness) << "\n";
  for (const auto& f : r.reduct_checks) {
    out << "  nontrivial #" << f.clone_index << ": " << f.witness_term << "\n";
    out << "    equals candidate 1: " << yes_no(f.equals_candidate1)
        << "   candidate 2: " << yes_no(f.equals_candidate2) << "   tight: " << yes_no(f.tight)
        << "\n";
    out << "    top reduct " << f.top_reduct_rn << ", bottom reduct " << f.bottom_reduct_rn
        << ", inequalities " << (f.inequalities_pass ? "hold" : "fail") << "\n";
  }
  for (const auto& v : r.theorem_verdicts) {
    out << "  [" << to_string(v.verdict) << "] " << v.name;
    if (!v.detail.empty()) out << ": " << v.detail;
    out << "\n";
  }
  return out.str();
}

std::string format_records(const std::vector<ClassificationReport>& reports) {
  std::string out = "schema: " + std::to_string(kRecordSchema) + "\n";
  for (const auto& r : reports) out += to_json(r).dump() + "\n";
  return out;
}

std::vector<ClassificationReport> parse_records(std::string_view text) {
  std::istringstream in{std::string(text)};
  std::string line;
  if (!std::getline(in, line) || line != "schema: " + std::to_string(kRecordSchema)) {
    throw std::runtime_error("records must start with 'schema: " + std::to_string(kRecordSchema) +
                             "'");
  }
  std::vector<ClassificationReport> reports;
  std::size_t line_number = 1;
  while (std::getline(in, line)) {
    ++line_number;
    if (line.empty()) continue;
    try {
      reports.push_back(from_json(json::parse(line)));
    } catch (const json::exception& e) {
      throw std::runtime_error("record on line " + std::to_string(line_number) + ": " + e.what());
    }
  }
  return reports;
}

}  // namespace apartness_lab
