#include "loopshort/report.hpp"

#include <sstream>

namespace loopshort {

nlohmann::json verdict_to_json(const Verdict& v, double wall_seconds) {
  nlohmann::json j;
  j["schema"] = kReportSchema;
  j["property"] = v.property;
  j["group"] = v.group;
  j["params"] = v.params;
  j["outcome"] = v.holds ? "holds-up-to-bound" : "counterexample";
  j["search_space"] = v.search_space;
  j["witness"] = v.witness;
  j["search_stats"] = {{"items_examined", v.stats.items_examined},
                       {"dp_transitions", v.stats.dp_transitions}};
  j["timing"] = {{"wall_seconds", wall_seconds}};
  return j;
}

int verdict_exit_code(const Verdict& v) { return v.holds ? kExitHolds : kExitCounterexample; }

std::string csv_header() {
  return "property,group,params,outcome,witness,items_examined,wall_seconds";
}

std::string csv_row(const Verdict& v, double wall_seconds) {
  std::ostringstream out;
  out << v.property << "," << v.group << ",";
  bool first = true;
  for (const auto& [key, value] : v.params) {
    if (!first) out << ";";
    out << key << "=" << value;
    first = false;
  }
  out << "," << (v.holds ? "holds-up-to-bound" : "counterexample") << ",";
  first = true;
  for (const auto& w : v.witness) {
    if (!first) out << ";";
    out << w;
    first = false;
  }
  out << "," << v.stats.items_examined << "," << wall_seconds;
  return out.str();
}

}  // namespace loopshort
