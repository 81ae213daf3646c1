#include "modred/report.hpp"

namespace modred {

std::string CheckReport::text() const {
  std::string out = "== " + title + " ==\n";
  for (const auto& it : items) {
    out += (it.pass ? "[pass] " : "[FAIL] ") + it.label;
    if (!it.pass && !it.witness.empty()) out += "\n       witness: " + it.witness;
    out += "\n";
  }
  out += ok() ? "result: pass\n" : "result: FAIL\n";
  return out;
}

nlohmann::json CheckReport::structured() const {
  nlohmann::json j;
  j["title"] = title;
  j["ok"] = ok();
  j["checks"] = nlohmann::json::array();
  for (const auto& it : items) {
    nlohmann::json c;
    c["label"] = it.label;
    c["pass"] = it.pass;
    if (!it.pass) c["witness"] = it.witness;
    j["checks"].push_back(c);
  }
  return j;
}

}  // namespace modred
