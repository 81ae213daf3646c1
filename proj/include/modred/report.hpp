#pragma once

#include <string>
#include <vector>

#include <json.hpp>

namespace modred {

// One named check with an optional failure witness. Reports aggregate these;
// the structured form is canonical (sorted keys, insertion-ordered items) so
// repeated runs serialize byte-identically.
struct CheckItem {
  std::string label;
  bool pass = false;
  std::string witness;  // empty on pass
};

struct CheckReport {
  std::string title;
  std::vector<CheckItem> items = {};

  void add(std::string label, bool pass, std::string witness = "") {
    items.push_back({std::move(label), pass, std::move(witness)});
  }
  void merge(const CheckReport& other) {
    for (const auto& it : other.items)
      items.push_back({other.title + "/" + it.label, it.pass, it.witness});
  }
  bool ok() const {
    for (const auto& it : items)
      if (!it.pass) return false;
    return true;
  }
  std::string text() const;
  nlohmann::json structured() const;
};

}  // namespace modred
