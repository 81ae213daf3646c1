#include "modred/common.hpp"

#include <cstdlib>

namespace modred {

Budget Budget::quick() {
  Budget b;
  b.max_set_card = 2;
  b.max_chain_dim = 1;
  b.max_chain_degree = 1;
  b.max_hom_size = 20000;
  b.max_hom_space_dim = 12;
  b.max_objects = 512;
  b.max_diagrams = 512;
  b.max_maps = 512;
  b.max_tuples = 200000;
  b.max_search = 200000;
  return b;
}

Budget Budget::desk() { return Budget{}; }

Budget Budget::thorough() {
  Budget b;
  b.max_set_card = 4;
  b.max_chain_dim = 3;
  b.max_chain_degree = 3;
  b.max_hom_size = 2000000;
  b.max_hom_space_dim = 21;
  b.max_objects = 65536;
  b.max_diagrams = 65536;
  b.max_maps = 65536;
  b.max_tuples = 20000000;
  b.max_search = 20000000;
  return b;
}

Budget Budget::from_env() {
  const char* p = std::getenv("MODRED_BUDGET_PROFILE");
  if (!p) return desk();
  std::string s(p);
  if (s == "quick") return quick();
  if (s == "thorough") return thorough();
  if (s == "desk" || s.empty()) return desk();
  throw ValidationError("unknown MODRED_BUDGET_PROFILE '" + s +
                        "' (expected quick, desk, or thorough)");
}

std::string join(const std::vector<std::string>& parts, const std::string& sep) {
  std::string out;
  for (size_t i = 0; i < parts.size(); ++i) {
    if (i) out += sep;
    out += parts[i];
  }
  return out;
}

}  // namespace modred
