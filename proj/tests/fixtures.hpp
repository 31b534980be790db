#pragma once

#include <string>
#include <vector>

#include "ens/ts.hpp"

namespace ens::testing {

inline TransitionSystem master() {
  return make_chain({"k", "z_0", "o_0", "k", "h", "z_0", "v_1", "k"}, "m");
}

inline TransitionSystem chain(std::initializer_list<const char*> word) {
  return make_chain(std::vector<std::string>(word.begin(), word.end()));
}

/// Duplicator with key copies k_0..k_2, accordance a_0 and wire w_0.
inline TransitionSystem grade2_duplicator() {
  return parse_ts(R"(.ts
initial d0
edge d0 k_1 d1
edge d1 v_0 d2
edge d2 k_0 d3
edge d3 v_1 d4
edge d4 w_0 d0
edge d4 k_2 d1
edge d1 a_0 d3
)");
}

}  // namespace ens::testing
