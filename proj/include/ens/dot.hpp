#pragma once

#include <optional>
#include <string>

#include "ens/synthesis.hpp"

namespace ens {

struct DotOptions {
  /// Member states are drawn filled in gray.
  std::optional<Bitset> highlight;
  std::string name = "ts";
};

std::string export_dot(const TransitionSystem& ts, const DotOptions& options = {});

/// Places as circles (filled when marked), transitions as boxes.
std::string export_dot(const ElementaryNetSystem& net, const std::string& name = "net");

}  // namespace ens
