#pragma once

#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "ens/regions.hpp"
#include "ens/system.hpp"

namespace ens {

/// An ordered collection of state-disjoint TSs that may share events.
class TsUnion {
 public:
  /// Names default to `A<i>`. Throws StructuralError on a state clash or an
  /// empty component list.
  explicit TsUnion(std::vector<TransitionSystem> components, std::vector<std::string> names = {});

  std::size_t size() const { return components_.size(); }
  const std::vector<TransitionSystem>& components() const { return components_; }
  const TransitionSystem& component(std::size_t i) const { return components_.at(i); }
  const std::vector<std::string>& names() const { return names_; }
  std::optional<std::size_t> find_component(std::string_view name) const;

  /// The disconnected graph whose regions are the regions of the union.
  const System& system() const { return system_; }

  bool operator==(const TsUnion& other) const {
    return names_ == other.names_ && components_ == other.components_;
  }

 private:
  std::vector<TransitionSystem> components_;
  std::vector<std::string> names_;
  System system_;
};

TsUnion make_union(std::vector<TransitionSystem> components);

/// U(U_1, ..., U_n) as one flat list, component order preserved.
TsUnion flatten(std::span<const TsUnion> unions);

/// terminals[i] is the state of component i that the connector to component
/// i + 1 leaves from; the entry for the last component is ignored.
struct JoinPlan {
  std::vector<std::optional<std::string>> terminals;
};

/// Uses the final state of every linear component. Throws ContractError for
/// a non-linear component other than the last one.
JoinPlan default_plan(const TsUnion& u);

/// Connector names: state `z+<i>`, events `y1+<i>` and `y2+<i>` for
/// i = 1..n-1, wired as t^{i-1} -y1+i-> z+i -y2+i-> initial of component i.
/// Throws ContractError on a missing or unknown terminal or a connector name
/// already used by the union.
TransitionSystem join(const TsUnion& u, const JoinPlan& plan);
TransitionSystem join(const TsUnion& u);

struct LiftedRegion {
  TsUnion extended;
  Region region;
};

/// Extends a region of `u` to U(u, extra...) keeping its signature; events new
/// to the union obey. Each extra component must be linear with at most one
/// edge whose event has a non-zero signature in `region`; the component joins
/// the region from after that edge if the event enters, up to and including
/// its source otherwise. Throws ContractError when the precondition fails.
LiftedRegion lift_region(const TsUnion& u, const Region& region, std::span<const TransitionSystem> extra);

/// Prefix `<event>:<state>:` for rectification.
std::string rectify_prefix(std::string_view event, std::string_view state);

/// Renames every state and event x to `<event>:<state>:x`; component names
/// get the same prefix.
TsUnion rectify(const TsUnion& u, std::string_view event, std::string_view state);
TransitionSystem rectify(const TransitionSystem& ts, std::string_view prefix);

/// Inverse of rectify. Throws ContractError on a name without the prefix.
TsUnion strip(const TsUnion& u, std::string_view event, std::string_view state);

/// Transports a region across a renaming that preserves state and event order.
Region transport(const Region& region, const System& target);

struct UnionFile {
  TsUnion components;
  JoinPlan plan;
};

/// `.union` text: `component <name> <path>` or `component <name> inline`
/// followed by `.ts` body lines and `end`; `terminal <component> <state>`
/// lines form the join plan. Relative paths resolve against `base`.
UnionFile parse_union(std::string_view text, const std::filesystem::path& base = {});

/// Writes every component inline; terminals follow the components.
std::string serialize_union(const TsUnion& u, const JoinPlan& plan = {});

}  // namespace ens
