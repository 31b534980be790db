#pragma once

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "ens/ts.hpp"

namespace ens {

/// Flattened view of one TS or a union of TSs: the disconnected graph whose
/// regions are exactly the regions of the union. Component state ranges are
/// contiguous and follow component order; events shared by name across
/// components are merged. All region machinery runs on this type.
class System {
 public:
  explicit System(const TransitionSystem& ts);
  explicit System(std::span<const TransitionSystem> components);

  std::size_t state_count() const { return state_names_.size(); }
  std::size_t event_count() const { return event_names_.size(); }
  std::size_t edge_count() const { return edges_.size(); }
  std::size_t component_count() const { return component_begin_.size(); }

  const std::string& state_name(StateId s) const { return state_names_.at(s); }
  const std::string& event_name(EventId e) const { return event_names_.at(e); }
  std::optional<StateId> find_state(std::string_view name) const;
  std::optional<EventId> find_event(std::string_view name) const;
  StateId state(std::string_view name) const;
  EventId event(std::string_view name) const;

  std::span<const Edge> edges() const { return edges_; }
  std::span<const std::size_t> event_edges(EventId e) const { return by_event_.at(e); }
  std::span<const std::size_t> out_edges(StateId s) const { return out_.at(s); }
  std::span<const std::size_t> in_edges(StateId s) const { return in_.at(s); }

  std::size_t component_of(StateId s) const { return component_.at(s); }
  StateId component_begin(std::size_t c) const { return component_begin_.at(c); }
  StateId component_end(std::size_t c) const {
    return c + 1 < component_begin_.size() ? component_begin_[c + 1] : static_cast<StateId>(state_count());
  }
  StateId component_initial(std::size_t c) const { return component_initial_.at(c); }

  bool enables(StateId s, EventId e) const;

 private:
  void add_component(const TransitionSystem& ts);
  void index();

  std::vector<std::string> state_names_;
  std::vector<std::string> event_names_;
  std::unordered_map<std::string, StateId> state_index_;
  std::unordered_map<std::string, EventId> event_index_;
  std::vector<Edge> edges_;
  std::vector<std::size_t> component_;
  std::vector<StateId> component_begin_;
  std::vector<StateId> component_initial_;
  std::vector<std::vector<std::size_t>> out_, in_, by_event_;
};

}  // namespace ens
