#include "ens/system.hpp"

namespace ens {

System::System(const TransitionSystem& ts) {
  add_component(ts);
  index();
}

System::System(std::span<const TransitionSystem> components) {
  if (components.empty()) throw StructuralError("union has no components");
  for (const auto& c : components) add_component(c);
  index();
}

void System::add_component(const TransitionSystem& ts) {
  const auto offset = static_cast<StateId>(state_names_.size());
  const std::size_t c = component_begin_.size();
  component_begin_.push_back(offset);
  component_initial_.push_back(offset + ts.initial());
  for (const auto& name : ts.state_names()) {
    if (!state_index_.emplace(name, static_cast<StateId>(state_names_.size())).second)
      throw StructuralError("state '" + name + "' occurs in more than one component");
    state_names_.push_back(name);
    component_.push_back(c);
  }
  std::vector<EventId> local(ts.event_count());
  for (EventId e = 0; e < ts.event_count(); ++e) {
    const auto& name = ts.event_name(e);
    auto [it, inserted] = event_index_.emplace(name, static_cast<EventId>(event_names_.size()));
    if (inserted) event_names_.push_back(name);
    local[e] = it->second;
  }
  for (const Edge& ed : ts.edges()) edges_.push_back({offset + ed.source, local[ed.event], offset + ed.target});
}

void System::index() {
  out_.assign(state_count(), {});
  in_.assign(state_count(), {});
  by_event_.assign(event_count(), {});
  for (std::size_t i = 0; i < edges_.size(); ++i) {
    out_[edges_[i].source].push_back(i);
    in_[edges_[i].target].push_back(i);
    by_event_[edges_[i].event].push_back(i);
  }
}

std::optional<StateId> System::find_state(std::string_view name) const {
  auto it = state_index_.find(std::string(name));
  if (it == state_index_.end()) return std::nullopt;
  return it->second;
}

std::optional<EventId> System::find_event(std::string_view name) const {
  auto it = event_index_.find(std::string(name));
  if (it == event_index_.end()) return std::nullopt;
  return it->second;
}

StateId System::state(std::string_view name) const {
  if (auto s = find_state(name)) return *s;
  throw StructuralError("unknown state '" + std::string(name) + "'");
}

EventId System::event(std::string_view name) const {
  if (auto e = find_event(name)) return *e;
  throw StructuralError("unknown event '" + std::string(name) + "'");
}

bool System::enables(StateId s, EventId e) const {
  for (std::size_t i : out_.at(s))
    if (edges_[i].event == e) return true;
  return false;
}

}  // namespace ens
