#pragma once

#include <compare>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "ens/common.hpp"

namespace ens {

struct Edge {
  StateId source;
  EventId event;
  StateId target;

  auto operator<=>(const Edge&) const = default;
};

/// A finite edge-labelled graph with an initial state.
///
/// The type itself only guarantees that every edge references declared
/// states and events; the five admissibility invariants (deterministic,
/// simple, loop-free, reachable, reduced) are checked by validate() so that
/// raw graphs such as reachability graphs can be represented too. Immutable
/// after construction.
class TransitionSystem {
 public:
  class Builder;

  /// Throws StructuralError on an empty state or event set, a dangling edge
  /// reference, an out-of-range initial state or duplicate names.
  TransitionSystem(std::vector<std::string> states, std::vector<std::string> events,
                   std::vector<Edge> edges, StateId initial);

  std::size_t state_count() const { return states_.size(); }
  std::size_t event_count() const { return events_.size(); }
  std::size_t edge_count() const { return edges_.size(); }

  const std::string& state_name(StateId s) const { return states_.at(s); }
  const std::string& event_name(EventId e) const { return events_.at(e); }
  const std::vector<std::string>& state_names() const { return states_; }
  const std::vector<std::string>& event_names() const { return events_; }

  std::optional<StateId> find_state(std::string_view name) const;
  std::optional<EventId> find_event(std::string_view name) const;
  /// Like find_state but throws StructuralError for unknown names.
  StateId state(std::string_view name) const;
  EventId event(std::string_view name) const;

  StateId initial() const { return initial_; }
  std::span<const Edge> edges() const { return edges_; }
  const Edge& edge(std::size_t index) const { return edges_.at(index); }

  /// Edge indices, in edge order.
  std::span<const std::size_t> out_edges(StateId s) const { return out_.at(s); }
  std::span<const std::size_t> in_edges(StateId s) const { return in_.at(s); }
  std::span<const std::size_t> event_edges(EventId e) const { return by_event_.at(e); }

  /// First e-labelled successor of s.
  std::optional<StateId> successor(StateId s, EventId e) const;
  bool enables(StateId s, EventId e) const { return successor(s, e).has_value(); }

  bool operator==(const TransitionSystem& other) const;

 private:
  std::vector<std::string> states_;
  std::vector<std::string> events_;
  std::vector<Edge> edges_;
  StateId initial_;
  std::unordered_map<std::string, StateId> state_index_;
  std::unordered_map<std::string, EventId> event_index_;
  std::vector<std::vector<std::size_t>> out_;
  std::vector<std::vector<std::size_t>> in_;
  std::vector<std::vector<std::size_t>> by_event_;
};

/// Declares states and events implicitly by first use, in call order.
class TransitionSystem::Builder {
 public:
  StateId state(std::string_view name);
  EventId event(std::string_view name);
  Builder& edge(std::string_view source, std::string_view event, std::string_view target);
  Builder& initial(std::string_view name);
  bool has_initial() const { return initial_.has_value(); }

  /// Throws StructuralError when no state or initial state was declared.
  TransitionSystem build() const;

 private:
  std::vector<std::string> states_;
  std::vector<std::string> events_;
  std::unordered_map<std::string, StateId> state_index_;
  std::unordered_map<std::string, EventId> event_index_;
  std::vector<Edge> edges_;
  std::optional<StateId> initial_;
};

/// Builds s0 -w[0]-> s1 -w[1]-> ... with states named `<prefix><i>`.
TransitionSystem make_chain(const std::vector<std::string>& word, std::string_view prefix = "s");

enum class Invariant { deterministic, simple, loop_free, reachable, reduced };

std::string_view to_string(Invariant inv);

struct Violation {
  Invariant invariant;
  std::vector<StateId> states;
  std::vector<EventId> events;
  std::vector<std::size_t> edges;
};

/// All violated invariants, not just the first one.
struct ValidationReport {
  std::vector<Violation> violations;

  bool ok() const { return violations.empty(); }
  bool violates(Invariant inv) const;
};

ValidationReport validate(const TransitionSystem& ts);

/// Human-readable listing, one violation per line.
std::string describe(const TransitionSystem& ts, const ValidationReport& report);

struct TsClass {
  std::size_t manifoldness = 0;  // k: max edges per event
  std::size_t degree = 0;        // g: max distinct predecessors/successors per state
  bool linear = false;

  bool operator==(const TsClass&) const = default;
};

TsClass classify(const TransitionSystem& ts);

bool is_linear(const TransitionSystem& ts);

/// States s_0..s_t of a linear TS in chain order. Throws ContractError otherwise.
std::vector<StateId> linear_states(const TransitionSystem& ts);

/// Events e_1..e_t of a linear TS in chain order. Throws ContractError otherwise.
std::vector<EventId> linear_word(const TransitionSystem& ts);

/// Same as linear_word, as names.
std::vector<std::string> linear_word_names(const TransitionSystem& ts);

bool is_identifier(std::string_view text);

/// Parses the line-based `.ts` format. Throws ParseError with a line number.
TransitionSystem parse_ts(std::string_view text);

/// Canonical `.ts` text; parse_ts(serialize_ts(ts)) == ts.
std::string serialize_ts(const TransitionSystem& ts);

namespace detail {
/// Shared by the `.ts` and `.union` readers: handles one body line
/// (`initial`, `edge`, `event`, `state`) of the TS grammar. Returns false if
/// the keyword is not part of the grammar.
bool parse_ts_line(std::span<const std::string_view> words, std::size_t line,
                   TransitionSystem::Builder& builder);
std::vector<std::string_view> split_words(std::string_view line);
std::string_view strip_comment(std::string_view line);
}  // namespace detail

}  // namespace ens
