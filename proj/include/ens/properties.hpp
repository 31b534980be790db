#pragma once

#include <chrono>
#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "ens/regions.hpp"

namespace ens {

struct StatePair {
  StateId first;
  StateId second;
  bool operator==(const StatePair&) const = default;
};

/// `event` is not enabled at `state`.
struct EventState {
  EventId event;
  StateId state;
  bool operator==(const EventState&) const = default;
};

using SeparationQuery = std::variant<StatePair, EventState>;

bool separates(const Region& r, StateId s, StateId t);
bool inhibits(const Region& r, EventId e, StateId s);
bool answers(const Region& r, const SeparationQuery& q);

/// `(s0, s4)` or `(k, m6)`.
std::string format_query(const System& sys, const SeparationQuery& q);

struct Verdict {
  bool holds = true;
  /// Witness regions in discovery order. When the property holds they answer
  /// every mandatory query.
  std::vector<Region> regions;
  /// The first failing query, or all of them in exhaustive mode.
  std::vector<SeparationQuery> counterexamples;
  /// Number of mandatory queries examined.
  std::size_t checked = 0;
  /// Number of solver calls; the rest were answered by earlier witnesses.
  std::size_t solver_calls = 0;

  std::optional<SeparationQuery> counterexample() const {
    if (counterexamples.empty()) return std::nullopt;
    return counterexamples.front();
  }
  /// First region in `regions` answering `q`.
  const Region* witness(const SeparationQuery& q) const;
};

struct DecideOptions {
  bool exhaustive = false;
  std::optional<std::chrono::steady_clock::time_point> deadline;
};

/// A region with R(s) = 1 and R(t) = 0, if any region tells them apart.
/// Throws ContractError if s == t or the states lie in different components.
std::optional<Region> separable(const System& sys, StateId s, StateId t);

/// A region with sig(e) = -1 and R(s) = 0, if e is inhibitable at s.
/// Throws ContractError if s enables e.
std::optional<Region> inhibitable(const System& sys, EventId e, StateId s);

/// Pairs are examined per component, first state ascending and second state
/// descending, and only when no witness found so far separates them.
Verdict has_ssp(const System& sys, const DecideOptions& options = {});

/// Events outer, states inner, declaration order; states enabling the event
/// are skipped.
Verdict has_essp(const System& sys, const DecideOptions& options = {});

/// ESSP first, then SSP seeded with the ESSP witnesses.
Verdict is_feasible(const System& sys, const DecideOptions& options = {});

/// Throw ContractError if some element is not a region of sys.
bool is_ssp_witness(const System& sys, std::span<const Region> regions);
bool is_essp_witness(const System& sys, std::span<const Region> regions);

}  // namespace ens
