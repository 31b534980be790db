#pragma once

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "ens/regions.hpp"

namespace ens {

/// I_A: for edge k (event e_{k+1}, 0-based), the index of the other edge with
/// the same event, or -1.
class SecondOccurrenceIndex {
 public:
  /// Throws ContractError unless `ts` is linear and 2-fold.
  explicit SecondOccurrenceIndex(const TransitionSystem& ts);

  std::int64_t operator()(std::size_t k) const { return partner_[k]; }
  std::size_t size() const { return partner_.size(); }
  /// The event of edge k.
  EventId event(std::size_t k) const { return word_[k]; }
  const std::vector<EventId>& word() const { return word_; }

 private:
  std::vector<EventId> word_;
  std::vector<std::int64_t> partner_;
};

/// At most one exiting and one entering event; both empty means failure.
struct SeparatorResult {
  std::optional<EventId> exit;
  std::optional<EventId> enter;

  bool failed() const { return !exit && !enter; }
  bool operator==(const SeparatorResult&) const = default;
};

/// Some (i, j), i < j, such that every event of s_i..s_j occurs exactly twice
/// inside it; the first in (i, j) order. Throws ContractError unless `ts` is
/// linear and 2-fold.
std::optional<std::pair<std::size_t, std::size_t>> find_exact_2fold_subsequence(const TransitionSystem& ts);

/// The separating pair for chain states s_i and s_j (0 <= i < j <= n). A
/// unique event between them exits alone; otherwise an event with one
/// occurrence left of s_i and one between them exits and a suitable event
/// enters; otherwise the same with the occurrence right of s_j.
SeparatorResult separator(const SecondOccurrenceIndex& index, std::size_t i, std::size_t j);

/// The region of the chain whose signature is given by `result`, if any.
std::optional<Region> induced_region(const TransitionSystem& ts, const SeparatorResult& result);

struct Linear2Verdict {
  bool holds = true;
  /// One entry per state pair (i < j) of the chain, first index ascending,
  /// second descending; stops at the first failure unless exhaustive.
  std::vector<std::pair<std::pair<std::size_t, std::size_t>, SeparatorResult>> witnesses;
  std::optional<std::pair<std::size_t, std::size_t>> counterexample;
};

/// SSP of a linear 2-fold TS by running separator on every state pair. A pair
/// fails when the result is empty or does not induce a region separating it.
Linear2Verdict linear2_ssp(const TransitionSystem& ts, bool exhaustive = false);

}  // namespace ens
