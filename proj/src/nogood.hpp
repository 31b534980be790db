#pragma once

#include <chrono>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "ens/system.hpp"

namespace ens::detail {

/// Conflict-driven search over a boolean image of the region constraints:
/// one variable per state (membership) and one per event and signature value.
/// Every edge contributes the clauses of R(t) = R(s) + sig(e), whose unit
/// propagation is exactly the arc consistency of the edge equation. Nogoods
/// learned from conflicts follow from the edge clauses alone, so they are kept
/// across queries; the query itself enters as assumptions.
///
/// Decisions follow the fixed order of the backtracking search: events by
/// descending occurrence count (value -1, then 0, then +1), then states in
/// declaration order (outside first).
class NogoodSearch {
 public:
  using Lit = std::uint32_t;
  using Clock = std::chrono::steady_clock;

  NogoodSearch(const System& sys, std::span<const EventId> event_order);

  Lit member(StateId s, bool in) const { return lit(s, !in); }
  Lit signature(EventId e, int sig) const { return lit(state_count_ + 3 * e + static_cast<std::uint32_t>(sig + 1), false); }

  /// State memberships of a region satisfying every assumption, if any.
  /// Throws Timeout past the deadline.
  std::optional<std::vector<bool>> solve(std::span<const Lit> assumptions, std::optional<Clock::time_point> deadline,
                                         std::size_t& decisions);

 private:
  static constexpr std::uint32_t kNone = UINT32_MAX;

  static Lit lit(std::uint32_t var, bool negated) { return 2 * var + (negated ? 1 : 0); }
  static std::uint32_t var(Lit l) { return l >> 1; }

  // 1 true, 0 false, -1 unassigned.
  int value(Lit l) const {
    const int v = assign_[var(l)];
    return v < 0 ? -1 : v ^ static_cast<int>(l & 1);
  }

  void add_clause(std::vector<Lit> lits, bool learnt);
  void attach(std::uint32_t c);
  void enqueue(Lit l, std::uint32_t reason);
  std::uint32_t propagate();
  void analyze(std::uint32_t conflict, std::vector<Lit>& learnt, std::uint32_t& back_level);
  void backtrack(std::uint32_t level);
  std::uint32_t level() const { return static_cast<std::uint32_t>(trail_lim_.size()); }
  std::optional<Lit> next_decision() const;
  void reduce();

  std::uint32_t state_count_;
  std::vector<EventId> event_order_;
  std::vector<std::vector<Lit>> clauses_;
  std::vector<char> learnt_;
  std::size_t learnt_count_ = 0;
  std::vector<std::vector<std::uint32_t>> watches_;
  std::vector<std::int8_t> assign_;
  std::vector<std::uint32_t> level_;
  std::vector<std::uint32_t> reason_;
  std::vector<Lit> trail_;
  std::vector<std::size_t> trail_lim_;
  std::size_t head_ = 0;
  std::vector<char> seen_;
  bool inconsistent_ = false;
};

}  // namespace ens::detail
