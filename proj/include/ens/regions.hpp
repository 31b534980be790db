#pragma once

#include <chrono>
#include <cstdint>
#include <limits>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "ens/system.hpp"

namespace ens {

namespace detail {
class NogoodSearch;
}

enum class Sign : std::int8_t { exit = -1, obey = 0, enter = 1 };

inline int value(Sign s) { return static_cast<int>(s); }
inline Sign negate(Sign s) { return static_cast<Sign>(-value(s)); }

/// A set of states together with its (unique) signature.
///
/// Regions are canonicalized by membership; the signature is derived from the
/// membership when the region is created and never set independently, so an
/// inconsistent pair cannot be constructed.
class Region {
 public:
  const Bitset& membership() const { return membership_; }
  bool contains(StateId s) const { return membership_.test(s); }
  Sign sig(EventId e) const { return signature_.at(e); }
  std::span<const Sign> signature() const { return signature_; }
  std::size_t state_count() const { return membership_.size(); }

  std::vector<EventId> events_with(Sign s) const;
  std::vector<EventId> exits() const { return events_with(Sign::exit); }
  std::vector<EventId> enters() const { return events_with(Sign::enter); }
  std::vector<StateId> members() const;

  bool operator==(const Region& other) const { return membership_ == other.membership_; }
  bool operator<(const Region& other) const { return membership_ < other.membership_; }

 private:
  Region(Bitset membership, std::vector<Sign> signature)
      : membership_(std::move(membership)), signature_(std::move(signature)) {}

  friend std::optional<Region> check_region(const System& sys, const Bitset& membership);
  friend Region complement(const Region& region);

  Bitset membership_;
  std::vector<Sign> signature_;
};

/// The signature of `membership` if it is a region of `sys`. Events that
/// label no edge obey.
std::optional<Region> check_region(const System& sys, const Bitset& membership);

/// Builds the membership vector from state names, then checks it.
std::optional<Region> check_region(const System& sys, std::span<const std::string> members);

Region complement(const Region& region);

/// All regions by brute force over every subset, ordered by membership.
/// Refuses (ContractError) systems with more than `cap` states.
std::vector<Region> enumerate_regions(const System& sys, std::size_t cap = 22);

/// Partial assignment of memberships and signatures that a region must
/// respect. Fixing the same state or event twice with different values is
/// rejected immediately.
class RegionConstraint {
 public:
  RegionConstraint& fix_state(StateId s, bool member);
  RegionConstraint& fix_event(EventId e, Sign sig);

  const std::vector<std::pair<StateId, bool>>& states() const { return states_; }
  const std::vector<std::pair<EventId, Sign>>& events() const { return events_; }

 private:
  std::vector<std::pair<StateId, bool>> states_;
  std::vector<std::pair<EventId, Sign>> events_;
};

/// Constraint-propagation region search.
///
/// Every edge s -e-> t is the ternary constraint R(t) = R(s) + sig(e); the
/// solver keeps it arc consistent and backtracks on the unassigned event with
/// the most occurrences, trying -1, 0, +1 in that order, then on remaining
/// states in declaration order. Results are therefore deterministic.
/// `solve` runs the same order with conflict learning, keeping what it learned
/// for later queries on the same instance.
///
/// An instance carries mutable search state and must not be shared between
/// concurrent callers; separate instances over one System are independent.
class RegionSolver {
 public:
  using Clock = std::chrono::steady_clock;

  explicit RegionSolver(const System& sys);
  ~RegionSolver();
  RegionSolver(RegionSolver&&) noexcept;

  std::optional<Region> solve(const RegionConstraint& constraint);
  std::vector<Region> solve_all(const RegionConstraint& constraint,
                                std::size_t limit = std::numeric_limits<std::size_t>::max());

  /// Searches past the deadline throw Timeout.
  void set_deadline(std::optional<Clock::time_point> deadline) { deadline_ = deadline; }

  const System& system() const { return sys_; }
  std::size_t decisions() const { return decisions_; }

 private:
  bool load(const RegionConstraint& constraint);
  bool assign(std::size_t var, std::uint8_t domain);
  bool propagate();
  void undo(std::size_t mark);
  std::optional<std::size_t> pick_variable() const;
  void search(std::vector<Region>& out, std::size_t limit);
  Region extract() const;

  const System& sys_;
  std::size_t state_vars_;
  std::vector<std::uint8_t> domain_;  // states: bit v = value v; events: bit (sig + 1)
  std::vector<std::pair<std::size_t, std::uint8_t>> trail_;
  std::vector<std::size_t> queue_;
  std::vector<char> queued_;
  std::vector<EventId> event_order_;
  std::optional<Clock::time_point> deadline_;
  std::size_t decisions_ = 0;
  std::unique_ptr<detail::NogoodSearch> learner_;
};

std::optional<Region> solve_region(const System& sys, const RegionConstraint& constraint);
std::vector<Region> solve_all_regions(const System& sys, const RegionConstraint& constraint,
                                      std::size_t limit = std::numeric_limits<std::size_t>::max());

/// Signature aggregation over a linear TS: the sum of sig(e_{i+1})..sig(e_j),
/// which equals R(s_j) - R(s_i). `region` must be a region of System(ts).
int aggregate_signature(const Region& region, const TransitionSystem& ts, std::size_t i, std::size_t j);

/// `region: {a, b}` newline `sig: e=-1, f=+1` (non-obeying events only).
std::string format_region(const System& sys, const Region& region);

}  // namespace ens
