#include "ens/regions.hpp"

#include "nogood.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <sstream>

namespace ens {

std::vector<EventId> Region::events_with(Sign s) const {
  std::vector<EventId> out;
  for (EventId e = 0; e < signature_.size(); ++e)
    if (signature_[e] == s) out.push_back(e);
  return out;
}

std::vector<StateId> Region::members() const {
  std::vector<StateId> out;
  for (auto i = membership_.find_first(); i != Bitset::npos; i = membership_.find_next(i))
    out.push_back(static_cast<StateId>(i));
  return out;
}

std::optional<Region> check_region(const System& sys, const Bitset& membership) {
  if (membership.size() != sys.state_count())
    throw ContractError("membership has " + std::to_string(membership.size()) + " bits, system has " +
                        std::to_string(sys.state_count()) + " states");
  std::vector<Sign> sig(sys.event_count(), Sign::obey);
  std::vector<char> known(sys.event_count(), 0);
  for (const Edge& ed : sys.edges()) {
    const int d = int(membership.test(ed.target)) - int(membership.test(ed.source));
    if (!known[ed.event]) {
      known[ed.event] = 1;
      sig[ed.event] = static_cast<Sign>(d);
    } else if (value(sig[ed.event]) != d) {
      return std::nullopt;
    }
  }
  return Region(membership, std::move(sig));
}

std::optional<Region> check_region(const System& sys, std::span<const std::string> members) {
  Bitset m(sys.state_count());
  for (const auto& name : members) m.set(sys.state(name));
  return check_region(sys, m);
}

Region complement(const Region& region) {
  std::vector<Sign> sig(region.signature_.size());
  std::transform(region.signature_.begin(), region.signature_.end(), sig.begin(), negate);
  return Region(~region.membership_, std::move(sig));
}

std::vector<Region> enumerate_regions(const System& sys, std::size_t cap) {
  const std::size_t n = sys.state_count();
  if (n > cap)
    throw ContractError("enumeration refused: " + std::to_string(n) + " states exceed the cap of " +
                        std::to_string(cap) + "; use the region solver");
  if (n >= 63) throw ContractError("enumeration refused: too many states");
  std::vector<Region> regions;
  const auto edges = sys.edges();
  std::vector<int> sig(sys.event_count());
  std::vector<char> known(sys.event_count());
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); ++mask) {
    std::fill(known.begin(), known.end(), 0);
    bool ok = true;
    for (const Edge& ed : edges) {
      const int d = int((mask >> ed.target) & 1) - int((mask >> ed.source) & 1);
      if (!known[ed.event]) {
        known[ed.event] = 1;
        sig[ed.event] = d;
      } else if (sig[ed.event] != d) {
        ok = false;
        break;
      }
    }
    if (!ok) continue;
    Bitset m(n, mask);
    regions.push_back(*check_region(sys, m));
  }
  return regions;
}

RegionConstraint& RegionConstraint::fix_state(StateId s, bool member) {
  for (auto& [st, v] : states_) {
    if (st != s) continue;
    if (v != member) throw ContractError("state " + std::to_string(s) + " fixed to conflicting memberships");
    return *this;
  }
  states_.emplace_back(s, member);
  return *this;
}

RegionConstraint& RegionConstraint::fix_event(EventId e, Sign sig) {
  for (auto& [ev, v] : events_) {
    if (ev != e) continue;
    if (v != sig) throw ContractError("event " + std::to_string(e) + " fixed to conflicting signatures");
    return *this;
  }
  events_.emplace_back(e, sig);
  return *this;
}

namespace {

// Arc-consistency table for R(t) = R(s) + sig(e). Index: ds | de << 2 | dt << 5
// with ds, dt over {0, 1} and de over {-1, 0, +1} as bit sets; the result packs
// the supported sub-domains the same way.
constexpr std::array<std::uint8_t, 128> make_revise_table() {
  std::array<std::uint8_t, 128> table{};
  for (unsigned ds = 0; ds < 4; ++ds)
    for (unsigned de = 0; de < 8; ++de)
      for (unsigned dt = 0; dt < 4; ++dt) {
        unsigned ns = 0, ne = 0, nt = 0;
        for (int rs = 0; rs < 2; ++rs) {
          if (!(ds & (1u << rs))) continue;
          for (int sg = -1; sg <= 1; ++sg) {
            if (!(de & (1u << (sg + 1)))) continue;
            const int rt = rs + sg;
            if (rt < 0 || rt > 1 || !(dt & (1u << rt))) continue;
            ns |= 1u << rs;
            ne |= 1u << (sg + 1);
            nt |= 1u << rt;
          }
        }
        table[ds | (de << 2) | (dt << 5)] = static_cast<std::uint8_t>(ns | (ne << 2) | (nt << 5));
      }
  return table;
}

constexpr auto kRevise = make_revise_table();

constexpr std::uint8_t kAllStates = 0b11;
constexpr std::uint8_t kAllSigns = 0b111;

std::uint8_t sign_bit(Sign s) { return static_cast<std::uint8_t>(1u << (value(s) + 1)); }

}  // namespace

RegionSolver::RegionSolver(const System& sys)
    : sys_(sys),
      state_vars_(sys.state_count()),
      domain_(sys.state_count() + sys.event_count()),
      queued_(sys.edge_count(), 0) {
  event_order_.resize(sys.event_count());
  for (EventId e = 0; e < sys.event_count(); ++e) event_order_[e] = e;
  std::stable_sort(event_order_.begin(), event_order_.end(), [&](EventId a, EventId b) {
    return sys.event_edges(a).size() > sys.event_edges(b).size();
  });
}

RegionSolver::~RegionSolver() = default;
RegionSolver::RegionSolver(RegionSolver&&) noexcept = default;

bool RegionSolver::assign(std::size_t var, std::uint8_t domain) {
  const std::uint8_t old = domain_[var];
  const std::uint8_t next = old & domain;
  if (next == 0) return false;
  if (next == old) return true;
  trail_.emplace_back(var, old);
  domain_[var] = next;
  auto enqueue = [&](std::span<const std::size_t> edges) {
    for (std::size_t i : edges) {
      if (!queued_[i]) {
        queued_[i] = 1;
        queue_.push_back(i);
      }
    }
  };
  if (var < state_vars_) {
    enqueue(sys_.out_edges(static_cast<StateId>(var)));
    enqueue(sys_.in_edges(static_cast<StateId>(var)));
  } else {
    enqueue(sys_.event_edges(static_cast<EventId>(var - state_vars_)));
  }
  return true;
}

bool RegionSolver::propagate() {
  const auto edges = sys_.edges();
  while (!queue_.empty()) {
    const std::size_t i = queue_.back();
    queue_.pop_back();
    queued_[i] = 0;
    const Edge& ed = edges[i];
    const std::size_t ev = state_vars_ + ed.event;
    const std::uint8_t packed = kRevise[domain_[ed.source] | (domain_[ev] << 2) | (domain_[ed.target] << 5)];
    if (packed == 0 || !assign(ed.source, packed & 0b11) || !assign(ev, (packed >> 2) & 0b111) ||
        !assign(ed.target, (packed >> 5) & 0b11)) {
      for (std::size_t j : queue_) queued_[j] = 0;
      queue_.clear();
      return false;
    }
  }
  return true;
}

void RegionSolver::undo(std::size_t mark) {
  while (trail_.size() > mark) {
    domain_[trail_.back().first] = trail_.back().second;
    trail_.pop_back();
  }
}

bool RegionSolver::load(const RegionConstraint& constraint) {
  trail_.clear();
  queue_.clear();
  std::fill(queued_.begin(), queued_.end(), 0);
  std::fill(domain_.begin(), domain_.begin() + state_vars_, kAllStates);
  for (EventId e = 0; e < sys_.event_count(); ++e)
    domain_[state_vars_ + e] = sys_.event_edges(e).empty() ? sign_bit(Sign::obey) : kAllSigns;
  for (auto [s, member] : constraint.states()) {
    if (s >= sys_.state_count()) throw ContractError("constraint references an undeclared state");
    if (!assign(s, member ? 0b10 : 0b01)) return false;
  }
  for (auto [e, sig] : constraint.events()) {
    if (e >= sys_.event_count()) throw ContractError("constraint references an undeclared event");
    if (!assign(state_vars_ + e, sign_bit(sig))) return false;
  }
  for (std::size_t i = 0; i < sys_.edge_count(); ++i) {
    if (!queued_[i]) {
      queued_[i] = 1;
      queue_.push_back(i);
    }
  }
  return propagate();
}

std::optional<std::size_t> RegionSolver::pick_variable() const {
  for (EventId e : event_order_)
    if (std::popcount(domain_[state_vars_ + e]) > 1) return state_vars_ + e;
  for (std::size_t s = 0; s < state_vars_; ++s)
    if (std::popcount(domain_[s]) > 1) return s;
  return std::nullopt;
}

Region RegionSolver::extract() const {
  Bitset m(state_vars_);
  for (std::size_t s = 0; s < state_vars_; ++s)
    if (domain_[s] == 0b10) m.set(s);
  return *check_region(sys_, m);
}

void RegionSolver::search(std::vector<Region>& out, std::size_t limit) {
  if (deadline_ && (decisions_ & 0x3ff) == 0 && Clock::now() > *deadline_) throw Timeout(0);
  const auto var = pick_variable();
  if (!var) {
    out.push_back(extract());
    return;
  }
  // Events: -1, 0, +1. States: 0, 1.
  const std::uint8_t dom = domain_[*var];
  for (unsigned bit = 0; bit < 3 && out.size() < limit; ++bit) {
    const auto choice = static_cast<std::uint8_t>(1u << bit);
    if (!(dom & choice)) continue;
    const std::size_t mark = trail_.size();
    ++decisions_;
    if (assign(*var, choice) && propagate()) search(out, limit);
    undo(mark);
  }
}

std::optional<Region> RegionSolver::solve(const RegionConstraint& constraint) {
  if (!learner_) learner_ = std::make_unique<detail::NogoodSearch>(sys_, event_order_);
  std::vector<detail::NogoodSearch::Lit> assumptions;
  for (auto [s, member] : constraint.states()) {
    if (s >= sys_.state_count()) throw ContractError("constraint references an undeclared state");
    assumptions.push_back(learner_->member(s, member));
  }
  for (auto [e, sig] : constraint.events()) {
    if (e >= sys_.event_count()) throw ContractError("constraint references an undeclared event");
    assumptions.push_back(learner_->signature(e, value(sig)));
  }
  const auto found = learner_->solve(assumptions, deadline_, decisions_);
  if (!found) return std::nullopt;
  Bitset m(state_vars_);
  for (std::size_t s = 0; s < state_vars_; ++s)
    if ((*found)[s]) m.set(s);
  return *check_region(sys_, m);
}

std::vector<Region> RegionSolver::solve_all(const RegionConstraint& constraint, std::size_t limit) {
  std::vector<Region> out;
  if (limit == 0) return out;
  if (load(constraint)) search(out, limit);
  undo(0);
  return out;
}

std::optional<Region> solve_region(const System& sys, const RegionConstraint& constraint) {
  return RegionSolver(sys).solve(constraint);
}

std::vector<Region> solve_all_regions(const System& sys, const RegionConstraint& constraint, std::size_t limit) {
  return RegionSolver(sys).solve_all(constraint, limit);
}

int aggregate_signature(const Region& region, const TransitionSystem& ts, std::size_t i, std::size_t j) {
  const auto word = linear_word(ts);
  if (!(i < j && j <= word.size()))
    throw ContractError("aggregation indices must satisfy 0 <= i < j <= " + std::to_string(word.size()));
  if (region.signature().size() != ts.event_count()) throw ContractError("region belongs to another system");
  int sum = 0;
  for (std::size_t k = i; k < j; ++k) sum += value(region.sig(word[k]));
  return sum;
}

std::string format_region(const System& sys, const Region& region) {
  std::ostringstream out;
  out << "region: {";
  bool first = true;
  for (StateId s : region.members()) {
    out << (first ? "" : ", ") << sys.state_name(s);
    first = false;
  }
  out << "}\nsig:";
  first = true;
  for (EventId e = 0; e < sys.event_count(); ++e) {
    if (region.sig(e) == Sign::obey) continue;
    out << (first ? " " : ", ") << sys.event_name(e) << "=" << (region.sig(e) == Sign::exit ? "-1" : "+1");
    first = false;
  }
  return out.str();
}

}  // namespace ens
