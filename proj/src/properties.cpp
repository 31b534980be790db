#include "ens/properties.hpp"

#include <unordered_map>

namespace ens {

bool separates(const Region& r, StateId s, StateId t) { return r.contains(s) != r.contains(t); }

bool inhibits(const Region& r, EventId e, StateId s) {
  switch (r.sig(e)) {
    case Sign::exit: return !r.contains(s);
    case Sign::enter: return r.contains(s);
    case Sign::obey: return false;
  }
  return false;
}

bool answers(const Region& r, const SeparationQuery& q) {
  if (const auto* p = std::get_if<StatePair>(&q)) return separates(r, p->first, p->second);
  const auto& es = std::get<EventState>(q);
  return inhibits(r, es.event, es.state);
}

std::string format_query(const System& sys, const SeparationQuery& q) {
  if (const auto* p = std::get_if<StatePair>(&q))
    return "(" + sys.state_name(p->first) + ", " + sys.state_name(p->second) + ")";
  const auto& es = std::get<EventState>(q);
  return "(" + sys.event_name(es.event) + ", " + sys.state_name(es.state) + ")";
}

const Region* Verdict::witness(const SeparationQuery& q) const {
  for (const auto& r : regions)
    if (answers(r, q)) return &r;
  return nullptr;
}

namespace {

void require_pair(const System& sys, StateId s, StateId t) {
  if (s >= sys.state_count() || t >= sys.state_count()) throw ContractError("state out of range");
  if (s == t) throw ContractError("cannot separate a state from itself");
  if (sys.component_of(s) != sys.component_of(t))
    throw ContractError("states " + sys.state_name(s) + " and " + sys.state_name(t) +
                        " lie in different components");
}

void require_vacuity_free(const System& sys, EventId e, StateId s) {
  if (s >= sys.state_count() || e >= sys.event_count()) throw ContractError("query out of range");
  if (sys.enables(s, e))
    throw ContractError("event " + sys.event_name(e) + " is enabled at " + sys.state_name(s));
}

std::optional<Region> solve_pair(RegionSolver& solver, StateId s, StateId t) {
  return solver.solve(RegionConstraint().fix_state(s, true).fix_state(t, false));
}

std::optional<Region> solve_inhibition(RegionSolver& solver, EventId e, StateId s) {
  return solver.solve(RegionConstraint().fix_event(e, Sign::exit).fix_state(s, false));
}

// States in one class are not separated by any region seen so far.
class Partition {
 public:
  explicit Partition(std::size_t n) : cls_(n, 0) {}

  void refine(const Region& r) {
    std::unordered_map<std::uint64_t, std::uint32_t> ids;
    for (std::size_t s = 0; s < cls_.size(); ++s) {
      const std::uint64_t key = (std::uint64_t{cls_[s]} << 1) | (r.contains(static_cast<StateId>(s)) ? 1 : 0);
      cls_[s] = ids.emplace(key, static_cast<std::uint32_t>(ids.size())).first->second;
    }
  }

  bool together(StateId s, StateId t) const { return cls_[s] == cls_[t]; }

 private:
  std::vector<std::uint32_t> cls_;
};

class Coverage {
 public:
  Coverage(std::size_t events, std::size_t states) : covered_(events, Bitset(states)) {}

  void add(const Region& r) {
    for (EventId e = 0; e < covered_.size(); ++e) {
      if (r.sig(e) == Sign::exit)
        covered_[e] |= ~r.membership();
      else if (r.sig(e) == Sign::enter)
        covered_[e] |= r.membership();
    }
  }

  bool covered(EventId e, StateId s) const { return covered_[e].test(s); }

 private:
  std::vector<Bitset> covered_;
};

template <class F>
auto with_progress(const Verdict& v, F&& f) {
  try {
    return f();
  } catch (const Timeout&) {
    throw Timeout(v.checked);
  }
}

// Returns false when the search stopped at a counterexample.
bool run_essp(const System& sys, const DecideOptions& options, RegionSolver& solver, Verdict& v) {
  Coverage cover(sys.event_count(), sys.state_count());
  for (const auto& r : v.regions) cover.add(r);
  for (EventId e = 0; e < sys.event_count(); ++e) {
    for (StateId s = 0; s < sys.state_count(); ++s) {
      if (sys.enables(s, e)) continue;
      ++v.checked;
      if (cover.covered(e, s)) continue;
      ++v.solver_calls;
      auto r = with_progress(v, [&] { return solve_inhibition(solver, e, s); });
      if (r) {
        cover.add(*r);
        v.regions.push_back(std::move(*r));
        continue;
      }
      v.holds = false;
      v.counterexamples.push_back(EventState{e, s});
      if (!options.exhaustive) return false;
    }
  }
  return true;
}

bool run_ssp(const System& sys, const DecideOptions& options, RegionSolver& solver, Verdict& v) {
  Partition classes(sys.state_count());
  for (const auto& r : v.regions) classes.refine(r);
  for (std::size_t c = 0; c < sys.component_count(); ++c) {
    const StateId begin = sys.component_begin(c), end = sys.component_end(c);
    for (StateId s = begin; s < end; ++s) {
      for (StateId t = end - 1; t > s; --t) {
        ++v.checked;
        if (!classes.together(s, t)) continue;
        ++v.solver_calls;
        auto r = with_progress(v, [&] { return solve_pair(solver, s, t); });
        if (r) {
          classes.refine(*r);
          v.regions.push_back(std::move(*r));
          continue;
        }
        v.holds = false;
        v.counterexamples.push_back(StatePair{s, t});
        if (!options.exhaustive) return false;
      }
    }
  }
  return true;
}

void require_regions(const System& sys, std::span<const Region> regions) {
  for (const auto& r : regions) {
    if (r.state_count() != sys.state_count() || r.signature().size() != sys.event_count() ||
        !check_region(sys, r.membership()))
      throw ContractError("witness set contains a set that is not a region of the system");
  }
}

}  // namespace

std::optional<Region> separable(const System& sys, StateId s, StateId t) {
  require_pair(sys, s, t);
  RegionSolver solver(sys);
  return solve_pair(solver, s, t);
}

std::optional<Region> inhibitable(const System& sys, EventId e, StateId s) {
  require_vacuity_free(sys, e, s);
  RegionSolver solver(sys);
  return solve_inhibition(solver, e, s);
}

Verdict has_ssp(const System& sys, const DecideOptions& options) {
  RegionSolver solver(sys);
  solver.set_deadline(options.deadline);
  Verdict v;
  run_ssp(sys, options, solver, v);
  return v;
}

Verdict has_essp(const System& sys, const DecideOptions& options) {
  RegionSolver solver(sys);
  solver.set_deadline(options.deadline);
  Verdict v;
  run_essp(sys, options, solver, v);
  return v;
}

Verdict is_feasible(const System& sys, const DecideOptions& options) {
  RegionSolver solver(sys);
  solver.set_deadline(options.deadline);
  Verdict v;
  if (!run_essp(sys, options, solver, v)) return v;
  run_ssp(sys, options, solver, v);
  return v;
}

bool is_ssp_witness(const System& sys, std::span<const Region> regions) {
  require_regions(sys, regions);
  Partition classes(sys.state_count());
  for (const auto& r : regions) classes.refine(r);
  for (std::size_t c = 0; c < sys.component_count(); ++c)
    for (StateId s = sys.component_begin(c); s < sys.component_end(c); ++s)
      for (StateId t = s + 1; t < sys.component_end(c); ++t)
        if (classes.together(s, t)) return false;
  return true;
}

bool is_essp_witness(const System& sys, std::span<const Region> regions) {
  require_regions(sys, regions);
  Coverage cover(sys.event_count(), sys.state_count());
  for (const auto& r : regions) cover.add(r);
  for (EventId e = 0; e < sys.event_count(); ++e)
    for (StateId s = 0; s < sys.state_count(); ++s)
      if (!sys.enables(s, e) && !cover.covered(e, s)) return false;
  return true;
}

}  // namespace ens
