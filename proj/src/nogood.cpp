#include "nogood.hpp"

#include <algorithm>

namespace ens::detail {

namespace {

constexpr std::size_t kLearntLimit = 20000;

}  // namespace

NogoodSearch::NogoodSearch(const System& sys, std::span<const EventId> event_order)
    : state_count_(static_cast<std::uint32_t>(sys.state_count())),
      event_order_(event_order.begin(), event_order.end()) {
  const std::size_t vars = sys.state_count() + 3 * sys.event_count();
  watches_.resize(2 * vars);
  assign_.assign(vars, -1);
  level_.assign(vars, 0);
  reason_.assign(vars, kNone);
  seen_.assign(vars, 0);

  for (EventId e = 0; e < sys.event_count(); ++e) {
    const Lit minus = signature(e, -1), zero = signature(e, 0), plus = signature(e, 1);
    add_clause({minus, zero, plus}, false);
    add_clause({minus ^ 1, zero ^ 1}, false);
    add_clause({minus ^ 1, plus ^ 1}, false);
    add_clause({zero ^ 1, plus ^ 1}, false);
    if (sys.event_edges(e).empty()) add_clause({zero}, false);
  }
  for (const Edge& ed : sys.edges()) {
    const Lit s = member(ed.source, true), t = member(ed.target, true);
    const Lit minus = signature(ed.event, -1), zero = signature(ed.event, 0), plus = signature(ed.event, 1);
    add_clause({minus ^ 1, s}, false);
    add_clause({minus ^ 1, t ^ 1}, false);
    add_clause({plus ^ 1, s ^ 1}, false);
    add_clause({plus ^ 1, t}, false);
    add_clause({zero ^ 1, s ^ 1, t}, false);
    add_clause({zero ^ 1, s, t ^ 1}, false);
    add_clause({s ^ 1, t, minus}, false);
    add_clause({s, t ^ 1, plus}, false);
    add_clause({s ^ 1, t ^ 1, zero}, false);
    add_clause({s, t, zero}, false);
  }
  if (!inconsistent_ && propagate() != kNone) inconsistent_ = true;
}

void NogoodSearch::add_clause(std::vector<Lit> lits, bool learnt) {
  if (!learnt) {
    std::sort(lits.begin(), lits.end());
    lits.erase(std::unique(lits.begin(), lits.end()), lits.end());
    for (std::size_t i = 1; i < lits.size(); ++i)
      if (lits[i] == (lits[i - 1] ^ 1)) return;  // tautology, e.g. from a self-loop
    // Drop literals already false at level 0; satisfied clauses are useless.
    std::vector<Lit> kept;
    for (Lit l : lits) {
      if (value(l) == 1) return;
      if (value(l) == -1) kept.push_back(l);
    }
    lits = std::move(kept);
    if (lits.empty()) {
      inconsistent_ = true;
      return;
    }
    if (lits.size() == 1) {
      enqueue(lits[0], kNone);
      return;
    }
  }
  const auto c = static_cast<std::uint32_t>(clauses_.size());
  clauses_.push_back(std::move(lits));
  learnt_.push_back(learnt);
  if (learnt) ++learnt_count_;
  attach(c);
}

void NogoodSearch::attach(std::uint32_t c) {
  watches_[clauses_[c][0] ^ 1].push_back(c);
  watches_[clauses_[c][1] ^ 1].push_back(c);
}

void NogoodSearch::enqueue(Lit l, std::uint32_t reason) {
  const std::uint32_t v = var(l);
  assign_[v] = static_cast<std::int8_t>((l & 1) ^ 1);
  level_[v] = level();
  reason_[v] = reason;
  trail_.push_back(l);
}

// Two watched literals; watches_[p] lists clauses in which ~p is watched.
std::uint32_t NogoodSearch::propagate() {
  while (head_ < trail_.size()) {
    const Lit p = trail_[head_++];
    const Lit false_lit = p ^ 1;
    auto& ws = watches_[p];
    std::size_t i = 0, j = 0;
    while (i < ws.size()) {
      const std::uint32_t c = ws[i++];
      auto& cl = clauses_[c];
      if (cl[0] == false_lit) std::swap(cl[0], cl[1]);
      if (value(cl[0]) == 1) {
        ws[j++] = c;
        continue;
      }
      bool moved = false;
      for (std::size_t k = 2; k < cl.size(); ++k) {
        if (value(cl[k]) != 0) {
          std::swap(cl[1], cl[k]);
          watches_[cl[1] ^ 1].push_back(c);
          moved = true;
          break;
        }
      }
      if (moved) continue;
      ws[j++] = c;
      if (value(cl[0]) == 0) {
        while (i < ws.size()) ws[j++] = ws[i++];
        ws.resize(j);
        head_ = trail_.size();
        return c;
      }
      enqueue(cl[0], c);
    }
    ws.resize(j);
  }
  return kNone;
}

// First unique implication point.
void NogoodSearch::analyze(std::uint32_t conflict, std::vector<Lit>& learnt, std::uint32_t& back_level) {
  learnt.assign(1, 0);
  std::size_t pending = 0;
  Lit p = 0;
  bool first = true;
  std::size_t index = trail_.size();
  std::uint32_t c = conflict;
  do {
    for (std::size_t k = first ? 0 : 1; k < clauses_[c].size(); ++k) {
      const Lit q = clauses_[c][k];
      const std::uint32_t v = var(q);
      if (seen_[v] || level_[v] == 0) continue;
      seen_[v] = 1;
      if (level_[v] == level())
        ++pending;
      else
        learnt.push_back(q);
    }
    while (!seen_[var(trail_[--index])]) {
    }
    p = trail_[index];
    c = reason_[var(p)];
    seen_[var(p)] = 0;
    first = false;
    --pending;
  } while (pending > 0);
  learnt[0] = p ^ 1;

  // Drop literals implied by the rest of the nogood through their reason.
  const std::vector<Lit> marked(learnt.begin() + 1, learnt.end());
  std::size_t keep = 1;
  for (std::size_t k = 1; k < learnt.size(); ++k) {
    const std::uint32_t r = reason_[var(learnt[k])];
    bool redundant = r != kNone;
    if (redundant)
      for (std::size_t x = 1; x < clauses_[r].size(); ++x) {
        const std::uint32_t v = var(clauses_[r][x]);
        if (!seen_[v] && level_[v] > 0) {
          redundant = false;
          break;
        }
      }
    if (!redundant) learnt[keep++] = learnt[k];
  }
  learnt.resize(keep);
  for (Lit l : marked) seen_[var(l)] = 0;

  back_level = 0;
  if (learnt.size() > 1) {
    std::size_t best = 1;
    for (std::size_t k = 2; k < learnt.size(); ++k)
      if (level_[var(learnt[k])] > level_[var(learnt[best])]) best = k;
    std::swap(learnt[1], learnt[best]);
    back_level = level_[var(learnt[1])];
  }
}

void NogoodSearch::backtrack(std::uint32_t target) {
  if (level() <= target) return;
  for (std::size_t k = trail_.size(); k-- > trail_lim_[target];) {
    const std::uint32_t v = var(trail_[k]);
    assign_[v] = -1;
    reason_[v] = kNone;
  }
  trail_.resize(trail_lim_[target]);
  trail_lim_.resize(target);
  head_ = trail_.size();
}

std::optional<NogoodSearch::Lit> NogoodSearch::next_decision() const {
  for (EventId e : event_order_)
    for (int sig = -1; sig <= 1; ++sig) {
      const Lit l = signature(e, sig);
      if (value(l) == 1) break;
      if (value(l) == -1) return l;
    }
  for (StateId s = 0; s < state_count_; ++s)
    if (value(member(s, false)) == -1) return member(s, false);
  return std::nullopt;
}

// Forget every learned nogood; only done at level 0.
void NogoodSearch::reduce() {
  std::vector<std::vector<Lit>> kept;
  for (std::size_t c = 0; c < clauses_.size(); ++c)
    if (!learnt_[c]) kept.push_back(std::move(clauses_[c]));
  clauses_ = std::move(kept);
  learnt_.assign(clauses_.size(), 0);
  learnt_count_ = 0;
  for (auto& w : watches_) w.clear();
  for (std::uint32_t c = 0; c < clauses_.size(); ++c) attach(c);
  // Level-0 reasons may point at dropped clauses; they are never inspected.
  for (Lit l : trail_) reason_[var(l)] = kNone;
}

std::optional<std::vector<bool>> NogoodSearch::solve(std::span<const Lit> assumptions,
                                                     std::optional<Clock::time_point> deadline,
                                                     std::size_t& decisions) {
  backtrack(0);
  if (inconsistent_) return std::nullopt;
  if (learnt_count_ > kLearntLimit) reduce();
  std::vector<Lit> learnt;
  std::size_t steps = 0;
  for (;;) {
    const std::uint32_t conflict = propagate();
    if (conflict != kNone) {
      if (level() == 0) {
        inconsistent_ = true;
        return std::nullopt;
      }
      std::uint32_t back_level = 0;
      analyze(conflict, learnt, back_level);
      backtrack(back_level);
      if (learnt.size() == 1) {
        enqueue(learnt[0], kNone);
      } else {
        add_clause(learnt, true);
        enqueue(learnt[0], static_cast<std::uint32_t>(clauses_.size() - 1));
      }
      continue;
    }
    if (deadline && (steps++ & 0xff) == 0 && Clock::now() > *deadline) {
      backtrack(0);
      throw Timeout(0);
    }
    std::optional<Lit> next;
    while (level() < assumptions.size()) {
      const Lit a = assumptions[level()];
      if (value(a) == 0) {
        backtrack(0);
        return std::nullopt;
      }
      if (value(a) == -1) {
        next = a;
        break;
      }
      trail_lim_.push_back(trail_.size());  // already implied; keep levels aligned
    }
    if (!next) {
      next = next_decision();
      if (!next) {
        std::vector<bool> out(state_count_);
        for (StateId s = 0; s < state_count_; ++s) out[s] = value(member(s, true)) == 1;
        backtrack(0);
        return out;
      }
      ++decisions;
    }
    trail_lim_.push_back(trail_.size());
    enqueue(*next, kNone);
  }
}

}  // namespace ens::detail
