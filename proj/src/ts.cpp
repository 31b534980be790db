#include "ens/ts.hpp"

#include <algorithm>
#include <cctype>
#include <deque>
#include <map>
#include <set>
#include <sstream>

namespace ens {

TransitionSystem::TransitionSystem(std::vector<std::string> states, std::vector<std::string> events,
                                   std::vector<Edge> edges, StateId initial)
    : states_(std::move(states)),
      events_(std::move(events)),
      edges_(std::move(edges)),
      initial_(initial) {
  if (states_.empty()) throw StructuralError("transition system has no states");
  if (events_.empty()) throw StructuralError("transition system has no events");
  if (initial_ >= states_.size()) throw StructuralError("initial state out of range");
  for (StateId s = 0; s < states_.size(); ++s) {
    if (!state_index_.emplace(states_[s], s).second)
      throw StructuralError("duplicate state '" + states_[s] + "'");
  }
  for (EventId e = 0; e < events_.size(); ++e) {
    if (!event_index_.emplace(events_[e], e).second)
      throw StructuralError("duplicate event '" + events_[e] + "'");
  }
  out_.resize(states_.size());
  in_.resize(states_.size());
  by_event_.resize(events_.size());
  for (std::size_t i = 0; i < edges_.size(); ++i) {
    const Edge& ed = edges_[i];
    if (ed.source >= states_.size() || ed.target >= states_.size() || ed.event >= events_.size())
      throw StructuralError("edge " + std::to_string(i) + " references an undeclared state or event");
    out_[ed.source].push_back(i);
    in_[ed.target].push_back(i);
    by_event_[ed.event].push_back(i);
  }
}

std::optional<StateId> TransitionSystem::find_state(std::string_view name) const {
  auto it = state_index_.find(std::string(name));
  if (it == state_index_.end()) return std::nullopt;
  return it->second;
}

std::optional<EventId> TransitionSystem::find_event(std::string_view name) const {
  auto it = event_index_.find(std::string(name));
  if (it == event_index_.end()) return std::nullopt;
  return it->second;
}

StateId TransitionSystem::state(std::string_view name) const {
  if (auto s = find_state(name)) return *s;
  throw StructuralError("unknown state '" + std::string(name) + "'");
}

EventId TransitionSystem::event(std::string_view name) const {
  if (auto e = find_event(name)) return *e;
  throw StructuralError("unknown event '" + std::string(name) + "'");
}

std::optional<StateId> TransitionSystem::successor(StateId s, EventId e) const {
  for (std::size_t i : out_.at(s)) {
    if (edges_[i].event == e) return edges_[i].target;
  }
  return std::nullopt;
}

bool TransitionSystem::operator==(const TransitionSystem& other) const {
  return states_ == other.states_ && events_ == other.events_ && edges_ == other.edges_ &&
         initial_ == other.initial_;
}

StateId TransitionSystem::Builder::state(std::string_view name) {
  auto [it, inserted] = state_index_.emplace(std::string(name), static_cast<StateId>(states_.size()));
  if (inserted) states_.emplace_back(name);
  return it->second;
}

EventId TransitionSystem::Builder::event(std::string_view name) {
  auto [it, inserted] = event_index_.emplace(std::string(name), static_cast<EventId>(events_.size()));
  if (inserted) events_.emplace_back(name);
  return it->second;
}

TransitionSystem::Builder& TransitionSystem::Builder::edge(std::string_view source, std::string_view ev,
                                                           std::string_view target) {
  StateId s = state(source);
  EventId e = event(ev);
  StateId t = state(target);
  edges_.push_back({s, e, t});
  return *this;
}

TransitionSystem::Builder& TransitionSystem::Builder::initial(std::string_view name) {
  initial_ = state(name);
  return *this;
}

TransitionSystem TransitionSystem::Builder::build() const {
  if (!initial_) throw StructuralError("no initial state declared");
  return TransitionSystem(states_, events_, edges_, *initial_);
}

TransitionSystem make_chain(const std::vector<std::string>& word, std::string_view prefix) {
  TransitionSystem::Builder b;
  std::string p(prefix);
  b.initial(p + "0");
  for (std::size_t i = 0; i < word.size(); ++i)
    b.edge(p + std::to_string(i), word[i], p + std::to_string(i + 1));
  return b.build();
}

std::string_view to_string(Invariant inv) {
  switch (inv) {
    case Invariant::deterministic: return "deterministic";
    case Invariant::simple: return "simple";
    case Invariant::loop_free: return "loop-free";
    case Invariant::reachable: return "reachable";
    case Invariant::reduced: return "reduced";
  }
  return "?";
}

bool ValidationReport::violates(Invariant inv) const {
  return std::any_of(violations.begin(), violations.end(),
                     [inv](const Violation& v) { return v.invariant == inv; });
}

ValidationReport validate(const TransitionSystem& ts) {
  ValidationReport report;
  auto edges = ts.edges();

  // Both checks group edges by a key on the source state and flag groups of size > 1.
  auto duplicates = [&](Invariant inv, auto key) {
    std::map<std::pair<StateId, std::uint32_t>, std::vector<std::size_t>> groups;
    for (std::size_t i = 0; i < edges.size(); ++i) groups[{edges[i].source, key(edges[i])}].push_back(i);
    for (auto& [k, idx] : groups) {
      if (idx.size() < 2) continue;
      Violation v{inv, {k.first}, {}, idx};
      for (std::size_t i : idx) {
        v.states.push_back(edges[i].target);
        v.events.push_back(edges[i].event);
      }
      report.violations.push_back(std::move(v));
    }
  };
  duplicates(Invariant::deterministic, [](const Edge& e) { return e.event; });
  duplicates(Invariant::simple, [](const Edge& e) { return e.target; });

  for (std::size_t i = 0; i < edges.size(); ++i) {
    if (edges[i].source == edges[i].target)
      report.violations.push_back({Invariant::loop_free, {edges[i].source}, {edges[i].event}, {i}});
  }

  std::vector<bool> seen(ts.state_count(), false);
  std::deque<StateId> queue{ts.initial()};
  seen[ts.initial()] = true;
  while (!queue.empty()) {
    StateId s = queue.front();
    queue.pop_front();
    for (std::size_t i : ts.out_edges(s)) {
      StateId t = edges[i].target;
      if (!seen[t]) {
        seen[t] = true;
        queue.push_back(t);
      }
    }
  }
  Violation unreachable{Invariant::reachable, {}, {}, {}};
  for (StateId s = 0; s < ts.state_count(); ++s)
    if (!seen[s]) unreachable.states.push_back(s);
  if (!unreachable.states.empty()) report.violations.push_back(std::move(unreachable));

  Violation unused{Invariant::reduced, {}, {}, {}};
  for (EventId e = 0; e < ts.event_count(); ++e)
    if (ts.event_edges(e).empty()) unused.events.push_back(e);
  if (!unused.events.empty()) report.violations.push_back(std::move(unused));

  return report;
}

std::string describe(const TransitionSystem& ts, const ValidationReport& report) {
  std::ostringstream out;
  for (const Violation& v : report.violations) {
    out << to_string(v.invariant) << ":";
    for (std::size_t i : v.edges) {
      const Edge& e = ts.edge(i);
      out << " (" << ts.state_name(e.source) << " " << ts.event_name(e.event) << " "
          << ts.state_name(e.target) << ")";
    }
    if (v.edges.empty()) {
      for (StateId s : v.states) out << " " << ts.state_name(s);
      for (EventId e : v.events) out << " " << ts.event_name(e);
    }
    out << "\n";
  }
  return out.str();
}

TsClass classify(const TransitionSystem& ts) {
  TsClass c;
  for (EventId e = 0; e < ts.event_count(); ++e) c.manifoldness = std::max(c.manifoldness, ts.event_edges(e).size());
  for (StateId s = 0; s < ts.state_count(); ++s) {
    std::set<StateId> succ, pred;
    for (std::size_t i : ts.out_edges(s)) succ.insert(ts.edge(i).target);
    for (std::size_t i : ts.in_edges(s)) pred.insert(ts.edge(i).source);
    c.degree = std::max({c.degree, succ.size(), pred.size()});
  }
  c.linear = is_linear(ts);
  return c;
}

bool is_linear(const TransitionSystem& ts) {
  if (ts.edge_count() + 1 != ts.state_count()) return false;
  if (!ts.in_edges(ts.initial()).empty()) return false;
  std::vector<bool> seen(ts.state_count(), false);
  StateId s = ts.initial();
  seen[s] = true;
  for (std::size_t n = 0; n < ts.edge_count(); ++n) {
    if (ts.out_edges(s).size() != 1) return false;
    StateId t = ts.edge(ts.out_edges(s)[0]).target;
    if (seen[t] || ts.in_edges(t).size() != 1) return false;
    seen[t] = true;
    s = t;
  }
  return ts.out_edges(s).empty();
}

std::vector<StateId> linear_states(const TransitionSystem& ts) {
  if (!is_linear(ts)) throw ContractError("transition system is not linear");
  std::vector<StateId> order{ts.initial()};
  while (!ts.out_edges(order.back()).empty()) order.push_back(ts.edge(ts.out_edges(order.back())[0]).target);
  return order;
}

std::vector<EventId> linear_word(const TransitionSystem& ts) {
  std::vector<EventId> word;
  auto states = linear_states(ts);
  for (std::size_t i = 0; i + 1 < states.size(); ++i) word.push_back(ts.edge(ts.out_edges(states[i])[0]).event);
  return word;
}

std::vector<std::string> linear_word_names(const TransitionSystem& ts) {
  std::vector<std::string> names;
  for (EventId e : linear_word(ts)) names.push_back(ts.event_name(e));
  return names;
}

bool is_identifier(std::string_view text) {
  if (text.empty()) return false;
  return std::all_of(text.begin(), text.end(), [](char c) {
    return (c >= 'A' && c <= 'Z') || (c >= 'a' && c <= 'z') || (c >= '0' && c <= '9') || c == '_' ||
           c == '.' || c == ':' || c == '+' || c == '-';
  });
}

namespace detail {

std::string_view strip_comment(std::string_view line) {
  if (auto pos = line.find('#'); pos != std::string_view::npos) line = line.substr(0, pos);
  return line;
}

std::vector<std::string_view> split_words(std::string_view line) {
  std::vector<std::string_view> words;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && std::isspace(static_cast<unsigned char>(line[i]))) ++i;
    std::size_t j = i;
    while (j < line.size() && !std::isspace(static_cast<unsigned char>(line[j]))) ++j;
    if (j > i) words.push_back(line.substr(i, j - i));
    i = j;
  }
  return words;
}

bool parse_ts_line(std::span<const std::string_view> words, std::size_t line,
                   TransitionSystem::Builder& builder) {
  auto expect = [&](std::size_t n) {
    if (words.size() != n)
      throw ParseError(line, "'" + std::string(words[0]) + "' expects " + std::to_string(n - 1) + " argument(s)");
    for (std::size_t i = 1; i < n; ++i)
      if (!is_identifier(words[i])) throw ParseError(line, "invalid identifier '" + std::string(words[i]) + "'");
  };
  const std::string_view kw = words[0];
  if (kw == "initial") {
    expect(2);
    if (builder.has_initial()) throw ParseError(line, "duplicate initial declaration");
    builder.initial(words[1]);
  } else if (kw == "edge") {
    expect(4);
    builder.edge(words[1], words[2], words[3]);
  } else if (kw == "event") {
    expect(2);
    builder.event(words[1]);
  } else if (kw == "state") {
    expect(2);
    builder.state(words[1]);
  } else {
    return false;
  }
  return true;
}

}  // namespace detail

TransitionSystem parse_ts(std::string_view text) {
  TransitionSystem::Builder builder;
  bool header = false;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = detail::strip_comment(text.substr(pos, end - pos));
    pos = end + 1;
    ++line_no;
    auto words = detail::split_words(line);
    if (words.empty()) continue;
    if (!header) {
      if (words.size() != 1 || words[0] != ".ts") throw ParseError(line_no, "expected '.ts' header");
      header = true;
      continue;
    }
    if (!detail::parse_ts_line(words, line_no, builder))
      throw ParseError(line_no, "unknown keyword '" + std::string(words[0]) + "'");
  }
  if (!header) throw ParseError(line_no, "empty input, expected '.ts' header");
  if (!builder.has_initial()) throw ParseError(line_no, "missing initial declaration");
  return builder.build();
}

std::string serialize_ts(const TransitionSystem& ts) {
  for (const auto& n : ts.state_names())
    if (!is_identifier(n)) throw ContractError("state name '" + n + "' is not a valid identifier");
  for (const auto& n : ts.event_names())
    if (!is_identifier(n)) throw ContractError("event name '" + n + "' is not a valid identifier");

  // Declarations are only emitted when implicit first-use order would not
  // reproduce the stored order.
  std::vector<StateId> state_order{ts.initial()};
  std::vector<EventId> event_order;
  std::vector<bool> seen_s(ts.state_count(), false), seen_e(ts.event_count(), false);
  seen_s[ts.initial()] = true;
  for (const Edge& e : ts.edges()) {
    if (!seen_s[e.source]) seen_s[e.source] = true, state_order.push_back(e.source);
    if (!seen_e[e.event]) seen_e[e.event] = true, event_order.push_back(e.event);
    if (!seen_s[e.target]) seen_s[e.target] = true, state_order.push_back(e.target);
  }
  bool states_implicit = state_order.size() == ts.state_count();
  for (std::size_t i = 0; states_implicit && i < state_order.size(); ++i) states_implicit = state_order[i] == i;
  bool events_implicit = event_order.size() == ts.event_count();
  for (std::size_t i = 0; events_implicit && i < event_order.size(); ++i) events_implicit = event_order[i] == i;

  std::ostringstream out;
  out << ".ts\n";
  if (!states_implicit)
    for (const auto& n : ts.state_names()) out << "state " << n << "\n";
  if (!events_implicit)
    for (const auto& n : ts.event_names()) out << "event " << n << "\n";
  out << "initial " << ts.state_name(ts.initial()) << "\n";
  for (const Edge& e : ts.edges())
    out << "edge " << ts.state_name(e.source) << " " << ts.event_name(e.event) << " " << ts.state_name(e.target)
        << "\n";
  return out.str();
}

}  // namespace ens
