#include "ens/synthesis.hpp"

#include <deque>
#include <map>
#include <set>
#include <sstream>
#include <unordered_map>

namespace ens {

ElementaryNetSystem::ElementaryNetSystem(std::vector<std::string> places, std::vector<std::string> transitions,
                                         std::vector<Bitset> inputs, std::vector<Bitset> outputs, Marking initial)
    : places_(std::move(places)),
      transitions_(std::move(transitions)),
      inputs_(std::move(inputs)),
      outputs_(std::move(outputs)),
      initial_(std::move(initial)) {
  std::set<std::string_view> names;
  for (const auto& n : places_)
    if (!names.insert(n).second) throw StructuralError("duplicate place '" + n + "'");
  for (const auto& n : transitions_)
    if (!names.insert(n).second) throw StructuralError("duplicate or clashing transition '" + n + "'");
  if (inputs_.size() != transitions_.size() || outputs_.size() != transitions_.size())
    throw StructuralError("flow does not cover every transition");
  for (std::size_t t = 0; t < transitions_.size(); ++t)
    if (inputs_[t].size() != places_.size() || outputs_[t].size() != places_.size())
      throw StructuralError("flow set of '" + transitions_[t] + "' has the wrong size");
  if (initial_.size() != places_.size()) throw StructuralError("initial marking has the wrong size");
}

std::optional<std::size_t> ElementaryNetSystem::find_transition(std::string_view name) const {
  for (std::size_t t = 0; t < transitions_.size(); ++t)
    if (transitions_[t] == name) return t;
  return std::nullopt;
}

ElementaryNetSystem synthesize(const TransitionSystem& ts, std::span<const Region> regions) {
  System sys(ts);
  const std::size_t n = regions.size();
  std::vector<std::string> places;
  std::vector<Bitset> in(ts.event_count(), Bitset(n)), out(ts.event_count(), Bitset(n));
  Marking m0(n);
  for (std::size_t p = 0; p < n; ++p) {
    const Region& r = regions[p];
    if (r.state_count() != ts.state_count() || r.signature().size() != ts.event_count() ||
        !check_region(sys, r.membership()))
      throw ContractError("place " + std::to_string(p) + " is not a region of the transition system");
    places.push_back("p" + std::to_string(p));
    for (EventId e = 0; e < ts.event_count(); ++e) {
      if (r.sig(e) == Sign::exit) in[e].set(p);
      if (r.sig(e) == Sign::enter) out[e].set(p);
    }
    m0[p] = r.contains(ts.initial());
  }
  return ElementaryNetSystem(std::move(places), ts.event_names(), std::move(in), std::move(out), std::move(m0));
}

std::optional<Marking> fire(const ElementaryNetSystem& net, const Marking& m, std::size_t t) {
  const Bitset& in = net.inputs(t);
  const Bitset& out = net.outputs(t);
  if (in.intersects(out) || !in.is_subset_of(m) || out.intersects(m)) return std::nullopt;
  return (m - in) | out;
}

ReachabilityGraph reachability_graph(const ElementaryNetSystem& net) {
  if (net.transition_count() == 0) throw ContractError("net has no transitions");
  std::map<Marking, StateId> ids;
  std::vector<Marking> markings{net.initial()};
  ids.emplace(net.initial(), 0);
  std::vector<Edge> edges;
  for (std::size_t x = 0; x < markings.size(); ++x) {
    for (std::size_t t = 0; t < net.transition_count(); ++t) {
      auto next = fire(net, markings[x], t);
      if (!next) continue;
      auto [it, inserted] = ids.emplace(*next, static_cast<StateId>(markings.size()));
      if (inserted) markings.push_back(*next);
      edges.push_back({static_cast<StateId>(x), static_cast<EventId>(t), it->second});
    }
  }
  std::vector<std::string> names;
  for (std::size_t x = 0; x < markings.size(); ++x) names.push_back("M" + std::to_string(x));
  TransitionSystem ts(std::move(names), net.transition_names(), std::move(edges), 0);
  auto report = validate(ts);
  return {std::move(ts), std::move(markings), std::move(report)};
}

std::vector<Marking> state_markings(const TransitionSystem& ts, std::span<const Region> regions) {
  std::vector<Marking> out(ts.state_count(), Marking(regions.size()));
  for (std::size_t p = 0; p < regions.size(); ++p)
    for (StateId s = 0; s < ts.state_count(); ++s) out[s][p] = regions[p].contains(s);
  return out;
}

bool check_morphism(const TransitionSystem& ts, std::span<const Region> regions) {
  auto net = synthesize(ts, regions);
  auto psi = state_markings(ts, regions);
  if (psi[ts.initial()] != net.initial()) return false;
  for (const Edge& ed : ts.edges()) {
    auto next = fire(net, psi[ed.source], ed.event);
    if (!next || *next != psi[ed.target]) return false;
  }
  return true;
}

namespace {

void require_deterministic(const TransitionSystem& ts) {
  if (validate(ts).violates(Invariant::deterministic))
    throw ContractError("comparison needs deterministic transition systems");
}

// Enabled events at s by name, sorted, with their targets.
std::map<std::string_view, StateId> moves(const TransitionSystem& ts, StateId s) {
  std::map<std::string_view, StateId> out;
  for (std::size_t i : ts.out_edges(s)) out.emplace(ts.event_name(ts.edge(i).event), ts.edge(i).target);
  return out;
}

}  // namespace

bool ts_isomorphic(const TransitionSystem& a, const TransitionSystem& b) {
  require_deterministic(a);
  require_deterministic(b);
  if (a.state_count() != b.state_count() || a.edge_count() != b.edge_count()) return false;
  std::vector<std::optional<StateId>> f(a.state_count()), g(b.state_count());
  std::deque<StateId> queue{a.initial()};
  f[a.initial()] = b.initial();
  g[b.initial()] = a.initial();
  std::size_t mapped = 1;
  while (!queue.empty()) {
    const StateId s = queue.front();
    queue.pop_front();
    auto ma = moves(a, s), mb = moves(b, *f[s]);
    if (ma.size() != mb.size()) return false;
    for (auto [name, t] : ma) {
      auto it = mb.find(name);
      if (it == mb.end()) return false;
      const StateId u = it->second;
      if (!f[t] && !g[u]) {
        f[t] = u;
        g[u] = t;
        ++mapped;
        queue.push_back(t);
      } else if (f[t] != u || g[u] != t) {
        return false;
      }
    }
  }
  // States not reachable from the initial state cannot be matched this way.
  return mapped == a.state_count();
}

bool language_equal(const TransitionSystem& a, const TransitionSystem& b) {
  require_deterministic(a);
  require_deterministic(b);
  std::set<std::pair<StateId, StateId>> seen{{a.initial(), b.initial()}};
  std::deque<std::pair<StateId, StateId>> queue{{a.initial(), b.initial()}};
  while (!queue.empty()) {
    auto [s, t] = queue.front();
    queue.pop_front();
    auto ma = moves(a, s), mb = moves(b, t);
    if (ma.size() != mb.size()) return false;
    for (auto [name, s2] : ma) {
      auto it = mb.find(name);
      if (it == mb.end()) return false;
      if (seen.emplace(s2, it->second).second) queue.emplace_back(s2, it->second);
    }
  }
  return true;
}

ElementaryNetSystem parse_ens(std::string_view text) {
  std::vector<std::string> places, transitions;
  std::unordered_map<std::string, std::size_t> place_id, transition_id;
  std::vector<std::tuple<std::string, std::string, std::size_t>> flows;
  std::vector<std::pair<std::string, std::size_t>> initial;
  bool header = false;
  std::size_t line_no = 0, pos = 0;
  while (pos <= text.size()) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    auto words = detail::split_words(detail::strip_comment(text.substr(pos, end - pos)));
    pos = end + 1;
    ++line_no;
    if (words.empty()) continue;
    if (!header) {
      if (words.size() != 1 || words[0] != ".ens") throw ParseError(line_no, "expected '.ens' header");
      header = true;
      continue;
    }
    for (std::size_t i = 1; i < words.size(); ++i)
      if (!(words[0] == "flow" && i == 2) && !is_identifier(words[i]))
        throw ParseError(line_no, "invalid identifier '" + std::string(words[i]) + "'");
    if (words[0] == "place" || words[0] == "transition") {
      if (words.size() != 2) throw ParseError(line_no, "'" + std::string(words[0]) + "' expects one name");
      const std::string name(words[1]);
      if (place_id.count(name) || transition_id.count(name)) throw ParseError(line_no, "duplicate name '" + name + "'");
      if (words[0] == "place") {
        place_id.emplace(name, places.size());
        places.push_back(name);
      } else {
        transition_id.emplace(name, transitions.size());
        transitions.push_back(name);
      }
    } else if (words[0] == "flow") {
      if (words.size() != 4 || words[2] != "->") throw ParseError(line_no, "expected 'flow <x> -> <y>'");
      flows.emplace_back(words[1], words[3], line_no);
    } else if (words[0] == "initial") {
      for (std::size_t i = 1; i < words.size(); ++i) initial.emplace_back(words[i], line_no);
    } else {
      throw ParseError(line_no, "unknown keyword '" + std::string(words[0]) + "'");
    }
  }
  if (!header) throw ParseError(line_no, "empty input, expected '.ens' header");
  const std::size_t n = places.size();
  std::vector<Bitset> in(transitions.size(), Bitset(n)), out(transitions.size(), Bitset(n));
  for (auto& [x, y, line] : flows) {
    if (place_id.count(x) && transition_id.count(y))
      in[transition_id[y]].set(place_id[x]);
    else if (transition_id.count(x) && place_id.count(y))
      out[transition_id[x]].set(place_id[y]);
    else
      throw ParseError(line, "flow must connect a declared place and a declared transition");
  }
  Marking m0(n);
  for (auto& [p, line] : initial) {
    auto it = place_id.find(p);
    if (it == place_id.end()) throw ParseError(line, "initial marking names unknown place '" + p + "'");
    m0.set(it->second);
  }
  return ElementaryNetSystem(std::move(places), std::move(transitions), std::move(in), std::move(out), std::move(m0));
}

std::string serialize_ens(const ElementaryNetSystem& net) {
  std::ostringstream out;
  out << ".ens\n";
  for (const auto& p : net.place_names()) out << "place " << p << "\n";
  for (const auto& t : net.transition_names()) out << "transition " << t << "\n";
  for (std::size_t t = 0; t < net.transition_count(); ++t) {
    for (std::size_t p = 0; p < net.place_count(); ++p)
      if (net.inputs(t).test(p)) out << "flow " << net.place_name(p) << " -> " << net.transition_name(t) << "\n";
    for (std::size_t p = 0; p < net.place_count(); ++p)
      if (net.outputs(t).test(p)) out << "flow " << net.transition_name(t) << " -> " << net.place_name(p) << "\n";
  }
  out << "initial";
  for (std::size_t p = 0; p < net.place_count(); ++p)
    if (net.initial().test(p)) out << " " << net.place_name(p);
  out << "\n";
  return out.str();
}

}  // namespace ens
