#include "ens/unions.hpp"

#include <fstream>
#include <functional>
#include <set>
#include <sstream>

namespace ens {

namespace {

std::vector<std::string> default_names(std::size_t n) {
  std::vector<std::string> names;
  for (std::size_t i = 0; i < n; ++i) names.push_back("A" + std::to_string(i));
  return names;
}

}  // namespace

TsUnion::TsUnion(std::vector<TransitionSystem> components, std::vector<std::string> names)
    : components_(std::move(components)),
      names_(names.empty() ? default_names(components_.size()) : std::move(names)),
      system_(std::span<const TransitionSystem>(components_)) {
  if (names_.size() != components_.size()) throw StructuralError("component name count does not match");
  std::set<std::string_view> seen;
  for (const auto& n : names_)
    if (!seen.insert(n).second) throw StructuralError("duplicate component name '" + n + "'");
}

std::optional<std::size_t> TsUnion::find_component(std::string_view name) const {
  for (std::size_t i = 0; i < names_.size(); ++i)
    if (names_[i] == name) return i;
  return std::nullopt;
}

TsUnion make_union(std::vector<TransitionSystem> components) { return TsUnion(std::move(components)); }

TsUnion flatten(std::span<const TsUnion> unions) {
  std::vector<TransitionSystem> parts;
  std::vector<std::string> names;
  std::set<std::string> used;
  for (const auto& u : unions)
    for (std::size_t i = 0; i < u.size(); ++i) {
      parts.push_back(u.component(i));
      std::string name = u.names()[i];
      // Nested default names collide; renumber those.
      if (!used.insert(name).second) {
        name = "A" + std::to_string(parts.size() - 1);
        if (!used.insert(name).second) throw StructuralError("component name clash in flatten");
      }
      names.push_back(std::move(name));
    }
  return TsUnion(std::move(parts), std::move(names));
}

JoinPlan default_plan(const TsUnion& u) {
  JoinPlan plan;
  for (std::size_t i = 0; i < u.size(); ++i) {
    if (i + 1 == u.size()) {
      plan.terminals.emplace_back();
      break;
    }
    const auto& c = u.component(i);
    if (!is_linear(c))
      throw ContractError("component " + u.names()[i] + " is not linear; name its terminal explicitly");
    plan.terminals.emplace_back(c.state_name(linear_states(c).back()));
  }
  return plan;
}

TransitionSystem join(const TsUnion& u) { return join(u, default_plan(u)); }

TransitionSystem join(const TsUnion& u, const JoinPlan& plan) {
  if (plan.terminals.size() + 1 < u.size())
    throw ContractError("join plan names " + std::to_string(plan.terminals.size()) + " terminals for " +
                        std::to_string(u.size()) + " components");
  const System& sys = u.system();
  TransitionSystem::Builder b;
  for (std::size_t i = 0; i < u.size(); ++i) {
    const auto& c = u.component(i);
    if (i > 0) {
      const auto& t = plan.terminals[i - 1];
      if (!t) throw ContractError("no terminal for component " + u.names()[i - 1]);
      if (!u.component(i - 1).find_state(*t))
        throw ContractError("terminal '" + *t + "' is not a state of component " + u.names()[i - 1]);
      const std::string z = "z+" + std::to_string(i), y1 = "y1+" + std::to_string(i),
                        y2 = "y2+" + std::to_string(i);
      for (const auto& name : {z, y1, y2})
        if (sys.find_state(name) || sys.find_event(name))
          throw ContractError("connector name '" + name + "' is already used by the union");
      b.state(z);
      b.edge(*t, y1, z).edge(z, y2, c.state_name(c.initial()));
    } else {
      b.initial(c.state_name(c.initial()));
    }
    for (const auto& s : c.state_names()) b.state(s);
    for (const auto& e : c.event_names()) b.event(e);
    for (const Edge& ed : c.edges()) b.edge(c.state_name(ed.source), c.event_name(ed.event), c.state_name(ed.target));
  }
  return b.build();
}

LiftedRegion lift_region(const TsUnion& u, const Region& region, std::span<const TransitionSystem> extra) {
  const System& base = u.system();
  if (region.state_count() != base.state_count() || region.signature().size() != base.event_count())
    throw ContractError("region does not belong to the union");
  std::vector<TransitionSystem> parts = u.components();
  std::vector<std::string> names = u.names();
  for (const auto& c : extra) {
    parts.push_back(c);
    names.push_back("A" + std::to_string(names.size()));
  }
  TsUnion extended(std::move(parts), std::move(names));
  const System& sys = extended.system();

  Bitset m(sys.state_count());
  for (StateId s = 0; s < base.state_count(); ++s) m[s] = region.contains(s);
  for (std::size_t i = 0; i < extra.size(); ++i) {
    const auto& c = extra[i];
    if (!is_linear(c)) throw ContractError("lifted components must be linear");
    const auto order = linear_states(c);
    const auto word = linear_word(c);
    std::optional<std::size_t> hit;
    Sign sig = Sign::obey;
    for (std::size_t k = 0; k < word.size(); ++k) {
      auto e = base.find_event(c.event_name(word[k]));
      if (!e || region.sig(*e) == Sign::obey) continue;
      if (hit) throw ContractError("component has more than one edge with a non-obeying event");
      hit = k;
      sig = region.sig(*e);
    }
    const StateId offset = sys.component_begin(u.size() + i);
    for (std::size_t k = 0; k < order.size(); ++k) {
      const bool in_p = hit && k <= *hit;
      m[offset + order[k]] = sig == Sign::enter ? !in_p : in_p;
    }
  }
  auto lifted = check_region(sys, m);
  if (!lifted) throw Error("lifted membership is not a region");
  return {std::move(extended), std::move(*lifted)};
}

std::string rectify_prefix(std::string_view event, std::string_view state) {
  return std::string(event) + ":" + std::string(state) + ":";
}

namespace {

TransitionSystem rename(const TransitionSystem& ts, const std::function<std::string(const std::string&)>& f) {
  std::vector<std::string> states, events;
  for (const auto& s : ts.state_names()) states.push_back(f(s));
  for (const auto& e : ts.event_names()) events.push_back(f(e));
  return TransitionSystem(std::move(states), std::move(events), {ts.edges().begin(), ts.edges().end()}, ts.initial());
}

}  // namespace

TransitionSystem rectify(const TransitionSystem& ts, std::string_view prefix) {
  const std::string p(prefix);
  return rename(ts, [&](const std::string& x) { return p + x; });
}

TsUnion rectify(const TsUnion& u, std::string_view event, std::string_view state) {
  const std::string p = rectify_prefix(event, state);
  std::vector<TransitionSystem> parts;
  std::vector<std::string> names;
  for (std::size_t i = 0; i < u.size(); ++i) {
    parts.push_back(rectify(u.component(i), p));
    names.push_back(p + u.names()[i]);
  }
  return TsUnion(std::move(parts), std::move(names));
}

TsUnion strip(const TsUnion& u, std::string_view event, std::string_view state) {
  const std::string p = rectify_prefix(event, state);
  auto cut = [&](const std::string& x) {
    if (x.compare(0, p.size(), p) != 0) throw ContractError("name '" + x + "' lacks prefix '" + p + "'");
    return x.substr(p.size());
  };
  std::vector<TransitionSystem> parts;
  std::vector<std::string> names;
  for (std::size_t i = 0; i < u.size(); ++i) {
    parts.push_back(rename(u.component(i), cut));
    names.push_back(cut(u.names()[i]));
  }
  return TsUnion(std::move(parts), std::move(names));
}

Region transport(const Region& region, const System& target) {
  if (region.state_count() != target.state_count()) throw ContractError("systems differ in size");
  auto r = check_region(target, region.membership());
  if (!r) throw ContractError("membership is not a region of the target system");
  return std::move(*r);
}

UnionFile parse_union(std::string_view text, const std::filesystem::path& base) {
  std::vector<TransitionSystem> parts;
  std::vector<std::string> names;
  std::vector<std::pair<std::string, std::string>> terminals;
  std::optional<TransitionSystem::Builder> inline_builder;
  std::size_t inline_start = 0;
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
      if (words.size() != 1 || words[0] != ".union") throw ParseError(line_no, "expected '.union' header");
      header = true;
      continue;
    }
    if (inline_builder) {
      if (words[0] == "end") {
        if (words.size() != 1) throw ParseError(line_no, "'end' takes no arguments");
        if (!inline_builder->has_initial()) throw ParseError(line_no, "inline component lacks an initial state");
        try {
          parts.push_back(inline_builder->build());
        } catch (const StructuralError& e) {
          throw ParseError(inline_start, e.what());
        }
        inline_builder.reset();
      } else if (!detail::parse_ts_line(words, line_no, *inline_builder)) {
        throw ParseError(line_no, "unknown keyword '" + std::string(words[0]) + "' in inline component");
      }
      continue;
    }
    if (words[0] == "component") {
      if (words.size() != 3) throw ParseError(line_no, "'component' expects a name and a path or 'inline'");
      if (!is_identifier(words[1])) throw ParseError(line_no, "invalid component name");
      names.emplace_back(words[1]);
      if (words[2] == "inline") {
        inline_builder.emplace();
        inline_start = line_no;
      } else {
        std::filesystem::path path{std::string(words[2])};
        if (path.is_relative()) path = base / path;
        std::ifstream in(path);
        if (!in) throw ParseError(line_no, "cannot read '" + path.string() + "'");
        std::stringstream buf;
        buf << in.rdbuf();
        try {
          parts.push_back(parse_ts(buf.str()));
        } catch (const ParseError& e) {
          throw ParseError(line_no, path.string() + ": " + e.what());
        }
      }
    } else if (words[0] == "terminal") {
      if (words.size() != 3) throw ParseError(line_no, "'terminal' expects a component and a state");
      terminals.emplace_back(words[1], words[2]);
    } else {
      throw ParseError(line_no, "unknown keyword '" + std::string(words[0]) + "'");
    }
  }
  if (!header) throw ParseError(line_no, "empty input, expected '.union' header");
  if (inline_builder) throw ParseError(line_no, "unterminated inline component");
  if (parts.empty()) throw ParseError(line_no, "union has no components");
  TsUnion u = [&] {
    try {
      return TsUnion(std::move(parts), std::move(names));
    } catch (const StructuralError& e) {
      throw ParseError(line_no, e.what());
    }
  }();
  JoinPlan plan;
  if (!terminals.empty()) {
    plan.terminals.resize(u.size());
    for (auto& [comp, state] : terminals) {
      auto c = u.find_component(comp);
      if (!c) throw ParseError(line_no, "terminal names unknown component '" + comp + "'");
      plan.terminals[*c] = state;
    }
  }
  return {std::move(u), std::move(plan)};
}

std::string serialize_union(const TsUnion& u, const JoinPlan& plan) {
  std::ostringstream out;
  out << ".union\n";
  for (std::size_t i = 0; i < u.size(); ++i) {
    out << "component " << u.names()[i] << " inline\n";
    std::string body = serialize_ts(u.component(i));
    std::istringstream lines(body);
    std::string line;
    std::getline(lines, line);  // .ts header
    while (std::getline(lines, line)) out << "  " << line << "\n";
    out << "end\n";
  }
  for (std::size_t i = 0; i < plan.terminals.size() && i < u.size(); ++i)
    if (plan.terminals[i]) out << "terminal " << u.names()[i] << " " << *plan.terminals[i] << "\n";
  return out.str();
}

}  // namespace ens
