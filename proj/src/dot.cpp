#include "ens/dot.hpp"

#include <sstream>

namespace ens {

namespace {

std::string quote(const std::string& id) {
  std::string out = "\"";
  for (char c : id) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  return out + "\"";
}

}  // namespace

std::string export_dot(const TransitionSystem& ts, const DotOptions& options) {
  if (options.highlight && options.highlight->size() != ts.state_count())
    throw ContractError("highlight set does not match the state count");
  std::ostringstream out;
  out << "digraph " << quote(options.name) << " {\n  rankdir=LR;\n  node [shape=circle];\n";
  out << "  __start [shape=point];\n  __start -> " << quote(ts.state_name(ts.initial())) << ";\n";
  for (StateId s = 0; s < ts.state_count(); ++s) {
    out << "  " << quote(ts.state_name(s));
    if (options.highlight && options.highlight->test(s)) out << " [style=filled, fillcolor=gray80]";
    out << ";\n";
  }
  for (const Edge& e : ts.edges())
    out << "  " << quote(ts.state_name(e.source)) << " -> " << quote(ts.state_name(e.target))
        << " [label=" << quote(ts.event_name(e.event)) << "];\n";
  out << "}\n";
  return out.str();
}

std::string export_dot(const ElementaryNetSystem& net, const std::string& name) {
  std::ostringstream out;
  out << "digraph " << quote(name) << " {\n  rankdir=LR;\n";
  for (std::size_t p = 0; p < net.place_count(); ++p) {
    out << "  " << quote(net.place_name(p)) << " [shape=circle";
    if (net.initial().test(p)) out << ", style=filled, fillcolor=black, fontcolor=white";
    out << "];\n";
  }
  for (std::size_t t = 0; t < net.transition_count(); ++t)
    out << "  " << quote(net.transition_name(t)) << " [shape=box];\n";
  for (std::size_t t = 0; t < net.transition_count(); ++t) {
    for (std::size_t p = 0; p < net.place_count(); ++p)
      if (net.inputs(t).test(p)) out << "  " << quote(net.place_name(p)) << " -> " << quote(net.transition_name(t)) << ";\n";
    for (std::size_t p = 0; p < net.place_count(); ++p)
      if (net.outputs(t).test(p)) out << "  " << quote(net.transition_name(t)) << " -> " << quote(net.place_name(p)) << ";\n";
  }
  out << "}\n";
  return out.str();
}

}  // namespace ens
