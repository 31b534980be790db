#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "ens/regions.hpp"

namespace ens {

using Marking = Bitset;

/// Places, transitions, flow and initial marking. Flow is stored per
/// transition as its input and output place sets.
class ElementaryNetSystem {
 public:
  /// Throws StructuralError on duplicate or clashing names or mis-sized sets.
  ElementaryNetSystem(std::vector<std::string> places, std::vector<std::string> transitions,
                      std::vector<Bitset> inputs, std::vector<Bitset> outputs, Marking initial);

  std::size_t place_count() const { return places_.size(); }
  std::size_t transition_count() const { return transitions_.size(); }
  const std::string& place_name(std::size_t p) const { return places_.at(p); }
  const std::string& transition_name(std::size_t t) const { return transitions_.at(t); }
  const std::vector<std::string>& place_names() const { return places_; }
  const std::vector<std::string>& transition_names() const { return transitions_; }
  std::optional<std::size_t> find_transition(std::string_view name) const;

  const Bitset& inputs(std::size_t t) const { return inputs_.at(t); }
  const Bitset& outputs(std::size_t t) const { return outputs_.at(t); }
  const Marking& initial() const { return initial_; }

  bool operator==(const ElementaryNetSystem&) const = default;

 private:
  std::vector<std::string> places_;
  std::vector<std::string> transitions_;
  std::vector<Bitset> inputs_;
  std::vector<Bitset> outputs_;
  Marking initial_;
};

/// One place `p<i>` per region, in the given order; transitions are the
/// events of `ts`. Throws ContractError if an element is not a region of ts.
ElementaryNetSystem synthesize(const TransitionSystem& ts, std::span<const Region> regions);

/// The successor marking, if t is enabled at m.
std::optional<Marking> fire(const ElementaryNetSystem& net, const Marking& m, std::size_t t);

struct ReachabilityGraph {
  /// States `M0`, `M1`, ... in breadth-first order; events are the transitions.
  TransitionSystem ts;
  std::vector<Marking> markings;
  /// Loops and parallel edges are legal here; they are reported, not repaired.
  ValidationReport report;
};

ReachabilityGraph reachability_graph(const ElementaryNetSystem& net);

/// R_s = {R : R(s) = 1} over the region list, for every state of ts.
std::vector<Marking> state_markings(const TransitionSystem& ts, std::span<const Region> regions);

/// Whether s -e-> s' implies that e fires from R_s to R_s' in the synthesized
/// net, for every edge.
bool check_morphism(const TransitionSystem& ts, std::span<const Region> regions);

/// Label- and initial-state-preserving isomorphism, matched by names. Throws
/// ContractError on nondeterministic input.
bool ts_isomorphic(const TransitionSystem& a, const TransitionSystem& b);

/// Equality of the prefix-closed languages from the initial states.
bool language_equal(const TransitionSystem& a, const TransitionSystem& b);

/// `.ens` text: header, `place`, `transition`, `flow <x> -> <y>`,
/// `initial <place>...`.
ElementaryNetSystem parse_ens(std::string_view text);
std::string serialize_ens(const ElementaryNetSystem& net);

}  // namespace ens
