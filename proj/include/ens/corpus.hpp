#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "ens/ts.hpp"

namespace ens {

using Rng = std::mt19937_64;

/// A chain of `states` states over the events a, b, c, ... (at most
/// `alphabet`), no event used more than `fold` times. Needs
/// alphabet * fold >= states - 1.
TransitionSystem random_linear(Rng& rng, std::size_t states, std::size_t alphabet, std::size_t fold);

/// A valid TS on `states` states: a random spanning tree out of s0 plus up to
/// `extra` further edges, keeping it deterministic, simple and loop-free.
TransitionSystem random_ts(Rng& rng, std::size_t states, std::size_t alphabet, std::size_t extra);

/// Every chain whose word has length 1..max_length over the first `alphabet`
/// letters, with no letter used more than `fold` times, in length then
/// lexicographic order.
std::vector<TransitionSystem> all_linear(std::size_t max_length, std::size_t alphabet, std::size_t fold);

/// Up to three linear components with state names prefixed `c<i>.`; events
/// are drawn from one shared alphabet so components may interact.
std::vector<TransitionSystem> random_linear_union(Rng& rng, std::size_t max_components, std::size_t max_states,
                                                  std::size_t alphabet, std::size_t fold);

}  // namespace ens
