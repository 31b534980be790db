#include "ens/corpus.hpp"

#include <functional>
#include <set>
#include <string>

namespace ens {

namespace {

std::string letter(std::size_t i) {
  std::string name;
  do {
    name.insert(name.begin(), static_cast<char>('a' + i % 26));
    i /= 26;
  } while (i-- > 0);
  return name;
}

std::size_t pick(Rng& rng, std::size_t n) { return std::uniform_int_distribution<std::size_t>(0, n - 1)(rng); }

std::vector<std::string> random_word(Rng& rng, std::size_t length, std::size_t alphabet, std::size_t fold) {
  if (alphabet * fold < length) throw ContractError("alphabet too small for the requested chain");
  std::vector<std::size_t> used(alphabet, 0);
  std::vector<std::string> word;
  while (word.size() < length) {
    const std::size_t e = pick(rng, alphabet);
    if (used[e] == fold) continue;
    ++used[e];
    word.push_back(letter(e));
  }
  return word;
}

}  // namespace

TransitionSystem random_linear(Rng& rng, std::size_t states, std::size_t alphabet, std::size_t fold) {
  if (states < 2) throw ContractError("a chain needs at least two states");
  return make_chain(random_word(rng, states - 1, alphabet, fold));
}

TransitionSystem random_ts(Rng& rng, std::size_t states, std::size_t alphabet, std::size_t extra) {
  if (states < 2 || alphabet == 0) throw ContractError("random TS needs two states and one event");
  std::vector<std::set<std::size_t>> out_events(states), succ(states);
  std::vector<std::tuple<std::size_t, std::size_t, std::size_t>> edges;
  std::set<std::size_t> used_events;
  auto try_add = [&](std::size_t s, std::size_t t) {
    if (s == t || succ[s].count(t) || out_events[s].size() == alphabet) return false;
    std::size_t e;
    do e = pick(rng, alphabet);
    while (out_events[s].count(e));
    out_events[s].insert(e);
    succ[s].insert(t);
    edges.emplace_back(s, e, t);
    used_events.insert(e);
    return true;
  };
  for (std::size_t t = 1; t < states; ++t) {
    // A parent that still has a free event.
    std::size_t s;
    do s = pick(rng, t);
    while (out_events[s].size() == alphabet);
    try_add(s, t);
  }
  for (std::size_t i = 0; i < extra; ++i) try_add(pick(rng, states), pick(rng, states));
  TransitionSystem::Builder b;
  b.initial("s0");
  for (std::size_t s = 0; s < states; ++s) b.state("s" + std::to_string(s));
  for (auto [s, e, t] : edges) b.edge("s" + std::to_string(s), letter(e), "s" + std::to_string(t));
  return b.build();
}

std::vector<TransitionSystem> all_linear(std::size_t max_length, std::size_t alphabet, std::size_t fold) {
  std::vector<TransitionSystem> out;
  std::vector<std::string> word;
  std::vector<std::size_t> used(alphabet, 0);
  std::function<void(std::size_t)> extend = [&](std::size_t length) {
    if (word.size() == length) {
      out.push_back(make_chain(word));
      return;
    }
    for (std::size_t e = 0; e < alphabet; ++e) {
      if (used[e] == fold) continue;
      ++used[e];
      word.push_back(letter(e));
      extend(length);
      word.pop_back();
      --used[e];
    }
  };
  for (std::size_t length = 1; length <= max_length; ++length) extend(length);
  return out;
}

std::vector<TransitionSystem> random_linear_union(Rng& rng, std::size_t max_components, std::size_t max_states,
                                                  std::size_t alphabet, std::size_t fold) {
  const std::size_t count = 1 + pick(rng, max_components);
  std::vector<TransitionSystem> out;
  std::vector<std::size_t> used(alphabet, 0);
  for (std::size_t c = 0; c < count; ++c) {
    std::size_t length = 1 + pick(rng, max_states - 1);
    std::size_t room = 0;
    for (auto u : used) room += fold - u;
    if (room == 0) break;
    length = std::min(length, room);
    std::vector<std::string> word;
    while (word.size() < length) {
      const std::size_t e = pick(rng, alphabet);
      if (used[e] == fold) continue;
      ++used[e];
      word.push_back(letter(e));
    }
    out.push_back(make_chain(word, "c" + std::to_string(c) + ".s"));
  }
  return out;
}

}  // namespace ens
