#include "ens/linear2.hpp"

#include <algorithm>

namespace ens {

namespace {

void require_class(const TransitionSystem& ts) {
  if (!is_linear(ts)) throw ContractError("transition system is not linear");
  if (classify(ts).manifoldness > 2) throw ContractError("transition system is not 2-fold");
}

// Prefix sums of the signature along the chain; R(s_k) = R(s_0) + sum[k].
std::optional<Bitset> membership_from(const std::vector<EventId>& word, const SeparatorResult& r) {
  std::vector<int> sum(word.size() + 1, 0);
  for (std::size_t k = 0; k < word.size(); ++k) {
    int d = 0;
    if (r.exit && word[k] == *r.exit) d = -1;
    if (r.enter && word[k] == *r.enter) d += 1;
    sum[k + 1] = sum[k] + d;
  }
  const auto [lo, hi] = std::minmax_element(sum.begin(), sum.end());
  if (*hi - *lo > 1) return std::nullopt;
  Bitset m(sum.size());
  for (std::size_t k = 0; k < sum.size(); ++k) m[k] = sum[k] - *lo == 1;
  return m;
}

}  // namespace

SecondOccurrenceIndex::SecondOccurrenceIndex(const TransitionSystem& ts) {
  require_class(ts);
  word_ = linear_word(ts);
  partner_.assign(word_.size(), -1);
  std::vector<std::pair<EventId, std::size_t>> occ;
  occ.reserve(word_.size());
  for (std::size_t k = 0; k < word_.size(); ++k) occ.emplace_back(word_[k], k);
  std::sort(occ.begin(), occ.end());
  for (std::size_t x = 0; x + 1 < occ.size(); ++x)
    if (occ[x].first == occ[x + 1].first) {
      partner_[occ[x].second] = static_cast<std::int64_t>(occ[x + 1].second);
      partner_[occ[x + 1].second] = static_cast<std::int64_t>(occ[x].second);
    }
}

std::optional<std::pair<std::size_t, std::size_t>> find_exact_2fold_subsequence(const TransitionSystem& ts) {
  require_class(ts);
  const auto word = linear_word(ts);
  std::vector<std::uint8_t> count(ts.event_count());
  for (std::size_t i = 0; i < word.size(); ++i) {
    std::fill(count.begin(), count.end(), 0);
    std::size_t odd = 0;
    for (std::size_t j = i; j < word.size(); ++j) {
      if (++count[word[j]] == 1)
        ++odd;
      else
        --odd;
      if (odd == 0) return std::make_pair(i, j + 1);
    }
  }
  return std::nullopt;
}

SeparatorResult separator(const SecondOccurrenceIndex& index, std::size_t i, std::size_t j) {
  const std::size_t n = index.size();
  if (!(i < j && j <= n))
    throw ContractError("separator needs 0 <= i < j <= " + std::to_string(n));
  const auto I = [&](std::size_t k) { return index(k); };
  const auto lo = static_cast<std::int64_t>(i), hi = static_cast<std::int64_t>(j);

  for (std::size_t k = i; k < j; ++k)
    if (I(k) == -1) return {index.event(k), std::nullopt};

  // An event between s_i and s_j whose first occurrence lies furthest left.
  for (std::size_t k = 0; k < i; ++k) {
    if (I(k) < lo || I(k) > hi - 1) continue;
    const auto a = static_cast<std::int64_t>(k);
    for (std::size_t c = k + 1; c < i; ++c)
      if (I(c) == -1 || I(c) < a || I(c) >= hi) return {index.event(k), index.event(c)};
    break;
  }

  // An event between s_i and s_j whose second occurrence lies furthest right.
  for (std::size_t k = n; k-- > j;) {
    if (I(k) < lo || I(k) > hi - 1) continue;
    const auto b = static_cast<std::int64_t>(k);
    for (std::size_t c = j; c < k; ++c)
      if (I(c) == -1 || I(c) < lo || I(c) > b) return {index.event(k), index.event(c)};
    break;
  }
  return {};
}

std::optional<Region> induced_region(const TransitionSystem& ts, const SeparatorResult& result) {
  const auto word = linear_word(ts);
  auto m = membership_from(word, result);
  if (!m) return std::nullopt;
  const auto order = linear_states(ts);
  Bitset members(ts.state_count());
  for (std::size_t k = 0; k < order.size(); ++k) members[order[k]] = (*m)[k];
  return check_region(System(ts), members);
}

Linear2Verdict linear2_ssp(const TransitionSystem& ts, bool exhaustive) {
  SecondOccurrenceIndex index(ts);
  const auto& word = index.word();
  const std::size_t n = word.size();
  Linear2Verdict v;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = n; j > i; --j) {
      auto r = separator(index, i, j);
      bool ok = false;
      if (!r.failed()) {
        auto m = membership_from(word, r);
        ok = m && (*m)[i] != (*m)[j];
      }
      v.witnesses.push_back({{i, j}, r});
      if (ok) continue;
      if (v.holds) v.counterexample = std::make_pair(i, j);
      v.holds = false;
      if (!exhaustive) return v;
    }
  return v;
}

}  // namespace ens
