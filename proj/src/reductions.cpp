#include "ens/reductions.hpp"

#include <algorithm>
#include <bit>
#include <map>
#include <set>
#include <sstream>

namespace ens {

namespace {

std::string sub(std::string_view base, std::size_t i) { return std::string(base) + "_" + std::to_string(i); }
std::string sub(std::string_view base, std::size_t i, std::size_t j) { return sub(sub(base, i), j); }
std::string sub(std::string_view base, std::size_t i, std::size_t j, std::size_t l) {
  return sub(sub(base, i, j), l);
}

// States `<prefix><x>` for x = 0..word.size().
TransitionSystem chain(const std::vector<std::string>& word, const std::string& prefix) {
  TransitionSystem::Builder b;
  b.initial(prefix + "0");
  for (std::size_t x = 0; x < word.size(); ++x)
    b.edge(prefix + std::to_string(x), word[x], prefix + std::to_string(x + 1));
  return b.build();
}

Region region_from_names(const System& sys, const std::vector<std::string>& members, const char* what) {
  auto r = check_region(sys, members);
  if (!r) throw Error(std::string(what) + " is not a region of the instance");
  return std::move(*r);
}

std::size_t model_position(const CubicMonotoneFormula::Clause& clause, const OneInThreeModel& model) {
  for (std::size_t x = 0; x < 3; ++x)
    if (std::binary_search(model.begin(), model.end(), clause[x])) return x;
  throw ContractError("not a one-in-three model");
}

void require_model(const CubicMonotoneFormula& formula, const OneInThreeModel& model) {
  if (!is_one_in_three_model(formula, model)) throw ContractError("not a one-in-three model of the formula");
}

}  // namespace

CubicMonotoneFormula::CubicMonotoneFormula(std::vector<Clause> clauses) : CubicMonotoneFormula(std::move(clauses), true) {}

CubicMonotoneFormula CubicMonotoneFormula::unchecked(std::vector<Clause> clauses) {
  return CubicMonotoneFormula(std::move(clauses), false);
}

CubicMonotoneFormula::CubicMonotoneFormula(std::vector<Clause> clauses, bool check)
    : clauses_(std::move(clauses)), checked_(check) {
  for (auto& c : clauses_) {
    std::sort(c.begin(), c.end());
    if (c[0] == c[1] || c[1] == c[2]) throw ContractError("clause repeats a variable");
  }
  if (!check) return;
  const std::size_t m = clauses_.size();
  std::vector<std::size_t> count(m);
  for (const auto& c : clauses_)
    for (std::size_t v : c) {
      if (v >= m) throw ContractError("variable " + std::to_string(v) + " out of range for " + std::to_string(m) + " clauses");
      ++count[v];
    }
  for (std::size_t v = 0; v < m; ++v)
    if (count[v] != 3)
      throw ContractError("variable " + std::to_string(v) + " occurs in " + std::to_string(count[v]) + " clauses, not 3");
  std::set<Clause> seen(clauses_.begin(), clauses_.end());
  if (seen.size() != m) throw ContractError("clauses are not pairwise distinct");
}

std::size_t CubicMonotoneFormula::variable_count() const {
  std::size_t n = 0;
  for (const auto& c : clauses_) n = std::max(n, c[2] + 1);
  return n;
}

std::vector<std::size_t> CubicMonotoneFormula::occurrences(std::size_t x) const {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < clauses_.size(); ++i)
    if (std::find(clauses_[i].begin(), clauses_[i].end(), x) != clauses_[i].end()) out.push_back(i);
  return out;
}

CubicMonotoneFormula parse_cnf3(std::string_view text, bool checked) {
  std::vector<CubicMonotoneFormula::Clause> clauses;
  std::size_t line_no = 0, pos = 0;
  while (pos <= text.size()) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    auto words = detail::split_words(detail::strip_comment(text.substr(pos, end - pos)));
    pos = end + 1;
    ++line_no;
    if (words.empty()) continue;
    if (words[0] != "clause" || words.size() != 4) throw ParseError(line_no, "expected 'clause <v> <v> <v>'");
    CubicMonotoneFormula::Clause c{};
    for (std::size_t x = 0; x < 3; ++x) {
      const std::string w(words[x + 1]);
      if (w.empty() || !std::all_of(w.begin(), w.end(), [](char ch) { return ch >= '0' && ch <= '9'; }) ||
          w.size() > 9)
        throw ParseError(line_no, "invalid variable '" + w + "'");
      c[x] = std::stoul(w);
    }
    clauses.push_back(c);
  }
  try {
    return checked ? CubicMonotoneFormula(std::move(clauses)) : CubicMonotoneFormula::unchecked(std::move(clauses));
  } catch (const ContractError& e) {
    throw ParseError(line_no, e.what());
  }
}

std::string serialize_cnf3(const CubicMonotoneFormula& formula) {
  std::ostringstream out;
  for (const auto& c : formula.clauses()) out << "clause " << c[0] << " " << c[1] << " " << c[2] << "\n";
  return out.str();
}

bool is_one_in_three_model(const CubicMonotoneFormula& formula, const OneInThreeModel& model) {
  if (!std::is_sorted(model.begin(), model.end()) || std::adjacent_find(model.begin(), model.end()) != model.end())
    return false;
  for (const auto& c : formula.clauses()) {
    int hits = 0;
    for (std::size_t v : c) hits += std::binary_search(model.begin(), model.end(), v);
    if (hits != 1) return false;
  }
  return true;
}

std::vector<OneInThreeModel> find_one_in_three_models(const CubicMonotoneFormula& formula) {
  const std::size_t n = formula.variable_count();
  if (n > 24) throw ContractError("model search is limited to 24 variables");
  std::vector<std::uint32_t> masks;
  for (const auto& c : formula.clauses())
    masks.push_back((1u << c[0]) | (1u << c[1]) | (1u << c[2]));
  std::vector<OneInThreeModel> out;
  for (std::uint32_t s = 0; s < (1u << n); ++s) {
    bool ok = true;
    for (auto k : masks)
      if (std::popcount(s & k) != 1) {
        ok = false;
        break;
      }
    if (!ok) continue;
    OneInThreeModel m;
    for (std::size_t v = 0; v < n; ++v)
      if (s >> v & 1u) m.push_back(v);
    out.push_back(std::move(m));
  }
  return out;
}

std::string format_model(const OneInThreeModel& model) {
  std::string out = "{";
  for (std::size_t x = 0; x < model.size(); ++x) out += (x ? ",X" : "X") + std::to_string(model[x]);
  return out + "}";
}

// ---------------------------------------------------------------------------
// Linear 3-fold ESSP

TsUnion linear3_base(std::size_t m) {
  if (m == 0) throw ContractError("the construction needs at least one clause");
  std::vector<TransitionSystem> parts;
  std::vector<std::string> names;
  // The seventh edge is o_1, not v_1: with v_1 nothing forces o_1 and B has
  // many key regions instead of one.
  parts.push_back(chain({"k", "z_0", "o_0", "k", "h", "z_0", "o_1", "k"}, "m"));
  names.push_back("M");
  const std::size_t n = 6 * m;
  for (std::size_t j = 0; j < n; ++j) {
    parts.push_back(chain({sub("o", 2 * j), sub("k", 3 * j), sub("o", 2 * j + 1), sub("k", 3 * j + 1),
                           sub("o", 2 * j), sub("k", 3 * j + 2), sub("o", 2 * j + 1)},
                          sub("f", j) + "_"));
    names.push_back(sub("F", j));
  }
  for (std::size_t j = 0; j < n; ++j) {
    parts.push_back(chain({sub("k", 3 * j), sub("z", 2 * j), sub("h", j), sub("k", 3 * j), sub("z", 2 * j + 1),
                           sub("h", j), sub("z", 2 * j + 2), sub("k", 3 * j + 1), sub("z", 2 * j + 1),
                           sub("o", 2 * j + 2), sub("k", 3 * j + 1), sub("z", 2 * j + 2), sub("o", 2 * j + 3),
                           sub("k", 3 * j + 2)},
                          sub("d", j) + "_"));
    names.push_back(sub("D", j));
  }
  return TsUnion(std::move(parts), std::move(names));
}

namespace {

std::vector<std::string> linear3_base_members(std::size_t m) {
  std::vector<std::string> out{"m0", "m3", "m7"};
  for (std::size_t j = 0; j < 6 * m; ++j)
    for (std::size_t x : {1, 3, 5, 7}) out.push_back(sub("f", j, x));
  for (std::size_t j = 0; j < 6 * m; ++j)
    for (std::size_t x : {0, 3, 6, 7, 10, 13}) out.push_back(sub("d", j, x));
  return out;
}

std::size_t linear3_clauses(const TsUnion& base) {
  // M, then 6m refreshers and 6m duplicators, then translators.
  std::size_t n = 0;
  while (base.find_component(sub("F", n))) ++n;
  if (n == 0 || n % 6 != 0) throw ContractError("not an instance of the linear construction");
  return n / 6;
}

TransitionSystem translator_part(const std::vector<std::string>& word, std::size_t i, std::size_t l) {
  return chain(word, sub("t", i, l) + "_");
}

// T_{i,0}..T_{i,2} with variable events named by `var(x)` and tilde `Xt_<i>_<b>`.
template <class Var>
std::vector<TransitionSystem> translator(const CubicMonotoneFormula::Clause& c, std::size_t i, Var var) {
  const std::string tilde = sub("Xt", i, c[1]), proxy = sub("p", i);
  const std::size_t k = 18 * i;
  return {
      translator_part({sub("k", k + 2), var(c[0]), tilde, var(c[2]), sub("k", k + 11)}, i, 0),
      translator_part({sub("k", k + 5), var(c[1]), proxy, sub("k", k + 14)}, i, 1),
      translator_part({sub("k", k + 8), tilde, proxy, sub("k", k + 17)}, i, 2),
  };
}

}  // namespace

Region linear3_base_key_region(const TsUnion& base) {
  return region_from_names(base.system(), linear3_base_members(linear3_clauses(base)), "R^B");
}

std::string linear3_variable(std::size_t x) { return sub("X", x); }

std::vector<TransitionSystem> linear3_translator(const CubicMonotoneFormula& formula, std::size_t i) {
  return translator(formula.clause(i), i, linear3_variable);
}

std::vector<std::string> linear3_translator_members(std::size_t i, std::size_t x) {
  if (x > 2) throw ContractError("translator template index must be 0, 1 or 2");
  auto t = [i](std::size_t l, std::size_t s) { return sub("t", i, l, s); };
  std::vector<std::string> out{t(0, 0), t(1, 0), t(2, 0)};
  if (x == 0) {
    // X_a enters; X̃_b and X_c obey, p_i enters.
    for (auto s : {t(0, 2), t(0, 3), t(0, 4), t(1, 3), t(2, 3)}) out.push_back(s);
  } else if (x == 1) {
    for (auto s : {t(0, 3), t(0, 4), t(1, 2), t(1, 3), t(2, 2), t(2, 3)}) out.push_back(s);
  } else {
    for (auto s : {t(0, 4), t(1, 3), t(2, 3)}) out.push_back(s);
  }
  return out;
}

GadgetInstance build_linear3_essp(const CubicMonotoneFormula& formula) {
  const TsUnion base = linear3_base(formula.size());
  std::vector<TransitionSystem> parts = base.components();
  std::vector<std::string> names = base.names();
  for (std::size_t i = 0; i < formula.size(); ++i) {
    auto t = linear3_translator(formula, i);
    for (std::size_t l = 0; l < 3; ++l) {
      parts.push_back(std::move(t[l]));
      names.push_back(sub("T", i, l));
    }
  }
  TsUnion u(std::move(parts), std::move(names));
  JoinPlan plan = default_plan(u);
  return {std::move(u), KeyQuery{"k", "m6"}, {}, std::move(plan), "linear3-essp\n" + serialize_cnf3(formula)};
}

Region build_key_region_linear3(const GadgetInstance& instance, const CubicMonotoneFormula& formula,
                                const OneInThreeModel& model) {
  require_model(formula, model);
  auto members = linear3_base_members(formula.size());
  for (std::size_t i = 0; i < formula.size(); ++i)
    for (auto& s : linear3_translator_members(i, model_position(formula.clause(i), model))) members.push_back(s);
  return region_from_names(instance.components.system(), members, "assembled key region");
}

OneInThreeModel decode_linear3_model(const GadgetInstance& instance, const CubicMonotoneFormula& formula,
                                     const Region& region) {
  const System& sys = instance.components.system();
  OneInThreeModel out;
  for (std::size_t x = 0; x < formula.variable_count(); ++x)
    if (auto e = sys.find_event(linear3_variable(x)); e && region.sig(*e) == Sign::enter) out.push_back(x);
  return out;
}

// ---------------------------------------------------------------------------
// Linear 3-fold SSP

TsUnion linear3_ssp_union(const TransitionSystem& ts, std::string_view event, std::string_view state) {
  if (!is_linear(ts)) throw ContractError("source transition system is not linear");
  const EventId e = ts.event(event);
  const StateId s = ts.state(state);
  if (ts.enables(s, e)) throw ContractError("state '" + std::string(state) + "' enables '" + std::string(event) + "'");

  std::vector<TransitionSystem> parts;
  std::vector<std::string> names;
  parts.push_back(chain({"e", "v_0", "e", "v_1", "e"}, "m"));
  names.push_back("M");
  for (std::size_t j = 0; j < 5; ++j) {
    const std::string e0 = sub("e", 2 * j), e1 = sub("e", 2 * j + 1);
    const std::string v0 = sub("v", 2 * j), v1 = sub("v", 2 * j + 1);
    parts.push_back(chain({v0, e0, v1, sub("b", 2 * j), v0, e1, v1, sub("b", 2 * j + 1), e0, sub("v", 2 * j + 2), e1,
                           sub("v", 2 * j + 3), e0},
                          sub("d", j) + "_"));
    names.push_back(sub("D", j));
  }
  parts.push_back(chain({"e_7", "h_1", "e_9", "b", "v_10", "h_2", "v_11"}, "p"));
  names.push_back("P");

  const auto order = linear_states(ts);
  const auto word = linear_word(ts);
  TransitionSystem::Builder b;
  b.initial("c." + ts.state_name(order[0]));
  std::size_t copies = 0;
  std::string from = "c." + ts.state_name(order[0]);
  for (std::size_t x = 0; x <= word.size(); ++x) {
    if (order[x] == s) {
      b.edge(from, "h_1", "c:p").edge("c:p", "h_2", "c:s");
      from = "c:s";
    }
    if (x == word.size()) break;
    std::string label;
    if (word[x] == e) {
      if (copies == 3) throw ContractError("event '" + std::string(event) + "' occurs more than three times");
      label = sub("e", 2 * copies++ + 1);
    } else {
      label = "c." + ts.event_name(word[x]);
    }
    const std::string to = "c." + ts.state_name(order[x + 1]);
    b.edge(from, label, to);
    from = to;
  }
  parts.push_back(b.build());
  names.push_back("C");
  return TsUnion(std::move(parts), std::move(names));
}

GadgetInstance build_linear3_ssp(const TransitionSystem& ts) {
  if (!is_linear(ts)) throw ContractError("source transition system is not linear");
  if (classify(ts).manifoldness > 3) throw ContractError("source transition system is not 3-fold");
  const auto order = linear_states(ts);
  std::vector<TsUnion> unions;
  std::vector<KeyPair> pairs;
  for (EventId e = 0; e < ts.event_count(); ++e)
    for (StateId s : order) {
      if (ts.enables(s, e)) continue;
      const std::string& en = ts.event_name(e);
      const std::string& sn = ts.state_name(s);
      unions.push_back(rectify(linear3_ssp_union(ts, en, sn), en, sn));
      const std::string p = rectify_prefix(en, sn);
      pairs.push_back({p + "m0", p + "m1"});
    }
  if (unions.empty()) throw ContractError("every event is enabled everywhere; nothing to reduce");
  TsUnion u = flatten(unions);
  JoinPlan plan = default_plan(u);
  return {std::move(u), std::nullopt, std::move(pairs), std::move(plan), "linear3-ssp\n" + serialize_ts(ts)};
}

Bitset copy_restriction(const System& sys, const Region& region, const TransitionSystem& ts, std::string_view prefix) {
  Bitset out(ts.state_count());
  for (StateId s = 0; s < ts.state_count(); ++s) {
    const std::string name = std::string(prefix) + "c." + ts.state_name(s);
    out[s] = region.contains(sys.state(name));
  }
  return out;
}

// ---------------------------------------------------------------------------
// 2-grade 2-fold ESSP

std::string grade2_representer(std::size_t clause, std::size_t var) {
  return "X." + std::to_string(clause) + "." + std::to_string(var);
}

GadgetInstance build_2grade2_essp(const CubicMonotoneFormula& formula) {
  if (!formula.checked()) throw ContractError("the 2-grade construction needs a cubic monotone formula");
  const std::size_t m = formula.size();
  if (m == 0) throw ContractError("the construction needs at least one clause");
  const std::size_t n = 14 * m;
  std::vector<TransitionSystem> parts;
  std::vector<std::string> names;
  JoinPlan plan;

  TransitionSystem::Builder h;
  h.initial("h_0_0");
  for (std::size_t j = 0; j < n; ++j) {
    auto s = [j](std::size_t x) { return sub("h", j, x); };
    const std::string k0 = j == 0 ? "k" : sub("k", 3 * j - 3), k1 = j == 0 ? "k" : sub("k", 3 * j - 2);
    const std::string z0 = sub("z", 2 * j), z1 = sub("z", 2 * j + 1);
    h.edge(s(0), k0, s(1));
    h.edge(s(1), z0, s(2)).edge(s(2), sub("v", 2 * j), s(4));
    h.edge(s(1), z1, s(3)).edge(s(3), sub("v", 2 * j + 1), s(4));
    h.edge(s(4), k1, s(5));
    h.edge(s(5), sub("w", 2 * j), s(6)).edge(s(6), z0, s(8));
    h.edge(s(5), sub("w", 2 * j + 1), s(7)).edge(s(7), z1, s(8));
    if (j + 1 < n) {
      h.edge(s(0), sub("r", j), sub("h", j + 1, 0));
      h.edge(s(8), sub("a", j), sub("h", j + 1, 8));
    }
  }
  parts.push_back(h.build());
  names.push_back("H");
  plan.terminals.emplace_back("h_0_8");

  for (std::size_t j = 0; j < n; ++j) {
    auto s = [j](std::size_t x) { return sub("d", j, x); };
    TransitionSystem::Builder d;
    d.initial(s(0));
    d.edge(s(0), sub("k", 3 * j + 1), s(1)).edge(s(1), sub("v", 2 * j), s(2)).edge(s(2), sub("k", 3 * j), s(3));
    d.edge(s(3), sub("v", 2 * j + 1), s(4)).edge(s(4), sub("w", 2 * j), s(0)).edge(s(4), sub("k", 3 * j + 2), s(1));
    d.edge(s(1), sub("a", j), s(3));
    parts.push_back(d.build());
    names.push_back(sub("D", j));
    plan.terminals.emplace_back(s(0));
  }

  // Barters take the free key copies k_{3j+2} for j = 6m..14m-1.
  for (std::size_t q = 0; q < 4 * m; ++q) {
    const std::size_t q1 = 6 * q + 18 * m + 2, q2 = q1 + 3;
    auto s = [q](std::size_t x) { return sub("b", q, x); };
    TransitionSystem::Builder b;
    b.initial(s(0));
    b.edge(s(0), sub("k", q1), s(1)).edge(s(0), sub("c", q), s(2)).edge(s(2), sub("k", q2), s(3));
    parts.push_back(b.build());
    names.push_back(sub("B", q));
    plan.terminals.emplace_back(s(1));
  }

  for (std::size_t i = 0; i < m; ++i) {
    const auto occ = formula.occurrences(i);
    auto s = [i](std::size_t x) { return sub("x", i, x); };
    TransitionSystem::Builder x;
    x.initial(s(0));
    x.edge(s(0), sub("c", 4 * i), s(1)).edge(s(1), sub("c", 4 * i + 1), s(2));
    x.edge(s(3), sub("c", 4 * i + 2), s(4)).edge(s(4), sub("c", 4 * i + 3), s(5));
    for (std::size_t l = 0; l < 3; ++l) x.edge(s(l), grade2_representer(occ[l], i), s(l + 3));
    parts.push_back(x.build());
    names.push_back(sub("X", i));
    plan.terminals.emplace_back(s(5));
  }

  for (std::size_t i = 0; i < m; ++i) {
    auto t = translator(formula.clause(i), i, [i](std::size_t v) { return grade2_representer(i, v); });
    for (std::size_t l = 0; l < 3; ++l) {
      plan.terminals.emplace_back(sub("t", i, l, l == 0 ? 5 : 4));
      parts.push_back(std::move(t[l]));
      names.push_back(sub("T", i, l));
    }
  }
  TsUnion u(std::move(parts), std::move(names));
  return {std::move(u), KeyQuery{"k", "h_0_8"}, {}, std::move(plan), "2grade2-essp\n" + serialize_cnf3(formula)};
}

Region build_key_region_2grade2(const GadgetInstance& instance, const CubicMonotoneFormula& formula,
                                const OneInThreeModel& model) {
  require_model(formula, model);
  const std::size_t m = formula.size();
  std::vector<std::string> members;
  for (std::size_t j = 0; j < 14 * m; ++j)
    for (std::size_t x : {0, 4}) members.push_back(sub("h", j, x));
  for (std::size_t j = 0; j < 14 * m; ++j)
    for (std::size_t x : {0, 2, 4}) members.push_back(sub("d", j, x));
  for (std::size_t q = 0; q < 4 * m; ++q)
    for (std::size_t x : {0, 2}) members.push_back(sub("b", q, x));
  for (std::size_t i = 0; i < m; ++i) {
    const bool chosen = std::binary_search(model.begin(), model.end(), i);
    for (std::size_t x = chosen ? 3 : 0; x < 6; ++x) members.push_back(sub("x", i, x));
  }
  for (std::size_t i = 0; i < m; ++i)
    for (auto& s : linear3_translator_members(i, model_position(formula.clause(i), model))) members.push_back(s);
  return region_from_names(instance.components.system(), members, "assembled key region");
}

OneInThreeModel decode_2grade2_model(const GadgetInstance& instance, const CubicMonotoneFormula& formula,
                                     const Region& region) {
  const System& sys = instance.components.system();
  OneInThreeModel out;
  for (std::size_t x = 0; x < formula.variable_count(); ++x) {
    const auto occ = formula.occurrences(x);
    if (occ.empty()) continue;
    if (auto e = sys.find_event(grade2_representer(occ[0], x)); e && region.sig(*e) == Sign::enter) out.push_back(x);
  }
  return out;
}

// ---------------------------------------------------------------------------
// 2-grade 2-fold SSP

std::string event_copy(std::string_view event, std::size_t i) { return std::string(event) + "." + std::to_string(i); }

std::string accordance(std::string_view event, std::size_t i) {
  return "a." + std::string(event) + "." + std::to_string(i);
}

GadgetInstance build_2grade2_ssp(const TransitionSystem& ts) {
  if (!is_linear(ts)) throw ContractError("source transition system is not linear");
  if (classify(ts).manifoldness > 3) throw ContractError("source transition system is not 3-fold");
  std::vector<EventId> threefold;
  for (EventId e = 0; e < ts.event_count(); ++e)
    if (ts.event_edges(e).size() == 3) threefold.push_back(e);

  std::map<std::size_t, std::string> relabel;  // edge index -> copy name
  for (EventId e : threefold) {
    const auto edges = ts.event_edges(e);
    for (std::size_t x = 0; x < 3; ++x) relabel[edges[x]] = event_copy(ts.event_name(e), x);
  }
  TransitionSystem::Builder a;
  for (const auto& s : ts.state_names()) a.state(s);
  a.initial(ts.state_name(ts.initial()));
  for (std::size_t i = 0; i < ts.edge_count(); ++i) {
    const Edge& ed = ts.edge(i);
    auto it = relabel.find(i);
    a.edge(ts.state_name(ed.source), it == relabel.end() ? ts.event_name(ed.event) : it->second,
           ts.state_name(ed.target));
  }
  std::vector<TransitionSystem> parts{a.build()};
  std::vector<std::string> names{"A"};
  JoinPlan plan;
  plan.terminals.emplace_back(ts.state_name(linear_states(ts).back()));

  for (EventId e : threefold) {
    const std::string& en = ts.event_name(e);
    auto s = [&en](std::size_t x) { return "d." + en + "." + std::to_string(x); };
    TransitionSystem::Builder d;
    d.initial(s(0));
    d.edge(s(0), event_copy(en, 0), s(1)).edge(s(0), accordance(en, 0), s(2));
    d.edge(s(2), event_copy(en, 1), s(3)).edge(s(2), accordance(en, 1), s(4));
    d.edge(s(1), accordance(en, 0), s(3)).edge(s(3), accordance(en, 1), s(5));
    d.edge(s(4), event_copy(en, 2), s(5));
    parts.push_back(d.build());
    names.push_back("D." + en);
    plan.terminals.emplace_back(s(5));
  }
  for (EventId e : threefold)
    for (std::size_t x = 0; x < 3; ++x)
      for (const auto& name : {event_copy(ts.event_name(e), x), accordance(ts.event_name(e), x)})
        if (ts.find_event(name)) throw ContractError("generated name '" + name + "' clashes with a source event");
  TsUnion u(std::move(parts), std::move(names));
  return {std::move(u), std::nullopt, {}, std::move(plan), "2grade2-ssp\n" + serialize_ts(ts)};
}

}  // namespace ens
