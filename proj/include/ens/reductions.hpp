#pragma once

#include <array>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "ens/regions.hpp"
#include "ens/unions.hpp"

namespace ens {

/// Clauses K_0..K_{m-1} of three positive variables each. A checked formula
/// has every variable of 0..m-1 in exactly three pairwise distinct clauses.
class CubicMonotoneFormula {
 public:
  using Clause = std::array<std::size_t, 3>;

  /// Throws ContractError if the formula is not cubic monotone. Clause
  /// members are sorted, so a, b, c are ascending.
  explicit CubicMonotoneFormula(std::vector<Clause> clauses);

  /// Only requires three distinct variables per clause; used for scaffolding
  /// instances such as the single-clause formula.
  static CubicMonotoneFormula unchecked(std::vector<Clause> clauses);

  std::size_t size() const { return clauses_.size(); }
  const std::vector<Clause>& clauses() const { return clauses_; }
  const Clause& clause(std::size_t i) const { return clauses_.at(i); }
  bool checked() const { return checked_; }
  /// Highest variable index plus one.
  std::size_t variable_count() const;
  /// The clauses containing variable x, ascending.
  std::vector<std::size_t> occurrences(std::size_t x) const;

 private:
  CubicMonotoneFormula(std::vector<Clause> clauses, bool check);

  std::vector<Clause> clauses_;
  bool checked_ = true;
};

/// `clause <v> <v> <v>` per line, `#` comments. Pass `checked = false` for
/// scaffolding formulas.
CubicMonotoneFormula parse_cnf3(std::string_view text, bool checked = true);
std::string serialize_cnf3(const CubicMonotoneFormula& formula);

/// Sorted variable indices.
using OneInThreeModel = std::vector<std::size_t>;

bool is_one_in_three_model(const CubicMonotoneFormula& formula, const OneInThreeModel& model);

/// Every model by trying all 2^n variable subsets in increasing bitmask
/// order. Throws ContractError above 24 variables.
std::vector<OneInThreeModel> find_one_in_three_models(const CubicMonotoneFormula& formula);

/// `{X0,X4}`.
std::string format_model(const OneInThreeModel& model);

struct KeyQuery {
  std::string event;
  std::string state;
  bool operator==(const KeyQuery&) const = default;
};

struct KeyPair {
  std::string first;
  std::string second;
  bool operator==(const KeyPair&) const = default;
};

struct GadgetInstance {
  TsUnion components;
  /// Set for the ESSP constructions.
  std::optional<KeyQuery> key_query;
  /// Non-empty for the SSP constructions.
  std::vector<KeyPair> key_pairs;
  JoinPlan plan;
  std::string provenance;

  TransitionSystem joined() const { return join(components, plan); }
};

// Linear 3-fold ESSP: master, refreshers, duplicators and translators.

/// B = U(M, F_0..F_{6m-1}, D_0..D_{6m-1}) for m clauses.
TsUnion linear3_base(std::size_t m);

/// The unique region of B with sig(k) = -1 and R(m6) = 0.
Region linear3_base_key_region(const TsUnion& base);

/// T_{i,0}, T_{i,1}, T_{i,2} for clause i.
std::vector<TransitionSystem> linear3_translator(const CubicMonotoneFormula& formula, std::size_t i);

/// Member states of R^{T_i}_x where x in {0, 1, 2} picks a, b or c.
std::vector<std::string> linear3_translator_members(std::size_t i, std::size_t x);

/// Event name of variable x in the linear construction, `X_<x>`.
std::string linear3_variable(std::size_t x);

/// Key query (k, m6); joins into a linear 3-fold TS.
GadgetInstance build_linear3_essp(const CubicMonotoneFormula& formula);

/// R^B together with R^{T_i}_x for the model variable x of every clause.
/// Throws ContractError if `model` is not a one-in-three model.
Region build_key_region_linear3(const GadgetInstance& instance, const CubicMonotoneFormula& formula,
                                const OneInThreeModel& model);

/// Variables whose event enters a key region of the linear construction.
OneInThreeModel decode_linear3_model(const GadgetInstance& instance, const CubicMonotoneFormula& formula,
                                     const Region& region);

// Linear 3-fold SSP from linear 3-fold ESSP: mapper, duplicators, provider, copy.

/// U^e_s before rectification. Copy states and events are `c.<name>`, the
/// split states `c:p` and `c:s`. Throws ContractError if s enables e, e
/// occurs more than three times or ts is not linear.
TsUnion linear3_ssp_union(const TransitionSystem& ts, std::string_view event, std::string_view state);

/// One rectified U^e_s per event e and state s without an e-edge, events
/// outer, states in chain order; key pairs ((e,s,m0), (e,s,m1)).
GadgetInstance build_linear3_ssp(const TransitionSystem& ts);

/// R' = R restricted to the copy C, as a membership over the states of the
/// source `ts`. `prefix` is the rectification prefix, or empty.
Bitset copy_restriction(const System& sys, const Region& region, const TransitionSystem& ts,
                        std::string_view prefix = {});

// 2-grade 2-fold ESSP: headmaster, duplicators, barters, manifolders, translators.

/// Event name of X^clause_var, `X.<clause>.<var>`.
std::string grade2_representer(std::size_t clause, std::size_t var);

/// Key query (k, h_0_8). Throws ContractError on an unchecked formula.
GadgetInstance build_2grade2_essp(const CubicMonotoneFormula& formula);

/// The region assembled gadget by gadget from `model`. Throws ContractError
/// if `model` is not a one-in-three model.
Region build_key_region_2grade2(const GadgetInstance& instance, const CubicMonotoneFormula& formula,
                                const OneInThreeModel& model);

OneInThreeModel decode_2grade2_model(const GadgetInstance& instance, const CubicMonotoneFormula& formula,
                                     const Region& region);

// 2-grade 2-fold SSP from linear 3-fold SSP.

/// Names of the copies e^0, e^1, e^2 and accordance events a^e_0, a^e_1.
std::string event_copy(std::string_view event, std::size_t i);
std::string accordance(std::string_view event, std::size_t i);

/// U(A^2fold, D_e...) for every event occurring exactly three times. The
/// components are `A` and `D.<e>`.
GadgetInstance build_2grade2_ssp(const TransitionSystem& ts);

}  // namespace ens
