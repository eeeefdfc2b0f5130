#pragma once

#include <cstddef>
#include <optional>
#include <set>
#include <vector>

#include "imx/engine.hpp"

namespace imx {

/// New facts obtained by propagating a state.
///
/// `obs_safe` follows from the observations under Tenv alone and holds in the
/// user's environment. `obs_to_verify` and `dec_consequence` follow only from
/// Tenv and Tsol together; the former must still be checked by observation.
struct PropagationSplit {
    PartialStructure obs_safe;
    PartialStructure obs_to_verify;
    PartialStructure dec_consequence;
};

/// Outcome of a definite or contingent check, with a counterexample when it fails.
struct Verdict {
    bool holds = false;
    std::optional<PartialStructure> counterexample;
};

struct SolutionVerdict {
    bool is_definite = false;
    bool is_contingent = false;
    /// Counterexample of the first failing check, if any.
    std::optional<PartialStructure> witness;
};

using SymbolSet = std::set<SymbolId>;

inline constexpr std::size_t kDefaultExactLimit = 16;

/// Throws InconsistentState when the state has no model of Tenv and Tsol.
PropagationSplit propagate_split(const Engine& engine, const SolveState& state);

/// The state with its safe and decision consequences added. Facts still to be
/// verified are left out.
SolveState effective_state(const SolveState& state, const PropagationSplit& split);

/// Every Tenv-respecting environment expanding the observations, combined with
/// every decision expansion, satisfies Tsol. Searches one counterexample per
/// Tsol sentence.
Verdict check_definite(const Engine& engine, const SolveState& state);

/// Every Tenv-respecting environment expanding the observations admits some
/// decision expansion satisfying Tsol. The failing environment is returned as
/// counterexample (a total structure over the environmental symbols).
Verdict check_contingent(const Engine& engine, const SolveState& state);

SolutionVerdict check_solution(const Engine& engine, const SolveState& state);

/// All <=_p-minimal consistent definite solutions expanding `state`, found by
/// breadth-first layering over added facts. Throws SizeGuardExceeded when the
/// vocabulary has more than `max_symbols` symbols and InconsistentState when
/// the state is inconsistent.
std::vector<SolveState> minimal_definite_solutions(const Engine& engine, const SolveState& state,
                                                   std::size_t max_symbols = kDefaultExactLimit);

/// Symbols interpreted in at least one minimal definite solution.
SymbolSet relevant_exact(const Engine& engine, const SolveState& state,
                         std::size_t max_symbols = kDefaultExactLimit);

/// Over-approximation of relevance from the propagated literals and the
/// simplified theory, closed under the definitions of relevant symbols.
SymbolSet relevant_approx(const Engine& engine, const SolveState& state);
SymbolSet relevant_approx(const Engine& engine, const SolveState& state, const PropagationSplit& split);

enum class RelevanceMode { Exact, Approx };

enum class SymbolStatus {
    GivenObservation,
    GivenDecision,
    SafeConsequence,
    ToVerify,
    DecisionConsequence,
    RelevantUnknown,
    Irrelevant
};

const char* to_string(SymbolStatus status);
const char* to_string(RelevanceMode mode);

struct SymbolReport {
    SymbolId symbol;
    SymbolStatus status = SymbolStatus::RelevantUnknown;
    std::optional<ValueIndex> value;
};

struct StateReport {
    RelevanceMode mode = RelevanceMode::Approx;
    bool consistent = true;
    std::vector<SymbolReport> symbols;
    PropagationSplit split;
    SymbolSet relevant;
    /// No relevant symbol is left open and the definite check confirms it.
    bool definite_reached = false;
    /// No relevant environmental symbol is left open and the contingent check confirms it.
    bool contingent_reached = false;
    /// Ground truth of the checks on the effective state.
    bool verified_definite = false;
    bool verified_contingent = false;
    std::size_t history_length = 0;
};

/// Full status of a state: propagation split, relevance, per-symbol status and banners.
StateReport make_report(const Engine& engine, const SolveState& state, RelevanceMode mode,
                        std::size_t history_length = 0, std::size_t exact_limit = kDefaultExactLimit);

}  // namespace imx
