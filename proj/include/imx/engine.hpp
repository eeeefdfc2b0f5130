#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "imx/knowledge_base.hpp"
#include "imx/structure.hpp"

namespace imx {

/// Which theories a reasoning call must satisfy.
enum class TheorySet { EnvOnly, Both };

/// A state of the interactive process: observations over environmental
/// symbols and decisions over decision symbols.
struct SolveState {
    PartialStructure obs;
    PartialStructure dec;

    /// obs joined with dec. Throws OverlapError if they share a symbol.
    PartialStructure combined() const { return join(obs, dec); }
    friend bool operator==(const SolveState&, const SolveState&) = default;
};

/// For every symbol, which domain values occur in at least one model.
class PossibleValues {
public:
    PossibleValues() = default;
    explicit PossibleValues(const Vocabulary& vocab);

    bool possible(SymbolId id, ValueIndex v) const { return table_[id.value()][static_cast<std::size_t>(v)] != 0; }
    void mark(SymbolId id, ValueIndex v) { table_[id.value()][static_cast<std::size_t>(v)] = 1; }
    void merge(const PossibleValues& other);
    std::size_t count(SymbolId id) const;
    std::vector<ValueIndex> values(SymbolId id) const;
    /// The only possible value, if exactly one remains.
    std::optional<ValueIndex> fixed(SymbolId id) const;

    friend bool operator==(const PossibleValues&, const PossibleValues&) = default;

private:
    std::vector<std::vector<char>> table_;
};

/// One sentence of a simplified theory.
struct ResidueSentence {
    Formula formula;
    /// Position in Tenv followed by Tsol.
    std::size_t origin = 0;
    bool from_environment = false;
    bool is_definition = false;
    std::optional<SymbolId> defined;
    /// The sentence folded to false under the simplifying structure.
    bool falsified = false;
};

struct Residue {
    std::vector<ResidueSentence> sentences;

    bool inconsistent() const;
    /// Symbols occurring in the residue, canonical order.
    std::vector<SymbolId> symbols() const;
};

/// Reasoning services over a knowledge base with finite domains.
///
/// An Engine is immutable after construction; all member functions are const
/// and may be called concurrently.
class Engine {
public:
    explicit Engine(KnowledgeBase kb);

    const KnowledgeBase& kb() const { return kb_; }
    const Vocabulary& vocab() const { return kb_.vocab(); }

    /// Sentences of Tenv (EnvOnly) or Tenv followed by Tsol (Both).
    std::vector<Formula> sentences(TheorySet which) const;

    /// Up to `limit` total structures expanding obs+dec that satisfy the
    /// selected theories, in canonical lexicographic order. Requires limit >= 1.
    std::vector<TotalStructure> enumerate_models(const SolveState& state, TheorySet which, std::size_t limit) const;
    std::vector<TotalStructure> enumerate_models(const PartialStructure& base, TheorySet which,
                                                 std::size_t limit) const;

    bool is_consistent(const SolveState& state) const;
    bool is_consistent(const PartialStructure& base, TheorySet which) const;

    /// Some model of the selected theories plus `extra` expanding `base`.
    std::optional<TotalStructure> find_model(const PartialStructure& base, TheorySet which,
                                             const std::vector<Formula>& extra = {}) const;

    /// Possible values of every symbol in scope over the models expanding
    /// `base`. Scope is the environmental symbols for EnvOnly and all symbols
    /// for Both; out-of-scope symbols report every value possible.
    /// Probes run in parallel. Throws InconsistentState when there is no model.
    PossibleValues possible_values(const PartialStructure& base, TheorySet which) const;

    /// Optimal propagation: `base` plus every in-scope symbol that takes the
    /// same value in all models expanding it. Throws InconsistentState.
    PartialStructure backbone(const PartialStructure& base, TheorySet which) const;

    /// All subset-minimal sets of decision facts whose retraction lets
    /// `blocked` be added consistently, in lexicographic order.
    /// Throws InconsistentState("state already inconsistent") or
    /// imx::Error("fact not blocking").
    std::vector<std::vector<Fact>> retraction_candidates(const SolveState& state, const Fact& blocked) const;

    /// Substitutes the interpreted symbols of `s` into Tenv and Tsol, folds
    /// constants and drops sentences that became true.
    Residue simplify(const PartialStructure& s) const;

private:
    KnowledgeBase kb_;
};

/// Serial reference kernels kept for testing and benchmarking the parallel ones.
namespace serial {

/// Probes every (symbol, value) pair independently, one search each.
PossibleValues possible_values(const Engine& engine, const PartialStructure& base, TheorySet which);
PartialStructure backbone(const Engine& engine, const PartialStructure& base, TheorySet which);

}  // namespace serial

/// Folds constants in a formula under a partial structure.
Formula simplify(const Formula& f, const PartialStructure& s);

}  // namespace imx
