#pragma once

#include <optional>
#include <string>
#include <vector>

#include "imx/vocabulary.hpp"

namespace imx {

/// A single assignment `symbol = value`.
struct Fact {
    SymbolId symbol;
    ValueIndex value = 0;

    friend auto operator<=>(const Fact&, const Fact&) = default;
};

/// Partial map from symbols to domain values over a shared vocabulary.
///
/// Two structures are comparable only when they share the same Vocabulary
/// object. Assigned values are always members of the symbol's domain.
class PartialStructure {
public:
    PartialStructure() = default;
    explicit PartialStructure(VocabularyPtr vocab);

    const VocabularyPtr& vocabulary_ptr() const { return vocab_; }
    const Vocabulary& vocabulary() const { return *vocab_; }

    bool is_interpreted(SymbolId id) const { return values_[id.value()] >= 0; }
    std::optional<ValueIndex> get(SymbolId id) const;
    /// Precondition: is_interpreted(id).
    ValueIndex value(SymbolId id) const { return values_[id.value()]; }

    /// Throws imx::Error if the value lies outside the symbol's domain.
    void set(SymbolId id, ValueIndex v);
    void set(const Fact& f) { set(f.symbol, f.value); }
    void erase(SymbolId id) { values_[id.value()] = -1; }

    std::size_t count() const;
    bool empty() const { return count() == 0; }
    bool is_total() const { return count() == values_.size(); }

    /// Interpreted symbols in canonical order.
    std::vector<SymbolId> interpreted() const;
    std::vector<Fact> facts() const;

    /// Raw assignment vector, -1 for uninterpreted symbols.
    const std::vector<ValueIndex>& raw() const { return values_; }

    /// Restriction to symbols of the given kind.
    PartialStructure restricted_to(SymbolKind kind) const;
    /// This structure without the symbols interpreted by `other`.
    PartialStructure minus(const PartialStructure& other) const;

    /// `{A = true, B = Modest}` in canonical order.
    std::string to_string() const;

    friend bool operator==(const PartialStructure& a, const PartialStructure& b) {
        return a.vocab_ == b.vocab_ && a.values_ == b.values_;
    }

private:
    VocabularyPtr vocab_;
    std::vector<ValueIndex> values_;
};

using TotalStructure = PartialStructure;

/// S <=_p S2: every fact of S holds in S2. Throws VocabularyMismatch.
bool leq_precise(const PartialStructure& s, const PartialStructure& s2);

/// Union of two disjoint structures. Throws OverlapError naming the shared symbols.
PartialStructure join(const PartialStructure& s, const PartialStructure& s2);

/// Enumerates the total expansions of a partial structure in canonical
/// lexicographic order (declaration order, declared value order).
class ExpansionEnumerator {
public:
    explicit ExpansionEnumerator(const PartialStructure& base);

    /// Next expansion, or nullopt when exhausted.
    std::optional<TotalStructure> next();

    /// Number of total expansions (product of free domain sizes).
    static unsigned long long count(const PartialStructure& base);

private:
    PartialStructure current_;
    std::vector<SymbolId> free_;
    bool started_ = false;
    bool done_ = false;
};

}  // namespace imx
