#pragma once

// Backtracking model search over finite domains.
//
// Branching follows canonical symbol order with values in declared order, so
// enumerate() yields models in lexicographic order. At every node each
// sentence is filtered against the current domains: a value is removed when
// fixing the symbol to it makes some sentence three-valued false. This only
// discards values that occur in no model, so the set and the order of models
// are those of plain Kleene-pruned backtracking.

#include <functional>
#include <optional>
#include <vector>

#include "domains.hpp"
#include "imx/formula.hpp"

namespace imx::detail {

class ModelSearch {
public:
    using Model = std::vector<ValueIndex>;
    /// Return false to stop the enumeration.
    using Visitor = std::function<bool(const Model&)>;

    ModelSearch(const Vocabulary& vocab, std::vector<Formula> sentences);

    /// Visits every model expanding `base` in canonical lexicographic order.
    /// Returns false if the visitor stopped early.
    bool enumerate(const PartialStructure& base, const Visitor& visit) const;

    /// Some model expanding the given domains, not necessarily the
    /// lexicographically first one. Symbols occurring in no sentence take
    /// their first allowed value.
    std::optional<Model> find_any(DomainState domains) const;
    std::optional<Model> find_any(const PartialStructure& base) const { return find_any(DomainState(base)); }

    /// Reduces the domains to a fixpoint of the sentence filter. Returns false
    /// when a sentence is false or a domain becomes empty.
    bool propagate(DomainState& d) const;

    const std::vector<Formula>& sentences() const { return sentences_; }
    bool constrained(std::size_t sym) const { return !watch_[sym].empty(); }

private:
    enum class Outcome { Exhausted, Found, Stopped };

    bool propagate(DomainState& d, std::vector<std::size_t> queue) const;
    Outcome lex(DomainState& d, std::size_t from, const Visitor& visit) const;
    std::optional<Model> any(DomainState& d) const;
    static Model extract(const DomainState& d);

    std::size_t symbol_count_ = 0;
    std::vector<Formula> sentences_;
    std::vector<std::vector<std::size_t>> symbols_of_;  // sentence -> symbols
    std::vector<std::vector<std::size_t>> watch_;       // symbol -> sentences
};

}  // namespace imx::detail
