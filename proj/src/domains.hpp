#pragma once

// Per-symbol sets of still-possible values, used by three-valued evaluation
// and by the model search.

#include <cstdint>
#include <vector>

#include "imx/formula.hpp"
#include "imx/structure.hpp"

namespace imx::detail {

class DomainState {
public:
    DomainState() = default;
    /// Full domains for uninterpreted symbols, singletons for interpreted ones.
    explicit DomainState(const PartialStructure& s);

    std::size_t symbols() const { return offset_.size(); }
    std::size_t domain_size(std::size_t sym) const { return size_[sym]; }
    bool allowed(std::size_t sym, ValueIndex v) const { return alive_[offset_[sym] + v] != 0; }
    std::size_t remaining(std::size_t sym) const { return remaining_[sym]; }
    bool fixed(std::size_t sym) const { return remaining_[sym] == 1; }
    /// Smallest allowed value (the fixed value when fixed()).
    ValueIndex first(std::size_t sym) const;

    void remove(std::size_t sym, ValueIndex v);
    void assign(std::size_t sym, ValueIndex v);

private:
    std::vector<std::uint8_t> alive_;
    std::vector<std::uint32_t> offset_;
    std::vector<std::uint32_t> size_;
    std::vector<std::uint32_t> remaining_;
};

/// Kleene evaluation where an atom is True/False when every allowed value of
/// its symbol satisfies/falsifies it.
Truth eval3(const Formula& f, const DomainState& d);

/// Same, with symbol `sym` temporarily restricted to the single value `v`.
Truth eval3_with(const Formula& f, const DomainState& d, std::size_t sym, ValueIndex v);

}  // namespace imx::detail
