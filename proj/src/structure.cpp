#include "imx/structure.hpp"

#include "imx/error.hpp"

namespace imx {

PartialStructure::PartialStructure(VocabularyPtr vocab)
    : vocab_(std::move(vocab)), values_(vocab_ ? vocab_->size() : 0, -1) {}

std::optional<ValueIndex> PartialStructure::get(SymbolId id) const {
    auto v = values_[id.value()];
    if (v < 0) return std::nullopt;
    return v;
}

void PartialStructure::set(SymbolId id, ValueIndex v) {
    const auto& decl = (*vocab_)[id];
    if (!decl.domain.contains(v))
        throw Error("value index " + std::to_string(v) + " outside the domain of '" + decl.name + "'");
    values_[id.value()] = v;
}

std::size_t PartialStructure::count() const {
    std::size_t n = 0;
    for (auto v : values_) n += v >= 0;
    return n;
}

std::vector<SymbolId> PartialStructure::interpreted() const {
    std::vector<SymbolId> out;
    for (std::size_t i = 0; i < values_.size(); ++i)
        if (values_[i] >= 0) out.emplace_back(i);
    return out;
}

std::vector<Fact> PartialStructure::facts() const {
    std::vector<Fact> out;
    for (std::size_t i = 0; i < values_.size(); ++i)
        if (values_[i] >= 0) out.push_back({SymbolId{i}, values_[i]});
    return out;
}

PartialStructure PartialStructure::restricted_to(SymbolKind kind) const {
    PartialStructure out(vocab_);
    for (std::size_t i = 0; i < values_.size(); ++i)
        if (values_[i] >= 0 && vocab_->symbols()[i].kind == kind) out.values_[i] = values_[i];
    return out;
}

PartialStructure PartialStructure::minus(const PartialStructure& other) const {
    if (vocab_ != other.vocab_) throw VocabularyMismatch();
    PartialStructure out = *this;
    for (std::size_t i = 0; i < values_.size(); ++i)
        if (other.values_[i] >= 0) out.values_[i] = -1;
    return out;
}

std::string PartialStructure::to_string() const {
    std::string s = "{";
    bool first = true;
    for (std::size_t i = 0; i < values_.size(); ++i) {
        if (values_[i] < 0) continue;
        if (!first) s += ", ";
        first = false;
        const auto& decl = vocab_->symbols()[i];
        s += decl.name + " = " + decl.domain.format(values_[i]);
    }
    return s + "}";
}

bool leq_precise(const PartialStructure& s, const PartialStructure& s2) {
    if (s.vocabulary_ptr() != s2.vocabulary_ptr()) throw VocabularyMismatch();
    const auto& a = s.raw();
    const auto& b = s2.raw();
    for (std::size_t i = 0; i < a.size(); ++i)
        if (a[i] >= 0 && a[i] != b[i]) return false;
    return true;
}

PartialStructure join(const PartialStructure& s, const PartialStructure& s2) {
    if (s.vocabulary_ptr() != s2.vocabulary_ptr()) throw VocabularyMismatch();
    std::vector<std::string> shared;
    for (auto id : s.interpreted())
        if (s2.is_interpreted(id)) shared.push_back(s.vocabulary()[id].name);
    if (!shared.empty()) throw OverlapError(std::move(shared));
    PartialStructure out = s;
    for (const auto& f : s2.facts()) out.set(f);
    return out;
}

ExpansionEnumerator::ExpansionEnumerator(const PartialStructure& base) : current_(base) {
    for (std::size_t i = 0; i < base.raw().size(); ++i)
        if (base.raw()[i] < 0) free_.emplace_back(i);
}

std::optional<TotalStructure> ExpansionEnumerator::next() {
    if (done_) return std::nullopt;
    if (!started_) {
        started_ = true;
        for (auto id : free_) current_.set(id, 0);
        return current_;
    }
    // Odometer step: the last symbol in canonical order varies fastest.
    for (auto it = free_.rbegin(); it != free_.rend(); ++it) {
        const auto size = static_cast<ValueIndex>(current_.vocabulary()[*it].domain.size());
        const auto v = current_.value(*it) + 1;
        if (v < size) {
            current_.set(*it, v);
            return current_;
        }
        current_.set(*it, 0);
    }
    done_ = true;
    return std::nullopt;
}

unsigned long long ExpansionEnumerator::count(const PartialStructure& base) {
    unsigned long long n = 1;
    for (std::size_t i = 0; i < base.raw().size(); ++i)
        if (base.raw()[i] < 0) n *= base.vocabulary().symbols()[i].domain.size();
    return n;
}

}  // namespace imx
