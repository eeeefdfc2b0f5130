#include "search.hpp"

namespace imx::detail {

ModelSearch::ModelSearch(const Vocabulary& vocab, std::vector<Formula> sentences)
    : symbol_count_(vocab.size()), sentences_(std::move(sentences)), watch_(vocab.size()) {
    symbols_of_.reserve(sentences_.size());
    for (std::size_t s = 0; s < sentences_.size(); ++s) {
        std::vector<std::size_t> syms;
        for (auto id : sentences_[s].symbols()) {
            syms.push_back(id.value());
            watch_[id.value()].push_back(s);
        }
        symbols_of_.push_back(std::move(syms));
    }
}

bool ModelSearch::propagate(DomainState& d) const {
    std::vector<std::size_t> all(sentences_.size());
    for (std::size_t i = 0; i < all.size(); ++i) all[i] = i;
    return propagate(d, std::move(all));
}

bool ModelSearch::propagate(DomainState& d, std::vector<std::size_t> queue) const {
    std::vector<char> queued(sentences_.size(), 0);
    for (auto s : queue) queued[s] = 1;
    while (!queue.empty()) {
        const std::size_t s = queue.back();
        queue.pop_back();
        queued[s] = 0;
        const auto& f = sentences_[s];
        const Truth t = eval3(f, d);
        if (t == Truth::False) return false;
        if (t == Truth::True) continue;
        for (auto sym : symbols_of_[s]) {
            if (d.remaining(sym) <= 1) continue;
            bool changed = false;
            const auto size = static_cast<ValueIndex>(d.domain_size(sym));
            for (ValueIndex v = 0; v < size; ++v) {
                if (!d.allowed(sym, v)) continue;
                if (eval3_with(f, d, sym, v) == Truth::False) {
                    d.remove(sym, v);
                    changed = true;
                }
            }
            if (d.remaining(sym) == 0) return false;
            if (changed) {
                for (auto other : watch_[sym]) {
                    if (!queued[other]) {
                        queued[other] = 1;
                        queue.push_back(other);
                    }
                }
            }
        }
    }
    return true;
}

ModelSearch::Model ModelSearch::extract(const DomainState& d) {
    Model m(d.symbols());
    for (std::size_t i = 0; i < m.size(); ++i) m[i] = d.first(i);
    return m;
}

bool ModelSearch::enumerate(const PartialStructure& base, const Visitor& visit) const {
    DomainState d(base);
    if (!propagate(d)) return true;
    return lex(d, 0, visit) != Outcome::Stopped;
}

ModelSearch::Outcome ModelSearch::lex(DomainState& d, std::size_t from, const Visitor& visit) const {
    std::size_t sym = from;
    while (sym < symbol_count_ && d.fixed(sym)) ++sym;
    if (sym == symbol_count_) return visit(extract(d)) ? Outcome::Found : Outcome::Stopped;

    bool found = false;
    const auto size = static_cast<ValueIndex>(d.domain_size(sym));
    for (ValueIndex v = 0; v < size; ++v) {
        if (!d.allowed(sym, v)) continue;
        DomainState child = d;
        child.assign(sym, v);
        if (!propagate(child, watch_[sym])) continue;
        const Outcome o = lex(child, sym + 1, visit);
        if (o == Outcome::Stopped) return o;
        if (o == Outcome::Found) {
            found = true;
        } else if (!constrained(sym)) {
            // The symbol occurs in no sentence: every value leads to an
            // isomorphic subtree, which was just shown to be empty.
            break;
        }
    }
    return found ? Outcome::Found : Outcome::Exhausted;
}

std::optional<ModelSearch::Model> ModelSearch::find_any(DomainState d) const {
    if (!propagate(d)) return std::nullopt;
    return any(d);
}

std::optional<ModelSearch::Model> ModelSearch::any(DomainState& d) const {
    std::size_t sym = 0;
    while (sym < symbol_count_ && (d.fixed(sym) || !constrained(sym))) ++sym;
    if (sym == symbol_count_) return extract(d);
    const auto size = static_cast<ValueIndex>(d.domain_size(sym));
    for (ValueIndex v = 0; v < size; ++v) {
        if (!d.allowed(sym, v)) continue;
        DomainState child = d;
        child.assign(sym, v);
        if (!propagate(child, watch_[sym])) continue;
        if (auto m = any(child)) return m;
    }
    return std::nullopt;
}

}  // namespace imx::detail
