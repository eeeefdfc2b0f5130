#include "imx/engine.hpp"

#include <algorithm>

#include "imx/error.hpp"
#include "search.hpp"

namespace imx {

PossibleValues::PossibleValues(const Vocabulary& vocab) {
    table_.reserve(vocab.size());
    for (const auto& d : vocab.symbols()) table_.emplace_back(d.domain.size(), 0);
}

void PossibleValues::merge(const PossibleValues& other) {
    for (std::size_t i = 0; i < table_.size(); ++i)
        for (std::size_t v = 0; v < table_[i].size(); ++v) table_[i][v] |= other.table_[i][v];
}

std::size_t PossibleValues::count(SymbolId id) const {
    return static_cast<std::size_t>(std::count(table_[id.value()].begin(), table_[id.value()].end(), 1));
}

std::vector<ValueIndex> PossibleValues::values(SymbolId id) const {
    std::vector<ValueIndex> out;
    const auto& row = table_[id.value()];
    for (std::size_t v = 0; v < row.size(); ++v)
        if (row[v]) out.push_back(static_cast<ValueIndex>(v));
    return out;
}

std::optional<ValueIndex> PossibleValues::fixed(SymbolId id) const {
    if (count(id) != 1) return std::nullopt;
    return values(id).front();
}

bool Residue::inconsistent() const {
    return std::any_of(sentences.begin(), sentences.end(), [](const ResidueSentence& s) { return s.falsified; });
}

std::vector<SymbolId> Residue::symbols() const {
    std::vector<bool> seen;
    for (const auto& s : sentences) s.formula.collect_symbols(seen);
    std::vector<SymbolId> out;
    for (std::size_t i = 0; i < seen.size(); ++i)
        if (seen[i]) out.emplace_back(i);
    return out;
}

Engine::Engine(KnowledgeBase kb) : kb_(std::move(kb)) {}

std::vector<Formula> Engine::sentences(TheorySet which) const {
    std::vector<Formula> out;
    for (const auto& s : kb_.tenv.sentences) out.push_back(s.formula);
    if (which == TheorySet::Both)
        for (const auto& s : kb_.tsol.sentences) out.push_back(s.formula);
    return out;
}

namespace {

TotalStructure to_structure(const VocabularyPtr& vocab, const detail::ModelSearch::Model& m) {
    TotalStructure t(vocab);
    for (std::size_t i = 0; i < m.size(); ++i) t.set(SymbolId{i}, m[i]);
    return t;
}

bool in_scope(const Vocabulary& vocab, SymbolId id, TheorySet which) {
    return which == TheorySet::Both || vocab.is_environmental(id);
}

}  // namespace

std::vector<TotalStructure> Engine::enumerate_models(const PartialStructure& base, TheorySet which,
                                                     std::size_t limit) const {
    if (limit == 0) throw Error("enumerate_models: limit must be at least 1");
    std::vector<TotalStructure> out;
    detail::ModelSearch search(vocab(), sentences(which));
    search.enumerate(base, [&](const detail::ModelSearch::Model& m) {
        out.push_back(to_structure(kb_.vocabulary, m));
        return out.size() < limit;
    });
    return out;
}

std::vector<TotalStructure> Engine::enumerate_models(const SolveState& state, TheorySet which,
                                                     std::size_t limit) const {
    return enumerate_models(state.combined(), which, limit);
}

bool Engine::is_consistent(const PartialStructure& base, TheorySet which) const {
    return find_model(base, which).has_value();
}

bool Engine::is_consistent(const SolveState& state) const { return is_consistent(state.combined(), TheorySet::Both); }

std::optional<TotalStructure> Engine::find_model(const PartialStructure& base, TheorySet which,
                                                 const std::vector<Formula>& extra) const {
    auto all = sentences(which);
    all.insert(all.end(), extra.begin(), extra.end());
    detail::ModelSearch search(vocab(), std::move(all));
    auto m = search.find_any(base);
    if (!m) return std::nullopt;
    return to_structure(kb_.vocabulary, *m);
}

PossibleValues Engine::possible_values(const PartialStructure& base, TheorySet which) const {
    const auto& v = vocab();
    detail::ModelSearch search(v, sentences(which));
    detail::DomainState root(base);
    if (!search.propagate(root)) throw InconsistentState("no models expand the given structure");
    const auto first = search.find_any(root);
    if (!first) throw InconsistentState("no models expand the given structure");

    PossibleValues result(v);
    struct Probe {
        SymbolId symbol;
        ValueIndex value;
    };
    std::vector<Probe> probes;
    for (auto id : v.ids()) {
        const auto size = static_cast<ValueIndex>(v[id].domain.size());
        const auto sym = id.value();
        if (!in_scope(v, id, which)) {
            for (ValueIndex x = 0; x < size; ++x) result.mark(id, x);
            continue;
        }
        result.mark(id, (*first)[sym]);
        for (ValueIndex x = 0; x < size; ++x) {
            if (!root.allowed(sym, x) || x == (*first)[sym]) continue;
            if (!search.constrained(sym)) {
                result.mark(id, x);
            } else {
                probes.push_back({id, x});
            }
        }
    }

    const auto n = static_cast<long>(probes.size());
#pragma omp parallel
    {
        PossibleValues local(v);
#pragma omp for schedule(dynamic, 1)
        for (long k = 0; k < n; ++k) {
            const auto& p = probes[static_cast<std::size_t>(k)];
            if (local.possible(p.symbol, p.value)) continue;
            detail::DomainState d = root;
            d.assign(p.symbol.value(), p.value);
            if (auto m = search.find_any(std::move(d))) {
                for (std::size_t i = 0; i < m->size(); ++i)
                    if (in_scope(v, SymbolId{i}, which)) local.mark(SymbolId{i}, (*m)[i]);
            }
        }
#pragma omp critical(imx_possible_values_merge)
        result.merge(local);
    }
    return result;
}

namespace {

PartialStructure backbone_from(const Vocabulary& vocab, const PartialStructure& base, const PossibleValues& pv,
                               TheorySet which) {
    PartialStructure out = base;
    for (auto id : vocab.ids()) {
        if (base.is_interpreted(id) || !in_scope(vocab, id, which)) continue;
        if (auto v = pv.fixed(id)) out.set(id, *v);
    }
    return out;
}

}  // namespace

PartialStructure Engine::backbone(const PartialStructure& base, TheorySet which) const {
    return backbone_from(vocab(), base, possible_values(base, which), which);
}

std::vector<std::vector<Fact>> Engine::retraction_candidates(const SolveState& state, const Fact& blocked) const {
    const auto combined = state.combined();
    if (!is_consistent(combined, TheorySet::Both)) throw InconsistentState("state already inconsistent");
    if (combined.is_interpreted(blocked.symbol))
        throw Error("symbol '" + vocab()[blocked.symbol].name + "' is already interpreted");
    auto with_blocked = combined;
    with_blocked.set(blocked);
    if (is_consistent(with_blocked, TheorySet::Both)) throw Error("fact not blocking");

    const auto decisions = state.dec.facts();
    const std::size_t k = decisions.size();
    std::vector<std::vector<std::size_t>> found;
    const auto dominated = [&](const std::vector<std::size_t>& subset) {
        return std::any_of(found.begin(), found.end(), [&](const std::vector<std::size_t>& f) {
            return std::includes(subset.begin(), subset.end(), f.begin(), f.end());
        });
    };

    // Subsets by increasing size; a consistent subset not containing a
    // smaller consistent one is minimal.
    for (std::size_t size = 1; size <= k; ++size) {
        std::vector<std::size_t> idx(size);
        for (std::size_t i = 0; i < size; ++i) idx[i] = i;
        for (;;) {
            if (!dominated(idx)) {
                auto trial = with_blocked;
                for (auto i : idx) trial.erase(decisions[i].symbol);
                if (is_consistent(trial, TheorySet::Both)) found.push_back(idx);
            }
            // next combination in lexicographic order
            std::size_t i = size;
            while (i > 0 && idx[i - 1] == k - size + i - 1) --i;
            if (i == 0) break;
            ++idx[i - 1];
            for (std::size_t j = i; j < size; ++j) idx[j] = idx[j - 1] + 1;
        }
    }

    std::vector<std::vector<Fact>> out;
    for (const auto& subset : found) {
        std::vector<Fact> facts;
        for (auto i : subset) facts.push_back(decisions[i]);
        out.push_back(std::move(facts));
    }
    std::sort(out.begin(), out.end());
    return out;
}

Formula simplify(const Formula& f, const PartialStructure& s) {
    using K = Formula::Kind;
    const auto negated = [](const Formula& g) {
        if (g.is_constant()) return Formula::constant(!g.constant_value());
        if (g.kind() == K::Not) return g.children()[0];
        return Formula::negation(g);
    };
    switch (f.kind()) {
    case K::Constant: return f;
    case K::Atom: {
        const auto t = eval3(f, s);
        if (t == Truth::Unknown) return f;
        return Formula::constant(t == Truth::True);
    }
    case K::Not: return negated(simplify(f.children()[0], s));
    case K::And:
    case K::Or: {
        const bool absorbing = f.kind() == K::Or;  // true absorbs a disjunction, false a conjunction
        std::vector<Formula> parts;
        for (const auto& c : f.children()) {
            auto sc = simplify(c, s);
            if (sc.is_constant()) {
                if (sc.constant_value() == absorbing) return sc;
                continue;
            }
            parts.push_back(std::move(sc));
        }
        if (parts.empty()) return Formula::constant(!absorbing);
        return absorbing ? Formula::disjunction(std::move(parts)) : Formula::conjunction(std::move(parts));
    }
    case K::Implies: {
        auto a = simplify(f.children()[0], s);
        auto b = simplify(f.children()[1], s);
        if (a.is_constant()) return a.constant_value() ? b : Formula::constant(true);
        if (b.is_constant()) return b.constant_value() ? Formula::constant(true) : negated(a);
        return Formula::implies(std::move(a), std::move(b));
    }
    case K::Iff: {
        auto a = simplify(f.children()[0], s);
        auto b = simplify(f.children()[1], s);
        if (a.is_constant()) return a.constant_value() ? b : negated(b);
        if (b.is_constant()) return b.constant_value() ? a : negated(a);
        return Formula::iff(std::move(a), std::move(b));
    }
    }
    return f;
}

Residue Engine::simplify(const PartialStructure& s) const {
    Residue r;
    std::size_t origin = 0;
    const auto add = [&](const Theory& t, bool env) {
        for (const auto& sentence : t.sentences) {
            auto g = imx::simplify(sentence.formula, s);
            if (!(g.is_constant() && g.constant_value())) {
                r.sentences.push_back({g, origin, env, sentence.is_definition, sentence.defined,
                                       g.is_constant() && !g.constant_value()});
            }
            ++origin;
        }
    };
    add(kb_.tenv, true);
    add(kb_.tsol, false);
    return r;
}

namespace serial {

PossibleValues possible_values(const Engine& engine, const PartialStructure& base, TheorySet which) {
    const auto& vocab = engine.vocab();
    if (!engine.is_consistent(base, which)) throw InconsistentState("no models expand the given structure");
    PossibleValues result(vocab);
    for (auto id : vocab.ids()) {
        const auto size = static_cast<ValueIndex>(vocab[id].domain.size());
        for (ValueIndex x = 0; x < size; ++x) {
            if (!in_scope(vocab, id, which)) {
                result.mark(id, x);
                continue;
            }
            if (base.is_interpreted(id)) {
                if (base.value(id) == x) result.mark(id, x);
                continue;
            }
            auto probe = base;
            probe.set(id, x);
            if (engine.is_consistent(probe, which)) result.mark(id, x);
        }
    }
    return result;
}

PartialStructure backbone(const Engine& engine, const PartialStructure& base, TheorySet which) {
    return backbone_from(engine.vocab(), base, possible_values(engine, base, which), which);
}

}  // namespace serial

}  // namespace imx
