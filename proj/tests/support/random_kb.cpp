#include "random_kb.hpp"

#include <string>

#include "oracle.hpp"

namespace imx::testing {

namespace {

bool coin(std::mt19937_64& rng, double p) { return std::bernoulli_distribution(p)(rng); }

std::size_t below(std::mt19937_64& rng, std::size_t n) { return std::uniform_int_distribution<std::size_t>(0, n - 1)(rng); }

Formula random_atom(const Vocabulary& vocab, const std::vector<SymbolId>& pool, std::mt19937_64& rng) {
    const auto sym = pool[below(rng, pool.size())];
    const auto& d = vocab[sym].domain;
    if (d.type() == Domain::Type::Bool) {
        auto a = Formula::boolean_atom(sym);
        return coin(rng, 0.3) ? Formula::negation(a) : a;
    }
    const auto v = static_cast<ValueIndex>(below(rng, d.size()));
    if (d.type() == Domain::Type::IntRange) {
        static constexpr CompareOp ops[] = {CompareOp::Eq, CompareOp::Ne, CompareOp::Lt,
                                            CompareOp::Le, CompareOp::Gt, CompareOp::Ge};
        return Formula::atom(sym, ops[below(rng, 6)], v);
    }
    return Formula::atom(sym, coin(rng, 0.8) ? CompareOp::Eq : CompareOp::Ne, v);
}

Formula random_formula(const Vocabulary& vocab, const std::vector<SymbolId>& pool, std::mt19937_64& rng, int depth) {
    if (depth == 0 || coin(rng, 0.25)) return random_atom(vocab, pool, rng);
    const auto sub = [&] { return random_formula(vocab, pool, rng, depth - 1); };
    switch (below(rng, 6)) {
    case 0: return Formula::negation(sub());
    case 1: return Formula::conjunction({sub(), sub()});
    case 2: return Formula::disjunction({sub(), sub(), sub()});
    case 3: return Formula::disjunction({sub(), sub()});
    case 4: return Formula::implies(sub(), sub());
    default: return Formula::iff(sub(), sub());
    }
}

}  // namespace

KnowledgeBase random_kb(std::mt19937_64& rng, const RandomKbOptions& options) {
    const auto n = options.min_symbols + below(rng, options.max_symbols - options.min_symbols + 1);
    std::vector<SymbolDecl> decls;
    for (std::size_t i = 0; i < n; ++i) {
        SymbolDecl d;
        d.kind = i == 0 ? SymbolKind::Environmental
                 : i == 1 ? SymbolKind::Decision
                          : (coin(rng, 0.55) ? SymbolKind::Environmental : SymbolKind::Decision);
        d.name = (d.kind == SymbolKind::Environmental ? "e" : "d") + std::to_string(i);
        const auto r = below(rng, 10);
        if (r == 0) {
            d.domain = Domain::enumeration({"A", "B", "C"});
        } else if (r == 1) {
            const long long lo = static_cast<long long>(below(rng, 5));
            d.domain = Domain::int_range(lo, lo + 1 + static_cast<long long>(below(rng, 3)));
        }
        d.goal = options.goals && coin(rng, 0.1);
        decls.push_back(std::move(d));
    }
    KnowledgeBase kb;
    kb.vocabulary = std::make_shared<const Vocabulary>(std::move(decls));
    const auto& vocab = kb.vocab();
    const auto env = vocab.ids_of(SymbolKind::Environmental);
    const auto all = vocab.ids();

    const auto count = 1 + below(rng, options.max_sentences);
    std::vector<bool> defined(n, false);
    for (std::size_t i = 0; i < count; ++i) {
        const bool in_env = coin(rng, 0.35);
        const auto& pool = in_env ? env : all;
        Sentence s;
        if (options.definitions && coin(rng, 0.2)) {
            const auto head = pool[below(rng, pool.size())];
            if (vocab[head].domain.type() == Domain::Type::Bool && !defined[head.value()]) {
                std::vector<SymbolId> rest;
                for (auto id : pool)
                    if (id != head) rest.push_back(id);
                if (!rest.empty()) {
                    defined[head.value()] = true;
                    s.formula = Formula::iff(Formula::boolean_atom(head), random_formula(vocab, rest, rng, 2));
                    s.is_definition = true;
                    s.defined = head;
                    (in_env ? kb.tenv : kb.tsol).sentences.push_back(std::move(s));
                    continue;
                }
            }
        }
        s.formula = random_formula(vocab, pool, rng, 3);
        (in_env ? kb.tenv : kb.tsol).sentences.push_back(std::move(s));
    }
    return kb;
}

PartialStructure random_structure(const VocabularyPtr& vocab, std::mt19937_64& rng, double density) {
    PartialStructure s(vocab);
    for (auto id : vocab->ids())
        if (coin(rng, density)) s.set(id, static_cast<ValueIndex>(below(rng, (*vocab)[id].domain.size())));
    return s;
}

PartialStructure random_consistent(const Engine& engine, TheorySet which, std::mt19937_64& rng, double density) {
    const auto models = brute_force_models(engine.kb(), engine.kb().empty_structure(), which);
    PartialStructure s(engine.kb().vocabulary);
    if (models.empty()) return s;
    const auto& m = models[below(rng, models.size())];
    for (auto id : engine.vocab().ids())
        if (coin(rng, density)) s.set(id, m.value(id));
    return s;
}

}  // namespace imx::testing
