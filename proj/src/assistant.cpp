#include "imx/assistant.hpp"

#include <algorithm>

#include "domains.hpp"
#include "imx/error.hpp"
#include "search.hpp"

namespace imx {

PropagationSplit propagate_split(const Engine& engine, const SolveState& state) {
    if (!engine.is_consistent(state)) throw InconsistentState("inconsistent state");
    PropagationSplit split;
    const auto env_closed = engine.backbone(state.obs, TheorySet::EnvOnly);
    split.obs_safe = env_closed.minus(state.obs);

    const auto base = join(join(state.obs, split.obs_safe), state.dec);
    const auto derived = engine.backbone(base, TheorySet::Both).minus(base);
    split.obs_to_verify = derived.restricted_to(SymbolKind::Environmental);
    split.dec_consequence = derived.restricted_to(SymbolKind::Decision);
    return split;
}

SolveState effective_state(const SolveState& state, const PropagationSplit& split) {
    return {join(state.obs, split.obs_safe), join(state.dec, split.dec_consequence)};
}

Verdict check_definite(const Engine& engine, const SolveState& state) {
    const auto base = state.combined();
    for (const auto& s : engine.kb().tsol.sentences) {
        if (auto cex = engine.find_model(base, TheorySet::EnvOnly, {Formula::negation(s.formula)}))
            return {false, std::move(cex)};
    }
    return {true, std::nullopt};
}

namespace {

// Search for an environment that satisfies Tenv, expands the observations and
// admits no decision expansion satisfying Tsol.
class ContingencySearch {
public:
    ContingencySearch(const Engine& engine, const SolveState& state)
        : engine_(engine),
          tenv_(engine.vocab(), engine.sentences(TheorySet::EnvOnly)),
          both_(engine.vocab(), engine.sentences(TheorySet::Both)) {
        for (const auto& s : engine.kb().tsol.sentences) tsol_.push_back(s.formula);
        // symbols outside every sentence cannot make a difference
        for (auto id : engine.vocab().ids_of(SymbolKind::Environmental))
            if (both_.constrained(id.value())) env_.push_back(id.value());
        for (auto id : engine.vocab().ids_of(SymbolKind::Decision))
            if (!state.dec.is_interpreted(id)) open_dec_.push_back(id.value());
        unsigned long long combos = 1;
        for (auto d : open_dec_) {
            combos *= engine.vocab().symbols()[d].domain.size();
            if (combos > kMaxDecisionCombos) break;
        }
        enumerate_decisions_ = combos <= kMaxDecisionCombos;
    }

    std::optional<detail::ModelSearch::Model> run(detail::DomainState d) const { return visit(std::move(d)); }

private:
    static constexpr unsigned long long kMaxDecisionCombos = 256;

    bool tsol_entailed(const detail::DomainState& d) const {
        return std::all_of(tsol_.begin(), tsol_.end(),
                           [&](const Formula& f) { return detail::eval3(f, d) == Truth::True; });
    }

    // Some decision completion makes Tsol true for every completion of the environment.
    bool some_decision_always_works(const detail::DomainState& d) const {
        if (tsol_entailed(d)) return true;
        if (!enumerate_decisions_ || open_dec_.empty()) return false;
        std::vector<ValueIndex> pick(open_dec_.size(), 0);
        for (;;) {
            detail::DomainState trial = d;
            bool allowed = true;
            for (std::size_t i = 0; i < open_dec_.size() && allowed; ++i) {
                allowed = d.allowed(open_dec_[i], pick[i]);
                if (allowed) trial.assign(open_dec_[i], pick[i]);
            }
            if (allowed && tsol_entailed(trial)) return true;
            std::size_t i = open_dec_.size();
            while (i > 0) {
                --i;
                if (++pick[i] < static_cast<ValueIndex>(d.domain_size(open_dec_[i]))) break;
                pick[i] = 0;
                if (i == 0) return false;
            }
        }
    }

    std::optional<detail::ModelSearch::Model> visit(detail::DomainState d) const {
        if (!tenv_.propagate(d)) return std::nullopt;
        if (!both_.find_any(d)) return tenv_.find_any(d);  // no decisions work here at all
        if (some_decision_always_works(d)) return std::nullopt;
        const auto next = std::find_if(env_.begin(), env_.end(), [&](std::size_t s) { return !d.fixed(s); });
        if (next == env_.end()) return std::nullopt;  // total environment with a solution
        const auto sym = *next;
        const auto size = static_cast<ValueIndex>(d.domain_size(sym));
        for (ValueIndex v = 0; v < size; ++v) {
            if (!d.allowed(sym, v)) continue;
            detail::DomainState child = d;
            child.assign(sym, v);
            if (auto cex = visit(std::move(child))) return cex;
        }
        return std::nullopt;
    }

    const Engine& engine_;
    detail::ModelSearch tenv_;
    detail::ModelSearch both_;
    std::vector<Formula> tsol_;
    std::vector<std::size_t> env_;
    std::vector<std::size_t> open_dec_;
    bool enumerate_decisions_ = false;
};

}  // namespace

Verdict check_contingent(const Engine& engine, const SolveState& state) {
    ContingencySearch search(engine, state);
    auto cex = search.run(detail::DomainState(state.combined()));
    if (!cex) return {true, std::nullopt};
    PartialStructure env(engine.kb().vocabulary);
    for (auto id : engine.vocab().ids_of(SymbolKind::Environmental)) env.set(id, (*cex)[id.value()]);
    return {false, std::move(env)};
}

SolutionVerdict check_solution(const Engine& engine, const SolveState& state) {
    SolutionVerdict out;
    auto definite = check_definite(engine, state);
    auto contingent = check_contingent(engine, state);
    out.is_definite = definite.holds;
    out.is_contingent = contingent.holds;
    if (!definite.holds) {
        out.witness = std::move(definite.counterexample);
    } else if (!contingent.holds) {
        out.witness = std::move(contingent.counterexample);
    }
    return out;
}

std::vector<SolveState> minimal_definite_solutions(const Engine& engine, const SolveState& state,
                                                   std::size_t max_symbols) {
    const auto& vocab = engine.vocab();
    if (vocab.size() > max_symbols) throw SizeGuardExceeded(vocab.size(), max_symbols);
    if (!engine.is_consistent(state)) throw InconsistentState("inconsistent state");
    if (check_definite(engine, state).holds) return {state};

    // Symbols occurring in no sentence never belong to a minimal solution.
    std::vector<bool> occurs(vocab.size(), false);
    for (const auto& f : engine.sentences(TheorySet::Both)) f.collect_symbols(occurs);
    occurs.resize(vocab.size(), false);
    const auto combined = state.combined();
    std::vector<SymbolId> candidates;
    for (auto id : vocab.ids())
        if (occurs[id.value()] && !combined.is_interpreted(id)) candidates.push_back(id);

    struct Node {
        std::vector<Fact> added;   // sorted by symbol
        std::size_t last = 0;      // index in candidates of the last added symbol, +1
    };
    const auto apply = [&](const std::vector<Fact>& added) {
        SolveState s = state;
        for (const auto& f : added) (vocab.is_environmental(f.symbol) ? s.obs : s.dec).set(f);
        return s;
    };

    std::vector<std::vector<Fact>> solutions;
    const auto dominated = [&](const std::vector<Fact>& added) {
        return std::any_of(solutions.begin(), solutions.end(), [&](const std::vector<Fact>& sol) {
            return std::includes(added.begin(), added.end(), sol.begin(), sol.end());
        });
    };

    // Each node extends its parent with a symbol after the parent's last one,
    // so every set of added facts is generated at most once. Definite nodes
    // are not expanded (their expansions are dominated) and neither are
    // inconsistent ones (their expansions are inconsistent).
    std::vector<Node> open{Node{}};
    while (!open.empty()) {
        std::vector<Node> next;
        for (const auto& node : open) {
            for (std::size_t j = node.last; j < candidates.size(); ++j) {
                const auto sym = candidates[j];
                const auto size = static_cast<ValueIndex>(vocab[sym].domain.size());
                for (ValueIndex v = 0; v < size; ++v) {
                    Node child{node.added, j + 1};
                    child.added.push_back({sym, v});
                    if (dominated(child.added)) continue;
                    const auto s = apply(child.added);
                    if (!engine.is_consistent(s)) continue;
                    if (check_definite(engine, s).holds) {
                        solutions.push_back(std::move(child.added));
                    } else {
                        next.push_back(std::move(child));
                    }
                }
            }
        }
        open = std::move(next);
    }

    std::vector<SolveState> out;
    out.reserve(solutions.size());
    for (const auto& sol : solutions) out.push_back(apply(sol));
    return out;
}

SymbolSet relevant_exact(const Engine& engine, const SolveState& state, std::size_t max_symbols) {
    SymbolSet out;
    for (const auto& s : minimal_definite_solutions(engine, state, max_symbols)) {
        for (auto id : s.obs.interpreted()) out.insert(id);
        for (auto id : s.dec.interpreted()) out.insert(id);
    }
    return out;
}

SymbolSet relevant_approx(const Engine& engine, const SolveState& state) {
    return relevant_approx(engine, state, propagate_split(engine, state));
}

SymbolSet relevant_approx(const Engine& engine, const SolveState& state, const PropagationSplit& split) {
    const auto known = join(join(state.combined(), split.obs_safe), join(split.obs_to_verify, split.dec_consequence));
    // To-verify facts and decision consequences only hold once the symbols
    // forcing them are fixed, so the residue must not assume them.
    const auto residue = engine.simplify(join(state.combined(), split.obs_safe));

    SymbolSet out;
    for (auto id : known.interpreted()) out.insert(id);
    for (auto id : engine.kb().goals()) out.insert(id);
    for (const auto& s : residue.sentences) {
        if (s.is_definition) continue;
        for (auto id : s.formula.symbols()) out.insert(id);
    }
    for (bool grew = true; grew;) {
        grew = false;
        for (const auto& s : residue.sentences) {
            if (!s.is_definition || !s.defined || !out.count(*s.defined)) continue;
            for (auto id : s.formula.symbols()) grew |= out.insert(id).second;
        }
    }
    return out;
}

const char* to_string(SymbolStatus status) {
    switch (status) {
    case SymbolStatus::GivenObservation: return "given_observation";
    case SymbolStatus::GivenDecision: return "given_decision";
    case SymbolStatus::SafeConsequence: return "safe_consequence";
    case SymbolStatus::ToVerify: return "to_verify";
    case SymbolStatus::DecisionConsequence: return "decision_consequence";
    case SymbolStatus::RelevantUnknown: return "relevant_unknown";
    case SymbolStatus::Irrelevant: return "irrelevant";
    }
    return "?";
}

const char* to_string(RelevanceMode mode) { return mode == RelevanceMode::Exact ? "exact" : "approx"; }

StateReport make_report(const Engine& engine, const SolveState& state, RelevanceMode mode,
                        std::size_t history_length, std::size_t exact_limit) {
    const auto& vocab = engine.vocab();
    StateReport r;
    r.mode = mode;
    r.history_length = history_length;
    r.consistent = engine.is_consistent(state);

    const auto empty = PartialStructure(engine.kb().vocabulary);
    r.split = {empty, empty, empty};
    if (r.consistent) {
        r.split = propagate_split(engine, state);
        r.relevant = mode == RelevanceMode::Exact ? relevant_exact(engine, state, exact_limit)
                                                  : relevant_approx(engine, state, r.split);
    } else {
        for (auto id : vocab.ids()) r.relevant.insert(id);
    }

    const auto effective = r.consistent ? effective_state(state, r.split) : state;
    const auto known = effective.combined();
    bool open_relevant = false;
    bool open_relevant_env = false;
    for (auto id : vocab.ids()) {
        SymbolReport s;
        s.symbol = id;
        if (auto v = state.obs.get(id)) {
            s.status = SymbolStatus::GivenObservation;
            s.value = v;
        } else if (auto v = state.dec.get(id)) {
            s.status = SymbolStatus::GivenDecision;
            s.value = v;
        } else if (auto v = r.split.obs_safe.get(id)) {
            s.status = SymbolStatus::SafeConsequence;
            s.value = v;
        } else if (auto v = r.split.obs_to_verify.get(id)) {
            s.status = SymbolStatus::ToVerify;
            s.value = v;
        } else if (auto v = r.split.dec_consequence.get(id)) {
            s.status = SymbolStatus::DecisionConsequence;
            s.value = v;
        } else {
            s.status = r.relevant.count(id) ? SymbolStatus::RelevantUnknown : SymbolStatus::Irrelevant;
        }
        if (r.relevant.count(id) && !known.is_interpreted(id)) {
            open_relevant = true;
            if (vocab.is_environmental(id)) open_relevant_env = true;
        }
        r.symbols.push_back(s);
    }

    if (r.consistent) {
        r.verified_definite = check_definite(engine, effective).holds;
        r.verified_contingent = r.verified_definite || check_contingent(engine, effective).holds;
        r.definite_reached = !open_relevant && r.verified_definite;
        r.contingent_reached = !open_relevant_env && r.verified_contingent;
    }
    return r;
}

}  // namespace imx
