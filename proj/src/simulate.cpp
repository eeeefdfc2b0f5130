#include "imx/simulate.hpp"

#include <algorithm>
#include <cstdio>
#include <sstream>

#include "imx/assistant.hpp"
#include "imx/session.hpp"

namespace imx {

const char* to_string(SimMode mode) { return mode == SimMode::Traditional ? "traditional" : "guided"; }

const char* to_string(SimOutcome outcome) {
    switch (outcome) {
    case SimOutcome::Total: return "total";
    case SimOutcome::Definite: return "definite";
    case SimOutcome::Failed: return "failed";
    }
    return "?";
}

namespace {

template <class T>
const T& pick(const std::vector<T>& items, std::mt19937_64& rng) {
    std::uniform_int_distribution<std::size_t> dist(0, items.size() - 1);
    return items[dist(rng)];
}

// Values of `sym` that keep `base` consistent with the selected theories.
std::vector<ValueIndex> consistent_values(const Engine& engine, const PartialStructure& base, SymbolId sym,
                                          TheorySet which) {
    std::vector<ValueIndex> out;
    const auto size = static_cast<ValueIndex>(engine.vocab()[sym].domain.size());
    for (ValueIndex v = 0; v < size; ++v) {
        auto probe = base;
        probe.set(sym, v);
        if (engine.is_consistent(probe, which)) out.push_back(v);
    }
    return out;
}

std::shared_ptr<const Engine> borrow(const Engine& engine) {
    return std::shared_ptr<const Engine>(&engine, [](const Engine*) {});
}

// Random consistent value for a decision symbol left open by the effective state.
void decide(Session& session, const SolveState& effective, SymbolId sym, std::mt19937_64& rng, SimulationRow& row) {
    const auto values = consistent_values(session.engine(), effective.combined(), sym, TheorySet::Both);
    if (session.assert_fact(Fact{sym, pick(values, rng)}, Role::Decision).accepted) ++row.entries;
}

void run_traditional(const Engine& engine, const PartialStructure& hidden, std::mt19937_64& rng, std::size_t cap,
                     SimulationRow& row) {
    Session session(borrow(engine));
    auto env = engine.vocab().ids_of(SymbolKind::Environmental);
    std::shuffle(env.begin(), env.end(), rng);
    std::size_t steps = 0;
    for (auto sym : env) {
        if (++steps > cap) return;
        const auto derived = engine.backbone(session.state().obs, TheorySet::EnvOnly);
        if (derived.is_interpreted(sym)) continue;  // already known, nothing to enter
        if (session.assert_fact(Fact{sym, hidden.value(sym)}, Role::Observation).accepted) ++row.entries;
    }
    // Decisions are only completed by propagation once the robot has made one;
    // a traditional form does not fill in decisions from observations.
    bool decided = false;
    for (;;) {
        const auto effective = effective_state(session.state(), propagate_split(engine, session.state()));
        const auto& settled = decided ? effective.dec : session.state().dec;
        std::vector<SymbolId> open;
        for (auto sym : engine.vocab().ids_of(SymbolKind::Decision))
            if (!settled.is_interpreted(sym)) open.push_back(sym);
        if (open.empty()) {
            if (effective.combined().is_total()) row.outcome = SimOutcome::Total;
            break;
        }
        if (++steps > cap) return;
        decide(session, effective, pick(open, rng), rng, row);
        decided = true;
    }
    row.final_state = effective_state(session.state(), propagate_split(engine, session.state()));
}

void run_guided(const Engine& engine, const PartialStructure& hidden, std::mt19937_64& rng, std::size_t cap,
                SimulationRow& row) {
    Session session(borrow(engine));
    for (std::size_t steps = 0;; ++steps) {
        const auto split = propagate_split(engine, session.state());
        const auto effective = effective_state(session.state(), split);
        const auto known = effective.combined();
        const auto relevant = relevant_approx(engine, session.state(), split);
        std::vector<SymbolId> candidates;
        for (auto sym : relevant)
            if (!known.is_interpreted(sym)) candidates.push_back(sym);
        if (candidates.empty() && check_definite(engine, effective).holds) {
            row.outcome = SimOutcome::Definite;
            row.final_state = effective;
            return;
        }
        if (steps >= cap) return;
        if (candidates.empty()) {
            for (auto sym : engine.vocab().ids())
                if (!known.is_interpreted(sym)) candidates.push_back(sym);
            if (candidates.empty()) return;
        }

        const auto sym = pick(candidates, rng);
        if (engine.vocab().is_decision(sym)) {
            decide(session, effective, sym, rng, row);
            continue;
        }
        const Fact fact{sym, hidden.value(sym)};
        auto result = session.assert_fact(fact, Role::Observation);
        if (!result.accepted && !result.hints.empty()) {
            // give up a conflicting set of decisions, then enter the observation
            for (const auto& f : pick(result.hints, rng)) {
                session.retract(f.symbol);
                ++row.retractions;
            }
            result = session.assert_fact(fact, Role::Observation);
        }
        if (result.accepted) ++row.entries;
    }
}

std::uint64_t mode_tag(SimMode mode) { return mode == SimMode::Traditional ? 1 : 2; }

}  // namespace

PartialStructure sample_environment(const Engine& engine, std::mt19937_64& rng) {
    auto env = engine.kb().empty_structure();
    for (auto sym : engine.vocab().ids_of(SymbolKind::Environmental)) {
        const auto values = consistent_values(engine, env, sym, TheorySet::EnvOnly);
        if (values.empty()) throw InconsistentState("the environment theory has no model");
        env.set(sym, pick(values, rng));
    }
    return env;
}

PartialStructure instance_environment(const Engine& engine, std::uint64_t seed, std::size_t instance) {
    std::seed_seq seq{seed, static_cast<std::uint64_t>(instance), std::uint64_t{0}};
    std::mt19937_64 rng(seq);
    return sample_environment(engine, rng);
}

SimulationRow run_on(const Engine& engine, SimMode mode, const PartialStructure& hidden, std::mt19937_64& rng,
                     std::size_t step_cap) {
    SimulationRow row;
    row.mode = mode;
    if (mode == SimMode::Traditional) {
        run_traditional(engine, hidden, rng, step_cap, row);
    } else {
        run_guided(engine, hidden, rng, step_cap, row);
    }
    return row;
}

SimulationRow run_instance(const Engine& engine, SimMode mode, std::uint64_t seed, std::size_t instance,
                           std::size_t step_cap) {
    const auto hidden = instance_environment(engine, seed, instance);
    std::seed_seq seq{seed, static_cast<std::uint64_t>(instance), mode_tag(mode)};
    std::mt19937_64 rng(seq);
    auto row = run_on(engine, mode, hidden, rng, step_cap);
    row.instance = instance;
    return row;
}

std::vector<SimulationRow> simulate(const Engine& engine, SimMode mode, const SimulationConfig& config) {
    std::vector<SimulationRow> rows(config.runs);
    const auto n = static_cast<long>(config.runs);
#pragma omp parallel for schedule(dynamic, 1)
    for (long i = 0; i < n; ++i) {
        const auto k = static_cast<std::size_t>(i);
        rows[k] = run_instance(engine, mode, config.seed, k + 1, config.step_cap);
    }
    return rows;
}

namespace serial {

std::vector<SimulationRow> simulate(const Engine& engine, SimMode mode, const SimulationConfig& config) {
    std::vector<SimulationRow> rows;
    for (std::size_t i = 1; i <= config.runs; ++i) rows.push_back(run_instance(engine, mode, config.seed, i, config.step_cap));
    return rows;
}

}  // namespace serial

double mean_entries(const std::vector<SimulationRow>& rows) {
    if (rows.empty()) return 0.0;
    double sum = 0;
    for (const auto& r : rows) sum += static_cast<double>(r.entries);
    return sum / static_cast<double>(rows.size());
}

std::string format_table(const std::vector<SimulationRow>& traditional, const std::vector<SimulationRow>& guided) {
    std::ostringstream out;
    char line[160];
    const bool both = !traditional.empty() && !guided.empty();
    const auto& any = traditional.empty() ? guided : traditional;

    std::snprintf(line, sizeof line, "%-10s", "instance");
    out << line;
    if (!traditional.empty()) {
        std::snprintf(line, sizeof line, " %12s %-9s", "traditional", "outcome");
        out << line;
    }
    if (!guided.empty()) {
        std::snprintf(line, sizeof line, " %7s %11s %-9s", "guided", "retractions", "outcome");
        out << line;
    }
    out << '\n';
    for (std::size_t i = 0; i < any.size(); ++i) {
        std::snprintf(line, sizeof line, "%-10zu", any[i].instance);
        out << line;
        if (!traditional.empty()) {
            std::snprintf(line, sizeof line, " %12zu %-9s", traditional[i].entries, to_string(traditional[i].outcome));
            out << line;
        }
        if (!guided.empty()) {
            std::snprintf(line, sizeof line, " %7zu %11zu %-9s", guided[i].entries, guided[i].retractions,
                          to_string(guided[i].outcome));
            out << line;
        }
        out << '\n';
    }
    std::snprintf(line, sizeof line, "%-10s", "average");
    out << line;
    if (!traditional.empty()) {
        std::snprintf(line, sizeof line, " %12.2f %-9s", mean_entries(traditional), "");
        out << line;
    }
    if (!guided.empty()) {
        double retractions = 0;
        for (const auto& r : guided) retractions += static_cast<double>(r.retractions);
        std::snprintf(line, sizeof line, " %7.2f %11.2f", mean_entries(guided),
                      retractions / static_cast<double>(guided.size()));
        out << line;
    }
    out << '\n';
    if (both && mean_entries(traditional) > 0) {
        std::snprintf(line, sizeof line, "gain: %.1f%% fewer entries with guidance\n",
                      100.0 * (1.0 - mean_entries(guided) / mean_entries(traditional)));
        out << line;
    }
    return out.str();
}

std::string format_csv(const std::vector<SimulationRow>& traditional, const std::vector<SimulationRow>& guided) {
    std::ostringstream out;
    out << "instance,mode,entries,retractions,outcome\n";
    for (const auto* rows : {&traditional, &guided})
        for (const auto& r : *rows)
            out << r.instance << ',' << to_string(r.mode) << ',' << r.entries << ',' << r.retractions << ','
                << to_string(r.outcome) << '\n';
    return out.str();
}

}  // namespace imx
