// Acceptance suite: one PASS/FAIL line per criterion. Exit status is the
// number of failed criteria.

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <functional>
#include <random>
#include <string>

#include "imx/assistant.hpp"
#include "imx/session.hpp"
#include "imx/simulate.hpp"
#include "support/fixtures.hpp"
#include "support/oracle.hpp"
#include "support/random_kb.hpp"

using namespace imx;
using namespace imx::testing;

namespace {

// Pinned thresholds.
constexpr double kTaxSolveSeconds = 1.0;
constexpr std::size_t kCorpusSize = 200;
constexpr std::size_t kCorpusMaxSymbols = 12;
constexpr std::size_t kCorpusMaxSentences = 8;
constexpr double kOracleSeconds = 300.0;
constexpr std::size_t kWorkloadRuns = 50;
constexpr double kWorkloadRatio = 0.7;
constexpr double kWorkloadSeconds = 120.0;
constexpr std::size_t kReplaySequences = 1000;

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

int failures = 0;

void report(const char* name, bool ok, const std::string& detail) {
    std::printf("%s  %-34s %s\n", ok ? "PASS" : "FAIL", name, detail.c_str());
    std::fflush(stdout);
    failures += !ok;
}

std::string fmt(const char* f, double a, double b = 0, double c = 0) {
    char buf[256];
    std::snprintf(buf, sizeof buf, f, a, b, c);
    return buf;
}

void tax_solutions() {
    const auto t0 = Clock::now();
    const auto& e = tax_example();
    const std::string env = "SocialHousing = true\nLicensedSeller = true\nLowRent = true\n";
    const auto models = e.enumerate_models(state(e, env, ""), TheorySet::Both, 100);
    const double dt = seconds_since(t0);
    const std::vector<TotalStructure> expected = {
        facts(e, env + "RegistrationType = Social\nTaxRate = 1"),
        facts(e, env + "RegistrationType = Modest\nTaxRate = 7"),
        facts(e, env + "RegistrationType = Other\nTaxRate = 10"),
    };
    report("tax-three-solutions", models == expected && dt < kTaxSolveSeconds,
           fmt("%.0f models in %.4f s", static_cast<double>(models.size()), dt));
}

void propagation_split() {
    const auto& e = tax_example();
    const auto a = propagate_split(e, state(e, "LowRent = false\nSocialHousing = false", ""));
    const auto b = propagate_split(e, state(e, "", "TaxRate = 7"));
    const bool ok = a.obs_safe.empty() && a.obs_to_verify.empty() &&
                    a.dec_consequence == facts(e, "RegistrationType = Other\nTaxRate = 10") && b.obs_safe.empty() &&
                    b.obs_to_verify == facts(e, "LowRent = true") &&
                    b.dec_consequence == facts(e, "RegistrationType = Modest");
    report("propagation-split", ok,
           a.dec_consequence.to_string() + " / " + b.obs_to_verify.to_string() + " " + b.dec_consequence.to_string());
}

void solution_taxonomy() {
    const auto& e = tax_example();
    const auto s1 = state(e, "", "RegistrationType = Other\nTaxRate = 10");
    const auto s2 = state(e, "", "RegistrationType = Other");
    const auto s3 = state(e, "", "TaxRate = 7");
    const auto v1 = check_solution(e, s1);
    const auto v2 = check_solution(e, s2);
    const auto v3 = check_solution(e, s3);
    const auto c3 = check_contingent(e, s3);
    bool ok = v1.is_definite && v1.is_contingent && !v2.is_definite && v2.is_contingent && !v3.is_definite &&
              !v3.is_contingent && c3.counterexample && c3.counterexample->value(e.vocab().at("LowRent")) == 0;
    // the same booleans by enumeration
    for (const auto* s : {&s1, &s2, &s3}) {
        const auto v = check_solution(e, *s);
        ok = ok && v.is_definite == brute_force_definite(e.kb(), *s) &&
             v.is_contingent == brute_force_contingent(e.kb(), *s);
    }
    report("solution-taxonomy", ok,
           fmt("definite/contingent: (%.0f,%.0f) (%.0f,", v1.is_definite, v1.is_contingent, v2.is_definite) +
               fmt("%.0f) (%.0f,%.0f)", v2.is_contingent, v3.is_definite, v3.is_contingent));
}

void relevance() {
    const auto& e = tax_example();
    const auto s = state(e, "LowRent = false", "");
    const auto sols = minimal_definite_solutions(e, s);
    const auto exact = relevant_exact(e, s);
    const auto approx = relevant_approx(e, s);
    const auto licensed = e.vocab().at("LicensedSeller");
    const bool ok = sols.size() == 1 && sols[0] == state(e, "LowRent = false", "TaxRate = 10\nRegistrationType = Other") &&
                    !exact.count(licensed) && !approx.count(licensed);
    report("relevance-low-rent", ok,
           "minimal: " + (sols.empty() ? std::string("none") : sols[0].obs.to_string() + sols[0].dec.to_string()));
}

struct CorpusEntry {
    Engine engine;
    std::vector<SolveState> states;  // consistent
};

std::vector<CorpusEntry> build_corpus() {
    std::mt19937_64 rng(20240611);
    std::vector<CorpusEntry> corpus;
    while (corpus.size() < kCorpusSize) {
        CorpusEntry entry{Engine(random_kb(rng, {3, kCorpusMaxSymbols, kCorpusMaxSentences, false, true})), {}};
        if (!entry.engine.is_consistent(entry.engine.kb().empty_structure(), TheorySet::Both)) continue;
        entry.states.push_back(split(entry.engine.kb().empty_structure()));
        for (double density : {0.2, 0.4, 0.6}) {
            auto s = split(random_consistent(entry.engine, TheorySet::Both, rng, density));
            if (entry.engine.is_consistent(s)) entry.states.push_back(std::move(s));
        }
        corpus.push_back(std::move(entry));
    }
    return corpus;
}

void oracle_suite(const std::vector<CorpusEntry>& corpus, double corpus_seconds) {
    const auto t0 = Clock::now();
    std::mt19937_64 rng(7);
    std::size_t enum_bad = 0, backbone_bad = 0, subset_bad = 0, retract_bad = 0;
    std::size_t bases = 0, retract_cases = 0, retract_fixable = 0, states = 0;
    for (const auto& entry : corpus) {
        const auto& engine = entry.engine;
        const auto& kb = engine.kb();
        std::vector<PartialStructure> probe_bases = {kb.empty_structure(), random_structure(kb.vocabulary, rng, 0.25),
                                                     random_structure(kb.vocabulary, rng, 0.5)};
        for (const auto& s : entry.states) probe_bases.push_back(s.combined());
        for (const auto& base : probe_bases) {
            for (auto which : {TheorySet::EnvOnly, TheorySet::Both}) {
                ++bases;
                const auto expected = brute_force_models(kb, base, which);
                if (engine.enumerate_models(base, which, 1u << 22) != expected) ++enum_bad;
                if (!expected.empty() && engine.backbone(base, which) != brute_force_backbone(kb, base, which))
                    ++backbone_bad;
            }
        }
        for (const auto& s : entry.states) {
            ++states;
            const auto exact = relevant_exact(engine, s);
            const auto approx = relevant_approx(engine, s);
            if (!std::includes(approx.begin(), approx.end(), exact.begin(), exact.end())) ++subset_bad;
        }
        // retraction: the corpus states plus decision-only states, where
        // blocked observations are more often fixable
        auto retraction_states = entry.states;
        for (double density : {0.5, 0.9}) {
            auto s = split(random_consistent(engine, TheorySet::Both, rng, density));
            s.obs = kb.empty_structure();
            retraction_states.push_back(std::move(s));
        }
        for (const auto& s : retraction_states) {
            if (s.dec.empty()) continue;
            for (auto sym : kb.vocab().ids_of(SymbolKind::Environmental)) {
                if (s.obs.is_interpreted(sym)) continue;
                for (ValueIndex v = 0; v < static_cast<ValueIndex>(kb.vocab()[sym].domain.size()); ++v) {
                    auto with = s;
                    with.obs.set(sym, v);
                    if (engine.is_consistent(with)) continue;
                    ++retract_cases;
                    const Fact blocked{sym, v};
                    const auto got = engine.retraction_candidates(s, blocked);
                    const auto retract_all = [&](const std::vector<Fact>& facts) {
                        auto t = with.combined();
                        for (const auto& f : facts) t.erase(f.symbol);
                        return !brute_force_models(kb, t, TheorySet::Both).empty();
                    };
                    // empty exactly when dropping every decision does not help
                    bool ok = got == brute_force_retractions(kb, s, blocked) &&
                              got.empty() != retract_all(s.dec.facts());
                    retract_fixable += !got.empty();
                    for (const auto& set : got) {
                        // sufficient, and no set with one fact fewer is
                        ok = ok && retract_all(set);
                        for (std::size_t i = 0; i < set.size(); ++i) {
                            auto smaller = set;
                            smaller.erase(smaller.begin() + static_cast<long>(i));
                            ok = ok && !retract_all(smaller);
                        }
                    }
                    retract_bad += !ok;
                }
            }
        }
    }
    const double dt = seconds_since(t0) + corpus_seconds;
    const bool ok = enum_bad == 0 && backbone_bad == 0 && subset_bad == 0 && retract_bad == 0 && dt < kOracleSeconds &&
                    corpus.size() >= kCorpusSize && retract_fixable > 0;
    report("oracle-equivalence", ok,
           fmt("%.0f KBs, %.0f bases, %.0f states, ", static_cast<double>(corpus.size()), static_cast<double>(bases),
               static_cast<double>(states)) +
               fmt("%.0f blocked facts (%.0f fixable); violations %.0f/", static_cast<double>(retract_cases), static_cast<double>(retract_fixable),
                   static_cast<double>(enum_bad)) +
               fmt("%.0f/%.0f/", static_cast<double>(backbone_bad), static_cast<double>(subset_bad)) +
               fmt("%.0f; %.1f s", static_cast<double>(retract_bad), dt));
}

void propositions(const std::vector<CorpusEntry>& corpus) {
    std::size_t prop1 = 0, prop2 = 0, bad = 0;
    for (const auto& entry : corpus) {
        const auto& kb = entry.engine.kb();
        for (const auto& s : entry.states) {
            const auto rel = relevant_exact(entry.engine, s);
            const auto combined = s.combined();
            const bool all = std::all_of(rel.begin(), rel.end(), [&](SymbolId id) { return combined.is_interpreted(id); });
            const bool env = std::all_of(rel.begin(), rel.end(), [&](SymbolId id) {
                return !kb.vocab().is_environmental(id) || combined.is_interpreted(id);
            });
            if (all) {
                ++prop1;
                bad += !(check_definite(entry.engine, s).holds && brute_force_definite(kb, s));
            }
            if (env) {
                ++prop2;
                bad += !(check_contingent(entry.engine, s).holds && brute_force_contingent(kb, s));
            }
        }
    }
    report("relevance-implies-solution", bad == 0 && prop1 > 0 && prop2 > 0,
           fmt("%.0f definite and %.0f contingent premises, %.0f violations", static_cast<double>(prop1),
               static_cast<double>(prop2), static_cast<double>(bad)));
}

void workload() {
    const auto t0 = Clock::now();
    const auto& e = legislation();
    const SimulationConfig config{1, kWorkloadRuns, 1000};
    const auto traditional = simulate(e, SimMode::Traditional, config);
    const auto guided = simulate(e, SimMode::Guided, config);
    const auto guided_again = simulate(e, SimMode::Guided, config);
    const auto traditional_again = serial::simulate(e, SimMode::Traditional, config);
    const double dt = seconds_since(t0);

    const bool deterministic = format_csv(traditional, guided) == format_csv(traditional_again, guided_again);
    bool all_definite = true;
    for (const auto& r : guided)
        all_definite = all_definite && r.outcome == SimOutcome::Definite && check_definite(e, r.final_state).holds;
    const double t = mean_entries(traditional), g = mean_entries(guided);
    const bool ok = e.vocab().ids_of(SymbolKind::Environmental).size() == 27 &&
                    e.vocab().ids_of(SymbolKind::Decision).size() == 2 && g <= kWorkloadRatio * t && all_definite &&
                    deterministic && dt < kWorkloadSeconds;
    report("workload-guided-vs-traditional", ok,
           fmt("traditional %.2f, guided %.2f (ratio %.3f), ", t, g, g / t) +
               (all_definite ? "all guided definite, " : "a guided run not definite, ") +
               (deterministic ? "deterministic, " : "NOT deterministic, ") + fmt("%.1f s", dt));
}

void session_replay() {
    std::mt19937_64 rng(99);
    const auto engines = {std::make_shared<const Engine>(parse_kb(read_data("registration_tax.kb"))),
                          std::make_shared<const Engine>(parse_kb(read_data("legislation.kb")))};
    std::size_t sequences = 0, violations = 0, events = 0;
    while (sequences < kReplaySequences) {
        for (const auto& engine : engines) {
            const auto& vocab = engine->vocab();
            Session session(engine);
            const auto steps = std::uniform_int_distribution<int>(1, 30)(rng);
            for (int i = 0; i < steps; ++i) {
                const SymbolId sym{std::uniform_int_distribution<std::size_t>(0, vocab.size() - 1)(rng)};
                const bool env = vocab.is_environmental(sym);
                if ((env ? session.state().obs : session.state().dec).is_interpreted(sym)) {
                    session.retract(sym);
                } else {
                    const auto v = static_cast<ValueIndex>(
                        std::uniform_int_distribution<std::size_t>(0, vocab[sym].domain.size() - 1)(rng));
                    session.assert_fact(Fact{sym, v}, env ? Role::Observation : Role::Decision);
                }
            }
            const auto& history = session.history();
            events += history.size();
            if (replay(engine->kb(), history) != session.state()) ++violations;
            for (std::size_t n = 0; n <= history.size(); ++n) {
                const std::vector<Event> prefix(history.begin(), history.begin() + static_cast<long>(n));
                if (!engine->is_consistent(replay(engine->kb(), prefix))) ++violations;
                if (n > 0 && history[n - 1].step != n - 1) ++violations;
            }
            ++sequences;
        }
    }
    report("session-replay", violations == 0,
           fmt("%.0f sequences, %.0f events, %.0f violations", static_cast<double>(sequences),
               static_cast<double>(events), static_cast<double>(violations)));
}

void run(const char* name, const std::function<void()>& f) {
    try {
        f();
    } catch (const std::exception& e) {
        report(name, false, std::string("exception: ") + e.what());
    }
}

}  // namespace

int main() {
    run("tax-three-solutions", tax_solutions);
    run("propagation-split", propagation_split);
    run("solution-taxonomy", solution_taxonomy);
    run("relevance-low-rent", relevance);
    const auto t0 = Clock::now();
    std::vector<CorpusEntry> corpus;
    run("oracle-equivalence", [&] {
        corpus = build_corpus();
        oracle_suite(corpus, seconds_since(t0));
    });
    run("relevance-implies-solution", [&] { propositions(corpus); });
    run("workload-guided-vs-traditional", workload);
    run("session-replay", session_replay);
    std::printf("%d criteria failed\n", failures);
    return failures;
}
