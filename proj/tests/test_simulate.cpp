#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "imx/assistant.hpp"
#include "imx/simulate.hpp"
#include "support/fixtures.hpp"
#include "support/oracle.hpp"

using namespace imx;
using namespace imx::testing;

TEST_CASE("sampled environments satisfy the environment theory") {
    for (const auto* e : {&tax_example(), &legislation()}) {
        std::mt19937_64 rng(3);
        for (int i = 0; i < 50; ++i) {
            const auto env = sample_environment(*e, rng);
            CHECK(env.count() == e->vocab().ids_of(SymbolKind::Environmental).size());
            CHECK(e->is_consistent(env, TheorySet::EnvOnly));
        }
        CHECK(instance_environment(*e, 9, 4) == instance_environment(*e, 9, 4));
    }
}

TEST_CASE("tax example, traditional runs") {
    const auto& e = tax_example();
    const auto rows = simulate(e, SimMode::Traditional, {7, 40, 100});
    for (const auto& r : rows) {
        CHECK(r.outcome == SimOutcome::Total);
        CHECK(r.entries >= 3);
        CHECK(r.entries <= 4);
        CHECK(r.retractions == 0);
        const auto final_state = r.final_state.combined();
        CHECK(final_state.is_total());
        CHECK(satisfies(e.kb(), final_state, TheorySet::Both));
    }
}

TEST_CASE("tax example, guided runs with LowRent false") {
    const auto& e = tax_example();
    const auto hidden = facts(e, "SocialHousing = false\nLicensedSeller = true\nLowRent = false");
    std::size_t fewest = 99, at_most_two = 0;
    const std::uint64_t seeds = 200;
    for (std::uint64_t seed = 0; seed < seeds; ++seed) {
        std::mt19937_64 rng(seed);
        const auto r = run_on(e, SimMode::Guided, hidden, rng, 100);
        CHECK(r.outcome == SimOutcome::Definite);
        CHECK(check_definite(e, r.final_state).holds);
        fewest = std::min(fewest, r.entries);
        at_most_two += r.entries <= 2;
    }
    // observing LowRent first settles everything; deciding first can cost a retraction
    CHECK(fewest == 1);
    CHECK(at_most_two * 2 > seeds);
}

TEST_CASE("simulation is deterministic and the parallel runner matches the serial one") {
    const auto& e = legislation();
    const SimulationConfig config{2024, 12, 1000};
    for (auto mode : {SimMode::Traditional, SimMode::Guided}) {
        const auto a = simulate(e, mode, config);
        const auto b = simulate(e, mode, config);
        const auto c = serial::simulate(e, mode, config);
        REQUIRE(a.size() == 12);
        for (std::size_t i = 0; i < a.size(); ++i) {
            CHECK(a[i].instance == i + 1);
            CHECK(a[i].same_counts(b[i]));
            CHECK(a[i].same_counts(c[i]));
            CHECK(a[i].final_state == c[i].final_state);
        }
        CHECK(format_csv(a, {}) == format_csv(c, {}));
    }
}

TEST_CASE("legislation workload: guided needs fewer entries on every instance") {
    const auto& e = legislation();
    const SimulationConfig config{1, 50, 1000};
    const auto traditional = simulate(e, SimMode::Traditional, config);
    const auto guided = simulate(e, SimMode::Guided, config);
    for (std::size_t i = 0; i < config.runs; ++i) {
        CHECK(traditional[i].outcome == SimOutcome::Total);
        CHECK(guided[i].outcome == SimOutcome::Definite);
        CHECK(check_definite(e, guided[i].final_state).holds);
        if (traditional[i].entries > 2 || guided[i].entries > 2) CHECK(guided[i].entries <= traditional[i].entries);
    }
    const std::vector<SimulationRow> first5(guided.begin(), guided.begin() + 5);
    const std::vector<SimulationRow> first5t(traditional.begin(), traditional.begin() + 5);
    CHECK(mean_entries(first5) < mean_entries(first5t));
}

TEST_CASE("a tiny step cap fails the run") {
    const auto r = run_instance(legislation(), SimMode::Guided, 1, 1, 2);
    CHECK(r.outcome == SimOutcome::Failed);
    const auto t = run_instance(legislation(), SimMode::Traditional, 1, 1, 2);
    CHECK(t.outcome == SimOutcome::Failed);
}

TEST_CASE("table and CSV output") {
    const auto& e = tax_example();
    const auto t = simulate(e, SimMode::Traditional, {5, 3, 100});
    const auto g = simulate(e, SimMode::Guided, {5, 3, 100});
    const auto csv = format_csv(t, g);
    CHECK(csv.rfind("instance,mode,entries,retractions,outcome\n", 0) == 0);
    CHECK(std::count(csv.begin(), csv.end(), '\n') == 7);
    CHECK(csv.find("1,traditional," + std::to_string(t[0].entries) + ",0,total\n") != std::string::npos);
    const auto table = format_table(t, g);
    CHECK(table.find("average") != std::string::npos);
    CHECK(table.find("gain") != std::string::npos);
    CHECK(format_table(t, {}).find("gain") == std::string::npos);
}
