#pragma once

#include <cstddef>
#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "imx/engine.hpp"

namespace imx {

/// Traditional: enter the whole environment in random order, then random
/// decisions until the state is total. Guided: pick random relevant unknown
/// symbols until a definite solution is reached.
enum class SimMode { Traditional, Guided };

enum class SimOutcome { Total, Definite, Failed };

const char* to_string(SimMode mode);
const char* to_string(SimOutcome outcome);

struct SimulationConfig {
    std::uint64_t seed = 1;
    std::size_t runs = 50;
    /// Maximum number of robot actions per run before the row is flagged failed.
    std::size_t step_cap = 1000;
};

struct SimulationRow {
    std::size_t instance = 0;
    SimMode mode = SimMode::Traditional;
    std::size_t entries = 0;
    std::size_t retractions = 0;
    SimOutcome outcome = SimOutcome::Failed;
    /// Final state of the run, for checking.
    SolveState final_state;

    /// Everything but the final state.
    bool same_counts(const SimulationRow& o) const {
        return instance == o.instance && mode == o.mode && entries == o.entries && retractions == o.retractions &&
               outcome == o.outcome;
    }
};

/// A random environment satisfying Tenv, drawn one symbol at a time among the
/// values that keep Tenv satisfiable. Throws InconsistentState if Tenv has no model.
PartialStructure sample_environment(const Engine& engine, std::mt19937_64& rng);

/// Hidden environment of an instance; identical for both modes.
PartialStructure instance_environment(const Engine& engine, std::uint64_t seed, std::size_t instance);

/// One run against a given hidden environment (a total structure over the
/// environmental symbols satisfying Tenv).
SimulationRow run_on(const Engine& engine, SimMode mode, const PartialStructure& hidden, std::mt19937_64& rng,
                     std::size_t step_cap);

SimulationRow run_instance(const Engine& engine, SimMode mode, std::uint64_t seed, std::size_t instance,
                           std::size_t step_cap);

/// Runs instances 1..runs in parallel. Rows come back in instance order and do
/// not depend on the thread count.
std::vector<SimulationRow> simulate(const Engine& engine, SimMode mode, const SimulationConfig& config);

namespace serial {
std::vector<SimulationRow> simulate(const Engine& engine, SimMode mode, const SimulationConfig& config);
}

double mean_entries(const std::vector<SimulationRow>& rows);

/// Plain-text table. Pass an empty vector for a mode that was not run.
std::string format_table(const std::vector<SimulationRow>& traditional, const std::vector<SimulationRow>& guided);

/// CSV with header instance,mode,entries,retractions,outcome.
std::string format_csv(const std::vector<SimulationRow>& traditional, const std::vector<SimulationRow>& guided);

}  // namespace imx
