// Command line front end: batch reasoning over .kb/.struct files, the
// robot workload simulation and the HTTP server.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "imx/assistant.hpp"
#include "imx/http.hpp"
#include "imx/simulate.hpp"

namespace {

using namespace imx;

constexpr int kOk = 0;
constexpr int kInconsistent = 1;
constexpr int kUsage = 2;

// A user-facing failure; the message is already formatted.
struct Failure {
    std::string message;
};

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Failure{path + ": cannot open file"};
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

Engine load_kb(const std::string& path) {
    const auto text = read_file(path);
    try {
        return Engine(parse_kb(text));
    } catch (const ParseError& e) {
        throw Failure{path + ":" + e.what()};
    }
}

SolveState load_state(const Engine& engine, const std::vector<std::string>& paths) {
    auto all = engine.kb().empty_structure();
    for (const auto& path : paths) {
        const auto text = read_file(path);
        try {
            all = join(all, parse_structure(text, engine.kb().vocabulary));
        } catch (const ParseError& e) {
            throw Failure{path + ":" + e.what()};
        } catch (const OverlapError& e) {
            throw Failure{path + ": " + e.what()};
        }
    }
    return {all.restricted_to(SymbolKind::Environmental), all.restricted_to(SymbolKind::Decision)};
}

void print_section(const char* title, const PartialStructure& s) {
    std::cout << "# " << title << '\n';
    const auto text = serialize_structure(s);
    if (!text.empty()) std::cout << text << '\n';
}

int cmd_check(const std::string& kb_path) {
    const auto engine = load_kb(kb_path);
    const auto& vocab = engine.vocab();
    std::cout << kb_path << ": " << vocab.size() << " symbols ("
              << vocab.ids_of(SymbolKind::Environmental).size() << " environmental, "
              << vocab.ids_of(SymbolKind::Decision).size() << " decision), " << engine.kb().tenv.size()
              << " environment sentences, " << engine.kb().tsol.size() << " solution sentences\n";
    if (!engine.is_consistent(engine.kb().empty_structure(), TheorySet::EnvOnly)) {
        std::cout << "the environment theory has no model\n";
        return kInconsistent;
    }
    if (!engine.is_consistent(engine.kb().empty_structure(), TheorySet::Both)) {
        std::cout << "there is no solution\n";
        return kInconsistent;
    }
    std::cout << "ok\n";
    return kOk;
}

int cmd_solve(const std::string& kb_path, const std::vector<std::string>& structs, std::size_t limit) {
    const auto engine = load_kb(kb_path);
    const auto state = load_state(engine, structs);
    const auto models = engine.enumerate_models(state, TheorySet::Both, limit);
    for (std::size_t i = 0; i < models.size(); ++i) {
        std::cout << "# model " << (i + 1) << '\n' << serialize_structure(models[i]) << "\n\n";
    }
    std::cout << models.size() << (models.size() == limit ? "+" : "") << " model(s)\n";
    return models.empty() ? kInconsistent : kOk;
}

int cmd_propagate(const std::string& kb_path, const std::vector<std::string>& structs) {
    const auto engine = load_kb(kb_path);
    const auto state = load_state(engine, structs);
    if (!engine.is_consistent(state)) {
        std::cout << "inconsistent state\n";
        return kInconsistent;
    }
    const auto split = propagate_split(engine, state);
    print_section("safe consequences (environment)", split.obs_safe);
    print_section("to verify (environment)", split.obs_to_verify);
    print_section("decision consequences", split.dec_consequence);
    return kOk;
}

int cmd_relevance(const std::string& kb_path, const std::vector<std::string>& structs, const std::string& mode_text) {
    const auto engine = load_kb(kb_path);
    const auto state = load_state(engine, structs);
    const auto mode = mode_text == "exact" ? RelevanceMode::Exact : RelevanceMode::Approx;
    if (!engine.is_consistent(state)) {
        std::cout << "inconsistent state\n";
        return kInconsistent;
    }
    StateReport report;
    try {
        report = make_report(engine, state, mode);
    } catch (const SizeGuardExceeded& e) {
        throw Failure{std::string("exact mode unavailable: ") + e.what()};
    }
    const auto& vocab = engine.vocab();
    std::printf("%-24s %-14s %-22s %s\n", "symbol", "kind", "status", "value");
    for (const auto& s : report.symbols) {
        const auto& decl = vocab[s.symbol];
        std::printf("%-24s %-14s %-22s %s\n", decl.name.c_str(), to_string(decl.kind), to_string(s.status),
                    s.value ? decl.domain.format(*s.value).c_str() : "");
    }
    std::string relevant, irrelevant;
    for (auto id : vocab.ids()) (report.relevant.count(id) ? relevant : irrelevant) += " " + vocab[id].name;
    std::cout << "relevant:" << relevant << "\nirrelevant:" << irrelevant << '\n';
    std::cout << "definite: " << (report.definite_reached ? "yes" : "no")
              << "\ncontingent: " << (report.contingent_reached ? "yes" : "no") << '\n';
    return kOk;
}

int cmd_simulate(const std::string& kb_path, const std::string& mode, const SimulationConfig& config,
                 const std::string& csv_path) {
    const auto engine = load_kb(kb_path);
    if (!engine.is_consistent(engine.kb().empty_structure(), TheorySet::EnvOnly)) {
        std::cout << "the environment theory has no model\n";
        return kInconsistent;
    }
    std::vector<SimulationRow> traditional, guided;
    if (mode != "guided") traditional = simulate(engine, SimMode::Traditional, config);
    if (mode != "traditional") guided = simulate(engine, SimMode::Guided, config);
    std::cout << format_table(traditional, guided);
    if (!csv_path.empty()) {
        std::ofstream out(csv_path, std::ios::binary);
        if (!out) throw Failure{csv_path + ": cannot write file"};
        out << format_csv(traditional, guided);
    }
    return kOk;
}

int cmd_serve(const std::string& host, int port) {
    Service service;
    httplib::Server server;
    mount(service, server);
    std::cout << "listening on http://" << host << ":" << port << std::endl;
    if (!server.listen(host, port)) throw Failure{"cannot listen on " + host + ":" + std::to_string(port)};
    return kOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Interactive model expansion assistant"};
    app.require_subcommand(1);

    std::string kb;
    std::vector<std::string> structs;
    std::string mode;
    std::size_t limit = 100;
    SimulationConfig sim;
    std::string csv;
    std::string host = "127.0.0.1";
    int port = 8080;

    auto* check = app.add_subcommand("check", "Parse a knowledge base and check it has a solution");
    check->add_option("--kb", kb, "Knowledge base (.kb)")->required();

    auto* solve = app.add_subcommand("solve", "Enumerate total solutions expanding a state");
    solve->add_option("--kb", kb, "Knowledge base (.kb)")->required();
    solve->add_option("--struct", structs, "State facts (.struct), repeatable");
    solve->add_option("--limit", limit, "Maximum number of models")->check(CLI::PositiveNumber);

    auto* propagate = app.add_subcommand("propagate", "Split the consequences of a state");
    propagate->add_option("--kb", kb, "Knowledge base (.kb)")->required();
    propagate->add_option("--struct", structs, "State facts (.struct), repeatable");

    auto* relevance = app.add_subcommand("relevance", "Status and relevance of every symbol");
    relevance->add_option("--kb", kb, "Knowledge base (.kb)")->required();
    relevance->add_option("--struct", structs, "State facts (.struct), repeatable");
    relevance->add_option("--mode", mode, "exact or approx")->check(CLI::IsMember({"exact", "approx"}))
        ->default_val("approx");

    auto* simulate_cmd = app.add_subcommand("simulate", "Robot workload: traditional versus guided entry");
    simulate_cmd->add_option("--kb", kb, "Knowledge base (.kb)")->required();
    simulate_cmd->add_option("--mode", mode, "traditional, guided or both")
        ->check(CLI::IsMember({"traditional", "guided", "both"}))
        ->default_val("both");
    simulate_cmd->add_option("--runs", sim.runs, "Number of instances")->check(CLI::PositiveNumber);
    simulate_cmd->add_option("--seed", sim.seed, "Random seed");
    simulate_cmd->add_option("--cap", sim.step_cap, "Step cap per run")->check(CLI::PositiveNumber);
    simulate_cmd->add_option("--csv", csv, "Also write rows as CSV");

    auto* serve = app.add_subcommand("serve", "Run the HTTP session service");
    serve->add_option("--host", host, "Bind address");
    serve->add_option("--port", port, "Port")->check(CLI::Range(1, 65535));

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kOk : kUsage;
    }

    try {
        if (*check) return cmd_check(kb);
        if (*solve) return cmd_solve(kb, structs, limit);
        if (*propagate) return cmd_propagate(kb, structs);
        if (*relevance) return cmd_relevance(kb, structs, mode);
        if (*simulate_cmd) return cmd_simulate(kb, mode, sim, csv);
        if (*serve) return cmd_serve(host, port);
    } catch (const Failure& f) {
        std::cerr << "imx: " << f.message << '\n';
        return kUsage;
    } catch (const Error& e) {
        std::cerr << "imx: " << e.what() << '\n';
        return kUsage;
    }
    return kUsage;
}
