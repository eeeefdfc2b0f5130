#pragma once

#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>

#include "imx/engine.hpp"

namespace imx::testing {

inline std::string read_data(const std::string& name) {
    std::ifstream in(std::string(IMX_DATA_DIR) + "/" + name, std::ios::binary);
    if (!in) throw std::runtime_error("missing data file " + name);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

inline const Engine& tax_example() {
    static const Engine engine(parse_kb(read_data("registration_tax.kb")));
    return engine;
}

inline const Engine& legislation() {
    static const Engine engine(parse_kb(read_data("legislation.kb")));
    return engine;
}

/// Structure from `name = value` lines over the engine's vocabulary.
inline PartialStructure facts(const Engine& engine, const std::string& text) {
    return parse_structure(text, engine.kb().vocabulary);
}

inline SolveState state(const Engine& engine, const std::string& obs, const std::string& dec) {
    return {facts(engine, obs), facts(engine, dec)};
}

}  // namespace imx::testing
