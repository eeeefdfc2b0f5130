#pragma once

#include <cstddef>
#include <memory>
#include <string_view>
#include <vector>

#include "imx/assistant.hpp"
#include "imx/error.hpp"

namespace imx {

enum class Role { Observation, Decision };

const char* to_string(Role role);

struct Event {
    enum class Type { Assert, Retract };
    Type type = Type::Assert;
    Fact fact;
    Role role = Role::Observation;
    /// Position in the history, starting at 0.
    std::size_t step = 0;
};

/// Outcome of an assertion. A blocked observation carries the sets of
/// decisions whose retraction would admit it; a blocked decision carries none.
struct AssertResult {
    bool accepted = false;
    std::vector<std::vector<Fact>> hints;
};

class SessionError : public Error {
public:
    enum class Code { WrongRole, AlreadyInterpreted, OutOfDomain, NotInterpreted, UnknownSymbol };

    SessionError(Code code, const std::string& message) : Error(message), code_(code) {}
    Code code() const { return code_; }

private:
    Code code_;
};

/// One run of the interactive process over a fixed knowledge base.
///
/// Every accepted step leaves the state consistent. Not thread-safe: callers
/// serialize operations on one session.
class Session {
public:
    explicit Session(std::shared_ptr<const Engine> engine);

    const Engine& engine() const { return *engine_; }
    const SolveState& state() const { return state_; }
    const std::vector<Event>& history() const { return history_; }
    /// False when the knowledge base has no model at all; then nothing is ever accepted.
    bool satisfiable() const { return satisfiable_; }

    AssertResult assert_fact(const Fact& fact, Role role);
    /// Parses `symbol = value` against the vocabulary first.
    AssertResult assert_fact(std::string_view symbol, std::string_view value, Role role);

    /// Removes a given observation or decision and returns it.
    Fact retract(SymbolId symbol);
    Fact retract(std::string_view symbol);

    StateReport report(RelevanceMode mode, std::size_t exact_limit = kDefaultExactLimit) const;

private:
    SymbolId lookup(std::string_view symbol) const;

    std::shared_ptr<const Engine> engine_;
    SolveState state_;
    std::vector<Event> history_;
    bool satisfiable_ = true;
};

/// Folds a history from the empty state. Throws Error on an event that does
/// not apply (asserting an interpreted symbol, retracting an absent fact).
SolveState replay(const KnowledgeBase& kb, const std::vector<Event>& history);

}  // namespace imx
