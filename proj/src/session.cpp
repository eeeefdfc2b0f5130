#include "imx/session.hpp"

namespace imx {

const char* to_string(Role role) { return role == Role::Observation ? "observation" : "decision"; }

Session::Session(std::shared_ptr<const Engine> engine)
    : engine_(std::move(engine)),
      state_{engine_->kb().empty_structure(), engine_->kb().empty_structure()},
      satisfiable_(engine_->is_consistent(state_)) {}

SymbolId Session::lookup(std::string_view symbol) const {
    auto id = engine_->vocab().find(symbol);
    if (!id) throw SessionError(SessionError::Code::UnknownSymbol, "unknown symbol '" + std::string(symbol) + "'");
    return *id;
}

AssertResult Session::assert_fact(std::string_view symbol, std::string_view value, Role role) {
    const auto id = lookup(symbol);
    const auto& decl = engine_->vocab()[id];
    auto v = decl.domain.parse(value);
    if (!v)
        throw SessionError(SessionError::Code::OutOfDomain, "value '" + std::string(value) + "' is not in the domain " +
                                                                decl.domain.to_string() + " of '" + decl.name + "'");
    return assert_fact(Fact{id, *v}, role);
}

AssertResult Session::assert_fact(const Fact& fact, Role role) {
    const auto& vocab = engine_->vocab();
    if (fact.symbol.value() >= vocab.size()) throw SessionError(SessionError::Code::UnknownSymbol, "unknown symbol");
    const auto& decl = vocab[fact.symbol];
    const bool env = decl.kind == SymbolKind::Environmental;
    if (env != (role == Role::Observation))
        throw SessionError(SessionError::Code::WrongRole, "'" + decl.name + "' is " + to_string(decl.kind) +
                                                              " and cannot be entered as a " + to_string(role));
    if (!decl.domain.contains(fact.value))
        throw SessionError(SessionError::Code::OutOfDomain, "value out of the domain of '" + decl.name + "'");
    if (state_.obs.is_interpreted(fact.symbol) || state_.dec.is_interpreted(fact.symbol))
        throw SessionError(SessionError::Code::AlreadyInterpreted,
                           "'" + decl.name + "' already has a value; retract it first");

    SolveState next = state_;
    (env ? next.obs : next.dec).set(fact);
    if (satisfiable_ && engine_->is_consistent(next)) {
        state_ = std::move(next);
        history_.push_back({Event::Type::Assert, fact, role, history_.size()});
        return {true, {}};
    }
    AssertResult blocked;
    if (env && satisfiable_) blocked.hints = engine_->retraction_candidates(state_, fact);
    return blocked;
}

Fact Session::retract(std::string_view symbol) { return retract(lookup(symbol)); }

Fact Session::retract(SymbolId symbol) {
    const auto& vocab = engine_->vocab();
    if (symbol.value() >= vocab.size()) throw SessionError(SessionError::Code::UnknownSymbol, "unknown symbol");
    const bool env = vocab.is_environmental(symbol);
    auto& target = env ? state_.obs : state_.dec;
    if (!target.is_interpreted(symbol))
        throw SessionError(SessionError::Code::NotInterpreted,
                           "'" + vocab[symbol].name + "' has no given value to retract");
    const Fact fact{symbol, target.value(symbol)};
    target.erase(symbol);
    history_.push_back({Event::Type::Retract, fact, env ? Role::Observation : Role::Decision, history_.size()});
    return fact;
}

StateReport Session::report(RelevanceMode mode, std::size_t exact_limit) const {
    return make_report(*engine_, state_, mode, history_.size(), exact_limit);
}

SolveState replay(const KnowledgeBase& kb, const std::vector<Event>& history) {
    SolveState s{kb.empty_structure(), kb.empty_structure()};
    for (const auto& e : history) {
        auto& target = e.role == Role::Observation ? s.obs : s.dec;
        if (e.type == Event::Type::Assert) {
            if (target.is_interpreted(e.fact.symbol)) throw Error("replay: symbol asserted twice");
            target.set(e.fact);
        } else {
            if (target.get(e.fact.symbol) != e.fact.value) throw Error("replay: retracting an absent fact");
            target.erase(e.fact.symbol);
        }
    }
    return s;
}

}  // namespace imx
