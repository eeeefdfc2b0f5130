#include "imx/service.hpp"

#include <charconv>
#include <cstdio>

namespace imx {

using nlohmann::json;

namespace {

constexpr std::size_t kDefaultSolutionLimit = 100;
constexpr std::size_t kMaxSolutionLimit = 10000;

json envelope() { return json{{"version", kApiVersion}}; }

Response error(int status, const std::string& code, const std::string& message) {
    auto body = envelope();
    body["error"] = {{"code", code}, {"message", message}};
    return {status, std::move(body)};
}

json domain_to_json(const Domain& d) {
    switch (d.type()) {
    case Domain::Type::Bool: return {{"type", "bool"}};
    case Domain::Type::Enum: return {{"type", "enum"}, {"values", d.names()}};
    case Domain::Type::IntRange: return {{"type", "int"}, {"lo", d.lo()}, {"hi", d.hi()}};
    }
    return {};
}

json fact_to_json(const Vocabulary& vocab, const Fact& f) {
    return {{"symbol", vocab[f.symbol].name}, {"value", value_to_json(vocab[f.symbol].domain, f.value)}};
}

json structure_to_json(const PartialStructure& s) {
    json out = json::object();
    for (const auto& f : s.facts()) {
        const auto& decl = s.vocabulary()[f.symbol];
        out[decl.name] = value_to_json(decl.domain, f.value);
    }
    return out;
}

// Accepts the typed JSON form or the text form of a value.
std::optional<ValueIndex> value_from_json(const Domain& d, const json& v) {
    if (v.is_string()) return d.parse(v.get<std::string>());
    if (v.is_boolean() && d.type() == Domain::Type::Bool) return v.get<bool>() ? 1 : 0;
    if (v.is_number_integer() && d.type() == Domain::Type::IntRange) return d.index_of_int(v.get<long long>());
    return std::nullopt;
}

std::optional<RelevanceMode> parse_mode(std::string_view mode) {
    if (mode.empty() || mode == "approx") return RelevanceMode::Approx;
    if (mode == "exact") return RelevanceMode::Exact;
    return std::nullopt;
}

Response report_response(const Session& session, std::string_view mode_text) {
    const auto mode = parse_mode(mode_text);
    if (!mode) return error(400, "bad_request", "mode must be 'exact' or 'approx'");
    try {
        auto body = envelope();
        body["report"] = report_to_json(session.engine(), session.report(*mode));
        return {200, std::move(body)};
    } catch (const SizeGuardExceeded& e) {
        return error(422, "size_guard", e.what());
    }
}

Response session_error(const SessionError& e) {
    switch (e.code()) {
    case SessionError::Code::WrongRole: return error(422, "wrong_role", e.what());
    case SessionError::Code::NotInterpreted: return error(409, "not_interpreted", e.what());
    case SessionError::Code::AlreadyInterpreted:
    case SessionError::Code::OutOfDomain:
    case SessionError::Code::UnknownSymbol: break;
    }
    return error(400, "bad_request", e.what());
}

}  // namespace

json value_to_json(const Domain& domain, ValueIndex v) {
    switch (domain.type()) {
    case Domain::Type::Bool: return v != 0;
    case Domain::Type::IntRange: return domain.int_value(v);
    case Domain::Type::Enum: break;
    }
    return domain.format(v);
}

json report_to_json(const Engine& engine, const StateReport& r) {
    const auto& vocab = engine.vocab();
    json symbols = json::array();
    for (const auto& s : r.symbols) {
        const auto& decl = vocab[s.symbol];
        json item = {{"name", decl.name},
                     {"kind", to_string(decl.kind)},
                     {"domain", domain_to_json(decl.domain)},
                     {"status", to_string(s.status)},
                     {"goal", decl.goal}};
        if (s.value) item["value"] = value_to_json(decl.domain, *s.value);
        symbols.push_back(std::move(item));
    }
    return {{"mode", to_string(r.mode)},
            {"consistent", r.consistent},
            {"symbols", std::move(symbols)},
            {"banners", {{"definite", r.definite_reached}, {"contingent", r.contingent_reached}}},
            {"verified", {{"definite", r.verified_definite}, {"contingent", r.verified_contingent}}},
            {"history_length", r.history_length}};
}

Service::Service() : id_rng_(std::random_device{}()) {}

std::string Service::next_id() {
    std::lock_guard lock(id_mutex_);
    char buf[48];
    std::snprintf(buf, sizeof buf, "s%zu-%016llx", ++id_counter_, static_cast<unsigned long long>(id_rng_()));
    return buf;
}

std::shared_ptr<Service::Entry> Service::find(const std::string& id) const {
    std::shared_lock lock(sessions_mutex_);
    auto it = sessions_.find(id);
    return it == sessions_.end() ? nullptr : it->second;
}

std::size_t Service::session_count() const {
    std::shared_lock lock(sessions_mutex_);
    return sessions_.size();
}

Response Service::create_session(std::string_view kb_text) {
    std::shared_ptr<const Engine> engine;
    try {
        engine = std::make_shared<const Engine>(parse_kb(kb_text));
    } catch (const ParseError& e) {
        auto r = error(400, "kb_parse_error", e.what());
        r.body["error"]["line"] = e.span().line;
        r.body["error"]["column"] = e.span().column;
        return r;
    }
    auto entry = std::make_shared<Entry>(engine);
    const auto id = next_id();
    auto body = envelope();
    body["id"] = id;
    body["satisfiable"] = entry->session.satisfiable();
    if (!entry->session.satisfiable()) body["message"] = "there is no solution";
    body["report"] = report_to_json(*engine, entry->session.report(RelevanceMode::Approx));
    {
        std::unique_lock lock(sessions_mutex_);
        sessions_.emplace(id, std::move(entry));
    }
    return {201, std::move(body)};
}

Response Service::assert_fact(const std::string& id, std::string_view body_text, std::string_view mode) {
    auto entry = find(id);
    if (!entry) return error(404, "unknown_session", "no session '" + id + "'");
    if (!parse_mode(mode)) return error(400, "bad_request", "mode must be 'exact' or 'approx'");

    const auto body = json::parse(body_text, nullptr, false);
    if (body.is_discarded() || !body.is_object()) return error(400, "bad_request", "body must be a JSON object");
    if (!body.contains("symbol") || !body["symbol"].is_string() || !body.contains("value") ||
        !body.contains("role") || !body["role"].is_string())
        return error(400, "bad_request", "expected fields 'symbol', 'value' and 'role'");
    const auto role_text = body["role"].get<std::string>();
    Role role;
    if (role_text == "observation") {
        role = Role::Observation;
    } else if (role_text == "decision") {
        role = Role::Decision;
    } else {
        return error(400, "bad_request", "role must be 'observation' or 'decision'");
    }

    std::lock_guard lock(entry->mutex);
    auto& session = entry->session;
    const auto& vocab = session.engine().vocab();
    const auto name = body["symbol"].get<std::string>();
    const auto sym = vocab.find(name);
    if (!sym) return error(400, "bad_request", "unknown symbol '" + name + "'");
    const auto& decl = vocab[*sym];
    const auto value = value_from_json(decl.domain, body["value"]);
    if (!value)
        return error(400, "bad_request",
                     "value " + body["value"].dump() + " is not in the domain " + decl.domain.to_string() + " of '" +
                         name + "'");
    try {
        const auto result = session.assert_fact(Fact{*sym, *value}, role);
        if (!result.accepted) {
            auto r = error(409, "blocked",
                           session.satisfiable() ? "'" + name + "' conflicts with the current state"
                                                 : std::string("there is no solution"));
            json hints = json::array();
            for (const auto& set : result.hints) {
                json facts = json::array();
                for (const auto& f : set) facts.push_back(fact_to_json(vocab, f));
                hints.push_back(std::move(facts));
            }
            r.body["error"]["hints"] = std::move(hints);
            r.body["report"] = report_to_json(session.engine(), session.report(*parse_mode(mode)));
            return r;
        }
    } catch (const SessionError& e) {
        return session_error(e);
    }
    return report_response(session, mode);
}

Response Service::retract(const std::string& id, const std::string& symbol, std::string_view mode) {
    auto entry = find(id);
    if (!entry) return error(404, "unknown_session", "no session '" + id + "'");
    if (!parse_mode(mode)) return error(400, "bad_request", "mode must be 'exact' or 'approx'");
    std::lock_guard lock(entry->mutex);
    try {
        entry->session.retract(symbol);
    } catch (const SessionError& e) {
        return session_error(e);
    }
    return report_response(entry->session, mode);
}

Response Service::report(const std::string& id, std::string_view mode) {
    auto entry = find(id);
    if (!entry) return error(404, "unknown_session", "no session '" + id + "'");
    std::lock_guard lock(entry->mutex);
    return report_response(entry->session, mode);
}

Response Service::solutions(const std::string& id, std::string_view limit_text) {
    auto entry = find(id);
    if (!entry) return error(404, "unknown_session", "no session '" + id + "'");
    std::size_t limit = kDefaultSolutionLimit;
    if (!limit_text.empty()) {
        const auto [end, ec] = std::from_chars(limit_text.data(), limit_text.data() + limit_text.size(), limit);
        if (ec != std::errc{} || end != limit_text.data() + limit_text.size() || limit == 0 ||
            limit > kMaxSolutionLimit)
            return error(400, "bad_request", "limit must be an integer in [1, " + std::to_string(kMaxSolutionLimit) + "]");
    }
    std::lock_guard lock(entry->mutex);
    const auto& session = entry->session;
    json models = json::array();
    for (const auto& m : session.engine().enumerate_models(session.state(), TheorySet::Both, limit))
        models.push_back(structure_to_json(m));
    auto body = envelope();
    body["models"] = std::move(models);
    return {200, std::move(body)};
}

}  // namespace imx
