#pragma once

#include <atomic>
#include <cstddef>
#include <memory>
#include <mutex>
#include <optional>
#include <random>
#include <shared_mutex>
#include <string>
#include <string_view>
#include <unordered_map>

#include <json.hpp>

#include "imx/session.hpp"

namespace imx {

inline constexpr int kApiVersion = 1;

/// HTTP-agnostic result of a service call: a status code and a JSON body.
struct Response {
    int status = 200;
    nlohmann::json body;
};

/// Session registry behind the HTTP endpoints.
///
/// Distinct sessions run concurrently; calls on one session are serialized by
/// a per-session lock. Every body carries `"version": 1`. Errors are
/// `{"version", "error": {"code", "message", ...}}` with code one of
/// kb_parse_error, unknown_session, wrong_role, blocked, not_interpreted,
/// size_guard, bad_request.
class Service {
public:
    Service();

    /// POST /sessions, body = KB text.
    Response create_session(std::string_view kb_text);
    /// POST /sessions/{id}/facts, body = {"symbol", "value", "role"}.
    Response assert_fact(const std::string& id, std::string_view body, std::string_view mode = "approx");
    /// DELETE /sessions/{id}/facts/{symbol}
    Response retract(const std::string& id, const std::string& symbol, std::string_view mode = "approx");
    /// GET /sessions/{id}/report?mode=exact|approx
    Response report(const std::string& id, std::string_view mode = "approx");
    /// GET /sessions/{id}/solutions?limit=N
    Response solutions(const std::string& id, std::string_view limit = "");

    std::size_t session_count() const;

private:
    struct Entry {
        std::mutex mutex;
        Session session;
        explicit Entry(std::shared_ptr<const Engine> engine) : session(std::move(engine)) {}
    };

    std::shared_ptr<Entry> find(const std::string& id) const;
    std::string next_id();

    mutable std::shared_mutex sessions_mutex_;
    std::unordered_map<std::string, std::shared_ptr<Entry>> sessions_;
    std::mutex id_mutex_;
    std::mt19937_64 id_rng_;
    std::size_t id_counter_ = 0;
};

/// JSON encoding of a report: per-symbol {name, kind, domain, status, value?},
/// banners, ground-truth checks and history length.
nlohmann::json report_to_json(const Engine& engine, const StateReport& report);

/// A value as JSON: true/false for Bool, a number for Int ranges, a string for enums.
nlohmann::json value_to_json(const Domain& domain, ValueIndex v);

}  // namespace imx
