#include "imx/http.hpp"

namespace imx {

namespace {

void send(httplib::Response& res, const Response& r) {
    res.status = r.status;
    res.set_content(r.body.dump(), "application/json");
}

}  // namespace

void mount(Service& service, httplib::Server& server) {
    server.set_default_headers({{"Access-Control-Allow-Origin", "*"},
                                {"Access-Control-Allow-Methods", "GET, POST, DELETE, OPTIONS"},
                                {"Access-Control-Allow-Headers", "Content-Type"}});
    server.Options(R"(/sessions.*)", [](const httplib::Request&, httplib::Response& res) { res.status = 204; });

    server.Post("/sessions", [&service](const httplib::Request& req, httplib::Response& res) {
        send(res, service.create_session(req.body));
    });
    server.Post(R"(/sessions/([^/]+)/facts)", [&service](const httplib::Request& req, httplib::Response& res) {
        send(res, service.assert_fact(req.matches[1], req.body, req.get_param_value("mode")));
    });
    server.Delete(R"(/sessions/([^/]+)/facts/([^/]+))",
                  [&service](const httplib::Request& req, httplib::Response& res) {
                      send(res, service.retract(req.matches[1], req.matches[2], req.get_param_value("mode")));
                  });
    server.Get(R"(/sessions/([^/]+)/report)", [&service](const httplib::Request& req, httplib::Response& res) {
        send(res, service.report(req.matches[1], req.get_param_value("mode")));
    });
    server.Get(R"(/sessions/([^/]+)/solutions)", [&service](const httplib::Request& req, httplib::Response& res) {
        send(res, service.solutions(req.matches[1], req.get_param_value("limit")));
    });
}

}  // namespace imx
