#include "chat/http.hpp"

#include "common/error.hpp"

#include "httplib.h"
#include "json.hpp"

#include <charconv>
#include <vector>

namespace c4q::chat {

using nlohmann::json;

namespace {

HttpResponse error_response(int status, std::string_view code, std::string_view detail) {
    return {status, json{{"error", code}, {"detail", detail}}.dump()};
}

int status_for(ErrorCode code) {
    switch (code) {
    case ErrorCode::NotFound: return 404;
    case ErrorCode::SessionClosed: return 410;
    case ErrorCode::InvalidArgument:
    case ErrorCode::EmptyInput: return 400;
    default: return 500;
    }
}

std::vector<std::string_view> split_path(std::string_view path) {
    if (const auto q = path.find('?'); q != std::string_view::npos) path = path.substr(0, q);
    std::vector<std::string_view> parts;
    while (!path.empty()) {
        const auto slash = path.find('/');
        const auto part = path.substr(0, slash);
        if (!part.empty()) parts.push_back(part);
        if (slash == std::string_view::npos) break;
        path.remove_prefix(slash + 1);
    }
    return parts;
}

json messages_json(const std::vector<Message>& messages) {
    json out = json::array();
    for (const auto& m : messages) out.push_back(to_json(m));
    return out;
}

} // namespace

HttpResponse handle_request(ChatService& service, std::string_view method, std::string_view path,
                            std::string_view body) {
    const auto parts = split_path(path);
    if (parts.size() < 2 || parts[0] != "api" || parts[1] != "sessions" || parts.size() > 4
        || (parts.size() == 4 && parts[3] != "messages"))
        return error_response(404, "not_found", "no route for " + std::string(path));

    try {
        if (parts.size() == 2) {
            if (method != "POST") return error_response(405, "method_not_allowed", "use POST /api/sessions");
            const auto created = service.create_session();
            return {201, json{{"session_id", created.id}}.dump()};
        }
        const std::string id(parts[2]);
        if (parts.size() == 3) {
            if (method != "DELETE") return error_response(405, "method_not_allowed", "use DELETE /api/sessions/{id}");
            service.end_session(id);
            return {204, {}};
        }
        if (method == "GET") return {200, json{{"messages", messages_json(service.list_messages(id))}}.dump()};
        if (method != "POST")
            return error_response(405, "method_not_allowed", "use GET or POST /api/sessions/{id}/messages");
        json request;
        try {
            request = json::parse(body);
        } catch (const json::exception&) {
            return error_response(400, "invalid_argument", "request body is not JSON");
        }
        if (!request.is_object() || !request.contains("text") || !request["text"].is_string())
            return error_response(400, "invalid_argument", "request body needs a string field \"text\"");
        return {200, json{{"messages", messages_json(service.post_message(id, request["text"].get<std::string>()))}}.dump()};
    } catch (const Error& e) {
        return error_response(status_for(e.code()), error_code_name(e.code()), e.what());
    } catch (const std::exception& e) {
        return error_response(500, "internal", e.what());
    }
}

ListenAddress parse_listen_address(std::string_view text) {
    ListenAddress out{"127.0.0.1", 0};
    std::string_view port_text = text;
    if (const auto colon = text.rfind(':'); colon != std::string_view::npos) {
        if (colon > 0) out.host = std::string(text.substr(0, colon));
        port_text = text.substr(colon + 1);
    }
    int port = -1;
    const auto [end, ec] = std::from_chars(port_text.data(), port_text.data() + port_text.size(), port);
    if (port_text.empty() || ec != std::errc{} || end != port_text.data() + port_text.size() || port < 0 || port > 65535)
        throw Error(ErrorCode::InvalidArgument, "bad listen address \"" + std::string(text) + "\"; expected host:port");
    out.port = port;
    return out;
}

struct HttpServer::Impl {
    ChatService& service;
    httplib::Server server;
    explicit Impl(ChatService& s) : service(s) {}
};

HttpServer::HttpServer(ChatService& service) : impl_(std::make_unique<Impl>(service)) {
    auto& server = impl_->server;
    server.set_default_headers({{"Access-Control-Allow-Origin", "*"},
                                {"Access-Control-Allow-Methods", "GET, POST, DELETE, OPTIONS"},
                                {"Access-Control-Allow-Headers", "Content-Type"}});
    server.Options(".*", [](const httplib::Request&, httplib::Response& res) { res.status = 204; });
    auto route = [this](const httplib::Request& req, httplib::Response& res) {
        const auto out = handle_request(impl_->service, req.method, req.path, req.body);
        res.status = out.status;
        if (!out.body.empty()) res.set_content(out.body, "application/json");
    };
    server.Get(".*", route);
    server.Post(".*", route);
    server.Delete(".*", route);
}

HttpServer::~HttpServer() { stop(); }

int HttpServer::bind(const ListenAddress& address) {
    auto& server = impl_->server;
    port_ = address.port == 0 ? server.bind_to_any_port(address.host) : (server.bind_to_port(address.host, address.port) ? address.port : -1);
    if (port_ <= 0) throw Error(ErrorCode::Io, "cannot listen on " + address.host + ":" + std::to_string(address.port));
    return port_;
}

void HttpServer::run() {
    if (!impl_->server.listen_after_bind()) throw Error(ErrorCode::Io, "server stopped with an error");
}

void HttpServer::stop() {
    if (impl_) impl_->server.stop();
}

} // namespace c4q::chat
