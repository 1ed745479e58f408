#pragma once

#include "chat/service.hpp"

#include <memory>
#include <string>
#include <string_view>

namespace c4q::chat {

struct HttpResponse {
    int status = 200;
    std::string body;  ///< JSON, empty for 204
};

/// Routes one request of the JSON API:
///   POST   /api/sessions                -> 201 {session_id}
///   GET    /api/sessions/{id}/messages  -> 200 {messages}
///   POST   /api/sessions/{id}/messages  -> 200 {messages}  body {text}
///   DELETE /api/sessions/{id}           -> 204
/// Errors are {error, detail}: 400 malformed request, 404 unknown session or
/// route, 405 wrong method, 410 ended session, 500 anything else.
[[nodiscard]] HttpResponse handle_request(ChatService& service, std::string_view method, std::string_view path,
                                          std::string_view body);

struct ListenAddress {
    std::string host;
    int port = 0;
};

/// "host:port", ":port" or "port". Throws InvalidArgument.
[[nodiscard]] ListenAddress parse_listen_address(std::string_view text);

/// Blocking HTTP server with permissive CORS around handle_request.
class HttpServer {
public:
    explicit HttpServer(ChatService& service);
    ~HttpServer();
    HttpServer(const HttpServer&) = delete;
    HttpServer& operator=(const HttpServer&) = delete;

    /// Port 0 picks a free port. Returns the bound port. Throws Io.
    int bind(const ListenAddress& address);
    /// Serves until stop(). bind() must have succeeded.
    void run();
    void stop();
    [[nodiscard]] int port() const noexcept { return port_; }

private:
    struct Impl;
    std::unique_ptr<Impl> impl_;
    int port_ = 0;
};

} // namespace c4q::chat
