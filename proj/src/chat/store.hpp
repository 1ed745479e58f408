#pragma once

#include "chat/session.hpp"

#include <filesystem>
#include <map>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

namespace c4q::chat {

/// Persistence for live sessions. Implementations are thread-safe.
class SessionStore {
public:
    virtual ~SessionStore() = default;

    virtual void put(const Session& session) = 0;
    [[nodiscard]] virtual std::optional<Session> get(const std::string& id) const = 0;
    /// Returns false when the id was not stored.
    virtual bool erase(const std::string& id) = 0;
    [[nodiscard]] virtual std::vector<std::string> ids() const = 0;
};

class MemorySessionStore final : public SessionStore {
public:
    void put(const Session& session) override;
    [[nodiscard]] std::optional<Session> get(const std::string& id) const override;
    bool erase(const std::string& id) override;
    [[nodiscard]] std::vector<std::string> ids() const override;

private:
    mutable std::mutex mutex_;
    std::map<std::string, Session> sessions_;
};

/// One JSON document per session under `dir`, replaced atomically
/// (write to a temporary file, then rename). Throws Io on filesystem errors.
class FileSessionStore final : public SessionStore {
public:
    explicit FileSessionStore(std::filesystem::path dir);

    void put(const Session& session) override;
    [[nodiscard]] std::optional<Session> get(const std::string& id) const override;
    bool erase(const std::string& id) override;
    [[nodiscard]] std::vector<std::string> ids() const override;

    [[nodiscard]] const std::filesystem::path& directory() const noexcept { return dir_; }

private:
    [[nodiscard]] std::filesystem::path file_for(const std::string& id) const;

    std::filesystem::path dir_;
    mutable std::mutex mutex_;
};

} // namespace c4q::chat
