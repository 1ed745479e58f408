#include "chat/store.hpp"

#include "common/error.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

namespace c4q::chat {

namespace fs = std::filesystem;

void MemorySessionStore::put(const Session& session) {
    std::lock_guard lock(mutex_);
    sessions_[session.id] = session;
}

std::optional<Session> MemorySessionStore::get(const std::string& id) const {
    std::lock_guard lock(mutex_);
    auto it = sessions_.find(id);
    if (it == sessions_.end()) return std::nullopt;
    return it->second;
}

bool MemorySessionStore::erase(const std::string& id) {
    std::lock_guard lock(mutex_);
    return sessions_.erase(id) > 0;
}

std::vector<std::string> MemorySessionStore::ids() const {
    std::lock_guard lock(mutex_);
    std::vector<std::string> out;
    out.reserve(sessions_.size());
    for (const auto& [id, _] : sessions_) out.push_back(id);
    return out;
}

FileSessionStore::FileSessionStore(fs::path dir) : dir_(std::move(dir)) {
    std::error_code ec;
    fs::create_directories(dir_, ec);
    if (ec || !fs::is_directory(dir_))
        throw Error(ErrorCode::Io, "cannot create session directory " + dir_.string() + ": " + ec.message());
}

fs::path FileSessionStore::file_for(const std::string& id) const {
    // Ids become file names; only [A-Za-z0-9_-] is accepted.
    if (id.empty()) throw Error(ErrorCode::InvalidArgument, "empty session id");
    for (char c : id) {
        const bool ok = (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9') || c == '-' || c == '_';
        if (!ok) throw Error(ErrorCode::InvalidArgument, "malformed session id " + id);
    }
    return dir_ / (id + ".json");
}

void FileSessionStore::put(const Session& session) {
    const fs::path target = file_for(session.id);
    const fs::path tmp = fs::path(target).concat(".tmp");
    std::lock_guard lock(mutex_);
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        out << to_json(session).dump() << '\n';
        out.flush();
        if (!out) throw Error(ErrorCode::Io, "cannot write " + tmp.string());
    }
    std::error_code ec;
    fs::rename(tmp, target, ec);
    if (ec) throw Error(ErrorCode::Io, "cannot replace " + target.string() + ": " + ec.message());
}

std::optional<Session> FileSessionStore::get(const std::string& id) const {
    fs::path path;
    try {
        path = file_for(id);
    } catch (const Error&) {
        return std::nullopt;
    }
    std::lock_guard lock(mutex_);
    std::ifstream in(path, std::ios::binary);
    if (!in) return std::nullopt;
    std::stringstream buffer;
    buffer << in.rdbuf();
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(buffer.str());
    } catch (const nlohmann::json::exception& e) {
        throw Error(ErrorCode::Io, "corrupt session file " + path.string() + ": " + e.what());
    }
    return session_from_json(doc);
}

bool FileSessionStore::erase(const std::string& id) {
    fs::path path;
    try {
        path = file_for(id);
    } catch (const Error&) {
        return false;
    }
    std::lock_guard lock(mutex_);
    std::error_code ec;
    const bool removed = fs::remove(path, ec);
    if (ec) throw Error(ErrorCode::Io, "cannot delete " + path.string() + ": " + ec.message());
    return removed;
}

std::vector<std::string> FileSessionStore::ids() const {
    std::lock_guard lock(mutex_);
    std::vector<std::string> out;
    for (const auto& entry : fs::directory_iterator(dir_)) {
        if (entry.path().extension() == ".json") out.push_back(entry.path().stem().string());
    }
    std::sort(out.begin(), out.end());
    return out;
}

} // namespace c4q::chat
