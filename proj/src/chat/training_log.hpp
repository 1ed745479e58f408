#pragma once

#include "nlu/query.hpp"

#include <cstddef>
#include <filesystem>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

namespace c4q::chat {

struct TrainingLogRecord {
    std::string question;  ///< raw user text
    nlu::Category category;
    std::string confirmed_at;

    friend bool operator==(const TrainingLogRecord&, const TrainingLogRecord&) = default;
};

/// Append-only record of confirmed classifications. With a path, each
/// record is one JSON line {question, category, confirmed_at}, flushed before
/// append returns; without one, records stay in memory.
class TrainingLog {
public:
    TrainingLog() = default;
    /// Opens for append, creating parent directories. Throws Io.
    explicit TrainingLog(std::filesystem::path path);

    void append(const TrainingLogRecord& record);
    /// Records appended through this instance, plus any present at open time.
    [[nodiscard]] std::size_t size() const;
    [[nodiscard]] std::vector<TrainingLogRecord> records() const;
    [[nodiscard]] const std::optional<std::filesystem::path>& path() const noexcept { return path_; }

private:
    std::optional<std::filesystem::path> path_;
    mutable std::mutex mutex_;
    std::vector<TrainingLogRecord> memory_;
    std::size_t size_ = 0;
};

/// Throws Io when unreadable, InvalidArgument for malformed lines.
[[nodiscard]] std::vector<TrainingLogRecord> read_training_log(const std::filesystem::path& path);

} // namespace c4q::chat
