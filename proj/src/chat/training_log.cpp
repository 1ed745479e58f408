#include "chat/training_log.hpp"

#include "common/error.hpp"

#include "json.hpp"

#include <fstream>

namespace c4q::chat {

namespace fs = std::filesystem;

TrainingLog::TrainingLog(fs::path path) : path_(std::move(path)) {
    std::error_code ec;
    if (path_->has_parent_path()) fs::create_directories(path_->parent_path(), ec);
    if (fs::exists(*path_)) {
        size_ = read_training_log(*path_).size();
    } else {
        std::ofstream touch(*path_, std::ios::app);
        if (!touch) throw Error(ErrorCode::Io, "cannot open training log " + path_->string());
    }
}

void TrainingLog::append(const TrainingLogRecord& record) {
    std::lock_guard lock(mutex_);
    if (path_) {
        const nlohmann::json line{{"question", record.question},
                                  {"category", nlu::category_name(record.category)},
                                  {"confirmed_at", record.confirmed_at}};
        std::ofstream out(*path_, std::ios::binary | std::ios::app);
        out << line.dump() << '\n';
        out.flush();
        if (!out) throw Error(ErrorCode::Io, "cannot append to training log " + path_->string());
    } else {
        memory_.push_back(record);
    }
    ++size_;
}

std::size_t TrainingLog::size() const {
    std::lock_guard lock(mutex_);
    return size_;
}

std::vector<TrainingLogRecord> TrainingLog::records() const {
    std::lock_guard lock(mutex_);
    if (path_) return read_training_log(*path_);
    return memory_;
}

std::vector<TrainingLogRecord> read_training_log(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error(ErrorCode::Io, "cannot read training log " + path.string());
    std::vector<TrainingLogRecord> out;
    std::string line;
    std::size_t number = 0;
    while (std::getline(in, line)) {
        ++number;
        if (line.empty()) continue;
        try {
            const auto j = nlohmann::json::parse(line);
            const auto category = nlu::category_from_name(j.at("category").get<std::string>());
            if (!category) throw Error(ErrorCode::InvalidArgument, "unknown category");
            out.push_back({j.at("question").get<std::string>(), *category, j.at("confirmed_at").get<std::string>()});
        } catch (const nlohmann::json::exception& e) {
            throw Error(ErrorCode::InvalidArgument,
                        "training log line " + std::to_string(number) + " is malformed: " + e.what());
        }
    }
    return out;
}

} // namespace c4q::chat
