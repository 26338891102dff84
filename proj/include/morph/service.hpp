#pragma once

#include <morph/database.hpp>
#include <morph/lexicon.hpp>

#include <json.hpp>

#include <atomic>
#include <cstddef>
#include <filesystem>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <string_view>

namespace httplib {
class Server;
}

namespace morph::service {

struct Config {
    std::filesystem::path lexicon;
    std::filesystem::path database;
    std::filesystem::path flat;
    /// Directory of UI assets served at "/"; empty serves a placeholder page.
    std::filesystem::path static_dir;
    /// Mutations allowed to wait behind the one in progress before 503.
    int max_pending_writes = 4;
};

inline constexpr std::size_t entries_page_size = 50;

struct Response {
    int status = 200;
    nlohmann::json body;
};

/// Everything a reader needs, swapped as one unit after each mutation.
struct Snapshot {
    Lexicon lexicon;
    db::Database database;
    std::string lexicon_text;
};

/// Keeps a lexicon file, its compiled database and the flat dump consistent.
/// Reads run concurrently against an immutable snapshot; mutations are
/// serialized, rebuild the whole database and swap files atomically.
class MaintenanceService {
public:
    /// Loads the lexicon and (re)builds the database and flat file from it.
    explicit MaintenanceService(Config config);

    Response lookup(std::string_view word) const;
    Response entries(std::string_view prefix, std::optional<std::string_view> pos, long page) const;
    Response add_entry(const nlohmann::json& body);
    Response remove_entry(const nlohmann::json& body);

    /// Registers the /api routes and the static mount on `server`.
    void mount(httplib::Server& server);

    std::shared_ptr<const Snapshot> snapshot() const;
    const Config& config() const noexcept { return config_; }

private:
    std::shared_ptr<const Snapshot> rebuild(std::string lexicon_text);
    nlohmann::json analyses_json(const Snapshot& snap, std::string_view word) const;
    nlohmann::json forms_json(const Snapshot& snap, const LexiconEntry& entry) const;

    Config config_;
    mutable std::mutex snapshot_mutex_;
    std::shared_ptr<const Snapshot> current_;
    std::mutex write_mutex_;
    std::atomic<int> pending_writes_{0};
};

} // namespace morph::service
