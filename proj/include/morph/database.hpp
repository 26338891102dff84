#pragma once

#include <morph/core.hpp>
#include <morph/lexicon.hpp>

#include <cstdint>
#include <filesystem>
#include <functional>
#include <map>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

// Database file layout, little-endian throughout:
//
//   header (40 bytes)   magic "MDB1", version u32, bucket_count u32,
//                       key_count u64, combo_offset u64, records_offset u64,
//                       reserved u32
//   bucket directory    bucket_count x u64 absolute record offset (0 = empty)
//   records             next u64, key_len u16, key, entry_count u16, entries
//   combo table         count u16, then (len u8, bytes) per combo
//
// An entry is [prefix_len u8][tail_len u8][tail][combo u8]: the root is the
// first prefix_len bytes of the key followed by tail. Records are written in
// bytewise key order and each bucket chain links in ascending key order.

namespace morph::db {

class DbError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// The file exists but is not a well-formed database (bad magic, truncation, bad links).
class CorruptDatabase : public DbError {
public:
    using DbError::DbError;
};

/// More distinct POS/attribute combinations than a one-byte code can hold.
class ComboOverflow : public DbError {
public:
    explicit ComboOverflow(std::vector<std::string> combos);

    const std::vector<std::string>& combos() const noexcept { return combos_; }

private:
    std::vector<std::string> combos_;
};

inline constexpr std::uint32_t format_version = 1;
inline constexpr std::size_t header_size = 40;
inline constexpr std::size_t max_combos = 256;

std::uint64_t fnv1a_64(std::string_view bytes) noexcept;

/// Smallest power of two >= 2 * key_count, at least 8.
std::uint32_t bucket_count_for(std::uint64_t key_count) noexcept;

/// Bijection between combo strings (`POS ATTR...`) and one-byte codes.
/// Codes are indices into the bytewise-sorted list.
class ComboTable {
public:
    ComboTable() = default;

    /// Sorts and deduplicates; throws ComboOverflow past 256 combos.
    explicit ComboTable(std::vector<std::string> combos);

    std::optional<std::uint8_t> code_of(std::string_view combo) const;
    const std::string& at(std::uint8_t code) const;
    std::size_t size() const noexcept { return combos_.size(); }
    const std::vector<std::string>& combos() const noexcept { return combos_; }

private:
    std::vector<std::string> combos_;
};

/// One compressed content item.
struct DbEntry {
    std::uint8_t prefix_len = 0;
    std::string tail;
    std::uint8_t combo = 0;

    friend bool operator==(const DbEntry&, const DbEntry&) = default;
};

/// Length of the longest common prefix, capped at 255.
std::size_t shared_prefix(std::string_view key, std::string_view root) noexcept;

DbEntry make_entry(std::string_view key, const Parse& parse, const ComboTable& combos);
Parse entry_parse(std::string_view key, const DbEntry& entry, const ComboTable& combos);

/// Wire form of a single entry; size is 3 + tail length.
std::string encode_entry(std::string_view key, const Parse& parse, const ComboTable& combos);

/// Decodes exactly one wire-form entry.
Parse decode_entry(std::string_view key, std::string_view bytes, const ComboTable& combos);

/// Logical database contents: key -> parses ordered by `root POS ATTR...`.
using Contents = std::map<std::string, std::vector<Parse>>;

/// Inserts with the per-key ordering and deduplication applied.
void insert(Contents& contents, std::string key, Parse parse);

Contents collect(const Lexicon& lex);

/// Serializes contents into the file image. Deterministic.
std::string build_image(const Contents& contents);

/// compile(lex) == build_image(collect(lex)).
std::string compile(const Lexicon& lex);

/// Parses flat text (`key<TAB>entry#entry...` lines). Errors carry the line number.
Contents parse_flat(std::string_view text);

std::string render_flat(const Contents& contents);

/// Writes through a temporary file in the same directory, syncs and renames.
void write_file_atomic(const std::filesystem::path& path, std::string_view bytes);

struct Stats {
    std::uint64_t key_count = 0;
    std::uint64_t entry_count = 0;
    std::uint64_t single_entry_keys = 0;
    double single_entry_fraction = 0.0;
    // Entry payload bytes (prefix, tail length, tail, combo) per key.
    double mean_content_bytes = 0.0;
    std::uint64_t content_bytes = 0;
    std::uint64_t file_size = 0;
    std::uint32_t bucket_count = 0;
    std::size_t combo_count = 0;
};

/// Read-only handle on a database file. Lookups go to disk with pread(),
/// so concurrent readers are safe.
class Database {
public:
    /// Throws DbError when the file cannot be read, CorruptDatabase when malformed.
    static Database open(const std::filesystem::path& path);

    Database(Database&& other) noexcept;
    Database& operator=(Database&& other) noexcept;
    Database(const Database&) = delete;
    Database& operator=(const Database&) = delete;
    ~Database();

    /// Parses stored for `key`, in stored order; empty when absent.
    std::vector<Parse> lookup(std::string_view key) const;

    /// Visits every record in file (sorted key) order.
    void for_each_record(const std::function<void(std::string_view key, std::span<const DbEntry>)>& visit) const;

    Contents contents() const;

    std::uint64_t key_count() const noexcept { return key_count_; }
    std::uint32_t bucket_count() const noexcept { return bucket_count_; }
    std::uint64_t file_size() const noexcept { return file_size_; }
    const ComboTable& combos() const noexcept { return combos_; }
    const std::filesystem::path& path() const noexcept { return path_; }

    /// Advises the kernel to drop cached pages of the file.
    void drop_page_cache() const;

private:
    Database() = default;

    std::string read_at(std::uint64_t offset, std::size_t length) const;

    int fd_ = -1;
    std::filesystem::path path_;
    std::uint64_t file_size_ = 0;
    std::uint32_t bucket_count_ = 0;
    std::uint64_t key_count_ = 0;
    std::uint64_t records_offset_ = 0;
    std::uint64_t combo_offset_ = 0;
    ComboTable combos_;
};

std::string dump_flat(const Database& db);

/// Database image rebuilt from flat text; byte-identical to the compile that produced it.
std::string restore_flat(std::string_view text);

Stats stats(const Database& db);

} // namespace morph::db
