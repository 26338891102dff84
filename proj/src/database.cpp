#include <morph/analyzer.hpp>
#include <morph/database.hpp>

#include <algorithm>
#include <atomic>
#include <cerrno>
#include <cstring>

#include <fcntl.h>
#include <sys/stat.h>
#include <unistd.h>

namespace morph::db {

namespace {

constexpr char magic[4] = {'M', 'D', 'B', '1'};

void put_u8(std::string& out, std::uint8_t v) { out.push_back(static_cast<char>(v)); }

void put_u16(std::string& out, std::uint16_t v) {
    for (int i = 0; i < 2; ++i) {
        out.push_back(static_cast<char>((v >> (8 * i)) & 0xff));
    }
}

void put_u32(std::string& out, std::uint32_t v) {
    for (int i = 0; i < 4; ++i) {
        out.push_back(static_cast<char>((v >> (8 * i)) & 0xff));
    }
}

void put_u64(std::string& out, std::uint64_t v) {
    for (int i = 0; i < 8; ++i) {
        out.push_back(static_cast<char>((v >> (8 * i)) & 0xff));
    }
}

template <typename T>
T get_le(std::string_view bytes, std::size_t at) {
    T v = 0;
    for (std::size_t i = 0; i < sizeof(T); ++i) {
        v |= static_cast<T>(static_cast<unsigned char>(bytes[at + i])) << (8 * i);
    }
    return v;
}

class Truncated : public CorruptDatabase {
public:
    Truncated() : CorruptDatabase("truncated data") {}
};

// Bounds-checked little-endian reader over an in-memory slice.
class Cursor {
public:
    explicit Cursor(std::string_view bytes) : bytes_(bytes) {}

    bool has(std::size_t n) const { return bytes_.size() - pos_ >= n; }

    template <typename T>
    T read() {
        need(sizeof(T));
        T v = get_le<T>(bytes_, pos_);
        pos_ += sizeof(T);
        return v;
    }

    std::string_view take(std::size_t n) {
        need(n);
        auto out = bytes_.substr(pos_, n);
        pos_ += n;
        return out;
    }

    std::size_t position() const { return pos_; }
    bool at_end() const { return pos_ == bytes_.size(); }

private:
    void need(std::size_t n) const {
        if (!has(n)) {
            throw Truncated();
        }
    }

    std::string_view bytes_;
    std::size_t pos_ = 0;
};

DbEntry read_entry(Cursor& in) {
    DbEntry entry;
    entry.prefix_len = in.read<std::uint8_t>();
    auto tail_len = in.read<std::uint8_t>();
    entry.tail = std::string(in.take(tail_len));
    entry.combo = in.read<std::uint8_t>();
    return entry;
}

void write_entry(std::string& out, const DbEntry& entry) {
    put_u8(out, entry.prefix_len);
    put_u8(out, static_cast<std::uint8_t>(entry.tail.size()));
    out += entry.tail;
    put_u8(out, entry.combo);
}

std::size_t entry_size(const DbEntry& entry) { return 3 + entry.tail.size(); }

std::string sys_error(const std::string& what, const std::filesystem::path& path) {
    return what + " '" + path.string() + "': " + std::strerror(errno);
}

bool flat_less(const Parse& a, const Parse& b) { return render_flat_entry(a) < render_flat_entry(b); }

} // namespace

ComboOverflow::ComboOverflow(std::vector<std::string> combos)
    : DbError([&] {
        std::string msg = std::to_string(combos.size()) + " distinct combos exceed the limit of 256:";
        for (const auto& c : combos) {
            msg += "\n  " + c;
        }
        return msg;
    }())
    , combos_(std::move(combos)) {}

std::uint64_t fnv1a_64(std::string_view bytes) noexcept {
    std::uint64_t hash = 0xcbf29ce484222325ULL;
    for (unsigned char c : bytes) {
        hash ^= c;
        hash *= 0x100000001b3ULL;
    }
    return hash;
}

std::uint32_t bucket_count_for(std::uint64_t key_count) noexcept {
    std::uint64_t want = std::max<std::uint64_t>(8, 2 * key_count);
    std::uint64_t n = 8;
    while (n < want) {
        n <<= 1;
    }
    return static_cast<std::uint32_t>(n);
}

ComboTable::ComboTable(std::vector<std::string> combos) : combos_(std::move(combos)) {
    std::sort(combos_.begin(), combos_.end());
    combos_.erase(std::unique(combos_.begin(), combos_.end()), combos_.end());
    if (combos_.size() > max_combos) {
        throw ComboOverflow(combos_);
    }
}

std::optional<std::uint8_t> ComboTable::code_of(std::string_view combo) const {
    auto it = std::lower_bound(combos_.begin(), combos_.end(), combo);
    if (it == combos_.end() || *it != combo) {
        return std::nullopt;
    }
    return static_cast<std::uint8_t>(it - combos_.begin());
}

const std::string& ComboTable::at(std::uint8_t code) const {
    if (code >= combos_.size()) {
        throw CorruptDatabase("combo code " + std::to_string(code) + " out of range");
    }
    return combos_[code];
}

std::size_t shared_prefix(std::string_view key, std::string_view root) noexcept {
    std::size_t n = std::min({key.size(), root.size(), std::size_t{255}});
    std::size_t i = 0;
    while (i < n && key[i] == root[i]) {
        ++i;
    }
    return i;
}

DbEntry make_entry(std::string_view key, const Parse& parse, const ComboTable& combos) {
    auto code = combos.code_of(render_combo(parse));
    if (!code) {
        throw DbError("combo '" + render_combo(parse) + "' is not in the combo table");
    }
    DbEntry entry;
    auto prefix = shared_prefix(key, parse.root);
    entry.prefix_len = static_cast<std::uint8_t>(prefix);
    entry.tail = parse.root.substr(prefix);
    if (entry.tail.size() > 255) {
        throw DbError("root '" + parse.root + "' leaves a tail longer than 255 bytes");
    }
    entry.combo = *code;
    return entry;
}

Parse entry_parse(std::string_view key, const DbEntry& entry, const ComboTable& combos) {
    if (entry.prefix_len > key.size()) {
        throw CorruptDatabase("prefix length exceeds key '" + std::string(key) + "'");
    }
    Parse parse = parse_combo(combos.at(entry.combo));
    parse.root = std::string(key.substr(0, entry.prefix_len)) + entry.tail;
    return parse;
}

std::string encode_entry(std::string_view key, const Parse& parse, const ComboTable& combos) {
    std::string out;
    write_entry(out, make_entry(key, parse, combos));
    return out;
}

Parse decode_entry(std::string_view key, std::string_view bytes, const ComboTable& combos) {
    Cursor in(bytes);
    auto entry = read_entry(in);
    if (!in.at_end()) {
        throw CorruptDatabase("trailing bytes after entry");
    }
    return entry_parse(key, entry, combos);
}

void insert(Contents& contents, std::string key, Parse parse) {
    auto& list = contents[std::move(key)];
    auto it = std::lower_bound(list.begin(), list.end(), parse, flat_less);
    if (it != list.end() && *it == parse) {
        return;
    }
    list.insert(it, std::move(parse));
}

Contents collect(const Lexicon& lex) {
    Contents contents;
    for (const auto& entry : lex.entries()) {
        for (auto& form : generate(entry)) {
            insert(contents, std::move(form.surface), std::move(form.parse));
        }
    }
    return contents;
}

std::string build_image(const Contents& contents) {
    std::vector<std::string> combo_strings;
    for (const auto& [key, parses] : contents) {
        for (const auto& parse : parses) {
            combo_strings.push_back(render_combo(parse));
        }
    }
    ComboTable combos(std::move(combo_strings));

    const std::uint64_t key_count = contents.size();
    const std::uint32_t buckets = bucket_count_for(key_count);
    const std::uint64_t records_offset = header_size + 8ULL * buckets;

    // Record bodies (everything after the next link) and their offsets.
    std::vector<std::string> bodies;
    std::vector<std::uint64_t> offsets;
    std::vector<std::uint32_t> bucket_of;
    bodies.reserve(key_count);
    offsets.reserve(key_count);
    bucket_of.reserve(key_count);

    std::uint64_t offset = records_offset;
    for (const auto& [key, parses] : contents) {
        if (key.empty() || key.size() > 0xffff) {
            throw DbError("key length " + std::to_string(key.size()) + " out of range");
        }
        if (parses.size() > 0xffff) {
            throw DbError("too many entries for key '" + key + "'");
        }
        std::string body;
        put_u16(body, static_cast<std::uint16_t>(key.size()));
        body += key;
        put_u16(body, static_cast<std::uint16_t>(parses.size()));
        for (const auto& parse : parses) {
            write_entry(body, make_entry(key, parse, combos));
        }
        offsets.push_back(offset);
        bucket_of.push_back(static_cast<std::uint32_t>(fnv1a_64(key) & (buckets - 1)));
        offset += 8 + body.size();
        bodies.push_back(std::move(body));
    }
    const std::uint64_t combo_offset = offset;

    std::vector<std::uint64_t> heads(buckets, 0);
    std::vector<std::uint64_t> next(key_count, 0);
    std::vector<std::int64_t> last(buckets, -1);
    for (std::size_t i = 0; i < key_count; ++i) {
        auto b = bucket_of[i];
        if (last[b] < 0) {
            heads[b] = offsets[i];
        } else {
            next[static_cast<std::size_t>(last[b])] = offsets[i];
        }
        last[b] = static_cast<std::int64_t>(i);
    }

    std::string image;
    image.reserve(combo_offset + 2 + combos.size() * 16);
    image.append(magic, sizeof magic);
    put_u32(image, format_version);
    put_u32(image, buckets);
    put_u64(image, key_count);
    put_u64(image, combo_offset);
    put_u64(image, records_offset);
    put_u32(image, 0);
    for (auto head : heads) {
        put_u64(image, head);
    }
    for (std::size_t i = 0; i < key_count; ++i) {
        put_u64(image, next[i]);
        image += bodies[i];
    }
    put_u16(image, static_cast<std::uint16_t>(combos.size()));
    for (const auto& combo : combos.combos()) {
        if (combo.size() > 255) {
            throw DbError("combo '" + combo + "' longer than 255 bytes");
        }
        put_u8(image, static_cast<std::uint8_t>(combo.size()));
        image += combo;
    }
    return image;
}

std::string compile(const Lexicon& lex) { return build_image(collect(lex)); }

Contents parse_flat(std::string_view text) {
    Contents contents;
    std::size_t line_number = 0;
    while (!text.empty()) {
        auto nl = text.find('\n');
        auto line = text.substr(0, nl);
        text.remove_prefix(nl == std::string_view::npos ? text.size() : nl + 1);
        ++line_number;
        if (!line.empty() && line.back() == '\r') {
            line.remove_suffix(1);
        }
        if (line.empty()) {
            continue;
        }
        auto at = [&](const std::string& msg) {
            return ParseError("flat line " + std::to_string(line_number) + ": " + msg);
        };
        auto tab = line.find('\t');
        if (tab == std::string_view::npos) {
            throw at("missing tab after key");
        }
        std::string key(line.substr(0, tab));
        if (key.empty()) {
            throw at("empty key");
        }
        auto rest = line.substr(tab + 1);
        if (rest.empty()) {
            throw at("no entries for key '" + key + "'");
        }
        while (true) {
            auto hash = rest.find('#');
            auto item = rest.substr(0, hash);
            try {
                insert(contents, key, parse_flat_entry(item));
            } catch (const ParseError& e) {
                throw at(e.what());
            }
            if (hash == std::string_view::npos) {
                break;
            }
            rest.remove_prefix(hash + 1);
        }
    }
    return contents;
}

std::string render_flat(const Contents& contents) {
    std::string out;
    for (const auto& [key, parses] : contents) {
        out += key;
        out += '\t';
        for (std::size_t i = 0; i < parses.size(); ++i) {
            if (i > 0) {
                out += '#';
            }
            out += render_flat_entry(parses[i]);
        }
        out += '\n';
    }
    return out;
}

void write_file_atomic(const std::filesystem::path& path, std::string_view bytes) {
    static std::atomic<unsigned> counter{0};
    auto tmp = path;
    tmp += ".tmp." + std::to_string(::getpid()) + "." + std::to_string(counter++);

    int fd = ::open(tmp.c_str(), O_WRONLY | O_CREAT | O_TRUNC | O_CLOEXEC, 0644);
    if (fd < 0) {
        throw DbError(sys_error("cannot create", tmp));
    }
    std::size_t done = 0;
    while (done < bytes.size()) {
        auto n = ::write(fd, bytes.data() + done, bytes.size() - done);
        if (n < 0) {
            if (errno == EINTR) {
                continue;
            }
            auto msg = sys_error("cannot write", tmp);
            ::close(fd);
            ::unlink(tmp.c_str());
            throw DbError(msg);
        }
        done += static_cast<std::size_t>(n);
    }
    if (::fsync(fd) != 0 || ::close(fd) != 0) {
        auto msg = sys_error("cannot sync", tmp);
        ::unlink(tmp.c_str());
        throw DbError(msg);
    }
    if (::rename(tmp.c_str(), path.c_str()) != 0) {
        auto msg = sys_error("cannot rename onto", path);
        ::unlink(tmp.c_str());
        throw DbError(msg);
    }
    auto dir = path.parent_path();
    if (dir.empty()) {
        dir = ".";
    }
    int dfd = ::open(dir.c_str(), O_RDONLY | O_DIRECTORY | O_CLOEXEC);
    if (dfd >= 0) {
        ::fsync(dfd);
        ::close(dfd);
    }
}

Database Database::open(const std::filesystem::path& path) {
    Database db;
    db.path_ = path;
    db.fd_ = ::open(path.c_str(), O_RDONLY | O_CLOEXEC);
    if (db.fd_ < 0) {
        throw DbError(sys_error("cannot open database", path));
    }
    struct stat st {};
    if (::fstat(db.fd_, &st) != 0) {
        throw DbError(sys_error("cannot stat database", path));
    }
    db.file_size_ = static_cast<std::uint64_t>(st.st_size);
    if (db.file_size_ < header_size) {
        throw CorruptDatabase("'" + path.string() + "' is too small to be a database");
    }

    auto header = db.read_at(0, header_size);
    if (header.compare(0, 4, magic, 4) != 0) {
        throw CorruptDatabase("'" + path.string() + "' has bad magic");
    }
    Cursor in(header);
    in.take(4);
    auto version = in.read<std::uint32_t>();
    if (version != format_version) {
        throw CorruptDatabase("unsupported database version " + std::to_string(version));
    }
    db.bucket_count_ = in.read<std::uint32_t>();
    db.key_count_ = in.read<std::uint64_t>();
    db.combo_offset_ = in.read<std::uint64_t>();
    db.records_offset_ = in.read<std::uint64_t>();

    bool pow2 = db.bucket_count_ >= 8 && (db.bucket_count_ & (db.bucket_count_ - 1)) == 0;
    if (!pow2 || db.records_offset_ != header_size + 8ULL * db.bucket_count_ ||
        db.combo_offset_ < db.records_offset_ || db.combo_offset_ > db.file_size_) {
        throw CorruptDatabase("'" + path.string() + "' has an inconsistent header");
    }

    auto table_bytes = db.read_at(db.combo_offset_, db.file_size_ - db.combo_offset_);
    Cursor table(table_bytes);
    auto count = table.read<std::uint16_t>();
    std::vector<std::string> combos;
    for (std::uint16_t i = 0; i < count; ++i) {
        auto len = table.read<std::uint8_t>();
        combos.emplace_back(table.take(len));
        try {
            parse_combo(combos.back());
        } catch (const ParseError& e) {
            throw CorruptDatabase(std::string("bad combo table entry: ") + e.what());
        }
    }
    if (!table.at_end() || !std::is_sorted(combos.begin(), combos.end()) || count > max_combos) {
        throw CorruptDatabase("'" + path.string() + "' has a malformed combo table");
    }
    db.combos_ = ComboTable(std::move(combos));
    return db;
}

Database::Database(Database&& other) noexcept { *this = std::move(other); }

Database& Database::operator=(Database&& other) noexcept {
    if (this != &other) {
        if (fd_ >= 0) {
            ::close(fd_);
        }
        fd_ = std::exchange(other.fd_, -1);
        path_ = std::move(other.path_);
        file_size_ = other.file_size_;
        bucket_count_ = other.bucket_count_;
        key_count_ = other.key_count_;
        records_offset_ = other.records_offset_;
        combo_offset_ = other.combo_offset_;
        combos_ = std::move(other.combos_);
    }
    return *this;
}

Database::~Database() {
    if (fd_ >= 0) {
        ::close(fd_);
    }
}

std::string Database::read_at(std::uint64_t offset, std::size_t length) const {
    std::string buffer(length, '\0');
    std::size_t done = 0;
    while (done < length) {
        auto n = ::pread(fd_, buffer.data() + done, length - done, static_cast<off_t>(offset + done));
        if (n < 0) {
            if (errno == EINTR) {
                continue;
            }
            throw DbError(sys_error("read failed on", path_));
        }
        if (n == 0) {
            throw CorruptDatabase("unexpected end of file in '" + path_.string() + "'");
        }
        done += static_cast<std::size_t>(n);
    }
    return buffer;
}

std::vector<Parse> Database::lookup(std::string_view key) const {
    std::vector<Parse> out;
    auto bucket = fnv1a_64(key) & (bucket_count_ - 1);
    auto slot = read_at(header_size + 8 * bucket, 8);
    auto offset = get_le<std::uint64_t>(slot, 0);

    while (offset != 0) {
        if (offset < records_offset_ || offset + 13 > combo_offset_) {
            throw CorruptDatabase("record offset " + std::to_string(offset) + " out of range");
        }
        auto available = static_cast<std::size_t>(combo_offset_ - offset);
        // Most records fit in one small read; grow the window when one does not.
        for (std::size_t window = 256;; window *= 4) {
            auto bytes = read_at(offset, std::min(window, available));
            try {
                Cursor in(bytes);
                auto next = in.read<std::uint64_t>();
                auto key_len = in.read<std::uint16_t>();
                auto stored = in.take(key_len);
                if (stored == key) {
                    auto count = in.read<std::uint16_t>();
                    for (std::uint16_t i = 0; i < count; ++i) {
                        out.push_back(entry_parse(stored, read_entry(in), combos_));
                    }
                    return out;
                }
                if (stored > key) {
                    return out;
                }
                if (next != 0 && next <= offset) {
                    throw CorruptDatabase("bucket chain does not ascend at offset " + std::to_string(offset));
                }
                offset = next;
                break;
            } catch (const Truncated&) {
                if (bytes.size() >= available) {
                    throw CorruptDatabase("truncated record at offset " + std::to_string(offset));
                }
                out.clear();
            }
        }
    }
    return out;
}

void Database::for_each_record(
    const std::function<void(std::string_view key, std::span<const DbEntry>)>& visit) const {
    auto region = read_at(records_offset_, static_cast<std::size_t>(combo_offset_ - records_offset_));
    Cursor in(region);
    std::vector<DbEntry> entries;
    std::uint64_t seen = 0;
    while (!in.at_end()) {
        in.read<std::uint64_t>();
        auto key_len = in.read<std::uint16_t>();
        auto key = in.take(key_len);
        auto count = in.read<std::uint16_t>();
        entries.clear();
        for (std::uint16_t i = 0; i < count; ++i) {
            entries.push_back(read_entry(in));
        }
        visit(key, entries);
        ++seen;
    }
    if (seen != key_count_) {
        throw CorruptDatabase("header claims " + std::to_string(key_count_) + " keys, found " +
                              std::to_string(seen));
    }
}

Contents Database::contents() const {
    Contents out;
    for_each_record([&](std::string_view key, std::span<const DbEntry> entries) {
        auto& list = out[std::string(key)];
        for (const auto& entry : entries) {
            list.push_back(entry_parse(key, entry, combos_));
        }
    });
    return out;
}

void Database::drop_page_cache() const {
    ::posix_fadvise(fd_, 0, 0, POSIX_FADV_DONTNEED);
}

std::string dump_flat(const Database& db) { return render_flat(db.contents()); }

std::string restore_flat(std::string_view text) { return build_image(parse_flat(text)); }

Stats stats(const Database& db) {
    Stats s;
    db.for_each_record([&](std::string_view, std::span<const DbEntry> entries) {
        ++s.key_count;
        s.entry_count += entries.size();
        if (entries.size() == 1) {
            ++s.single_entry_keys;
        }
        for (const auto& entry : entries) {
            s.content_bytes += entry_size(entry);
        }
    });
    if (s.key_count > 0) {
        s.single_entry_fraction = static_cast<double>(s.single_entry_keys) / static_cast<double>(s.key_count);
        s.mean_content_bytes = static_cast<double>(s.content_bytes) / static_cast<double>(s.key_count);
    }
    s.file_size = db.file_size();
    s.bucket_count = db.bucket_count();
    s.combo_count = db.combos().size();
    return s;
}

} // namespace morph::db
