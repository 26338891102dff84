#include <morph/analyzer.hpp>
#include <morph/service.hpp>

#include <httplib.h>

#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>
#include <tuple>
#include <variant>

namespace morph::service {

namespace {

using nlohmann::json;

std::string read_text(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw LexiconError(0, "cannot open lexicon file '" + path.string() + "'");
    }
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

json error_body(std::string_view message) { return json{{"error", message}}; }

json parse_json(const Parse& parse) {
    json attrs = json::array();
    for (auto attr : parse.attrs) {
        attrs.push_back(std::string(to_string(attr)));
    }
    return json{{"pos", std::string(to_string(parse.pos))},
                {"root", parse.root},
                {"attrs", std::move(attrs)},
                {"parse", render_parse(parse)}};
}

json entry_json(const LexiconEntry& entry) {
    return json{{"lexical", entry.lexical},
                {"class", std::string(to_string(entry.cls))},
                {"parse", render_parse(entry.parse)}};
}

// Builds an entry from a request body, or returns a 422 message.
std::variant<LexiconEntry, std::string> entry_from_json(const json& body) {
    if (!body.is_object()) {
        return std::string("request body must be a JSON object");
    }
    for (const char* field : {"lexical", "class", "parse"}) {
        if (!body.contains(field) || !body[field].is_string()) {
            return std::string("missing string field '") + field + "'";
        }
    }
    LexiconEntry entry;
    entry.lexical = body["lexical"].get<std::string>();
    auto cls = continuation_class_from_string(body["class"].get<std::string>());
    if (!cls) {
        return "unknown continuation class '" + body["class"].get<std::string>() + "'";
    }
    entry.cls = *cls;
    try {
        entry.parse = parse_parse_string(body["parse"].get<std::string>());
    } catch (const ParseError& e) {
        return std::string(e.what());
    }
    if (auto problem = validate_entry(entry)) {
        return *problem;
    }
    return entry;
}

// Removes the first line that parses to `entry`; false if none does.
bool remove_line(std::string& text, const LexiconEntry& entry) {
    std::size_t start = 0;
    while (start < text.size()) {
        auto nl = text.find('\n', start);
        auto end = nl == std::string::npos ? text.size() : nl + 1;
        std::string_view line(text.data() + start, (nl == std::string::npos ? text.size() : nl) - start);
        std::optional<LexiconEntry> parsed;
        try {
            parsed = parse_lexicon_line(line);
        } catch (const LexiconError&) {
        }
        if (parsed && *parsed == entry) {
            text.erase(start, end - start);
            return true;
        }
        start = end;
    }
    return false;
}

// RAII slot in the bounded writer queue.
class WriteTicket {
public:
    WriteTicket(std::atomic<int>& pending, int limit) : pending_(pending) {
        admitted_ = pending_.fetch_add(1) <= limit;
        if (!admitted_) {
            pending_.fetch_sub(1);
        }
    }
    ~WriteTicket() {
        if (admitted_) {
            pending_.fetch_sub(1);
        }
    }
    WriteTicket(const WriteTicket&) = delete;
    WriteTicket& operator=(const WriteTicket&) = delete;

    bool admitted() const { return admitted_; }

private:
    std::atomic<int>& pending_;
    bool admitted_ = false;
};

void send(httplib::Response& res, const Response& out) {
    res.status = out.status;
    res.set_content(out.body.dump(), "application/json");
}

constexpr std::string_view placeholder_page =
    "<!doctype html><html><head><meta charset=\"utf-8\"><title>morph</title></head>"
    "<body><h1>morph maintenance service</h1>"
    "<p>No UI assets configured. The JSON API is under <code>/api/</code>.</p></body></html>";

} // namespace

MaintenanceService::MaintenanceService(Config config) : config_(std::move(config)) {
    current_ = rebuild(read_text(config_.lexicon));
}

std::shared_ptr<const Snapshot> MaintenanceService::rebuild(std::string lexicon_text) {
    auto lex = parse_lexicon(lexicon_text);
    db::write_file_atomic(config_.database, db::compile(lex));
    auto database = db::Database::open(config_.database);
    db::write_file_atomic(config_.flat, db::dump_flat(database));
    return std::make_shared<const Snapshot>(Snapshot{std::move(lex), std::move(database), std::move(lexicon_text)});
}

std::shared_ptr<const Snapshot> MaintenanceService::snapshot() const {
    std::lock_guard lock(snapshot_mutex_);
    return current_;
}

json MaintenanceService::analyses_json(const Snapshot& snap, std::string_view word) const {
    // The database answers; the rule engine supplies the lexical form for each parse.
    auto analyses = recognize(word, snap.lexicon);
    json out = json::array();
    for (const auto& parse : snap.database.lookup(word)) {
        auto match = std::find_if(analyses.begin(), analyses.end(),
                                  [&](const Analysis& a) { return a.parse == parse; });
        auto item = parse_json(parse);
        item["lexical_form"] = match != analyses.end() ? render_lexical_form(match->lexical_form) : std::string(word);
        out.push_back(std::move(item));
    }
    return out;
}

json MaintenanceService::forms_json(const Snapshot& snap, const LexiconEntry& entry) const {
    std::set<std::string> surfaces;
    for (const auto& form : generate(entry)) {
        surfaces.insert(form.surface);
    }
    json out = json::array();
    for (const auto& surface : surfaces) {
        out.push_back(json{{"word", surface}, {"analyses", analyses_json(snap, surface)}});
    }
    return out;
}

Response MaintenanceService::lookup(std::string_view word) const {
    if (word.empty()) {
        return {400, error_body("missing 'word' parameter")};
    }
    auto snap = snapshot();
    return {200, json{{"word", word}, {"analyses", analyses_json(*snap, word)}}};
}

Response MaintenanceService::entries(std::string_view prefix, std::optional<std::string_view> pos, long page) const {
    std::optional<PartOfSpeech> want;
    if (pos && !pos->empty()) {
        want = part_of_speech_from_string(*pos);
        if (!want) {
            return {400, error_body("invalid part of speech '" + std::string(*pos) + "'")};
        }
    }
    if (page < 0) {
        return {400, error_body("page must be non-negative")};
    }

    auto snap = snapshot();
    std::vector<const LexiconEntry*> matches;
    for (const auto& entry : snap->lexicon.entries()) {
        if (entry.lexical.compare(0, prefix.size(), prefix) != 0) {
            continue;
        }
        if (want && entry.parse.pos != *want) {
            continue;
        }
        matches.push_back(&entry);
    }
    auto key = [](const LexiconEntry* e) {
        return std::make_tuple(e->lexical, std::string(to_string(e->cls)), render_parse(e->parse));
    };
    std::sort(matches.begin(), matches.end(), [&](auto* a, auto* b) { return key(a) < key(b); });

    json items = json::array();
    auto first = static_cast<std::size_t>(page) * entries_page_size;
    for (auto i = first; i < matches.size() && i < first + entries_page_size; ++i) {
        items.push_back(entry_json(*matches[i]));
    }
    return {200, json{{"prefix", prefix},
                      {"pos", pos ? json(std::string(*pos)) : json(nullptr)},
                      {"page", page},
                      {"page_size", entries_page_size},
                      {"total", matches.size()},
                      {"entries", std::move(items)}}};
}

Response MaintenanceService::add_entry(const json& body) {
    WriteTicket ticket(pending_writes_, config_.max_pending_writes);
    if (!ticket.admitted()) {
        return {503, error_body("too many rebuilds queued")};
    }
    auto parsed = entry_from_json(body);
    if (auto* problem = std::get_if<std::string>(&parsed)) {
        return {422, error_body(*problem)};
    }
    auto entry = std::get<LexiconEntry>(std::move(parsed));

    std::lock_guard write_lock(write_mutex_);
    auto old = snapshot();
    if (old->lexicon.contains(entry)) {
        return {422, error_body("duplicate entry '" + render_lexicon_line(entry) + "'")};
    }
    std::string text = old->lexicon_text;
    if (!text.empty() && text.back() != '\n') {
        text += '\n';
    }
    text += render_lexicon_line(entry) + '\n';

    db::write_file_atomic(config_.lexicon, text);
    auto next = rebuild(std::move(text));
    {
        std::lock_guard lock(snapshot_mutex_);
        current_ = next;
    }
    return {201, json{{"entry", entry_json(entry)}, {"forms", forms_json(*next, entry)}}};
}

Response MaintenanceService::remove_entry(const json& body) {
    WriteTicket ticket(pending_writes_, config_.max_pending_writes);
    if (!ticket.admitted()) {
        return {503, error_body("too many rebuilds queued")};
    }
    auto parsed = entry_from_json(body);
    if (auto* problem = std::get_if<std::string>(&parsed)) {
        return {422, error_body(*problem)};
    }
    auto entry = std::get<LexiconEntry>(std::move(parsed));

    std::lock_guard write_lock(write_mutex_);
    auto old = snapshot();
    std::string text = old->lexicon_text;
    if (!old->lexicon.contains(entry) || !remove_line(text, entry)) {
        return {404, error_body("no entry '" + render_lexicon_line(entry) + "'")};
    }

    db::write_file_atomic(config_.lexicon, text);
    auto next = rebuild(std::move(text));
    {
        std::lock_guard lock(snapshot_mutex_);
        current_ = next;
    }
    return {200, json{{"entry", entry_json(entry)}, {"forms", forms_json(*next, entry)}}};
}

void MaintenanceService::mount(httplib::Server& server) {
    server.Get("/api/lookup", [this](const httplib::Request& req, httplib::Response& res) {
        if (!req.has_param("word")) {
            send(res, {400, error_body("missing 'word' parameter")});
            return;
        }
        send(res, lookup(req.get_param_value("word")));
    });

    server.Get("/api/entries", [this](const httplib::Request& req, httplib::Response& res) {
        std::optional<std::string> pos;
        if (req.has_param("pos")) {
            pos = req.get_param_value("pos");
        }
        long page = 0;
        if (req.has_param("page")) {
            const auto text = req.get_param_value("page");
            std::size_t used = 0;
            try {
                page = std::stol(text, &used);
            } catch (const std::exception&) {
                used = 0;
            }
            if (used == 0 || used != text.size()) {
                send(res, {400, error_body("invalid page '" + text + "'")});
                return;
            }
        }
        auto opt_pos = pos ? std::optional<std::string_view>(*pos) : std::nullopt;
        send(res, entries(req.get_param_value("prefix"), opt_pos, page));
    });

    auto with_body = [](const httplib::Request& req, httplib::Response& res, auto&& handler) {
        json body = json::parse(req.body, nullptr, false);
        if (body.is_discarded()) {
            send(res, {400, error_body("request body is not valid JSON")});
            return;
        }
        try {
            send(res, handler(body));
        } catch (const std::exception& e) {
            send(res, {500, error_body(e.what())});
        }
    };
    server.Post("/api/entries", [this, with_body](const httplib::Request& req, httplib::Response& res) {
        with_body(req, res, [this](const json& body) { return add_entry(body); });
    });
    server.Delete("/api/entries", [this, with_body](const httplib::Request& req, httplib::Response& res) {
        with_body(req, res, [this](const json& body) { return remove_entry(body); });
    });

    if (!config_.static_dir.empty()) {
        server.set_mount_point("/", config_.static_dir.string());
    } else {
        server.Get("/", [](const httplib::Request&, httplib::Response& res) {
            res.set_content(std::string(placeholder_page), "text/html; charset=utf-8");
        });
    }
}

} // namespace morph::service
