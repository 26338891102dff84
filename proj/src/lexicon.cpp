#include <morph/lexicon.hpp>

#include <algorithm>
#include <fstream>
#include <map>
#include <sstream>

namespace morph {

namespace {

bool is_space(char c) { return c == ' ' || c == '\t' || c == '\r' || c == '\n'; }

std::string_view trim(std::string_view s) {
    while (!s.empty() && is_space(s.front())) {
        s.remove_prefix(1);
    }
    while (!s.empty() && is_space(s.back())) {
        s.remove_suffix(1);
    }
    return s;
}

std::string_view next_token(std::string_view& rest) {
    rest = trim(rest);
    std::size_t end = 0;
    while (end < rest.size() && !is_space(rest[end])) {
        ++end;
    }
    auto token = rest.substr(0, end);
    rest.remove_prefix(end);
    return token;
}

// Strips a ';' comment that is not inside the quoted parse.
std::string_view strip_comment(std::string_view line) {
    bool quoted = false;
    for (std::size_t i = 0; i < line.size(); ++i) {
        if (line[i] == '"') {
            quoted = !quoted;
        } else if (line[i] == ';' && !quoted) {
            return line.substr(0, i);
        }
    }
    return line;
}

bool has_inflecting_base(ContinuationClass cls) {
    switch (cls) {
    case ContinuationClass::V_Root2:
    case ContinuationClass::V_Root3:
    case ContinuationClass::V_Root4:
    case ContinuationClass::V_Root5:
    case ContinuationClass::V_Root6:
    case ContinuationClass::V_Root7:
    case ContinuationClass::V_Root8:
        return true;
    default:
        return false;
    }
}

std::string read_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw LexiconError(0, "cannot open lexicon file '" + path.string() + "'");
    }
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

template <typename F>
void for_each_line(std::string_view text, F&& f) {
    std::size_t line_number = 0;
    while (!text.empty()) {
        auto nl = text.find('\n');
        auto line = text.substr(0, nl);
        f(line, ++line_number);
        if (nl == std::string_view::npos) {
            break;
        }
        text.remove_prefix(nl + 1);
    }
}

void merge_text(Lexicon& lex, std::string_view text, const std::string& source) {
    for_each_line(text, [&](std::string_view line, std::size_t number) {
        try {
            if (auto entry = parse_lexicon_line(line, number)) {
                lex.add(std::move(*entry), number);
            }
        } catch (const LexiconError& e) {
            if (source.empty()) {
                throw;
            }
            throw LexiconError(e.line(), source + ": " + e.what());
        }
    });
}

} // namespace

LexiconError::LexiconError(std::size_t line, const std::string& message)
    : std::runtime_error(line == 0 ? message : "line " + std::to_string(line) + ": " + message)
    , line_(line) {}

std::optional<std::string> validate_entry(const LexiconEntry& entry) {
    if (entry.lexical.empty()) {
        return "empty lexical form";
    }
    if (entry.lexical.find('+') != std::string::npos) {
        return "lexical form '" + entry.lexical + "' contains '+'";
    }
    if (!is_valid_root(entry.lexical)) {
        return "lexical form '" + entry.lexical + "' contains a reserved character";
    }
    if (!is_valid_root(entry.parse.root)) {
        return "invalid root '" + entry.parse.root + "'";
    }
    if (class_part_of_speech(entry.cls) != entry.parse.pos) {
        return "class " + std::string(to_string(entry.cls)) + " does not take part of speech " +
               std::string(to_string(entry.parse.pos));
    }
    return std::nullopt;
}

void Lexicon::add(LexiconEntry entry, std::size_t line) {
    if (auto problem = validate_entry(entry)) {
        throw LexiconError(line, *problem);
    }
    if (contains(entry)) {
        throw LexiconError(line, "duplicate entry '" + render_lexicon_line(entry) + "'");
    }
    index_[entry.lexical].push_back(entries_.size());
    entries_.push_back(std::move(entry));
}

bool Lexicon::contains(const LexiconEntry& entry) const {
    auto it = index_.find(entry.lexical);
    if (it == index_.end()) {
        return false;
    }
    return std::any_of(it->second.begin(), it->second.end(),
                       [&](std::size_t i) { return entries_[i] == entry; });
}

std::vector<const LexiconEntry*> Lexicon::find(std::string_view lexical) const {
    std::vector<const LexiconEntry*> out;
    auto it = index_.find(std::string(lexical));
    if (it != index_.end()) {
        for (auto i : it->second) {
            out.push_back(&entries_[i]);
        }
    }
    return out;
}

std::optional<LexiconEntry> parse_lexicon_line(std::string_view line, std::size_t line_number) {
    auto rest = trim(strip_comment(line));
    if (rest.empty()) {
        return std::nullopt;
    }

    LexiconEntry entry;
    entry.lexical = std::string(next_token(rest));

    auto class_name = next_token(rest);
    if (class_name.empty()) {
        throw LexiconError(line_number, "missing continuation class");
    }
    auto cls = continuation_class_from_string(class_name);
    if (!cls) {
        throw LexiconError(line_number, "unknown continuation class '" + std::string(class_name) + "'");
    }
    entry.cls = *cls;

    rest = trim(rest);
    if (rest.size() < 2 || rest.front() != '"' || rest.back() != '"') {
        throw LexiconError(line_number, "expected a double-quoted parse, got '" + std::string(rest) + "'");
    }
    try {
        entry.parse = parse_parse_string(rest.substr(1, rest.size() - 2));
    } catch (const ParseError& e) {
        throw LexiconError(line_number, e.what());
    }
    if (auto problem = validate_entry(entry)) {
        throw LexiconError(line_number, *problem);
    }
    return entry;
}

std::string render_lexicon_line(const LexiconEntry& entry) {
    return entry.lexical + '\t' + std::string(to_string(entry.cls)) + "\t\"" + render_parse(entry.parse) + '"';
}

Lexicon parse_lexicon(std::string_view text) {
    Lexicon lex;
    merge_text(lex, text, {});
    return lex;
}

Lexicon load_lexicon(std::span<const std::filesystem::path> paths) {
    Lexicon lex;
    for (const auto& path : paths) {
        merge_text(lex, read_file(path), path.string());
    }
    return lex;
}

Lexicon load_lexicon(const std::filesystem::path& path) {
    return load_lexicon(std::span(&path, 1));
}

std::span<const SuffixSequence> permitted_suffixes(ContinuationClass cls) {
    using S = Suffix;
    static const std::map<ContinuationClass, std::vector<SuffixSequence>> table{
        {ContinuationClass::A_Root1, {}},
        {ContinuationClass::A_Root2, {{S::Er}, {S::Est}}},
        {ContinuationClass::N_Root1, {{S::ApostropheS}}},
        {ContinuationClass::N_Root2, {{S::S}, {S::ApostropheS}, {S::S, S::ApostropheS}}},
        {ContinuationClass::V_Root1, {}},
        {ContinuationClass::V_Root2, {{S::Ed}}},
        {ContinuationClass::V_Root3, {{S::S}}},
        {ContinuationClass::V_Root4, {{S::S}, {S::Ed}}},
        {ContinuationClass::V_Root5, {{S::Ing}}},
        {ContinuationClass::V_Root6, {{S::Ing}, {S::Ed}}},
        {ContinuationClass::V_Root7, {{S::Ing}, {S::S}}},
        {ContinuationClass::V_Root8, {{S::Ing}, {S::S}, {S::Ed}}},
        {ContinuationClass::Pron, {}},
        {ContinuationClass::Prep, {}},
        {ContinuationClass::Det, {}},
        {ContinuationClass::Conj, {}},
        {ContinuationClass::Adv, {}},
    };
    return table.at(cls);
}

bool permits(ContinuationClass cls, std::span<const Suffix> sequence) {
    if (sequence.empty()) {
        return true;
    }
    auto allowed = permitted_suffixes(cls);
    return std::any_of(allowed.begin(), allowed.end(), [&](const SuffixSequence& s) {
        return std::equal(s.begin(), s.end(), sequence.begin(), sequence.end());
    });
}

std::vector<std::pair<LexicalForm, Parse>> expand(const LexiconEntry& entry) {
    std::vector<std::pair<LexicalForm, Parse>> out;

    Parse base = entry.parse;
    if (entry.cls == ContinuationClass::N_Root2) {
        base.add(Attribute::SG);
    } else if (has_inflecting_base(entry.cls)) {
        base.add(Attribute::INF);
    }
    out.emplace_back(LexicalForm{entry.lexical, {}}, base);

    for (const auto& sequence : permitted_suffixes(entry.cls)) {
        // A bare genitive inflects the base form (SG GEN); everything else
        // starts from the stored parse.
        bool from_base = sequence.size() == 1 && sequence.front() == Suffix::ApostropheS;
        for (const auto& delta : suffix_deltas(entry.parse.pos, sequence)) {
            Parse parse = from_base ? base : entry.parse;
            for (auto attr : delta) {
                parse.add(attr);
            }
            out.emplace_back(LexicalForm{entry.lexical, sequence}, std::move(parse));
        }
    }
    return out;
}

} // namespace morph
