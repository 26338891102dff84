#include <morph/core.hpp>

#include <algorithm>
#include <array>
#include <utility>

namespace morph {

namespace {

constexpr std::array<std::pair<PartOfSpeech, std::string_view>, part_of_speech_count> pos_names{{
    {PartOfSpeech::V, "V"},
    {PartOfSpeech::N, "N"},
    {PartOfSpeech::A, "A"},
    {PartOfSpeech::Adv, "Adv"},
    {PartOfSpeech::Pron, "Pron"},
    {PartOfSpeech::Prep, "Prep"},
    {PartOfSpeech::D, "D"},
    {PartOfSpeech::Conj, "Conj"},
}};

constexpr std::array<std::pair<Attribute, std::string_view>, attribute_count> attribute_names{{
    {Attribute::First_SG, "1SG"},   {Attribute::Second_SG, "2SG"}, {Attribute::Third_SG, "3SG"},
    {Attribute::First_PL, "1PL"},   {Attribute::Second_PL, "2PL"}, {Attribute::Third_PL, "3PL"},
    {Attribute::Second, "2ND"},     {Attribute::Third, "3RD"},     {Attribute::SG, "SG"},
    {Attribute::PL, "PL"},          {Attribute::PROG, "PROG"},     {Attribute::PAST, "PAST"},
    {Attribute::PPART, "PPART"},    {Attribute::INF, "INF"},       {Attribute::PRES, "PRES"},
    {Attribute::STR, "STR"},        {Attribute::WK, "WK"},         {Attribute::GEN, "GEN"},
    {Attribute::NOM, "NOM"},        {Attribute::ACC, "ACC"},       {Attribute::NOMACC, "NOMACC"},
    {Attribute::NEG, "NEG"},        {Attribute::PASSIVE, "PASSIVE"}, {Attribute::To, "to"},
    {Attribute::COMP, "COMP"},      {Attribute::SUPER, "SUPER"},   {Attribute::MASC, "MASC"},
    {Attribute::FEM, "FEM"},        {Attribute::NEUT, "NEUT"},     {Attribute::WH, "WH"},
    {Attribute::REFL, "REFL"},      {Attribute::REF1SG, "REF1SG"}, {Attribute::REF2ND, "REF2ND"},
    {Attribute::REF2SG, "REF2SG"},  {Attribute::REF2PL, "REF2PL"}, {Attribute::REF3SG, "REF3SG"},
    {Attribute::REF3PL, "REF3PL"},  {Attribute::REFMASC, "REFMASC"}, {Attribute::REFFEM, "REFFEM"},
}};

constexpr std::array<std::pair<ContinuationClass, std::string_view>, 17> class_names{{
    {ContinuationClass::A_Root1, "A_Root1"}, {ContinuationClass::A_Root2, "A_Root2"},
    {ContinuationClass::N_Root1, "N_Root1"}, {ContinuationClass::N_Root2, "N_Root2"},
    {ContinuationClass::V_Root1, "V_Root1"}, {ContinuationClass::V_Root2, "V_Root2"},
    {ContinuationClass::V_Root3, "V_Root3"}, {ContinuationClass::V_Root4, "V_Root4"},
    {ContinuationClass::V_Root5, "V_Root5"}, {ContinuationClass::V_Root6, "V_Root6"},
    {ContinuationClass::V_Root7, "V_Root7"}, {ContinuationClass::V_Root8, "V_Root8"},
    {ContinuationClass::Pron, "Pron"},       {ContinuationClass::Prep, "Prep"},
    {ContinuationClass::Det, "Det"},         {ContinuationClass::Conj, "Conj"},
    {ContinuationClass::Adv, "Adv"},
}};

template <typename Enum, std::size_t N>
std::string_view name_of(const std::array<std::pair<Enum, std::string_view>, N>& table, Enum value) {
    for (const auto& [e, name] : table) {
        if (e == value) {
            return name;
        }
    }
    return "?";
}

template <typename Enum, std::size_t N>
std::optional<Enum> value_of(const std::array<std::pair<Enum, std::string_view>, N>& table,
                             std::string_view text) {
    for (const auto& [e, name] : table) {
        if (name == text) {
            return e;
        }
    }
    return std::nullopt;
}

template <typename Enum, std::size_t N>
constexpr std::array<Enum, N> keys_of(const std::array<std::pair<Enum, std::string_view>, N>& table) {
    std::array<Enum, N> out{};
    for (std::size_t i = 0; i < N; ++i) {
        out[i] = table[i].first;
    }
    return out;
}

constexpr auto pos_values = keys_of(pos_names);
constexpr auto attribute_values = keys_of(attribute_names);
constexpr auto class_values = keys_of(class_names);

bool is_space(char c) {
    return c == ' ' || c == '\t' || c == '\r' || c == '\n' || c == '\f' || c == '\v';
}

std::vector<std::string_view> split_spaces(std::string_view text) {
    std::vector<std::string_view> out;
    std::size_t i = 0;
    while (i < text.size()) {
        while (i < text.size() && is_space(text[i])) {
            ++i;
        }
        std::size_t start = i;
        while (i < text.size() && !is_space(text[i])) {
            ++i;
        }
        if (i > start) {
            out.push_back(text.substr(start, i - start));
        }
    }
    return out;
}

PartOfSpeech require_pos(std::string_view token) {
    if (auto pos = part_of_speech_from_string(token)) {
        return *pos;
    }
    throw ParseError("unknown part of speech '" + std::string(token) + "'");
}

void append_attributes(Parse& parse, std::span<const std::string_view> tokens) {
    for (auto token : tokens) {
        auto attr = attribute_from_string(token);
        if (!attr) {
            throw ParseError("unknown attribute '" + std::string(token) + "'");
        }
        if (parse.has(*attr)) {
            throw ParseError("duplicate attribute '" + std::string(token) + "'");
        }
        parse.attrs.push_back(*attr);
    }
}

void append_attr_text(std::string& out, const Parse& parse) {
    for (auto attr : parse.attrs) {
        out += ' ';
        out += to_string(attr);
    }
}

} // namespace

std::string_view to_string(PartOfSpeech pos) { return name_of(pos_names, pos); }
std::string_view to_string(Attribute attr) { return name_of(attribute_names, attr); }
std::string_view to_string(ContinuationClass cls) { return name_of(class_names, cls); }

std::optional<PartOfSpeech> part_of_speech_from_string(std::string_view text) {
    return value_of(pos_names, text);
}

std::optional<Attribute> attribute_from_string(std::string_view text) {
    return value_of(attribute_names, text);
}

std::optional<ContinuationClass> continuation_class_from_string(std::string_view text) {
    return value_of(class_names, text);
}

std::span<const PartOfSpeech> all_parts_of_speech() { return pos_values; }
std::span<const Attribute> all_attributes() { return attribute_values; }
std::span<const ContinuationClass> all_continuation_classes() { return class_values; }

bool Parse::has(Attribute attr) const {
    return std::find(attrs.begin(), attrs.end(), attr) != attrs.end();
}

void Parse::add(Attribute attr) {
    if (!has(attr)) {
        attrs.push_back(attr);
    }
}

bool is_valid_root(std::string_view root) {
    if (root.empty()) {
        return false;
    }
    return std::none_of(root.begin(), root.end(), [](char c) {
        return is_space(c) || c == '(' || c == ')' || c == '#';
    });
}

std::string render_parse(const Parse& parse) {
    std::string out(to_string(parse.pos));
    out += '(';
    out += parse.root;
    out += ')';
    append_attr_text(out, parse);
    return out;
}

Parse parse_parse_string(std::string_view text) {
    auto open = text.find('(');
    if (open == std::string_view::npos) {
        throw ParseError("expected 'POS(root)' in '" + std::string(text) + "'");
    }
    auto close = text.find(')', open);
    if (close == std::string_view::npos) {
        throw ParseError("unterminated root in '" + std::string(text) + "'");
    }

    Parse parse;
    parse.pos = require_pos(text.substr(0, open));
    parse.root = std::string(text.substr(open + 1, close - open - 1));
    if (!is_valid_root(parse.root)) {
        throw ParseError("invalid root '" + parse.root + "'");
    }

    auto rest = text.substr(close + 1);
    if (!rest.empty() && !is_space(rest.front())) {
        throw ParseError("unexpected '" + std::string(rest) + "' after root");
    }
    auto tokens = split_spaces(rest);
    append_attributes(parse, tokens);
    return parse;
}

std::string render_combo(const Parse& parse) {
    std::string out(to_string(parse.pos));
    append_attr_text(out, parse);
    return out;
}

std::string render_flat_entry(const Parse& parse) {
    std::string out = parse.root;
    out += ' ';
    out += render_combo(parse);
    return out;
}

Parse parse_combo(std::string_view text) {
    auto tokens = split_spaces(text);
    if (tokens.empty()) {
        throw ParseError("empty combo");
    }
    Parse parse;
    parse.pos = require_pos(tokens.front());
    append_attributes(parse, std::span(tokens).subspan(1));
    return parse;
}

Parse parse_flat_entry(std::string_view text) {
    auto tokens = split_spaces(text);
    if (tokens.size() < 2) {
        throw ParseError("expected 'root POS ATTR...' in '" + std::string(text) + "'");
    }
    Parse parse;
    parse.root = std::string(tokens[0]);
    if (!is_valid_root(parse.root)) {
        throw ParseError("invalid root '" + parse.root + "'");
    }
    parse.pos = require_pos(tokens[1]);
    append_attributes(parse, std::span(tokens).subspan(2));
    return parse;
}

PartOfSpeech class_part_of_speech(ContinuationClass cls) {
    switch (cls) {
    case ContinuationClass::A_Root1:
    case ContinuationClass::A_Root2:
        return PartOfSpeech::A;
    case ContinuationClass::N_Root1:
    case ContinuationClass::N_Root2:
        return PartOfSpeech::N;
    case ContinuationClass::Pron:
        return PartOfSpeech::Pron;
    case ContinuationClass::Prep:
        return PartOfSpeech::Prep;
    case ContinuationClass::Det:
        return PartOfSpeech::D;
    case ContinuationClass::Conj:
        return PartOfSpeech::Conj;
    case ContinuationClass::Adv:
        return PartOfSpeech::Adv;
    default:
        return PartOfSpeech::V;
    }
}

std::string_view to_string(Suffix suffix) {
    switch (suffix) {
    case Suffix::S: return "s";
    case Suffix::ApostropheS: return "'s";
    case Suffix::Ed: return "ed";
    case Suffix::Ing: return "ing";
    case Suffix::Er: return "er";
    case Suffix::Est: return "est";
    }
    return "?";
}

bool is_vowel_initial(Suffix suffix) {
    return suffix == Suffix::Ed || suffix == Suffix::Ing || suffix == Suffix::Er || suffix == Suffix::Est;
}

std::span<const SuffixSequence> legal_suffix_sequences() {
    static const std::vector<SuffixSequence> sequences{
        {},
        {Suffix::S},
        {Suffix::ApostropheS},
        {Suffix::S, Suffix::ApostropheS},
        {Suffix::Ed},
        {Suffix::Ing},
        {Suffix::Er},
        {Suffix::Est},
    };
    return sequences;
}

std::vector<std::vector<Attribute>> suffix_deltas(PartOfSpeech pos, std::span<const Suffix> sequence) {
    using A = Attribute;
    if (sequence.empty()) {
        return {{}};
    }
    auto is = [&](std::initializer_list<Suffix> want) {
        return std::equal(sequence.begin(), sequence.end(), want.begin(), want.end());
    };
    switch (pos) {
    case PartOfSpeech::N:
        if (is({Suffix::S})) return {{A::PL}};
        if (is({Suffix::ApostropheS})) return {{A::GEN}};
        if (is({Suffix::S, Suffix::ApostropheS})) return {{A::PL, A::GEN}};
        break;
    case PartOfSpeech::V:
        if (is({Suffix::S})) return {{A::Third_SG, A::PRES}};
        if (is({Suffix::Ed})) return {{A::PAST, A::WK}, {A::PPART, A::WK}};
        if (is({Suffix::Ing})) return {{A::PROG}};
        break;
    case PartOfSpeech::A:
        if (is({Suffix::Er})) return {{A::COMP}};
        if (is({Suffix::Est})) return {{A::SUPER}};
        break;
    default:
        break;
    }
    return {};
}

std::string render_lexical_form(const LexicalForm& form) {
    std::string out = form.root;
    for (auto suffix : form.suffixes) {
        out += '+';
        out += to_string(suffix);
    }
    return out;
}

} // namespace morph
