#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace morph {

/// Thrown when a textual form (parse string, lexicon line, flat line) is malformed.
class ParseError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

enum class PartOfSpeech : std::uint8_t { V, N, A, Adv, Pron, Prep, D, Conj };

inline constexpr std::size_t part_of_speech_count = 8;

// Inflectional attributes. Enumerator names are C++-safe spellings; the
// canonical tag text (e.g. "1SG", "to") comes from to_string().
enum class Attribute : std::uint8_t {
    First_SG,
    Second_SG,
    Third_SG,
    First_PL,
    Second_PL,
    Third_PL,
    Second,
    Third,
    SG,
    PL,
    PROG,
    PAST,
    PPART,
    INF,
    PRES,
    STR,
    WK,
    GEN,
    NOM,
    ACC,
    NOMACC,
    NEG,
    PASSIVE,
    To,
    COMP,
    SUPER,
    MASC,
    FEM,
    NEUT,
    WH,
    REFL,
    REF1SG,
    REF2ND,
    REF2SG,
    REF2PL,
    REF3SG,
    REF3PL,
    REFMASC,
    REFFEM,
};

inline constexpr std::size_t attribute_count = 39;

std::string_view to_string(PartOfSpeech pos);
std::string_view to_string(Attribute attr);

std::optional<PartOfSpeech> part_of_speech_from_string(std::string_view text);
std::optional<Attribute> attribute_from_string(std::string_view text);

std::span<const PartOfSpeech> all_parts_of_speech();
std::span<const Attribute> all_attributes();

/// A part of speech, a root and an ordered attribute list.
struct Parse {
    PartOfSpeech pos = PartOfSpeech::N;
    std::string root;
    std::vector<Attribute> attrs;

    bool has(Attribute attr) const;

    /// Appends `attr` unless already present.
    void add(Attribute attr);

    friend bool operator==(const Parse&, const Parse&) = default;
};

/// Roots may not contain whitespace, parentheses or the flat-file separator '#'.
bool is_valid_root(std::string_view root);

/// `POS(root) ATTR ATTR...`
std::string render_parse(const Parse& parse);

/// Inverse of render_parse(). Throws ParseError naming the offending token.
Parse parse_parse_string(std::string_view text);

/// Parse minus its root: `POS ATTR...`. This is the unit that gets a one-byte code.
std::string render_combo(const Parse& parse);

/// `root POS ATTR...`, the content form used in database records and flat files.
std::string render_flat_entry(const Parse& parse);

/// Inverse of render_flat_entry().
Parse parse_flat_entry(std::string_view text);

/// Splits a combo string back into pos and attributes; root is left empty.
Parse parse_combo(std::string_view text);

enum class ContinuationClass : std::uint8_t {
    A_Root1,
    A_Root2,
    N_Root1,
    N_Root2,
    V_Root1,
    V_Root2,
    V_Root3,
    V_Root4,
    V_Root5,
    V_Root6,
    V_Root7,
    V_Root8,
    Pron,
    Prep,
    Det,
    Conj,
    Adv,
};

std::string_view to_string(ContinuationClass cls);
std::optional<ContinuationClass> continuation_class_from_string(std::string_view text);
std::span<const ContinuationClass> all_continuation_classes();

/// The part of speech a class may be attached to.
PartOfSpeech class_part_of_speech(ContinuationClass cls);

enum class Suffix : std::uint8_t { S, ApostropheS, Ed, Ing, Er, Est };

std::string_view to_string(Suffix suffix);

/// True for suffixes beginning with a vowel (ed, ing, er, est).
bool is_vowel_initial(Suffix suffix);

using SuffixSequence = std::vector<Suffix>;

/// Every suffix sequence a continuation class can license:
/// [], [s], ['s], [s,'s], [ed], [ing], [er], [est].
std::span<const SuffixSequence> legal_suffix_sequences();

/// Attribute lists a suffix sequence contributes for a part of speech.
/// Most sequences contribute one list; verb "ed" contributes two
/// (PAST WK and PPART WK). Empty result means the pair is not meaningful.
std::vector<std::vector<Attribute>> suffix_deltas(PartOfSpeech pos, std::span<const Suffix> sequence);

/// Root plus suffix morphemes, rendered with '+' separators.
struct LexicalForm {
    std::string root;
    SuffixSequence suffixes;

    friend bool operator==(const LexicalForm&, const LexicalForm&) = default;
};

std::string render_lexical_form(const LexicalForm& form);

struct LexiconEntry {
    std::string lexical;
    ContinuationClass cls = ContinuationClass::N_Root1;
    Parse parse;

    friend bool operator==(const LexiconEntry&, const LexiconEntry&) = default;
};

struct Analysis {
    LexicalForm lexical_form;
    Parse parse;

    friend bool operator==(const Analysis&, const Analysis&) = default;
};

} // namespace morph
