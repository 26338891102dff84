#pragma once

#include <morph/core.hpp>

#include <cstddef>
#include <filesystem>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

namespace morph {

/// A lexicon file problem, tagged with its 1-based line number (0 when not tied to a line).
class LexiconError : public std::runtime_error {
public:
    LexiconError(std::size_t line, const std::string& message);

    std::size_t line() const noexcept { return line_; }

private:
    std::size_t line_;
};

/// Ordered list of entries with an index by lexical string. Homographs
/// (same lexical string, different class or parse) are allowed; exact
/// duplicate triples are not.
class Lexicon {
public:
    Lexicon() = default;

    /// Throws LexiconError on a duplicate triple or a class/POS mismatch.
    void add(LexiconEntry entry, std::size_t line = 0);

    bool contains(const LexiconEntry& entry) const;

    /// Entries whose lexical string is `lexical`, in file order.
    std::vector<const LexiconEntry*> find(std::string_view lexical) const;

    const std::vector<LexiconEntry>& entries() const noexcept { return entries_; }
    std::size_t size() const noexcept { return entries_.size(); }
    bool empty() const noexcept { return entries_.empty(); }

private:
    std::vector<LexiconEntry> entries_;
    std::unordered_map<std::string, std::vector<std::size_t>> index_;
};

/// Checks the lexical string and the class/POS agreement. Returns an error message or nullopt.
std::optional<std::string> validate_entry(const LexiconEntry& entry);

/// Parses one lexicon line: `lexical class "POS(root) ATTR..."`, `;` comments.
/// Returns nullopt for blank and comment-only lines.
std::optional<LexiconEntry> parse_lexicon_line(std::string_view line, std::size_t line_number = 0);

/// The line text written back for an entry (tab separated).
std::string render_lexicon_line(const LexiconEntry& entry);

Lexicon parse_lexicon(std::string_view text);

/// Reads and merges lexicon files in argument order.
Lexicon load_lexicon(std::span<const std::filesystem::path> paths);
Lexicon load_lexicon(const std::filesystem::path& path);

/// Suffix sequences licensed by a class, excluding the always-present base form.
std::span<const SuffixSequence> permitted_suffixes(ContinuationClass cls);

bool permits(ContinuationClass cls, std::span<const Suffix> sequence);

/// Base form plus every licensed inflection of an entry, with attributes added:
/// N_Root2 bases gain SG, V_Root2..V_Root8 bases gain INF, and each suffix
/// appends its delta. The lexical form's root is always `entry.lexical`.
std::vector<std::pair<LexicalForm, Parse>> expand(const LexiconEntry& entry);

} // namespace morph
