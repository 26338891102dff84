#pragma once

#include <morph/core.hpp>
#include <morph/lexicon.hpp>

#include <string>
#include <string_view>
#include <vector>

namespace morph {

/// All analyses of a surface word against a lexicon, deduplicated and
/// ordered by rendered parse (then lexical form). Empty means unrecognized.
std::vector<Analysis> recognize(std::string_view surface, const Lexicon& lex);

struct GeneratedForm {
    std::string surface;
    LexicalForm lexical_form;
    Parse parse;
};

/// Surface spelling of every expansion of an entry, in expansion order.
std::vector<GeneratedForm> generate(const LexiconEntry& entry);

} // namespace morph
