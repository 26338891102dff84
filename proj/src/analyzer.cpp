#include <morph/analyzer.hpp>
#include <morph/spelling.hpp>

#include <algorithm>
#include <tuple>

namespace morph {

std::vector<Analysis> recognize(std::string_view surface, const Lexicon& lex) {
    std::vector<Analysis> out;
    if (surface.empty()) {
        return out;
    }
    for (const auto& candidate : segmentations(surface)) {
        for (const auto* entry : lex.find(candidate.root)) {
            if (!permits(entry->cls, candidate.suffixes)) {
                continue;
            }
            for (auto& [form, parse] : expand(*entry)) {
                if (form == candidate) {
                    out.push_back(Analysis{std::move(form), std::move(parse)});
                }
            }
        }
    }

    struct Keyed {
        std::string parse;
        std::string form;
        Analysis analysis;
    };
    std::vector<Keyed> keyed;
    keyed.reserve(out.size());
    for (auto& a : out) {
        keyed.push_back({render_parse(a.parse), render_lexical_form(a.lexical_form), std::move(a)});
    }
    std::sort(keyed.begin(), keyed.end(), [](const Keyed& a, const Keyed& b) {
        return std::tie(a.parse, a.form) < std::tie(b.parse, b.form);
    });
    keyed.erase(std::unique(keyed.begin(), keyed.end(),
                            [](const Keyed& a, const Keyed& b) {
                                return a.parse == b.parse && a.form == b.form;
                            }),
                keyed.end());

    out.clear();
    for (auto& k : keyed) {
        out.push_back(std::move(k.analysis));
    }
    return out;
}

std::vector<GeneratedForm> generate(const LexiconEntry& entry) {
    std::vector<GeneratedForm> out;
    for (auto& [form, parse] : expand(entry)) {
        auto surface = surface_of(form);
        out.push_back(GeneratedForm{std::move(surface), std::move(form), std::move(parse)});
    }
    return out;
}

} // namespace morph
