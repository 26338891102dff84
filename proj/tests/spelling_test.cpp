#include <morph/spelling.hpp>

#include "test_support.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <functional>
#include <set>

using namespace morph;

namespace {

using S = Suffix;

std::string spell(std::string root, std::vector<Suffix> suffixes = {}) {
    return surface_of(LexicalForm{std::move(root), std::move(suffixes)});
}

bool contains(const std::vector<LexicalForm>& forms, const LexicalForm& want) {
    return std::find(forms.begin(), forms.end(), want) != forms.end();
}

std::set<std::string> rendered(const std::vector<LexicalForm>& forms) {
    std::set<std::string> out;
    for (const auto& f : forms) {
        out.insert(render_lexical_form(f));
    }
    return out;
}

// Brute-force inversion: every root over the given alphabet up to max_len,
// combined with every legal suffix sequence, whose spelling is `surface`.
std::set<std::string> brute_force_inverse(const std::string& surface, const std::string& alphabet, std::size_t max_len) {
    std::set<std::string> out;
    std::string root;
    std::function<void()> extend = [&] {
        if (!root.empty()) {
            for (const auto& seq : legal_suffix_sequences()) {
                LexicalForm f{root, seq};
                if (surface_of(f) == surface) {
                    out.insert(render_lexical_form(f));
                }
            }
        }
        if (root.size() == max_len) {
            return;
        }
        for (char c : alphabet) {
            root.push_back(c);
            extend();
            root.pop_back();
        }
    };
    extend();
    return out;
}

} // namespace

TEST(SurfaceOf, TranscriptForms) {
    EXPECT_EQ(spell("funky", {S::Er}), "funkier");
    EXPECT_EQ(spell("funky", {S::Est}), "funkiest");
    EXPECT_EQ(spell("teach", {S::S}), "teaches");
    EXPECT_EQ(spell("saw", {S::S, S::ApostropheS}), "saws'");
    EXPECT_EQ(spell("saw", {S::ApostropheS}), "saw's");
    EXPECT_EQ(spell("admire", {S::Ing}), "admiring");
    EXPECT_EQ(spell("admire", {S::Ed}), "admired");
    EXPECT_EQ(spell("admire", {S::S}), "admires");
    EXPECT_EQ(spell("mice", {S::ApostropheS}), "mice's");
    EXPECT_EQ(spell("tango", {S::Ed}), "tangoed");
    EXPECT_EQ(spell("tango", {S::Ing}), "tangoing");
    EXPECT_EQ(spell("dye", {S::Ed}), "dyed");
    EXPECT_EQ(spell("dye", {S::S}), "dyes");
    EXPECT_EQ(spell("lie", {S::Ed}), "lied");
    EXPECT_EQ(spell("ambassador", {S::S, S::ApostropheS}), "ambassadors'");
}

TEST(SurfaceOf, IeBecomesYBeforeIng) { EXPECT_EQ(spell("lie", {S::Ing}), "lying"); }

TEST(SurfaceOf, Gemination) {
    EXPECT_EQ(spell("stop", {S::Ed}), "stopped");
    EXPECT_EQ(spell("stop", {S::Ing}), "stopping");
    EXPECT_EQ(spell("big", {S::Er}), "bigger");
    EXPECT_EQ(spell("grok", {S::Ing}), "grokking");
    EXPECT_EQ(spell("stop", {S::S}), "stops");
    // w, x, y never double; polysyllabic and double-vowel roots do not either.
    EXPECT_EQ(spell("saw", {S::Ed}), "sawed");
    EXPECT_EQ(spell("box", {S::Ing}), "boxing");
    EXPECT_EQ(spell("zigzag", {S::Ed}), "zigzaged");
    EXPECT_EQ(spell("cool", {S::Er}), "cooler");
    EXPECT_EQ(spell("better", {S::Ed}), "bettered");
}

TEST(SurfaceOf, YToIAndEpenthesis) {
    EXPECT_EQ(spell("spy", {S::S}), "spies");
    EXPECT_EQ(spell("spy", {S::Ed}), "spied");
    EXPECT_EQ(spell("spy", {S::Ing}), "spying");
    EXPECT_EQ(spell("spy", {S::ApostropheS}), "spy's");
    EXPECT_EQ(spell("play", {S::S}), "plays");
    EXPECT_EQ(spell("box", {S::S}), "boxes");
    EXPECT_EQ(spell("wish", {S::S}), "wishes");
    EXPECT_EQ(spell("bus", {S::S, S::ApostropheS}), "buses'");
    EXPECT_EQ(spell("tango", {S::S}), "tangos");
}

TEST(SurfaceOf, PlainConcatenationAndIdentity) {
    EXPECT_EQ(spell("saw", {S::S}), "saws");
    EXPECT_EQ(spell("saw"), "saw");
    EXPECT_EQ(spell("well-being", {S::S}), "well-beings");
}

TEST(Segmentations, Examples) {
    auto funkier = segmentations("funkier");
    EXPECT_TRUE(contains(funkier, {"funky", {S::Er}}));
    EXPECT_TRUE(contains(funkier, {"funkier", {}}));

    EXPECT_TRUE(contains(segmentations("saws'"), {"saw", {S::S, S::ApostropheS}}));

    auto dyes = segmentations("dyes");
    EXPECT_TRUE(contains(dyes, {"dye", {S::S}}));
    EXPECT_TRUE(contains(dyes, {"dyes", {}}));
    EXPECT_FALSE(contains(dyes, {"dy", {S::S}}));

    EXPECT_TRUE(contains(segmentations("spies"), {"spy", {S::S}}));
}

TEST(Segmentations, MatchBruteForceInversion) {
    struct Case {
        std::string surface;
        std::string alphabet;
    };
    for (const auto& c : std::vector<Case>{{"spies", "spiey"},
                                           {"dyed", "dyeid"},
                                           {"lying", "lyinge"},
                                           {"saws'", "saw'eyi"},
                                           {"stopped", "stopedi"}}) {
        auto max_len = std::min<std::size_t>(c.surface.size() + 1, c.surface == "stopped" ? 5 : 6);
        auto oracle = brute_force_inverse(c.surface, c.alphabet, max_len);
        auto got = rendered(segmentations(c.surface));
        // The oracle is bounded by max_len; longer candidates come only from the implementation.
        std::set<std::string> got_bounded;
        for (const auto& g : got) {
            if (g.substr(0, g.find('+')).size() <= max_len) {
                got_bounded.insert(g);
            }
        }
        EXPECT_EQ(got_bounded, oracle) << c.surface;
    }
    EXPECT_EQ(rendered(segmentations("spies")),
              (std::set<std::string>{"spie+s", "spies", "spy+s"}));
}

// Completeness and soundness of inversion over the sample lexicon.
TEST(SegmentationsProperty, InvertsEverySampleForm) {
    auto lex = support::sample_lexicon();
    std::set<std::string> roots;
    for (const auto& e : lex.entries()) {
        roots.insert(e.lexical);
    }
    roots.insert({"grok", "quiz", "tie", "free", "ski", "x"});
    std::size_t checked = 0;
    for (const auto& root : roots) {
        for (const auto& seq : legal_suffix_sequences()) {
            LexicalForm lf{root, seq};
            auto surface = surface_of(lf);
            EXPECT_EQ(surface.find('+'), std::string::npos);
            EXPECT_EQ(surface.find(' '), std::string::npos);
            auto candidates = segmentations(surface);
            EXPECT_TRUE(contains(candidates, lf)) << render_lexical_form(lf) << " -> " << surface;
            for (const auto& c : candidates) {
                EXPECT_EQ(surface_of(c), surface) << render_lexical_form(c);
            }
            EXPECT_TRUE(contains(candidates, {surface, {}}));
            ++checked;
        }
        EXPECT_EQ(surface_of({root, {}}), root);
    }
    EXPECT_GT(checked, 300u);
}
