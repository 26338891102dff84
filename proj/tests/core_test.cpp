#include <morph/core.hpp>

#include <gtest/gtest.h>

#include <random>

using namespace morph;

TEST(RenderParse, VerbWithAttributes) {
    Parse p{PartOfSpeech::V, "teach", {Attribute::PAST, Attribute::STR}};
    EXPECT_EQ(render_parse(p), "V(teach) PAST STR");
}

TEST(RenderParse, NoAttributesHasNoTrailingSpace) {
    EXPECT_EQ(render_parse(Parse{PartOfSpeech::A, "funky", {}}), "A(funky)");
}

TEST(RenderParse, Pronoun) {
    Parse p{PartOfSpeech::Pron, "herself", {Attribute::REFL, Attribute::FEM, Attribute::Third_SG}};
    EXPECT_EQ(render_parse(p), "Pron(herself) REFL FEM 3SG");
}

TEST(ParseParseString, Noun) {
    auto p = parse_parse_string("N(mouse) PL");
    EXPECT_EQ(p.pos, PartOfSpeech::N);
    EXPECT_EQ(p.root, "mouse");
    EXPECT_EQ(p.attrs, std::vector<Attribute>{Attribute::PL});
}

TEST(ParseParseString, EmptyAttributeList) {
    EXPECT_EQ(parse_parse_string("A(funky)"), (Parse{PartOfSpeech::A, "funky", {}}));
}

TEST(ParseParseString, UnknownPosNamesToken) {
    try {
        parse_parse_string("X(foo)");
        FAIL() << "expected ParseError";
    } catch (const ParseError& e) {
        EXPECT_NE(std::string(e.what()).find("'X'"), std::string::npos) << e.what();
    }
}

TEST(ParseParseString, Errors) {
    EXPECT_THROW(parse_parse_string("N(mouse) PLURAL"), ParseError);
    EXPECT_THROW(parse_parse_string("N(mouse) PL PL"), ParseError);
    EXPECT_THROW(parse_parse_string("N(mouse"), ParseError);
    EXPECT_THROW(parse_parse_string("N()"), ParseError);
    EXPECT_THROW(parse_parse_string("mouse"), ParseError);
    EXPECT_THROW(parse_parse_string("N(mouse)PL"), ParseError);
    EXPECT_THROW(parse_parse_string("N(two words)"), ParseError);
    EXPECT_THROW(parse_parse_string("n(mouse)"), ParseError);
}

TEST(Attributes, EveryTagRoundTrips) {
    EXPECT_EQ(all_attributes().size(), attribute_count);
    for (auto attr : all_attributes()) {
        auto text = to_string(attr);
        auto back = attribute_from_string(text);
        ASSERT_TRUE(back) << text;
        EXPECT_EQ(*back, attr);
    }
    EXPECT_EQ(to_string(Attribute::To), "to");
    EXPECT_EQ(to_string(Attribute::First_SG), "1SG");
    EXPECT_FALSE(attribute_from_string("TO"));
}

TEST(PartOfSpeech, ExactlyEightTags) {
    std::vector<std::string> names;
    for (auto pos : all_parts_of_speech()) {
        names.emplace_back(to_string(pos));
        EXPECT_EQ(part_of_speech_from_string(to_string(pos)), pos);
    }
    EXPECT_EQ(names, (std::vector<std::string>{"V", "N", "A", "Adv", "Pron", "Prep", "D", "Conj"}));
    EXPECT_FALSE(part_of_speech_from_string("Det"));
}

TEST(ContinuationClass, DeterminerSpelling) {
    EXPECT_EQ(class_part_of_speech(ContinuationClass::Det), PartOfSpeech::D);
    EXPECT_EQ(to_string(ContinuationClass::Det), "Det");
    EXPECT_FALSE(continuation_class_from_string("D"));
    EXPECT_EQ(all_continuation_classes().size(), 17u);
}

// Random parses with distinct attributes survive render -> parse, and
// rendered text survives parse -> render.
TEST(ParseProperty, RenderParseRoundTrip) {
    std::mt19937 rng(7);
    const std::string letters = "abcdefghijklmnopqrstuvwxyz'-";
    for (int trial = 0; trial < 2000; ++trial) {
        Parse p;
        p.pos = all_parts_of_speech()[rng() % part_of_speech_count];
        auto len = 1 + rng() % 10;
        for (std::size_t i = 0; i < len; ++i) {
            p.root += letters[rng() % letters.size()];
        }
        std::vector<Attribute> pool(all_attributes().begin(), all_attributes().end());
        std::shuffle(pool.begin(), pool.end(), rng);
        p.attrs.assign(pool.begin(), pool.begin() + static_cast<long>(rng() % 5));

        auto text = render_parse(p);
        EXPECT_EQ(parse_parse_string(text), p) << text;
        EXPECT_EQ(render_parse(parse_parse_string(text)), text);

        auto flat = render_flat_entry(p);
        EXPECT_EQ(parse_flat_entry(flat), p) << flat;
    }
}

TEST(LexicalForm, Rendering) {
    LexicalForm f{"saw", {Suffix::S, Suffix::ApostropheS}};
    EXPECT_EQ(render_lexical_form(f), "saw+s+'s");
    EXPECT_EQ(render_lexical_form(LexicalForm{"taught", {}}), "taught");
}

TEST(SuffixDeltas, FixedTable) {
    using A = Attribute;
    using S = Suffix;
    auto d = [](PartOfSpeech pos, std::vector<S> seq) { return suffix_deltas(pos, seq); };
    EXPECT_EQ(d(PartOfSpeech::N, {S::S}), (std::vector<std::vector<A>>{{A::PL}}));
    EXPECT_EQ(d(PartOfSpeech::N, {S::ApostropheS}), (std::vector<std::vector<A>>{{A::GEN}}));
    EXPECT_EQ(d(PartOfSpeech::N, {S::S, S::ApostropheS}), (std::vector<std::vector<A>>{{A::PL, A::GEN}}));
    EXPECT_EQ(d(PartOfSpeech::V, {S::S}), (std::vector<std::vector<A>>{{A::Third_SG, A::PRES}}));
    EXPECT_EQ(d(PartOfSpeech::V, {S::Ed}), (std::vector<std::vector<A>>{{A::PAST, A::WK}, {A::PPART, A::WK}}));
    EXPECT_EQ(d(PartOfSpeech::V, {S::Ing}), (std::vector<std::vector<A>>{{A::PROG}}));
    EXPECT_EQ(d(PartOfSpeech::A, {S::Er}), (std::vector<std::vector<A>>{{A::COMP}}));
    EXPECT_EQ(d(PartOfSpeech::A, {S::Est}), (std::vector<std::vector<A>>{{A::SUPER}}));
    EXPECT_TRUE(d(PartOfSpeech::A, {S::Ing}).empty());
}
