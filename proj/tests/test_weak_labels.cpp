#include <algorithm>
#include <set>
#include <sstream>

#include "abst/weak_labels.hpp"
#include "doctest.h"

using namespace abst;

static Concept uni(std::string w, std::uint64_t f = 0) {
    return Concept{{std::move(w)}, f};
}

TEST_CASE("suffix matching") {
    auto rules = training_suffix_rules();
    REQUIRE(rules.size() == 2);

    auto m1 = match_suffix("feminism", rules);
    REQUIRE(m1);
    CHECK(m1->suffix == "ism");

    auto m2 = match_suffix("agreeableness", rules);
    REQUIRE(m2);
    CHECK(m2->suffix == "ness");

    CHECK_FALSE(match_suffix("onion", rules));
    // stem too short: "ness" itself and minimal stems
    CHECK_FALSE(match_suffix("ness", rules));
    CHECK_FALSE(match_suffix("aness", rules));    // stem length 1
    CHECK_FALSE(match_suffix("abness", rules));   // needs len > 3 + 2
    CHECK(match_suffix("abcness", rules));
}

TEST_CASE("full suffix family covers the training rules") {
    auto fam = full_suffix_family();
    std::set<std::string> names;
    for (const auto& r : fam) names.insert(r.suffix);
    for (const char* s : {"ety", "ity", "ness", "ism", "ance", "ence",
                          "ation", "ution", "dom", "hood", "ship", "y"})
        CHECK(names.count(s));
}

TEST_CASE("build_positive_set") {
    std::map<Concept, std::uint64_t> freq = {
        {uni("feminism"), 50}, {uni("plywood"), 80},
        {uni("dryness"), 25}, {uni("xness"), 3}};
    std::vector<Concept> titles = {uni("feminism"), uni("plywood"),
                                   uni("dryness"), uni("xness")};
    auto pos = build_positive_set(titles, training_suffix_rules(), freq, 20);
    std::set<std::string> got;
    for (const auto& c : pos) got.insert(c.surface());
    CHECK(got == std::set<std::string>{"feminism", "dryness"});

    SUBCASE("all below min_freq errors") {
        std::map<Concept, std::uint64_t> low = {{uni("feminism"), 5}};
        CHECK_THROWS_AS(build_positive_set({uni("feminism")},
                                           training_suffix_rules(), low, 20),
                        std::runtime_error);
    }

    SUBCASE("bare suffix title excluded") {
        std::map<Concept, std::uint64_t> f2 = {{uni("ness"), 100}, {uni("feminism"), 100}};
        auto p = build_positive_set({uni("ness"), uni("feminism")},
                                    training_suffix_rules(), f2, 20);
        REQUIRE(p.size() == 1);
        CHECK(p[0].surface() == "feminism");
    }
}

TEST_CASE("build_negative_set") {
    std::vector<Concept> titles;
    std::map<Concept, std::uint64_t> freq;
    for (char c = 'a'; c <= 'z'; ++c) {
        Concept t = uni(std::string("word") + c);
        titles.push_back(t);
        freq[t] = 100;
    }
    std::vector<Concept> positives = {uni("feminism")};
    auto rules = full_suffix_family();

    auto n1 = build_negative_set(titles, positives, rules, freq, 10, 42);
    auto n2 = build_negative_set(titles, positives, rules, freq, 10, 42);
    CHECK(n1 == n2);   // deterministic per seed
    CHECK(n1.size() == 10);
    std::set<Concept> uniq(n1.begin(), n1.end());
    CHECK(uniq.size() == 10);   // without replacement

    // disjoint from positives and from suffix-family words
    std::vector<Concept> t2 = titles;
    t2.push_back(uni("feminism"));
    freq[uni("feminism")] = 100;
    t2.push_back(uni("happiness"));
    freq[uni("happiness")] = 100;
    // "wordy" matches the family rule -y, so 25 remain eligible
    auto n3 = build_negative_set(t2, positives, rules, freq, 25, 7);
    for (const auto& c : n3) {
        CHECK(c.surface() != "feminism");
        CHECK(c.surface() != "happiness");
    }

    CHECK_THROWS_WITH_AS(
        build_negative_set({titles[0], titles[1]}, positives, rules, freq, 10, 1),
        doctest::Contains("insufficient"), std::runtime_error);
}

TEST_CASE("assemble_training_corpus balances and masks") {
    WeakLabeledSet wls;
    wls.positives = {uni("feminism")};
    wls.negatives = {uni("plywood")};
    wls.seed = 1;

    auto line = [](const std::string& w, int i) {
        return "this sentence number " + std::to_string(i) +
               " mentions " + w + " among ten or more tokens total\n";
    };

    SUBCASE("cap enforced on abundant corpus") {
        std::string text;
        for (int i = 0; i < 30; ++i) text += line("feminism", i);
        for (int i = 0; i < 30; ++i) text += line("plywood", i);
        std::istringstream in(text);
        auto data = assemble_training_corpus(wls, in, 10, 1);
        CHECK(data.size() == 20);
        std::size_t abs_n = 0;
        for (const auto& ms : data) {
            REQUIRE(ms.label.has_value());
            if (*ms.label == Label::Abstract) ++abs_n;
            CHECK(std::count(ms.tokens.begin(), ms.tokens.end(),
                             std::string(kDefaultMaskToken)) == 1);
            CHECK(ms.tokens[ms.mask_position] == kDefaultMaskToken);
        }
        CHECK(abs_n == 10);
    }

    SUBCASE("scarce class truncates both to its size") {
        std::string text;
        for (int i = 0; i < 7; ++i) text += line("feminism", i);
        for (int i = 0; i < 100; ++i) text += line("plywood", i);
        std::istringstream in(text);
        auto data = assemble_training_corpus(wls, in, 50, 1);
        CHECK(data.size() == 14);
    }

    SUBCASE("empty class throws") {
        std::istringstream in(line("plywood", 0));
        CHECK_THROWS_AS(assemble_training_corpus(wls, in, 10, 1), std::runtime_error);
    }
}
