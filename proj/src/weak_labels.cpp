#include "abst/weak_labels.hpp"

#include <algorithm>
#include <random>
#include <stdexcept>

namespace abst {

bool SuffixRule::matches(const Token& word) const {
    if (word.size() <= suffix.size() + min_stem_length) return false;
    return word.compare(word.size() - suffix.size(), suffix.size(), suffix) == 0;
}

std::vector<SuffixRule> training_suffix_rules() {
    return {{"ism"}, {"ness"}};
}

std::vector<SuffixRule> full_suffix_family() {
    return {{"ety"}, {"ity"}, {"ness"}, {"ism"}, {"ance"}, {"ence"},
            {"ation"}, {"ution"}, {"dom"}, {"hood"}, {"ship"}, {"y"}};
}

std::optional<SuffixRule> match_suffix(const Token& word,
                                       const std::vector<SuffixRule>& rules) {
    for (const auto& r : rules)
        if (r.matches(word)) return r;
    return std::nullopt;
}

bool is_alphabetic(const Token& word) {
    if (word.empty()) return false;
    for (char c : word)
        if (c < 'a' || c > 'z') return false;
    return true;
}

namespace {

std::uint64_t freq_of(const std::map<Concept, std::uint64_t>& freq, const Concept& c) {
    auto it = freq.find(c);
    return it == freq.end() ? c.frequency : it->second;
}

}  // namespace

std::vector<Concept> build_positive_set(const std::vector<Concept>& titles,
                                        const std::vector<SuffixRule>& rules,
                                        const std::map<Concept, std::uint64_t>& freq,
                                        std::uint64_t min_freq) {
    std::set<Concept> out;
    for (const auto& t : titles) {
        if (!t.is_unigram() || !is_alphabetic(t.words[0])) continue;
        if (!match_suffix(t.words[0], rules)) continue;
        if (freq_of(freq, t) < min_freq) continue;
        Concept c = t;
        c.frequency = freq_of(freq, t);
        out.insert(c);
    }
    if (out.empty())
        throw std::runtime_error(
            "build_positive_set: no title matched the suffix rules at the "
            "frequency threshold; cannot bootstrap");
    return {out.begin(), out.end()};
}

std::vector<Concept> build_negative_set(const std::vector<Concept>& titles,
                                        const std::vector<Concept>& positives,
                                        const std::vector<SuffixRule>& exclude_rules,
                                        const std::map<Concept, std::uint64_t>& freq,
                                        std::size_t n, std::uint64_t seed,
                                        std::uint64_t min_freq) {
    std::set<Concept> pos(positives.begin(), positives.end());
    std::set<Concept> pool_set;
    for (const auto& t : titles) {
        if (!t.is_unigram() || !is_alphabetic(t.words[0])) continue;
        if (match_suffix(t.words[0], exclude_rules)) continue;
        if (freq_of(freq, t) < min_freq) continue;
        Concept c = t;
        c.frequency = freq_of(freq, t);
        if (!pos.count(c)) pool_set.insert(c);
    }
    if (pool_set.size() < n)
        throw std::runtime_error("build_negative_set: insufficient complement: " +
                                 std::to_string(pool_set.size()) + " available, " +
                                 std::to_string(n) + " requested");
    // sorted pool + seeded partial Fisher-Yates = deterministic sample
    std::vector<Concept> pool(pool_set.begin(), pool_set.end());
    std::mt19937_64 rng(seed);
    for (std::size_t i = 0; i < n; ++i) {
        std::uniform_int_distribution<std::size_t> d(i, pool.size() - 1);
        std::swap(pool[i], pool[d(rng)]);
    }
    pool.resize(n);
    std::sort(pool.begin(), pool.end());
    return pool;
}

std::vector<MaskedSentence> assemble_training_corpus(
    const WeakLabeledSet& wls, std::istream& corpus, std::size_t per_class_cap,
    std::uint64_t seed, std::size_t min_len, std::size_t max_len,
    std::string_view mask) {
    std::vector<Concept> targets = wls.positives;
    targets.insert(targets.end(), wls.negatives.begin(), wls.negatives.end());
    std::set<Concept> pos(wls.positives.begin(), wls.positives.end());
    ConceptMatcher matcher(targets);

    std::vector<MaskedSentence> by_class[2];   // [0]=abstract, [1]=concrete
    extract_sentences(
        corpus, matcher,
        [&](const ConceptMatch& m) {
            Label l = pos.count(m.target) ? Label::Abstract : Label::Concrete;
            MaskedSentence ms =
                mask_concept(m.sentence, m.span_start, m.target.words.size(), mask);
            ms.label = l;
            by_class[l == Label::Abstract ? 0 : 1].push_back(std::move(ms));
        },
        min_len, max_len);

    for (int k = 0; k < 2; ++k)
        if (by_class[k].empty())
            throw std::runtime_error(std::string("assemble_training_corpus: no sentences for the ") +
                                     (k == 0 ? "abstract" : "concrete") + " class");

    std::mt19937_64 rng(seed);
    for (int k = 0; k < 2; ++k) {
        auto& v = by_class[k];
        if (v.size() > per_class_cap) {
            for (std::size_t i = 0; i < per_class_cap; ++i) {
                std::uniform_int_distribution<std::size_t> d(i, v.size() - 1);
                std::swap(v[i], v[d(rng)]);
            }
            v.resize(per_class_cap);
        }
    }
    const std::size_t take = std::min(by_class[0].size(), by_class[1].size());
    std::vector<MaskedSentence> out;
    out.reserve(2 * take);
    for (int k = 0; k < 2; ++k)
        out.insert(out.end(), by_class[k].begin(), by_class[k].begin() + static_cast<std::ptrdiff_t>(take));
    return out;
}

}  // namespace abst
