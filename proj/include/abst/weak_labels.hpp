#pragma once

#include <cstdint>
#include <istream>
#include <map>
#include <optional>
#include <set>
#include <vector>

#include "abst/corpus.hpp"
#include "abst/types.hpp"

namespace abst {

struct SuffixRule {
    std::string suffix;            // stored without the leading dash
    std::size_t min_stem_length = 2;

    // Proper suffix match: len(word) > len(suffix) + min_stem_length.
    bool matches(const Token& word) const;
};

// The two suffixes the training set is bootstrapped from.
std::vector<SuffixRule> training_suffix_rules();

// The full abstractness-suffix family, used by the strict negative filter.
std::vector<SuffixRule> full_suffix_family();

std::optional<SuffixRule> match_suffix(const Token& word,
                                       const std::vector<SuffixRule>& rules);

bool is_alphabetic(const Token& word);

struct WeakLabeledSet {
    std::vector<Concept> positives;   // suffix-matched, presumed abstract
    std::vector<Concept> negatives;   // complement-sampled, presumed concrete
    std::uint64_t seed = 0;
};

// Unigram titles that match a rule, are purely alphabetic, and clear the
// frequency threshold. Throws std::runtime_error when the result is empty
// (nothing to bootstrap from).
std::vector<Concept> build_positive_set(const std::vector<Concept>& titles,
                                        const std::vector<SuffixRule>& rules,
                                        const std::map<Concept, std::uint64_t>& freq,
                                        std::uint64_t min_freq = 20);

// n uniform without-replacement samples from the alphabetic, frequent
// unigram titles matching none of exclude_rules; deterministic per seed.
// Throws naming the available count when the complement is too small.
std::vector<Concept> build_negative_set(const std::vector<Concept>& titles,
                                        const std::vector<Concept>& positives,
                                        const std::vector<SuffixRule>& exclude_rules,
                                        const std::map<Concept, std::uint64_t>& freq,
                                        std::size_t n, std::uint64_t seed,
                                        std::uint64_t min_freq = 20);

// Extracts, masks and labels sentences for both classes, sampling up to
// per_class_cap per class (without replacement, seeded) and truncating to
// equal class sizes. Throws when either class has no sentences.
std::vector<MaskedSentence> assemble_training_corpus(
    const WeakLabeledSet& wls, std::istream& corpus, std::size_t per_class_cap,
    std::uint64_t seed, std::size_t min_len = 10, std::size_t max_len = 70,
    std::string_view mask = kDefaultMaskToken);

}  // namespace abst
