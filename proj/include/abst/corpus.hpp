#pragma once

#include <cstddef>
#include <functional>
#include <istream>
#include <map>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "abst/types.hpp"

namespace abst {

// Lowercases and splits on any character outside [a-z0-9']; leading and
// trailing apostrophes are trimmed. Hyphens split ("third-wave" -> third,
// wave). Empty fragments are dropped. Deterministic; idempotent on its
// own space-joined output.
std::vector<Token> tokenize(std::string_view text);

// A sentence emitted for a matched target concept.
struct ConceptMatch {
    Concept target;
    Sentence sentence;
    std::size_t span_start = 0;   // first occurrence of the concept
};

// Matches target concepts as contiguous token subsequences. Overlaps are
// resolved by a greedy left-to-right scan preferring the longest concept,
// so a trigram is never shadowed by its unigram constituents. A concept
// occurring twice in a sentence is reported once, at its first span.
class ConceptMatcher {
public:
    explicit ConceptMatcher(const std::vector<Concept>& targets);

    // (concept index into targets, span start) per matched concept.
    std::vector<std::pair<std::size_t, std::size_t>> find(
        const std::vector<Token>& tokens) const;

    const std::vector<Concept>& targets() const { return targets_; }

private:
    std::vector<Concept> targets_;
    // first word -> indices of targets starting with it, longest first
    std::unordered_map<std::string, std::vector<std::size_t>> by_first_;
};

struct ExtractStats {
    std::size_t lines_read = 0;
    std::size_t lines_skipped = 0;   // unreadable / out-of-length-range
    std::size_t emitted = 0;
};

// Streams `in` line by line (one sentence per line), keeps sentences whose
// token count lies in [min_len, max_len], and calls `sink` for every
// (concept, sentence) match. Bounded memory in corpus size.
ExtractStats extract_sentences(std::istream& in,
                               const ConceptMatcher& matcher,
                               const std::function<void(const ConceptMatch&)>& sink,
                               std::size_t min_len = 10,
                               std::size_t max_len = 70);

// Replaces tokens [span_start, span_start+span_len) with a single mask
// token. Throws std::out_of_range on a bad span.
MaskedSentence mask_concept(const Sentence& s, std::size_t span_start,
                            std::size_t span_len,
                            std::string_view mask = kDefaultMaskToken);

// Exact contiguous-subsequence occurrence counts over the tokenized
// corpus; overlapping occurrences all count ("a a" occurs twice in
// "a a a").
std::map<Concept, std::uint64_t> count_frequencies(
    std::istream& in, const std::vector<Concept>& concepts);

}  // namespace abst
