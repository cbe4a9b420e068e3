#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "abst/types.hpp"

namespace abst {

struct ZResult {
    double z = 0.0;
    double p = 0.5;        // one-sided, upper tail
    double log10_p = 0.0;  // reported alongside p to survive underflow
};

// Pooled two-proportion z-test, one-sided for over-representation of the
// first sample. A degenerate pooled proportion (0 or 1) yields z = 0,
// p = 0.5: no evidence either way.
ZResult two_proportion_z(std::uint64_t k1, std::uint64_t n1,
                         std::uint64_t k2, std::uint64_t n2);

struct SuffixStat {
    std::string suffix;
    std::uint64_t count_population = 0;
    std::uint64_t count_background = 0;
    std::uint64_t n_population = 0;
    std::uint64_t n_background = 0;
    double z = 0.0;
    double p_value = 0.5;
    double log10_p = 0.0;
};

// Splits the scored unigrams into a top-fraction population (ties broken
// lexicographically) and a background, then z-tests every word ending of
// the given length that occurs in the data. Ranked by z descending.
// Requires at least 100 scored unigrams and top_fraction in (0, 1).
std::vector<SuffixStat> discover_suffixes(
    const std::map<std::string, double>& scored, double top_fraction = 0.18,
    std::size_t suffix_len = 3);

struct MarkerStat {
    Token token;
    std::uint64_t df_positive = 0;   // sentences containing the token
    std::uint64_t df_negative = 0;
    double z = 0.0;
    double p_value = 0.5;
};

// Per-token document-frequency contrast between positive and negative
// sentence sets; tokens under min_count total and the mask token are
// dropped. Ranked by z descending.
std::vector<MarkerStat> discover_markers(
    const std::vector<MaskedSentence>& pos_sentences,
    const std::vector<MaskedSentence>& neg_sentences,
    std::uint64_t min_count = 1,
    std::string_view mask = kDefaultMaskToken);

// Sample Pearson correlation. Throws std::runtime_error on length < 2,
// length mismatch, or a constant side.
double pearson(const std::vector<double>& xs, const std::vector<double>& ys);

// Cohen's kappa with quadratic weights on an integer scale
// [scale_min, scale_max]. Both raters constant and equal -> 1; constant
// but different -> 0 (degenerate).
double quadratic_weighted_kappa(const std::vector<int>& a, const std::vector<int>& b,
                                int scale_min = 1, int scale_max = 7);

struct SensitivityRow {
    std::size_t count = 0;
    double mean_r = 0.0;
    double std_r = 0.0;
};

// Scores a random c-subset of each concept's sentence pool and correlates
// with gold, repeated `runs` times per count. The scorer may return
// nullopt (excluded concept); such concepts are dropped pairwise. When c
// covers a pool entirely the sample is the whole pool, so the exhaustive
// count has zero variance across runs.
using ConceptScorer =
    std::function<std::optional<double>(const Concept&, const std::vector<MaskedSentence>&)>;

std::vector<SensitivityRow> sensitivity_curve(
    const ConceptScorer& scorer,
    const std::vector<std::pair<Concept, std::vector<MaskedSentence>>>& pools,
    const std::map<std::string, double>& gold,
    const std::vector<std::size_t>& counts = {1, 5, 10, 50, 100, 500},
    std::size_t runs = 50, std::uint64_t seed = 0);

}  // namespace abst
