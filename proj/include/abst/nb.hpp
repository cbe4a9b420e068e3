#pragma once

#include <cstdint>
#include <string>
#include <unordered_map>
#include <vector>

#include "abst/types.hpp"

namespace abst {

// Multinomial Naive Bayes over bag-of-words features of masked sentences.
// Additive smoothing over vocab plus one reserved UNK bucket; the mask
// token never enters the feature set.
struct NBModel {
    std::unordered_map<Token, std::size_t> vocab;   // token -> column
    // index 0 = Abstract, 1 = Concrete
    double log_prior[2] = {0, 0};
    std::vector<double> log_likelihood[2];   // size vocab.size()+1; last = UNK
    double alpha = 1.0;
    std::string mask_token;

    double log_lik(int cls, const Token& w) const {
        auto it = vocab.find(w);
        std::size_t col = it == vocab.end() ? vocab.size() : it->second;
        return log_likelihood[cls][col];
    }
};

// Throws std::runtime_error when only one class is present or alpha <= 0.
NBModel train_nb(const std::vector<MaskedSentence>& data, double alpha = 1.0,
                 std::string_view mask = kDefaultMaskToken);

// P(Abstract | s), log-domain with a stable two-class normalization.
double score_sentence(const NBModel& m, const MaskedSentence& s);

// Mean of score_sentence over at most n sentences. Throws on empty input.
double score_concept_nb(const NBModel& m, const std::vector<MaskedSentence>& sentences,
                        std::size_t n = 500);

void save_nb(const NBModel& m, const std::string& path);
NBModel load_nb(const std::string& path);

}  // namespace abst
