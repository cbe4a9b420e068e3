#include "abst/nb.hpp"

#include <cmath>
#include <fstream>
#include <stdexcept>

#include <json.hpp>

namespace abst {

NBModel train_nb(const std::vector<MaskedSentence>& data, double alpha,
                 std::string_view mask) {
    if (alpha <= 0) throw std::runtime_error("train_nb: alpha must be positive");

    NBModel m;
    m.alpha = alpha;
    m.mask_token = std::string(mask);

    std::size_t sent_count[2] = {0, 0};
    std::vector<std::uint64_t> counts[2];
    std::uint64_t total[2] = {0, 0};

    for (const auto& s : data) {
        if (!s.label) throw std::runtime_error("train_nb: unlabeled sentence");
        const int cls = *s.label == Label::Abstract ? 0 : 1;
        ++sent_count[cls];
        for (const auto& tok : s.tokens) {
            if (tok == m.mask_token) continue;
            auto [it, fresh] = m.vocab.try_emplace(tok, m.vocab.size());
            if (fresh) {
                counts[0].push_back(0);
                counts[1].push_back(0);
            }
            ++counts[cls][it->second];
            ++total[cls];
        }
    }
    if (sent_count[0] == 0 || sent_count[1] == 0)
        throw std::runtime_error("train_nb: both classes must be present");

    const double n = static_cast<double>(sent_count[0] + sent_count[1]);
    m.log_prior[0] = std::log(sent_count[0] / n);
    m.log_prior[1] = std::log(sent_count[1] / n);

    // smoothing spreads over vocab plus the UNK bucket
    const std::size_t v1 = m.vocab.size() + 1;
    for (int cls = 0; cls < 2; ++cls) {
        const double denom = static_cast<double>(total[cls]) + alpha * static_cast<double>(v1);
        m.log_likelihood[cls].resize(v1);
        for (std::size_t j = 0; j + 1 < v1; ++j)
            m.log_likelihood[cls][j] = std::log((counts[cls][j] + alpha) / denom);
        m.log_likelihood[cls][v1 - 1] = std::log(alpha / denom);   // UNK
    }
    return m;
}

double score_sentence(const NBModel& m, const MaskedSentence& s) {
    double joint[2] = {m.log_prior[0], m.log_prior[1]};
    for (const auto& tok : s.tokens) {
        if (tok == m.mask_token) continue;
        joint[0] += m.log_lik(0, tok);
        joint[1] += m.log_lik(1, tok);
    }
    // P(A|s) = 1 / (1 + exp(jC - jA)), stable for either sign
    const double d = joint[1] - joint[0];
    if (d >= 0) {
        const double e = std::exp(-d);
        return e / (1.0 + e);
    }
    return 1.0 / (1.0 + std::exp(d));
}

double score_concept_nb(const NBModel& m, const std::vector<MaskedSentence>& sentences,
                        std::size_t n) {
    if (sentences.empty())
        throw std::runtime_error("score_concept_nb: no context found");
    const std::size_t take = std::min(n, sentences.size());
    double acc = 0.0;
    for (std::size_t i = 0; i < take; ++i) acc += score_sentence(m, sentences[i]);
    return acc / static_cast<double>(take);
}

void save_nb(const NBModel& m, const std::string& path) {
    nlohmann::json j;
    j["format"] = "abscore-nb";
    j["version"] = 1;
    j["alpha"] = m.alpha;
    j["mask_token"] = m.mask_token;
    j["log_prior"] = {m.log_prior[0], m.log_prior[1]};
    std::vector<std::string> words(m.vocab.size());
    for (const auto& [w, idx] : m.vocab) words[idx] = w;
    j["vocab"] = words;
    j["log_likelihood_abstract"] = m.log_likelihood[0];
    j["log_likelihood_concrete"] = m.log_likelihood[1];
    std::ofstream out(path);
    if (!out) throw std::runtime_error("save_nb: cannot write " + path);
    out << j.dump();   // doubles serialized at full round-trip precision
}

NBModel load_nb(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("load_nb: cannot open " + path);
    nlohmann::json j;
    in >> j;
    if (j.value("format", "") != "abscore-nb")
        throw std::runtime_error("load_nb: " + path + " is not an NB model artifact");
    NBModel m;
    m.alpha = j.at("alpha").get<double>();
    m.mask_token = j.at("mask_token").get<std::string>();
    m.log_prior[0] = j.at("log_prior")[0].get<double>();
    m.log_prior[1] = j.at("log_prior")[1].get<double>();
    auto words = j.at("vocab").get<std::vector<std::string>>();
    for (std::size_t i = 0; i < words.size(); ++i) m.vocab.emplace(words[i], i);
    m.log_likelihood[0] = j.at("log_likelihood_abstract").get<std::vector<double>>();
    m.log_likelihood[1] = j.at("log_likelihood_concrete").get<std::vector<double>>();
    if (m.log_likelihood[0].size() != words.size() + 1 ||
        m.log_likelihood[1].size() != words.size() + 1)
        throw std::runtime_error("load_nb: " + path + " has inconsistent table sizes");
    return m;
}

}  // namespace abst
