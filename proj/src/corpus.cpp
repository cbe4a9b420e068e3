#include "abst/corpus.hpp"

#include <algorithm>
#include <stdexcept>

namespace abst {

namespace {

bool keep_char(char c) {
    return (c >= 'a' && c <= 'z') || (c >= '0' && c <= '9') || c == '\'';
}

}  // namespace

std::vector<Token> tokenize(std::string_view text) {
    std::vector<Token> out;
    std::string cur;
    auto flush = [&] {
        // trim apostrophes at both ends
        std::size_t b = 0, e = cur.size();
        while (b < e && cur[b] == '\'') ++b;
        while (e > b && cur[e - 1] == '\'') --e;
        if (e > b) out.emplace_back(cur.substr(b, e - b));
        cur.clear();
    };
    for (char raw : text) {
        char c = raw;
        if (c >= 'A' && c <= 'Z') c = static_cast<char>(c - 'A' + 'a');
        if (keep_char(c))
            cur += c;
        else
            flush();
    }
    flush();
    return out;
}

ConceptMatcher::ConceptMatcher(const std::vector<Concept>& targets)
    : targets_(targets) {
    for (std::size_t i = 0; i < targets_.size(); ++i) {
        if (targets_[i].words.empty() || targets_[i].words.size() > 3)
            throw std::invalid_argument("ConceptMatcher: concept must have 1..3 words");
        by_first_[targets_[i].words.front()].push_back(i);
    }
    for (auto& [w, idxs] : by_first_) {
        std::sort(idxs.begin(), idxs.end(), [&](std::size_t a, std::size_t b) {
            if (targets_[a].words.size() != targets_[b].words.size())
                return targets_[a].words.size() > targets_[b].words.size();
            return targets_[a].words < targets_[b].words;
        });
    }
}

std::vector<std::pair<std::size_t, std::size_t>> ConceptMatcher::find(
    const std::vector<Token>& tokens) const {
    std::vector<std::pair<std::size_t, std::size_t>> found;
    std::vector<bool> seen(targets_.size(), false);
    std::size_t pos = 0;
    while (pos < tokens.size()) {
        auto it = by_first_.find(tokens[pos]);
        std::size_t advance = 1;
        if (it != by_first_.end()) {
            for (std::size_t idx : it->second) {   // longest candidates first
                const auto& words = targets_[idx].words;
                if (pos + words.size() > tokens.size()) continue;
                if (!std::equal(words.begin(), words.end(), tokens.begin() + pos))
                    continue;
                if (!seen[idx]) {
                    seen[idx] = true;
                    found.emplace_back(idx, pos);
                }
                advance = words.size();
                break;
            }
        }
        pos += advance;
    }
    return found;
}

ExtractStats extract_sentences(std::istream& in,
                               const ConceptMatcher& matcher,
                               const std::function<void(const ConceptMatch&)>& sink,
                               std::size_t min_len, std::size_t max_len) {
    ExtractStats stats;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        ++stats.lines_read;
        auto tokens = tokenize(line);
        if (tokens.size() < min_len || tokens.size() > max_len) {
            ++stats.lines_skipped;
            continue;
        }
        auto matches = matcher.find(tokens);
        if (matches.empty()) continue;
        Sentence sent{tokens, "line:" + std::to_string(line_no)};
        for (const auto& [idx, start] : matches) {
            sink(ConceptMatch{matcher.targets()[idx], sent, start});
            ++stats.emitted;
        }
    }
    return stats;
}

MaskedSentence mask_concept(const Sentence& s, std::size_t span_start,
                            std::size_t span_len, std::string_view mask) {
    if (span_len < 1 || span_len > 3)
        throw std::out_of_range("mask_concept: span length must be 1..3");
    if (span_start + span_len > s.tokens.size())
        throw std::out_of_range("mask_concept: span exceeds sentence bounds");
    MaskedSentence m;
    m.tokens.reserve(s.tokens.size() - span_len + 1);
    m.tokens.insert(m.tokens.end(), s.tokens.begin(),
                    s.tokens.begin() + static_cast<std::ptrdiff_t>(span_start));
    m.tokens.emplace_back(mask);
    m.tokens.insert(m.tokens.end(),
                    s.tokens.begin() + static_cast<std::ptrdiff_t>(span_start + span_len),
                    s.tokens.end());
    m.mask_position = span_start;
    return m;
}

std::map<Concept, std::uint64_t> count_frequencies(
    std::istream& in, const std::vector<Concept>& concepts) {
    std::map<Concept, std::uint64_t> counts;
    for (const auto& c : concepts) counts[c] = 0;

    std::unordered_map<std::string, std::vector<const Concept*>> by_first;
    for (const auto& c : concepts)
        if (!c.words.empty()) by_first[c.words.front()].push_back(&c);

    std::string line;
    while (std::getline(in, line)) {
        auto tokens = tokenize(line);
        for (std::size_t pos = 0; pos < tokens.size(); ++pos) {
            auto it = by_first.find(tokens[pos]);
            if (it == by_first.end()) continue;
            for (const Concept* c : it->second) {
                if (pos + c->words.size() > tokens.size()) continue;
                if (std::equal(c->words.begin(), c->words.end(),
                               tokens.begin() + static_cast<std::ptrdiff_t>(pos)))
                    ++counts[*c];
            }
        }
    }
    return counts;
}

}  // namespace abst
