#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace abst {

// Lowercase, non-empty, whitespace-free by tokenizer contract.
using Token = std::string;

enum class Label : std::uint8_t { Abstract, Concrete };

inline const char* label_name(Label l) {
    return l == Label::Abstract ? "abstract" : "concrete";
}

// Default replacement for a masked concept. Deliberately outside the
// alphabetic vocabulary so it can never collide with a corpus token.
inline constexpr std::string_view kDefaultMaskToken = "⟪" "CONCEPT" "⟫";  // ⟪CONCEPT⟫

struct Sentence {
    std::vector<Token> tokens;
    std::string source_id;
};

// A scorable uni/bi/trigram expression.
struct Concept {
    std::vector<Token> words;   // 1..3 tokens
    std::uint64_t frequency = 0;

    std::string surface() const {
        std::string s;
        for (std::size_t i = 0; i < words.size(); ++i) {
            if (i) s += ' ';
            s += words[i];
        }
        return s;
    }

    bool is_unigram() const { return words.size() == 1; }

    bool operator==(const Concept& o) const { return words == o.words; }
    bool operator<(const Concept& o) const { return words < o.words; }
};

struct MaskedSentence {
    std::vector<Token> tokens;
    std::size_t mask_position = 0;
    std::optional<Label> label;
};

}  // namespace abst
