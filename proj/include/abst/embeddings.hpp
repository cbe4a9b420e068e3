#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "abst/types.hpp"

namespace abst {

// Pretrained word vectors, immutable after load. Storage is float to keep
// million-row tables affordable; all arithmetic downstream is double.
class EmbeddingTable {
public:
    EmbeddingTable(std::size_t dim) : dim_(dim) {}

    std::size_t dim() const { return dim_; }
    std::size_t size() const { return index_.size(); }

    // First occurrence wins on duplicates.
    bool insert(const std::string& word, std::span<const float> vec);

    // Exact match after lowercasing the query; nullopt for OOV.
    std::optional<std::span<const float>> lookup(std::string_view word) const;

    bool contains(std::string_view word) const;

private:
    std::size_t dim_;
    std::unordered_map<std::string, std::size_t> index_;  // word -> row
    std::vector<float> data_;                             // rows of dim_
};

// Parses the whitespace-separated text vector format "word v1 ... vd",
// streaming line by line. A leading "<count> <dim>" header (word2vec text
// convention) is detected and skipped. Dimension is inferred from the
// first data line, or validated against expected_dim when given.
// Throws std::runtime_error naming the offending line on dimension
// mismatch or a non-numeric component.
EmbeddingTable load_embeddings(const std::string& path,
                               std::optional<std::size_t> expected_dim = {});

// Component-wise mean of the constituent vectors (double precision); the
// concept is excluded (nullopt) when any constituent is missing.
std::optional<std::vector<double>> compose_multiword(
    const EmbeddingTable& t, const std::vector<Token>& words);

// u.v / (|u||v|). Throws std::domain_error on zero-norm input.
double cosine(std::span<const double> u, std::span<const double> v);

}  // namespace abst
