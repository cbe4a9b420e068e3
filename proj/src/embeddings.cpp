#include "abst/embeddings.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <stdexcept>

#include "abst/kernels.hpp"

namespace abst {

namespace {

std::string lower(std::string_view s) {
    std::string out(s);
    for (char& c : out)
        if (c >= 'A' && c <= 'Z') c = static_cast<char>(c - 'A' + 'a');
    return out;
}

// Splits a line into whitespace-separated fields without copying.
std::vector<std::string_view> fields_of(std::string_view line) {
    std::vector<std::string_view> out;
    std::size_t i = 0;
    while (i < line.size()) {
        while (i < line.size() && (line[i] == ' ' || line[i] == '\t' || line[i] == '\r')) ++i;
        std::size_t b = i;
        while (i < line.size() && line[i] != ' ' && line[i] != '\t' && line[i] != '\r') ++i;
        if (i > b) out.push_back(line.substr(b, i - b));
    }
    return out;
}

bool parse_float(std::string_view s, float& out) {
    // from_chars<float> is available on this toolchain; fall back never needed
    auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
    return ec == std::errc{} && p == s.data() + s.size() && std::isfinite(out);
}

bool is_all_digits(std::string_view s) {
    if (s.empty()) return false;
    for (char c : s)
        if (c < '0' || c > '9') return false;
    return true;
}

}  // namespace

bool EmbeddingTable::insert(const std::string& word, std::span<const float> vec) {
    if (vec.size() != dim_)
        throw std::invalid_argument("EmbeddingTable::insert: wrong dimension");
    auto [it, fresh] = index_.try_emplace(word, index_.size());
    if (!fresh) return false;
    data_.insert(data_.end(), vec.begin(), vec.end());
    return true;
}

std::optional<std::span<const float>> EmbeddingTable::lookup(std::string_view word) const {
    auto it = index_.find(lower(word));
    if (it == index_.end()) return std::nullopt;
    return std::span<const float>(data_.data() + it->second * dim_, dim_);
}

bool EmbeddingTable::contains(std::string_view word) const {
    return index_.count(lower(word)) != 0;
}

EmbeddingTable load_embeddings(const std::string& path,
                               std::optional<std::size_t> expected_dim) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("load_embeddings: cannot open " + path);

    std::string line;
    std::size_t line_no = 0;
    std::optional<EmbeddingTable> table;
    std::vector<float> vec;

    while (std::getline(in, line)) {
        ++line_no;
        auto f = fields_of(line);
        if (f.empty()) continue;
        // word2vec text header: exactly two integer fields on line 1
        if (line_no == 1 && f.size() == 2 && is_all_digits(f[0]) && is_all_digits(f[1]))
            continue;
        if (f.size() < 2)
            throw std::runtime_error("load_embeddings: " + path + " line " +
                                     std::to_string(line_no) + ": no vector components");
        const std::size_t dim = f.size() - 1;
        if (!table) {
            if (expected_dim && dim != *expected_dim)
                throw std::runtime_error("load_embeddings: " + path + " line " +
                                         std::to_string(line_no) + ": dimension " +
                                         std::to_string(dim) + ", expected " +
                                         std::to_string(*expected_dim));
            table.emplace(dim);
        } else if (dim != table->dim()) {
            throw std::runtime_error("load_embeddings: " + path + " line " +
                                     std::to_string(line_no) + ": dimension " +
                                     std::to_string(dim) + ", expected " +
                                     std::to_string(table->dim()));
        }
        vec.clear();
        vec.reserve(dim);
        for (std::size_t i = 1; i < f.size(); ++i) {
            float v;
            if (!parse_float(f[i], v))
                throw std::runtime_error("load_embeddings: " + path + " line " +
                                         std::to_string(line_no) +
                                         ": non-numeric component '" + std::string(f[i]) + "'");
            vec.push_back(v);
        }
        table->insert(lower(f[0]), vec);
    }
    if (!table) throw std::runtime_error("load_embeddings: " + path + " contains no vectors");
    return std::move(*table);
}

std::optional<std::vector<double>> compose_multiword(
    const EmbeddingTable& t, const std::vector<Token>& words) {
    if (words.empty() || words.size() > 3)
        throw std::invalid_argument("compose_multiword: 1..3 words required");
    std::vector<double> acc(t.dim(), 0.0);
    for (const auto& w : words) {
        auto v = t.lookup(w);
        if (!v) return std::nullopt;
        for (std::size_t i = 0; i < t.dim(); ++i) acc[i] += (*v)[i];
    }
    // true division, not multiply-by-reciprocal: the mean of k identical
    // vectors must reproduce the vector bit-exactly
    const double k = static_cast<double>(words.size());
    for (double& x : acc) x /= k;
    return acc;
}

double cosine(std::span<const double> u, std::span<const double> v) {
    if (u.size() != v.size())
        throw std::invalid_argument("cosine: dimension mismatch");
    const double uu = kern::dot(u.data(), u.data(), u.size());
    const double vv = kern::dot(v.data(), v.data(), v.size());
    if (uu == 0.0 || vv == 0.0)
        throw std::domain_error("cosine: zero-norm vector");
    return kern::dot(u.data(), v.data(), u.size()) / (std::sqrt(uu) * std::sqrt(vv));
}

}  // namespace abst
