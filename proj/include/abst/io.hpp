#pragma once

#include <cstdint>
#include <functional>
#include <istream>
#include <map>
#include <ostream>
#include <stdexcept>
#include <string>
#include <vector>

#include "abst/types.hpp"

namespace abst {

inline constexpr std::string_view kToolVersion = "0.1.0";

// Bad input or configuration; mapped to exit code 2 by the CLI.
struct InputError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::uint64_t fnv1a64(std::string_view s);

// "# abscore v<version> config_hash=<hex> seed=<n>" headers carried by
// every text artifact.
std::string artifact_header(std::uint64_t config_hash, std::uint64_t seed);
bool is_comment_line(std::string_view line);

// JSONL of labeled/unlabeled masked sentences:
// {"concept": "...", "tokens": [...], "mask_position": k, "label": ...}
void write_training_jsonl(std::ostream& out, const std::vector<MaskedSentence>& data,
                          const std::vector<std::string>& concepts,
                          std::uint64_t config_hash, std::uint64_t seed);
std::vector<MaskedSentence> read_training_jsonl(std::istream& in);

// TSV: concept<TAB>label<TAB>frequency
void write_weak_set_tsv(std::ostream& out, const std::vector<Concept>& positives,
                        const std::vector<Concept>& negatives,
                        std::uint64_t config_hash, std::uint64_t seed);
void read_weak_set_tsv(std::istream& in, std::vector<Concept>& positives,
                       std::vector<Concept>& negatives);

// Gold ratings TSV: concept<TAB>mean_rating. `higher_is_abstract` flips
// the sign when the source scale runs the other way.
std::map<std::string, double> read_gold_tsv(std::istream& in, bool higher_is_abstract);

// One concept per line, words space-separated; '#' lines skipped.
std::vector<Concept> read_concepts_file(std::istream& in);

// Runs fn(0..n-1) on `workers` threads (0 = hardware concurrency). Each
// index owns its output slot, so results are independent of the worker
// count.
void parallel_for(std::size_t n, int workers, const std::function<void(std::size_t)>& fn);

}  // namespace abst
