#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "abst/rnn.hpp"
#include "abst/types.hpp"

namespace abst {

// Everything a pipeline run needs, loadable from an INI-style config file
// ([section] + key=value) with CLI flag overrides on top. The canonical
// serialization is hashed into every artifact header so a run can be tied
// back to its exact configuration.
struct PipelineConfig {
    // paths
    std::string corpus_path;
    std::string titles_path;
    std::string embeddings_path;
    std::string gold_path;
    std::string output_dir = ".";

    // thresholds
    std::uint64_t min_freq_train = 20;
    std::uint64_t min_freq_eval = 500;
    std::size_t min_sentence_len = 10;
    std::size_t max_sentence_len = 70;
    std::size_t per_class_cap = 400000;
    std::size_t n_score = 500;

    // weak labels
    std::vector<std::string> suffixes = {"ism", "ness"};
    bool strict_negatives = false;   // exclude the full suffix family from negatives
    std::size_t min_stem_length = 2;

    // classifiers
    double alpha = 1.0;            // NB smoothing
    double radius = 0.25;          // NN-RAD
    std::string radius_mode = "distance";   // or "similarity"
    RnnConfig rnn;

    // run
    std::uint64_t seed = 42;
    int workers = 0;   // 0 = all cores; never affects outputs
    std::string mask_token = std::string(kDefaultMaskToken);
    bool gold_higher_is_abstract = true;

    static PipelineConfig from_file(const std::string& path);
    void apply_kv(const std::string& section, const std::string& key,
                  const std::string& value);

    std::string canonical() const;
    std::uint64_t hash() const;
};

// Pipeline stages behind the CLI subcommands. All throw InputError for
// bad inputs (exit 2) and std::runtime_error for computation failures
// (exit 1); progress goes to stderr.

struct BuildSummary {
    std::size_t positives = 0, negatives = 0;
    std::size_t sentences_per_class = 0;
    std::uint64_t seed = 0;
};
BuildSummary cmd_build_dataset(const PipelineConfig& cfg);

void cmd_train(const PipelineConfig& cfg, const std::string& model);

struct ScoreRow {
    std::string name;
    bool ok = false;
    double score = 0.0;
    std::string reason;        // oov | no_context | empty_neighborhood | below_min_freq
    std::size_t n_sentences = 0;
};
std::vector<ScoreRow> cmd_score(const PipelineConfig& cfg, const std::string& model,
                                const std::string& concepts_path,
                                const std::string& out_path,
                                const std::string& lexicon_path = "",
                                std::uint64_t min_freq = 0);

struct EvalReport {
    double pearson_r = 0.0;
    std::size_t n_used = 0;
    std::size_t n_excluded = 0;   // gold concepts without a usable score
};
EvalReport cmd_evaluate(const PipelineConfig& cfg, const std::string& scores_path,
                        const std::string& gold_path, const std::string& out_path);

void cmd_discover_suffixes(const PipelineConfig& cfg, const std::string& scores_path,
                           const std::string& out_path, double top_fraction = 0.18,
                           std::size_t suffix_len = 3);

void cmd_discover_markers(const PipelineConfig& cfg, const std::string& train_jsonl,
                          const std::string& out_path, std::uint64_t min_count = 5);

void cmd_sensitivity(const PipelineConfig& cfg, const std::string& model,
                     const std::string& concepts_path, const std::string& gold_path,
                     const std::string& out_path,
                     const std::vector<std::size_t>& counts = {1, 5, 10, 50, 100, 500},
                     std::size_t runs = 50);

// Helpers shared by commands and tests.
std::string nb_model_path(const PipelineConfig& cfg);
std::string rnn_model_path(const PipelineConfig& cfg);
std::string train_jsonl_path(const PipelineConfig& cfg);
std::string weak_set_path(const PipelineConfig& cfg);

// Streams the corpus once and reservoir-samples up to cap sentences per
// concept (deterministic per cfg.seed); also reports match counts.
std::vector<std::pair<Concept, std::vector<MaskedSentence>>> collect_concept_sentences(
    const PipelineConfig& cfg, const std::vector<Concept>& concepts, std::size_t cap,
    std::vector<std::uint64_t>* match_counts = nullptr);

}  // namespace abst
