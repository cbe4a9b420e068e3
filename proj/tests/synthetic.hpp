#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

// Synthetic end-to-end fixture: a corpus of concepts with planted
// abstractness scores, score-dependent context-marker distributions, and
// two-cluster embeddings laid out on an arc so every classifier in the
// pipeline can in principle recover the planted ordering.
//
// Layout written under `dir`:
//   titles.txt    training titles (suffix-bearing positives + plain negatives)
//   concepts.txt  held-out evaluation concepts
//   corpus.txt    one sentence per line; 500 sentences per eval concept
//   vectors.txt   text-format embeddings, dim 16
//   gold.tsv      eval concept -> planted score
struct SynthFixture {
    std::string dir;
    std::size_t embed_dim = 16;
    std::size_t sentences_per_eval = 500;

    std::vector<std::string> train_positives;
    std::vector<std::string> train_negatives;
    std::vector<std::pair<std::string, double>> eval_concepts;  // name, planted s

    // 3-char endings planted on the highest-scoring eval concepts; only
    // "ism" (and "ness") participate in weak labeling
    std::vector<std::string> planted_suffixes;
};

SynthFixture make_synth_fixture(const std::string& dir, std::uint64_t seed);
