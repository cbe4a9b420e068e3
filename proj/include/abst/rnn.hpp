#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "abst/embeddings.hpp"
#include "abst/types.hpp"

namespace abst {

struct RnnConfig {
    int cell_width = 128;
    double keep_prob = 0.85;
    int attention_size = 100;
    int embed_dim = 300;
    double learning_rate = 1e-3;
    int epochs = 5;
    int batch_size = 64;
    std::uint64_t seed = 1;
    bool proximity_bias = true;   // additive attention bias over distance-to-mask buckets
    std::string mask_token = std::string(kDefaultMaskToken);
};

// Distance-to-mask buckets for the attention proximity bias:
// 0, 1, 2, 3-5, 6-10, >10.
inline constexpr int kProxBuckets = 6;
int prox_bucket(std::size_t pos, std::size_t mask_pos);

// Bidirectional single-layer LSTM + attention + logistic head. Parameters
// live in one flat double vector; `Layout` gives each tensor family's
// offset, which Adam, gradient checking and serialization all share.
struct RnnModel {
    struct Layout {
        std::size_t fw_W, fw_b;       // forward LSTM: 4H x (E+H), 4H
        std::size_t bw_W, bw_b;       // backward LSTM
        std::size_t att_W, att_b;     // A x 2H, A
        std::size_t att_v;            // A
        std::size_t prox;             // kProxBuckets
        std::size_t out_w, out_b;     // A, 1
        std::size_t unk, mask;        // E each: learned UNK / MASK inputs
        std::size_t total;
    };

    RnnConfig cfg;
    Layout layout;
    std::vector<double> params;

    static Layout make_layout(const RnnConfig& cfg);

    double* at(std::size_t off) { return params.data() + off; }
    const double* at(std::size_t off) const { return params.data() + off; }

    // (name, offset, size) per tensor family, in layout order.
    std::vector<std::tuple<std::string, std::size_t, std::size_t>> families() const;
};

// Zero-parameter model of the given shape (outputs exactly 0.5).
RnnModel make_rnn(const RnnConfig& cfg);

// Per-sentence abstractness probability in (0, 1). Inference is a pure
// function; dropout only applies inside training.
double forward(const RnnModel& m, const MaskedSentence& s, const EmbeddingTable& t);

// Attention weights of the last forward() run is not retained; this
// variant exposes them for inspection/tests.
double forward_with_attention(const RnnModel& m, const MaskedSentence& s,
                              const EmbeddingTable& t, std::vector<double>& attention_out);

struct TrainResult {
    RnnModel model;
    std::vector<double> epoch_loss;   // mean BCE per epoch
};

// Mini-batch Adam on binary cross-entropy; deterministic per cfg.seed
// (fixed shuffle order and dropout mask stream). Input embeddings stay
// frozen; UNK and MASK vectors are learned. Throws on single-class data
// or a non-finite loss.
TrainResult train_rnn(const RnnConfig& cfg, const std::vector<MaskedSentence>& data,
                      const EmbeddingTable& t);

// Central-difference check of the analytic gradient on a batch, with the
// dropout mask stream frozen across all evaluations. Samples at least
// n_coords coordinates covering every tensor family; returns the max
// relative error |ga-gn| / max(|ga|,|gn|,1e-8).
double grad_check(const RnnModel& m, const std::vector<MaskedSentence>& batch,
                  const EmbeddingTable& t, double epsilon = 1e-4,
                  std::size_t n_coords = 200, std::uint64_t seed = 7,
                  bool with_dropout = true);

// Mean of forward() over at most n sentences. Throws on empty input.
double score_concept_rnn(const RnnModel& m, const std::vector<MaskedSentence>& sentences,
                         const EmbeddingTable& t, std::size_t n = 500);

// Versioned binary checkpoint; load/save reproduces outputs bit-exactly.
void save_rnn(const RnnModel& m, const std::string& path);
RnnModel load_rnn(const std::string& path);

}  // namespace abst
