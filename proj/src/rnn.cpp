#include "abst/rnn.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <fstream>
#include <random>
#include <stdexcept>

#include "abst/kernels.hpp"

namespace abst {

namespace {

double sigmoid(double x) {
    if (x >= 0) return 1.0 / (1.0 + std::exp(-x));
    const double e = std::exp(x);
    return e / (1.0 + e);
}

// log(1 + e^x) without overflow
double softplus(double x) {
    return std::max(x, 0.0) + std::log1p(std::exp(-std::abs(x)));
}

}  // namespace

int prox_bucket(std::size_t pos, std::size_t mask_pos) {
    const std::size_t d = pos > mask_pos ? pos - mask_pos : mask_pos - pos;
    if (d == 0) return 0;
    if (d == 1) return 1;
    if (d == 2) return 2;
    if (d <= 5) return 3;
    if (d <= 10) return 4;
    return 5;
}

RnnModel::Layout RnnModel::make_layout(const RnnConfig& cfg) {
    const std::size_t H = static_cast<std::size_t>(cfg.cell_width);
    const std::size_t E = static_cast<std::size_t>(cfg.embed_dim);
    const std::size_t A = static_cast<std::size_t>(cfg.attention_size);
    Layout l{};
    std::size_t off = 0;
    auto place = [&](std::size_t n) {
        std::size_t here = off;
        off += n;
        return here;
    };
    l.fw_W = place(4 * H * (E + H));
    l.fw_b = place(4 * H);
    l.bw_W = place(4 * H * (E + H));
    l.bw_b = place(4 * H);
    l.att_W = place(A * 2 * H);
    l.att_b = place(A);
    l.att_v = place(A);
    l.prox = place(kProxBuckets);
    l.out_w = place(A);
    l.out_b = place(1);
    l.unk = place(E);
    l.mask = place(E);
    l.total = off;
    return l;
}

std::vector<std::tuple<std::string, std::size_t, std::size_t>> RnnModel::families() const {
    const auto& l = layout;
    return {
        {"fw_W", l.fw_W, l.fw_b - l.fw_W},   {"fw_b", l.fw_b, l.bw_W - l.fw_b},
        {"bw_W", l.bw_W, l.bw_b - l.bw_W},   {"bw_b", l.bw_b, l.att_W - l.bw_b},
        {"att_W", l.att_W, l.att_b - l.att_W}, {"att_b", l.att_b, l.att_v - l.att_b},
        {"att_v", l.att_v, l.prox - l.att_v},  {"prox", l.prox, l.out_w - l.prox},
        {"out_w", l.out_w, l.out_b - l.out_w}, {"out_b", l.out_b, 1},
        {"unk", l.unk, l.mask - l.unk},        {"mask", l.mask, l.total - l.mask},
    };
}

RnnModel make_rnn(const RnnConfig& cfg) {
    if (cfg.cell_width <= 0 || cfg.attention_size <= 0 || cfg.embed_dim <= 0 ||
        cfg.keep_prob <= 0.0 || cfg.keep_prob > 1.0)
        throw std::invalid_argument("make_rnn: invalid configuration");
    RnnModel m;
    m.cfg = cfg;
    m.layout = RnnModel::make_layout(cfg);
    m.params.assign(m.layout.total, 0.0);
    return m;
}

namespace {

struct DirCache {
    // gate activations and states per position, each T*H
    std::vector<double> i, f, g, o, c, tc, h;
    void resize(std::size_t n) {
        i.assign(n, 0);
        f.assign(n, 0);
        g.assign(n, 0);
        o.assign(n, 0);
        c.assign(n, 0);
        tc.assign(n, 0);
        h.assign(n, 0);
    }
};

struct Cache {
    std::size_t T = 0;
    std::vector<double> x;    // T*E embedded inputs
    std::vector<int> xkind;   // 0 frozen table vector, 1 UNK, 2 MASK
    DirCache fw, bw;
    std::vector<double> s;       // T*2H concatenated states
    std::vector<double> sd;      // after dropout
    std::vector<double> a;       // T*A attention pre-activation
    std::vector<double> u;       // T*A tanh(a)
    std::vector<double> e;       // T scores
    std::vector<double> alpha;   // T softmax weights
    std::vector<double> ctx;     // A pooled summary
    double logit = 0, p = 0.5;
};

void embed_tokens(const RnnModel& m, const MaskedSentence& sent,
                  const EmbeddingTable& t, Cache& c) {
    const std::size_t E = static_cast<std::size_t>(m.cfg.embed_dim);
    if (t.dim() != E)
        throw std::invalid_argument("rnn: embedding table dim != cfg.embed_dim");
    c.T = sent.tokens.size();
    if (c.T == 0) throw std::invalid_argument("rnn: empty sentence");
    c.x.assign(c.T * E, 0.0);
    c.xkind.assign(c.T, 0);
    for (std::size_t i = 0; i < c.T; ++i) {
        double* dst = c.x.data() + i * E;
        if (sent.tokens[i] == m.cfg.mask_token) {
            std::memcpy(dst, m.at(m.layout.mask), E * sizeof(double));
            c.xkind[i] = 2;
            continue;
        }
        if (auto v = t.lookup(sent.tokens[i])) {
            for (std::size_t j = 0; j < E; ++j) dst[j] = (*v)[j];
        } else {
            std::memcpy(dst, m.at(m.layout.unk), E * sizeof(double));
            c.xkind[i] = 1;
        }
    }
}

// One LSTM direction. Positions are visited in `order`; h/c state chains
// along that order but results are stored at the true position index.
void run_lstm(const RnnModel& m, const Cache& c, const double* W, const double* b,
              const std::vector<std::size_t>& order, DirCache& dir) {
    const std::size_t H = static_cast<std::size_t>(m.cfg.cell_width);
    const std::size_t E = static_cast<std::size_t>(m.cfg.embed_dim);
    dir.resize(c.T * H);
    std::vector<double> cat(E + H, 0.0);
    std::vector<double> z(4 * H);
    std::vector<double> h_prev(H, 0.0), c_prev(H, 0.0);
    for (std::size_t step = 0; step < order.size(); ++step) {
        const std::size_t t = order[step];
        std::memcpy(cat.data(), c.x.data() + t * E, E * sizeof(double));
        std::memcpy(cat.data() + E, h_prev.data(), H * sizeof(double));
        kern::matvec(W, cat.data(), z.data(), 4 * H, E + H);
        for (std::size_t j = 0; j < H; ++j) {
            const double zi = z[j] + b[j];
            const double zf = z[H + j] + b[H + j];
            const double zg = z[2 * H + j] + b[2 * H + j];
            const double zo = z[3 * H + j] + b[3 * H + j];
            const double iv = sigmoid(zi);
            const double fv = sigmoid(zf);
            const double gv = std::tanh(zg);
            const double ov = sigmoid(zo);
            const double cv = fv * c_prev[j] + iv * gv;
            const double tcv = std::tanh(cv);
            const double hv = ov * tcv;
            dir.i[t * H + j] = iv;
            dir.f[t * H + j] = fv;
            dir.g[t * H + j] = gv;
            dir.o[t * H + j] = ov;
            dir.c[t * H + j] = cv;
            dir.tc[t * H + j] = tcv;
            dir.h[t * H + j] = hv;
            h_prev[j] = hv;
            c_prev[j] = cv;
        }
    }
}

// dropout == nullptr means inference (no dropout). A dropout vector holds
// T*2H multipliers from {0, 1/keep_prob} (inverted dropout).
void run_forward(const RnnModel& m, const MaskedSentence& sent, const EmbeddingTable& t,
                 const std::vector<double>* dropout, Cache& c) {
    const std::size_t H = static_cast<std::size_t>(m.cfg.cell_width);
    const std::size_t A = static_cast<std::size_t>(m.cfg.attention_size);
    embed_tokens(m, sent, t, c);
    const std::size_t T = c.T;

    std::vector<std::size_t> order(T);
    for (std::size_t i = 0; i < T; ++i) order[i] = i;
    run_lstm(m, c, m.at(m.layout.fw_W), m.at(m.layout.fw_b), order, c.fw);
    std::reverse(order.begin(), order.end());
    run_lstm(m, c, m.at(m.layout.bw_W), m.at(m.layout.bw_b), order, c.bw);

    c.s.resize(T * 2 * H);
    for (std::size_t t2 = 0; t2 < T; ++t2) {
        std::memcpy(c.s.data() + t2 * 2 * H, c.fw.h.data() + t2 * H, H * sizeof(double));
        std::memcpy(c.s.data() + t2 * 2 * H + H, c.bw.h.data() + t2 * H, H * sizeof(double));
    }
    if (dropout) {
        if (dropout->size() != c.s.size())
            throw std::invalid_argument("rnn: dropout mask size mismatch");
        c.sd.resize(c.s.size());
        for (std::size_t i = 0; i < c.s.size(); ++i) c.sd[i] = c.s[i] * (*dropout)[i];
    } else {
        c.sd = c.s;
    }

    const double* att_W = m.at(m.layout.att_W);
    const double* att_b = m.at(m.layout.att_b);
    const double* att_v = m.at(m.layout.att_v);
    const double* prox = m.at(m.layout.prox);
    c.a.resize(T * A);
    c.u.resize(T * A);
    c.e.resize(T);
    for (std::size_t t2 = 0; t2 < T; ++t2) {
        double* at = c.a.data() + t2 * A;
        kern::matvec(att_W, c.sd.data() + t2 * 2 * H, at, A, 2 * H);
        double* ut = c.u.data() + t2 * A;
        for (std::size_t j = 0; j < A; ++j) ut[j] = std::tanh(at[j] + att_b[j]);
        double score = kern::dot(att_v, ut, A);
        if (m.cfg.proximity_bias)
            score += prox[prox_bucket(t2, sent.mask_position)];
        c.e[t2] = score;
    }
    // softmax over positions
    c.alpha.resize(T);
    const double emax = *std::max_element(c.e.begin(), c.e.end());
    double esum = 0;
    for (std::size_t t2 = 0; t2 < T; ++t2) {
        c.alpha[t2] = std::exp(c.e[t2] - emax);
        esum += c.alpha[t2];
    }
    for (std::size_t t2 = 0; t2 < T; ++t2) c.alpha[t2] /= esum;

    c.ctx.assign(A, 0.0);
    for (std::size_t t2 = 0; t2 < T; ++t2)
        kern::axpy(c.alpha[t2], c.u.data() + t2 * A, c.ctx.data(), A);

    c.logit = kern::dot(m.at(m.layout.out_w), c.ctx.data(), A) + *m.at(m.layout.out_b);
    c.p = sigmoid(c.logit);
}

// Accumulates d(loss)/d(params) into grad for one sentence; returns the
// BCE loss. Mirrors run_forward step by step in reverse.
double run_backward(const RnnModel& m, const MaskedSentence& sent, const Cache& c,
                    const std::vector<double>* dropout, double y,
                    std::vector<double>& grad) {
    const std::size_t H = static_cast<std::size_t>(m.cfg.cell_width);
    const std::size_t E = static_cast<std::size_t>(m.cfg.embed_dim);
    const std::size_t A = static_cast<std::size_t>(m.cfg.attention_size);
    const std::size_t T = c.T;
    const auto& l = m.layout;

    const double loss = softplus(c.logit) - y * c.logit;
    const double dlogit = c.p - y;

    // head
    kern::axpy(dlogit, c.ctx.data(), grad.data() + l.out_w, A);
    grad[l.out_b] += dlogit;
    std::vector<double> dctx(A);
    for (std::size_t j = 0; j < A; ++j) dctx[j] = dlogit * m.at(l.out_w)[j];

    // attention pooling + softmax
    std::vector<double> dalpha(T), du(T * A, 0.0), de(T);
    for (std::size_t t2 = 0; t2 < T; ++t2) {
        dalpha[t2] = kern::dot(dctx.data(), c.u.data() + t2 * A, A);
        kern::axpy(c.alpha[t2], dctx.data(), du.data() + t2 * A, A);
    }
    double dot_ad = 0;
    for (std::size_t t2 = 0; t2 < T; ++t2) dot_ad += c.alpha[t2] * dalpha[t2];
    for (std::size_t t2 = 0; t2 < T; ++t2) de[t2] = c.alpha[t2] * (dalpha[t2] - dot_ad);

    // scores: e_t = att_v . u_t (+ prox bucket bias)
    const double* att_v = m.at(l.att_v);
    for (std::size_t t2 = 0; t2 < T; ++t2) {
        kern::axpy(de[t2], c.u.data() + t2 * A, grad.data() + l.att_v, A);
        kern::axpy(de[t2], att_v, du.data() + t2 * A, A);
        if (m.cfg.proximity_bias)
            grad[l.prox + static_cast<std::size_t>(prox_bucket(t2, sent.mask_position))] += de[t2];
    }

    // projection: u = tanh(att_W sd + att_b)
    const double* att_W = m.at(l.att_W);
    std::vector<double> dsd(T * 2 * H, 0.0);
    for (std::size_t t2 = 0; t2 < T; ++t2) {
        for (std::size_t j = 0; j < A; ++j) {
            const double uj = c.u[t2 * A + j];
            const double da = du[t2 * A + j] * (1.0 - uj * uj);
            grad[l.att_b + j] += da;
            kern::axpy(da, c.sd.data() + t2 * 2 * H, grad.data() + l.att_W + j * 2 * H, 2 * H);
            kern::axpy(da, att_W + j * 2 * H, dsd.data() + t2 * 2 * H, 2 * H);
        }
    }

    // dropout
    std::vector<double> ds(T * 2 * H);
    if (dropout) {
        for (std::size_t i = 0; i < ds.size(); ++i) ds[i] = dsd[i] * (*dropout)[i];
    } else {
        ds = dsd;
    }

    // BPTT per direction
    std::vector<double> dx(T * E, 0.0);
    auto bptt = [&](const DirCache& dir, const double* W, std::size_t gW, std::size_t gb,
                    const std::vector<std::size_t>& order, std::size_t h_off) {
        std::vector<double> dh_rec(H, 0.0), dc_rec(H, 0.0);
        std::vector<double> dz(4 * H), cat(E + H), dcat(E + H);
        for (std::size_t step = order.size(); step-- > 0;) {
            const std::size_t t2 = order[step];
            const double* cprev =
                step == 0 ? nullptr : dir.c.data() + order[step - 1] * H;
            const double* hprev =
                step == 0 ? nullptr : dir.h.data() + order[step - 1] * H;
            for (std::size_t j = 0; j < H; ++j) {
                const std::size_t k = t2 * H + j;
                const double dh = ds[t2 * 2 * H + h_off + j] + dh_rec[j];
                const double tc = dir.tc[k];
                const double ov = dir.o[k];
                double dc = dc_rec[j] + dh * ov * (1.0 - tc * tc);
                const double iv = dir.i[k], fv = dir.f[k], gv = dir.g[k];
                const double cp = cprev ? cprev[j] : 0.0;
                dz[j] = dc * gv * iv * (1.0 - iv);                    // input gate
                dz[H + j] = dc * cp * fv * (1.0 - fv);                // forget gate
                dz[2 * H + j] = dc * iv * (1.0 - gv * gv);            // candidate
                dz[3 * H + j] = dh * tc * ov * (1.0 - ov);            // output gate
                dc_rec[j] = dc * fv;
            }
            std::memcpy(cat.data(), c.x.data() + t2 * E, E * sizeof(double));
            if (hprev)
                std::memcpy(cat.data() + E, hprev, H * sizeof(double));
            else
                std::memset(cat.data() + E, 0, H * sizeof(double));
            std::fill(dcat.begin(), dcat.end(), 0.0);
            for (std::size_t r = 0; r < 4 * H; ++r) {
                grad[gb + r] += dz[r];
                kern::axpy(dz[r], cat.data(), grad.data() + gW + r * (E + H), E + H);
                kern::axpy(dz[r], W + r * (E + H), dcat.data(), E + H);
            }
            kern::axpy(1.0, dcat.data(), dx.data() + t2 * E, E);
            std::memcpy(dh_rec.data(), dcat.data() + E, H * sizeof(double));
        }
    };

    std::vector<std::size_t> order(T);
    for (std::size_t i = 0; i < T; ++i) order[i] = i;
    bptt(c.fw, m.at(l.fw_W), l.fw_W, l.fw_b, order, 0);
    std::reverse(order.begin(), order.end());
    bptt(c.bw, m.at(l.bw_W), l.bw_W, l.bw_b, order, H);

    // only the learned input vectors receive embedding gradients
    for (std::size_t t2 = 0; t2 < T; ++t2) {
        if (c.xkind[t2] == 1)
            kern::axpy(1.0, dx.data() + t2 * E, grad.data() + l.unk, E);
        else if (c.xkind[t2] == 2)
            kern::axpy(1.0, dx.data() + t2 * E, grad.data() + l.mask, E);
    }
    return loss;
}

std::vector<double> make_dropout_mask(std::size_t n, double keep, std::mt19937_64& rng) {
    std::vector<double> mask(n, 1.0);
    if (keep >= 1.0) return mask;
    std::bernoulli_distribution drop(1.0 - keep);
    const double inv = 1.0 / keep;
    for (double& v : mask) v = drop(rng) ? 0.0 : inv;
    return mask;
}

}  // namespace

double forward(const RnnModel& m, const MaskedSentence& s, const EmbeddingTable& t) {
    Cache c;
    run_forward(m, s, t, nullptr, c);
    return c.p;
}

double forward_with_attention(const RnnModel& m, const MaskedSentence& s,
                              const EmbeddingTable& t, std::vector<double>& attention_out) {
    Cache c;
    run_forward(m, s, t, nullptr, c);
    attention_out = c.alpha;
    return c.p;
}

TrainResult train_rnn(const RnnConfig& cfg, const std::vector<MaskedSentence>& data,
                      const EmbeddingTable& t) {
    bool has[2] = {false, false};
    for (const auto& s : data) {
        if (!s.label) throw std::runtime_error("train_rnn: unlabeled sentence");
        has[*s.label == Label::Abstract ? 0 : 1] = true;
    }
    if (!has[0] || !has[1])
        throw std::runtime_error("train_rnn: both classes must be present");
    if (cfg.batch_size <= 0 || cfg.epochs < 0)
        throw std::invalid_argument("train_rnn: invalid batch size / epochs");

    RnnModel m = make_rnn(cfg);
    std::mt19937_64 init_rng(cfg.seed);
    std::uniform_real_distribution<double> init(-0.08, 0.08);
    for (double& p : m.params) p = init(init_rng);

    std::mt19937_64 shuffle_rng(cfg.seed + 0x9e3779b97f4a7c15ULL);
    std::mt19937_64 dropout_rng(cfg.seed + 0x6a09e667f3bcc909ULL);

    std::vector<double> grad(m.layout.total), adam_m(m.layout.total, 0.0),
        adam_v(m.layout.total, 0.0);
    const double b1 = 0.9, b2 = 0.999, eps = 1e-8;
    std::size_t step = 0;

    std::vector<std::size_t> idx(data.size());
    for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = i;

    TrainResult result{std::move(m), {}};
    RnnModel& model = result.model;
    const std::size_t H = static_cast<std::size_t>(cfg.cell_width);

    Cache cache;
    for (int epoch = 0; epoch < cfg.epochs; ++epoch) {
        std::shuffle(idx.begin(), idx.end(), shuffle_rng);
        double epoch_loss = 0;
        for (std::size_t b = 0; b < idx.size(); b += static_cast<std::size_t>(cfg.batch_size)) {
            const std::size_t nb = std::min(idx.size() - b,
                                            static_cast<std::size_t>(cfg.batch_size));
            std::fill(grad.begin(), grad.end(), 0.0);
            double batch_loss = 0;
            for (std::size_t i = 0; i < nb; ++i) {
                const MaskedSentence& s = data[idx[b + i]];
                auto mask = make_dropout_mask(s.tokens.size() * 2 * H, cfg.keep_prob,
                                              dropout_rng);
                run_forward(model, s, t, &mask, cache);
                const double y = *s.label == Label::Abstract ? 1.0 : 0.0;
                batch_loss += run_backward(model, s, cache, &mask, y, grad);
            }
            const double inv_nb = 1.0 / static_cast<double>(nb);
            kern::scale(inv_nb, grad.data(), grad.size());
            batch_loss *= inv_nb;
            epoch_loss += batch_loss * static_cast<double>(nb);
            if (!std::isfinite(batch_loss))
                throw std::runtime_error(
                    "train_rnn: non-finite loss at epoch " + std::to_string(epoch) +
                    "; try a smaller learning rate (current " +
                    std::to_string(cfg.learning_rate) + ")");
            ++step;
            const double corr1 = 1.0 - std::pow(b1, static_cast<double>(step));
            const double corr2 = 1.0 - std::pow(b2, static_cast<double>(step));
            for (std::size_t j = 0; j < grad.size(); ++j) {
                adam_m[j] = b1 * adam_m[j] + (1 - b1) * grad[j];
                adam_v[j] = b2 * adam_v[j] + (1 - b2) * grad[j] * grad[j];
                model.params[j] -= cfg.learning_rate * (adam_m[j] / corr1) /
                                   (std::sqrt(adam_v[j] / corr2) + eps);
            }
        }
        result.epoch_loss.push_back(epoch_loss / static_cast<double>(data.size()));
    }
    return result;
}

double grad_check(const RnnModel& m, const std::vector<MaskedSentence>& batch,
                  const EmbeddingTable& t, double epsilon, std::size_t n_coords,
                  std::uint64_t seed, bool with_dropout) {
    if (batch.empty()) throw std::invalid_argument("grad_check: empty batch");
    const std::size_t H = static_cast<std::size_t>(m.cfg.cell_width);

    // one frozen dropout mask per sentence, reused by every evaluation
    std::mt19937_64 mask_rng(seed);
    std::vector<std::vector<double>> masks;
    for (const auto& s : batch)
        masks.push_back(with_dropout
                            ? make_dropout_mask(s.tokens.size() * 2 * H, m.cfg.keep_prob, mask_rng)
                            : std::vector<double>(s.tokens.size() * 2 * H, 1.0));

    RnnModel work = m;
    auto mean_loss = [&]() {
        Cache c;
        double acc = 0;
        for (std::size_t i = 0; i < batch.size(); ++i) {
            run_forward(work, batch[i], t, &masks[i], c);
            const double y = *batch[i].label == Label::Abstract ? 1.0 : 0.0;
            acc += softplus(c.logit) - y * c.logit;
        }
        return acc / static_cast<double>(batch.size());
    };

    std::vector<double> grad(work.layout.total, 0.0);
    {
        Cache c;
        for (std::size_t i = 0; i < batch.size(); ++i) {
            run_forward(work, batch[i], t, &masks[i], c);
            const double y = *batch[i].label == Label::Abstract ? 1.0 : 0.0;
            run_backward(work, batch[i], c, &masks[i], y, grad);
        }
        kern::scale(1.0 / static_cast<double>(batch.size()), grad.data(), grad.size());
    }

    // coordinates: spread across families, at least a few from each
    std::mt19937_64 coord_rng(seed ^ 0xdeadbeefULL);
    std::vector<std::size_t> coords;
    const auto fams = work.families();
    const std::size_t per_family =
        std::max<std::size_t>(3, (n_coords + fams.size() - 1) / fams.size());
    for (const auto& [name, off, size] : fams) {
        std::uniform_int_distribution<std::size_t> d(0, size - 1);
        for (std::size_t i = 0; i < std::min(per_family, size); ++i)
            coords.push_back(off + d(coord_rng));
    }
    std::uniform_int_distribution<std::size_t> any(0, work.layout.total - 1);
    while (coords.size() < n_coords) coords.push_back(any(coord_rng));

    double max_rel = 0;
    for (std::size_t c : coords) {
        const double save = work.params[c];
        work.params[c] = save + epsilon;
        const double lp = mean_loss();
        work.params[c] = save - epsilon;
        const double lm = mean_loss();
        work.params[c] = save;
        const double gn = (lp - lm) / (2 * epsilon);
        const double ga = grad[c];
        const double rel = std::abs(ga - gn) / std::max({std::abs(ga), std::abs(gn), 1e-8});
        max_rel = std::max(max_rel, rel);
    }
    return max_rel;
}

double score_concept_rnn(const RnnModel& m, const std::vector<MaskedSentence>& sentences,
                         const EmbeddingTable& t, std::size_t n) {
    if (sentences.empty())
        throw std::runtime_error("score_concept_rnn: no context found");
    const std::size_t take = std::min(n, sentences.size());
    double acc = 0;
    for (std::size_t i = 0; i < take; ++i) acc += forward(m, sentences[i], t);
    return acc / static_cast<double>(take);
}

namespace {
constexpr char kRnnMagic[8] = {'A', 'B', 'S', 'R', 'N', 'N', '0', '1'};

template <typename T>
void put(std::ostream& out, const T& v) {
    out.write(reinterpret_cast<const char*>(&v), sizeof(T));
}
template <typename T>
void get(std::istream& in, T& v) {
    in.read(reinterpret_cast<char*>(&v), sizeof(T));
}
}  // namespace

void save_rnn(const RnnModel& m, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("save_rnn: cannot write " + path);
    out.write(kRnnMagic, sizeof(kRnnMagic));
    put(out, static_cast<std::int32_t>(m.cfg.cell_width));
    put(out, m.cfg.keep_prob);
    put(out, static_cast<std::int32_t>(m.cfg.attention_size));
    put(out, static_cast<std::int32_t>(m.cfg.embed_dim));
    put(out, m.cfg.learning_rate);
    put(out, static_cast<std::int32_t>(m.cfg.epochs));
    put(out, static_cast<std::int32_t>(m.cfg.batch_size));
    put(out, m.cfg.seed);
    put(out, static_cast<std::uint8_t>(m.cfg.proximity_bias ? 1 : 0));
    put(out, static_cast<std::uint32_t>(m.cfg.mask_token.size()));
    out.write(m.cfg.mask_token.data(),
              static_cast<std::streamsize>(m.cfg.mask_token.size()));
    put(out, static_cast<std::uint64_t>(m.params.size()));
    out.write(reinterpret_cast<const char*>(m.params.data()),
              static_cast<std::streamsize>(m.params.size() * sizeof(double)));
    if (!out) throw std::runtime_error("save_rnn: write failed for " + path);
}

RnnModel load_rnn(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("load_rnn: cannot open " + path);
    char magic[8];
    in.read(magic, sizeof(magic));
    if (!in || std::memcmp(magic, kRnnMagic, sizeof(magic)) != 0)
        throw std::runtime_error("load_rnn: " + path + " is not an RNN checkpoint");
    RnnConfig cfg;
    std::int32_t i32;
    std::uint8_t u8;
    get(in, i32);
    cfg.cell_width = i32;
    get(in, cfg.keep_prob);
    get(in, i32);
    cfg.attention_size = i32;
    get(in, i32);
    cfg.embed_dim = i32;
    get(in, cfg.learning_rate);
    get(in, i32);
    cfg.epochs = i32;
    get(in, i32);
    cfg.batch_size = i32;
    get(in, cfg.seed);
    get(in, u8);
    cfg.proximity_bias = u8 != 0;
    std::uint32_t mlen;
    get(in, mlen);
    cfg.mask_token.resize(mlen);
    in.read(cfg.mask_token.data(), mlen);
    RnnModel m = make_rnn(cfg);
    std::uint64_t n;
    get(in, n);
    if (n != m.params.size())
        throw std::runtime_error("load_rnn: " + path + " has inconsistent parameter count");
    in.read(reinterpret_cast<char*>(m.params.data()),
            static_cast<std::streamsize>(n * sizeof(double)));
    if (!in) throw std::runtime_error("load_rnn: truncated checkpoint " + path);
    return m;
}

}  // namespace abst
