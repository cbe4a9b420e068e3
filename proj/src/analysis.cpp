#include "abst/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <set>
#include <stdexcept>
#include <unordered_map>

namespace abst {

namespace {

// Upper-tail standard normal probability and its log10. When erfc
// underflows to zero the log10 falls back to the Mills-ratio asymptotic.
std::pair<double, double> upper_tail(double z) {
    const double p = 0.5 * std::erfc(z / std::sqrt(2.0));
    double log10_p;
    if (p > 0) {
        log10_p = std::log10(p);
    } else {
        // log phi(z)/z approximation of the Mills ratio tail
        const double ln_p = -0.5 * z * z - std::log(z) - 0.5 * std::log(2.0 * M_PI);
        log10_p = ln_p / std::log(10.0);
    }
    return {p, log10_p};
}

double mean_of(const std::vector<double>& v) {
    double s = 0;
    for (double x : v) s += x;
    return s / static_cast<double>(v.size());
}

}  // namespace

ZResult two_proportion_z(std::uint64_t k1, std::uint64_t n1,
                         std::uint64_t k2, std::uint64_t n2) {
    if (n1 == 0 || n2 == 0)
        throw std::invalid_argument("two_proportion_z: empty sample");
    if (k1 > n1 || k2 > n2)
        throw std::invalid_argument("two_proportion_z: count exceeds sample size");
    const double p1 = static_cast<double>(k1) / static_cast<double>(n1);
    const double p2 = static_cast<double>(k2) / static_cast<double>(n2);
    const double pooled = static_cast<double>(k1 + k2) / static_cast<double>(n1 + n2);
    if (pooled == 0.0 || pooled == 1.0) return {0.0, 0.5, std::log10(0.5)};
    const double se = std::sqrt(pooled * (1.0 - pooled) *
                                (1.0 / static_cast<double>(n1) + 1.0 / static_cast<double>(n2)));
    const double z = (p1 - p2) / se;
    auto [p, lp] = upper_tail(z);
    return {z, p, lp};
}

std::vector<SuffixStat> discover_suffixes(const std::map<std::string, double>& scored,
                                          double top_fraction, std::size_t suffix_len) {
    if (top_fraction <= 0.0 || top_fraction >= 1.0)
        throw std::invalid_argument("discover_suffixes: top_fraction must be in (0,1)");
    if (scored.size() < 100)
        throw std::invalid_argument("discover_suffixes: need at least 100 scored unigrams");

    // sort by score descending, ties lexicographic: deterministic split
    std::vector<std::pair<std::string, double>> items(scored.begin(), scored.end());
    std::sort(items.begin(), items.end(), [](const auto& a, const auto& b) {
        if (a.second != b.second) return a.second > b.second;
        return a.first < b.first;
    });
    const std::size_t n_pop = static_cast<std::size_t>(
        std::ceil(top_fraction * static_cast<double>(items.size())));

    std::unordered_map<std::string, std::pair<std::uint64_t, std::uint64_t>> table;
    for (std::size_t i = 0; i < items.size(); ++i) {
        const std::string& w = items[i].first;
        if (w.size() <= suffix_len) continue;   // a whole word is not a suffix
        std::string suf = w.substr(w.size() - suffix_len);
        auto& cell = table[suf];
        (i < n_pop ? cell.first : cell.second) += 1;
    }

    const std::uint64_t n_bg = items.size() - n_pop;
    std::vector<SuffixStat> out;
    out.reserve(table.size());
    for (const auto& [suf, cell] : table) {
        SuffixStat s;
        s.suffix = suf;
        s.count_population = cell.first;
        s.count_background = cell.second;
        s.n_population = n_pop;
        s.n_background = n_bg;
        auto r = two_proportion_z(cell.first, n_pop, cell.second, n_bg);
        s.z = r.z;
        s.p_value = r.p;
        s.log10_p = r.log10_p;
        out.push_back(std::move(s));
    }
    std::sort(out.begin(), out.end(), [](const SuffixStat& a, const SuffixStat& b) {
        if (a.z != b.z) return a.z > b.z;
        return a.suffix < b.suffix;
    });
    return out;
}

std::vector<MarkerStat> discover_markers(const std::vector<MaskedSentence>& pos_sentences,
                                         const std::vector<MaskedSentence>& neg_sentences,
                                         std::uint64_t min_count, std::string_view mask) {
    if (pos_sentences.empty() || neg_sentences.empty())
        throw std::invalid_argument("discover_markers: both sentence sets must be non-empty");

    std::unordered_map<Token, std::pair<std::uint64_t, std::uint64_t>> df;
    auto tally = [&](const std::vector<MaskedSentence>& sents, bool positive) {
        std::set<Token> uniq;
        for (const auto& s : sents) {
            uniq.clear();
            for (const auto& t : s.tokens)
                if (t != mask) uniq.insert(t);
            for (const auto& t : uniq)
                (positive ? df[t].first : df[t].second) += 1;
        }
    };
    tally(pos_sentences, true);
    tally(neg_sentences, false);

    std::vector<MarkerStat> out;
    for (const auto& [tok, cell] : df) {
        if (cell.first + cell.second < min_count) continue;
        MarkerStat ms;
        ms.token = tok;
        ms.df_positive = cell.first;
        ms.df_negative = cell.second;
        auto r = two_proportion_z(cell.first, pos_sentences.size(),
                                  cell.second, neg_sentences.size());
        ms.z = r.z;
        ms.p_value = r.p;
        out.push_back(std::move(ms));
    }
    std::sort(out.begin(), out.end(), [](const MarkerStat& a, const MarkerStat& b) {
        if (a.z != b.z) return a.z > b.z;
        return a.token < b.token;
    });
    return out;
}

double pearson(const std::vector<double>& xs, const std::vector<double>& ys) {
    if (xs.size() != ys.size())
        throw std::runtime_error("pearson: length mismatch");
    if (xs.size() < 2)
        throw std::runtime_error("pearson: need at least 2 pairs");
    const double mx = mean_of(xs), my = mean_of(ys);
    double sxy = 0, sxx = 0, syy = 0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        const double dx = xs[i] - mx, dy = ys[i] - my;
        sxy += dx * dy;
        sxx += dx * dx;
        syy += dy * dy;
    }
    if (sxx == 0.0 || syy == 0.0)
        throw std::runtime_error("pearson: undefined correlation (constant input)");
    return sxy / std::sqrt(sxx * syy);
}

double quadratic_weighted_kappa(const std::vector<int>& a, const std::vector<int>& b,
                                int scale_min, int scale_max) {
    if (a.size() != b.size())
        throw std::runtime_error("quadratic_weighted_kappa: length mismatch");
    if (a.size() < 2)
        throw std::runtime_error("quadratic_weighted_kappa: need at least 2 ratings");
    const int k = scale_max - scale_min + 1;
    if (k < 2) throw std::runtime_error("quadratic_weighted_kappa: degenerate scale");

    std::vector<double> obs(static_cast<std::size_t>(k) * k, 0.0);
    std::vector<double> ma(k, 0.0), mb(k, 0.0);
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i] < scale_min || a[i] > scale_max || b[i] < scale_min || b[i] > scale_max)
            throw std::runtime_error("quadratic_weighted_kappa: rating off scale");
        const int ia = a[i] - scale_min, ib = b[i] - scale_min;
        obs[static_cast<std::size_t>(ia) * k + ib] += 1.0;
        ma[ia] += 1.0;
        mb[ib] += 1.0;
    }
    const double n = static_cast<double>(a.size());
    const double denom_w = static_cast<double>(k - 1) * (k - 1);
    double num = 0.0, den = 0.0;
    for (int i = 0; i < k; ++i)
        for (int j = 0; j < k; ++j) {
            const double w = static_cast<double>(i - j) * (i - j) / denom_w;
            num += w * obs[static_cast<std::size_t>(i) * k + j] / n;
            den += w * (ma[i] / n) * (mb[j] / n);
        }
    if (den == 0.0) {
        // both raters constant: equal -> perfect agreement, different ->
        // no better than the (degenerate) chance baseline
        return num == 0.0 ? 1.0 : 0.0;
    }
    return 1.0 - num / den;
}

std::vector<SensitivityRow> sensitivity_curve(
    const ConceptScorer& scorer,
    const std::vector<std::pair<Concept, std::vector<MaskedSentence>>>& pools,
    const std::map<std::string, double>& gold,
    const std::vector<std::size_t>& counts, std::size_t runs, std::uint64_t seed) {
    std::vector<SensitivityRow> rows;
    for (std::size_t c : counts) {
        std::vector<double> rs;
        rs.reserve(runs);
        for (std::size_t run = 0; run < runs; ++run) {
            std::vector<double> xs, ys;
            for (std::size_t ci = 0; ci < pools.size(); ++ci) {
                const auto& [cpt, pool] = pools[ci];
                auto git = gold.find(cpt.surface());
                if (git == gold.end() || pool.empty()) continue;

                std::vector<MaskedSentence> sample;
                if (c >= pool.size()) {
                    sample = pool;   // exhaustive: no sampling variance
                } else {
                    // per-cell stream keyed by (seed, count, run, concept)
                    std::seed_seq sseq{seed, static_cast<std::uint64_t>(c),
                                       static_cast<std::uint64_t>(run),
                                       static_cast<std::uint64_t>(ci)};
                    std::mt19937_64 rng(sseq);
                    std::vector<std::size_t> idx(pool.size());
                    for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = i;
                    for (std::size_t i = 0; i < c; ++i) {
                        std::uniform_int_distribution<std::size_t> d(i, idx.size() - 1);
                        std::swap(idx[i], idx[d(rng)]);
                    }
                    sample.reserve(c);
                    for (std::size_t i = 0; i < c; ++i) sample.push_back(pool[idx[i]]);
                }
                auto score = scorer(cpt, sample);
                if (!score) continue;
                xs.push_back(*score);
                ys.push_back(git->second);
            }
            rs.push_back(pearson(xs, ys));
        }
        SensitivityRow row;
        row.count = c;
        row.mean_r = mean_of(rs);
        const bool constant = std::all_of(rs.begin(), rs.end(),
                                          [&](double r) { return r == rs.front(); });
        if (constant) {
            row.mean_r = rs.front();
            row.std_r = 0.0;   // exhaustive sampling: exactly zero, not epsilon
        } else {
            double var = 0.0;
            for (double r : rs) var += (r - row.mean_r) * (r - row.mean_r);
            row.std_r = std::sqrt(var / static_cast<double>(rs.size()));
        }
        rows.push_back(row);
    }
    return rows;
}

}  // namespace abst
