#include <algorithm>
#include <cmath>
#include <map>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include "abst/analysis.hpp"
#include "doctest.h"

using namespace abst;

namespace {
const std::string M(kDefaultMaskToken);

MaskedSentence sent(std::vector<Token> toks) {
    MaskedSentence s;
    s.tokens = std::move(toks);
    s.mask_position = 0;
    return s;
}

// extended-precision Pearson oracle, direct formula
long double pearson_oracle(const std::vector<double>& xs, const std::vector<double>& ys) {
    long double sx = 0, sy = 0;
    std::size_t n = xs.size();
    for (std::size_t i = 0; i < n; ++i) { sx += xs[i]; sy += ys[i]; }
    long double mx = sx / n, my = sy / n, sxy = 0, sxx = 0, syy = 0;
    for (std::size_t i = 0; i < n; ++i) {
        long double dx = xs[i] - mx, dy = ys[i] - my;
        sxy += dx * dy;
        sxx += dx * dx;
        syy += dy * dy;
    }
    return sxy / sqrtl(sxx * syy);
}

// brute-force weighted-kappa oracle from the confusion matrix
double qwk_oracle(const std::vector<int>& a, const std::vector<int>& b,
                  int lo, int hi) {
    int k = hi - lo + 1;
    std::vector<std::vector<double>> O(k, std::vector<double>(k, 0.0));
    std::vector<double> ra(k, 0.0), rb(k, 0.0);
    for (std::size_t i = 0; i < a.size(); ++i) {
        O[a[i] - lo][b[i] - lo] += 1;
        ra[a[i] - lo] += 1;
        rb[b[i] - lo] += 1;
    }
    double n = static_cast<double>(a.size()), num = 0, den = 0;
    for (int i = 0; i < k; ++i)
        for (int j = 0; j < k; ++j) {
            double w = static_cast<double>((i - j) * (i - j)) / ((k - 1) * (k - 1));
            num += w * O[i][j] / n;
            den += w * (ra[i] / n) * (rb[j] / n);
        }
    if (den == 0) return num == 0 ? 1.0 : 0.0;
    return 1.0 - num / den;
}
}  // namespace

TEST_CASE("two_proportion_z") {
    auto eq = two_proportion_z(3, 10, 6, 20);
    CHECK(eq.z == doctest::Approx(0.0));
    CHECK(eq.p == doctest::Approx(0.5));

    auto r = two_proportion_z(30, 100, 10, 100);
    CHECK(r.z == doctest::Approx(3.53553).epsilon(0).scale(1).epsilon(1e-4 / 3.53553));
    CHECK(r.p < 0.001);
    CHECK(r.log10_p == doctest::Approx(std::log10(r.p)).epsilon(1e-9));

    auto d0 = two_proportion_z(0, 10, 0, 10);
    CHECK(d0.z == 0.0);
    CHECK(d0.p == 0.5);
    auto d1 = two_proportion_z(10, 10, 10, 10);
    CHECK(d1.z == 0.0);
    CHECK(d1.p == 0.5);

    // extreme counts: p underflows but log10_p stays finite
    auto big = two_proportion_z(50000, 100000, 1000, 100000);
    CHECK(big.z > 30);
    CHECK(std::isfinite(big.log10_p));
    CHECK(big.log10_p < -100);
}

TEST_CASE("pearson basics and properties") {
    std::vector<double> xs = {1, 2, 3, 4, 5};
    CHECK(pearson(xs, xs) == doctest::Approx(1.0).epsilon(1e-12));
    std::vector<double> neg;
    for (double x : xs) neg.push_back(-x + 10);
    CHECK(pearson(xs, neg) == doctest::Approx(-1.0).epsilon(1e-12));

    CHECK_THROWS_AS(pearson({1.0}, {2.0}), std::runtime_error);
    CHECK_THROWS_AS(pearson({1, 2}, {1, 2, 3}), std::runtime_error);
    CHECK_THROWS_AS(pearson({1, 1, 1}, {1, 2, 3}), std::runtime_error);

    // affine invariance: r(a*x+b, y) == r(x, y) for a > 0
    std::mt19937_64 rng(2);
    std::uniform_real_distribution<double> u(-5, 5);
    std::vector<double> x(50), y(50), xt(50);
    for (std::size_t i = 0; i < 50; ++i) { x[i] = u(rng); y[i] = u(rng); xt[i] = 3 * x[i] - 7; }
    CHECK(pearson(xt, y) == doctest::Approx(pearson(x, y)).epsilon(1e-12));
}

TEST_CASE("pearson matches the extended-precision oracle") {
    std::mt19937_64 rng(77);
    std::uniform_real_distribution<double> u(-100, 100);
    for (int it = 0; it < 20; ++it) {
        std::vector<double> xs(100), ys(100);
        for (auto& v : xs) v = u(rng);
        for (auto& v : ys) v = u(rng);
        double want = static_cast<double>(pearson_oracle(xs, ys));
        CHECK(pearson(xs, ys) == doctest::Approx(want).epsilon(0).scale(1).epsilon(1e-12));
    }
}

TEST_CASE("quadratic weighted kappa") {
    std::vector<int> a = {1, 2, 3, 4}, b = {4, 3, 2, 1};
    CHECK(quadratic_weighted_kappa(a, a) == doctest::Approx(1.0));
    CHECK(quadratic_weighted_kappa(a, b) ==
          doctest::Approx(qwk_oracle(a, b, 1, 7)).epsilon(1e-9));
    // symmetry
    CHECK(quadratic_weighted_kappa(a, b) ==
          doctest::Approx(quadratic_weighted_kappa(b, a)).epsilon(1e-12));

    // constant but different raters -> degenerate 0
    std::vector<int> c3(5, 3), c5(5, 5);
    CHECK(quadratic_weighted_kappa(c3, c3) == 1.0);
    CHECK(std::abs(quadratic_weighted_kappa(c3, c5)) < 1e-12);

    SUBCASE("independent shuffles give kappa near 0") {
        std::vector<int> base;
        for (int v = 1; v <= 7; ++v)
            for (int i = 0; i < 100; ++i) base.push_back(v);
        double total = 0;
        for (std::uint64_t s = 0; s < 50; ++s) {
            auto p = base, q = base;
            std::mt19937_64 r1(s * 2 + 1), r2(s * 2 + 2);
            std::shuffle(p.begin(), p.end(), r1);
            std::shuffle(q.begin(), q.end(), r2);
            total += quadratic_weighted_kappa(p, q);
        }
        CHECK(std::abs(total / 50) < 0.05);
    }

    SUBCASE("randomized agreement with the oracle") {
        std::mt19937_64 rng(13);
        for (int it = 0; it < 30; ++it) {
            std::vector<int> p(60), q(60);
            for (auto& v : p) v = 1 + static_cast<int>(rng() % 7);
            for (auto& v : q) v = 1 + static_cast<int>(rng() % 7);
            CHECK(quadratic_weighted_kappa(p, q) ==
                  doctest::Approx(qwk_oracle(p, q, 1, 7)).epsilon(1e-9));
        }
    }
}

TEST_CASE("discover_suffixes ranks a planted suffix first") {
    // 120 scored unigrams; every "-ism" word scores high, everything else low
    std::map<std::string, double> scored;
    for (int i = 0; i < 24; ++i)
        scored["word" + std::string(1, char('a' + i % 26)) + std::to_string(i) + "ism"] =
            0.9 + i * 1e-4;
    for (int i = 0; i < 96; ++i)
        scored["plain" + std::to_string(i) + "oak"] = 0.1 + i * 1e-4;

    auto stats = discover_suffixes(scored, 0.18, 3);
    REQUIRE(!stats.empty());
    CHECK(stats[0].suffix == "ism");
    CHECK(stats[0].z > 0);
    // ranked by z descending
    for (std::size_t i = 1; i < stats.size(); ++i) CHECK(stats[i - 1].z >= stats[i].z);

    SUBCASE("needs at least 100 unigrams") {
        std::map<std::string, double> few;
        for (int i = 0; i < 50; ++i) few["w" + std::to_string(i) + "ism"] = 0.5;
        CHECK_THROWS_AS(discover_suffixes(few), std::invalid_argument);
    }

    SUBCASE("all-equal scores: deterministic lexicographic population") {
        std::map<std::string, double> flat;
        for (int i = 0; i < 120; ++i) flat["word" + std::to_string(i) + "ism"] = 0.5;
        auto s1 = discover_suffixes(flat, 0.18, 3);
        auto s2 = discover_suffixes(flat, 0.18, 3);
        REQUIRE(s1.size() == s2.size());
        for (std::size_t i = 0; i < s1.size(); ++i) {
            CHECK(s1[i].suffix == s2[i].suffix);
            CHECK(s1[i].z == s2[i].z);
        }
    }
}

TEST_CASE("discover_markers") {
    std::vector<MaskedSentence> pos, neg;
    for (int i = 0; i < 20; ++i) {
        pos.push_back(sent({M, "movement", "shared", "tok" + std::to_string(i)}));
        neg.push_back(sent({M, "timber", "shared", "tok" + std::to_string(i)}));
    }
    auto stats = discover_markers(pos, neg, 3);
    REQUIRE(!stats.empty());
    CHECK(stats[0].token == "movement");   // in every positive, no negative
    for (const auto& s : stats) {
        CHECK(s.token != M);
        if (s.token == "shared") CHECK(s.z == doctest::Approx(0.0));
        CHECK(s.df_positive + s.df_negative >= 3);
    }
    // singletons dropped by min_count
    for (const auto& s : stats) CHECK(s.token.substr(0, 3) != "tok");
}

TEST_CASE("sensitivity_curve determinism and exhaustive variance") {
    // deterministic scorer: mean of a planted per-sentence value keyed by
    // the first token
    ConceptScorer scorer = [](const Concept&, const std::vector<MaskedSentence>& ss)
        -> std::optional<double> {
        double m = 0;
        for (const auto& s : ss) m += std::stod(s.tokens[1]);
        return m / ss.size();
    };

    std::vector<std::pair<Concept, std::vector<MaskedSentence>>> pools;
    std::map<std::string, double> gold;
    std::mt19937_64 rng(9);
    for (int c = 0; c < 8; ++c) {
        Concept cc{{"c" + std::to_string(c)}, 0};
        std::vector<MaskedSentence> pool;
        double planted = 0.1 * c;
        for (int i = 0; i < 20; ++i) {
            double noise = (static_cast<double>(rng() % 1000) / 1000 - 0.5) * 0.1;
            pool.push_back(sent({M, std::to_string(planted + noise)}));
        }
        pools.emplace_back(cc, std::move(pool));
        gold[cc.surface()] = planted;
    }

    auto rows1 = sensitivity_curve(scorer, pools, gold, {1, 5, 20}, 10, 4);
    auto rows2 = sensitivity_curve(scorer, pools, gold, {1, 5, 20}, 10, 4);
    REQUIRE(rows1.size() == 3);
    for (std::size_t i = 0; i < rows1.size(); ++i) {
        CHECK(rows1[i].mean_r == rows2[i].mean_r);
        CHECK(rows1[i].std_r == rows2[i].std_r);
    }
    // count 20 is exhaustive over 20-sentence pools: zero variance, exactly
    CHECK(rows1[2].std_r == 0.0);
    CHECK(rows1[2].mean_r > rows1[0].mean_r - 0.2);
}
