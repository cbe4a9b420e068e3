#include <cstdio>
#include <fstream>
#include <random>
#include <string>

#include "abst/embeddings.hpp"
#include "doctest.h"

using namespace abst;

namespace {
struct TempFile {
    std::string path;
    explicit TempFile(const std::string& body) {
        static int n = 0;
        path = "emb_test_" + std::to_string(n++) + ".txt";
        std::ofstream(path) << body;
    }
    ~TempFile() { std::remove(path.c_str()); }
};
}  // namespace

TEST_CASE("load_embeddings basics") {
    TempFile f("alpha 1 2 3\nbeta 4 5 6\n");
    auto t = load_embeddings(f.path);
    CHECK(t.size() == 2);
    CHECK(t.dim() == 3);
    auto v = t.lookup("beta");
    REQUIRE(v);
    CHECK((*v)[0] == 4.0f);
    CHECK((*v)[2] == 6.0f);
}

TEST_CASE("word2vec-style count/dim header is skipped") {
    TempFile f("2 3\nalpha 1 2 3\nbeta 4 5 6\n");
    auto t = load_embeddings(f.path);
    CHECK(t.size() == 2);
    CHECK(t.dim() == 3);
}

TEST_CASE("dimension mismatch errors name the line") {
    TempFile f("alpha 1 2 3\nbeta 4 5 6 7\n");
    CHECK_THROWS_WITH_AS(load_embeddings(f.path), doctest::Contains("line 2"),
                         std::runtime_error);
}

TEST_CASE("non-numeric component errors") {
    TempFile f("alpha 1 x 3\n");
    CHECK_THROWS_AS(load_embeddings(f.path), std::runtime_error);
}

TEST_CASE("duplicate entries: first wins") {
    TempFile f("bank 1 0\nbank 9 9\n");
    auto t = load_embeddings(f.path);
    CHECK(t.size() == 1);
    auto v = t.lookup("bank");
    REQUIRE(v);
    CHECK((*v)[0] == 1.0f);
    CHECK((*v)[1] == 0.0f);
}

TEST_CASE("lookup contract") {
    EmbeddingTable t(2);
    float v[2] = {1, 2};
    t.insert("word", v);
    CHECK(t.lookup("word"));
    CHECK(t.lookup("WORD"));        // query lowercased
    CHECK_FALSE(t.lookup("other"));
    CHECK(t.contains("Word"));
}

TEST_CASE("compose_multiword") {
    EmbeddingTable t(2);
    float a[2] = {1, 1}, b[2] = {3, 5};
    t.insert("a", a);
    t.insert("b", b);

    SUBCASE("mean of one is the vector exactly") {
        auto v = compose_multiword(t, {"a"});
        REQUIRE(v);
        CHECK(*v == std::vector<double>{1.0, 1.0});
    }
    SUBCASE("arithmetic mean") {
        auto v = compose_multiword(t, {"a", "b"});
        REQUIRE(v);
        CHECK(*v == std::vector<double>{2.0, 3.0});
    }
    SUBCASE("OOV constituent excludes the concept") {
        CHECK_FALSE(compose_multiword(t, {"a", "zzz"}));
    }
    SUBCASE("mean of k identical vectors is bit-exact") {
        auto v = compose_multiword(t, {"b", "b", "b"});
        REQUIRE(v);
        CHECK(*v == std::vector<double>{3.0, 5.0});
    }
}

TEST_CASE("cosine oracle values") {
    std::vector<double> e1 = {1, 0}, e2 = {0, 1};
    CHECK(cosine(e1, e1) == doctest::Approx(1.0));
    CHECK(cosine(e1, e2) == doctest::Approx(0.0));

    std::vector<double> u = {1, 2, 3}, v = {4, 5, 6};
    CHECK(cosine(u, v) == doctest::Approx(0.974631846).epsilon(0).scale(1).epsilon(1e-9));

    std::vector<double> z = {0, 0, 0};
    CHECK_THROWS_AS(cosine(z, u), std::domain_error);
}

TEST_CASE("cosine properties: symmetry, scale invariance, bounds") {
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> u(-1, 1);
    for (int it = 0; it < 200; ++it) {
        std::vector<double> a(8), b(8);
        for (auto& x : a) x = u(rng);
        for (auto& x : b) x = u(rng);
        double c = cosine(a, b);
        CHECK(c >= -1.0 - 1e-12);
        CHECK(c <= 1.0 + 1e-12);
        CHECK(cosine(b, a) == doctest::Approx(c).epsilon(1e-14));
        auto a2 = a;
        for (auto& x : a2) x *= 3.5;
        CHECK(cosine(a2, b) == doctest::Approx(c).epsilon(1e-12));
    }
}
