#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "doctest.h"

namespace fs = std::filesystem;

namespace {

int run(const std::string& args) {
    std::string cmd = std::string(ABSCORE_BIN) + " " + args + " >/dev/null 2>&1";
    int rc = std::system(cmd.c_str());
    return WIFEXITED(rc) ? WEXITSTATUS(rc) : -1;
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

// tiny self-contained fixture: a handful of suffix-labeled abstract titles,
// concrete titles, sentences long enough to pass the length filter
struct Fixture {
    fs::path dir;

    Fixture() {
        dir = fs::path("cli_fixture");
        fs::remove_all(dir);
        fs::create_directories(dir);

        std::vector<std::string> abstract = {"idealism", "realism", "dryness",
                                             "sadness", "heroism", "egoism"};
        std::vector<std::string> concrete = {"plank", "gravel", "bucket",
                                             "shovel", "kettle", "anvil"};

        {
            std::ofstream t(dir / "titles.txt");
            for (const auto& w : abstract) t << w << "\n";
            for (const auto& w : concrete) t << w << "\n";
        }
        {
            std::ofstream c(dir / "corpus.txt");
            for (int i = 0; i < 12; ++i) {
                for (const auto& w : abstract)
                    c << "the movement around " << w << " spread through schools of thought in wave "
                      << i << "\n";
                for (const auto& w : concrete)
                    c << "the worker lifted the heavy " << w << " onto the timber cart in yard "
                      << i << "\n";
            }
        }
        {
            std::ofstream e(dir / "vectors.txt");
            int i = 0;
            for (const auto& w : abstract)
                e << w << " 1.0 " << 0.01 * i++ << " 0.0\n";
            for (const auto& w : concrete)
                e << w << " -1.0 " << 0.01 * i++ << " 0.0\n";
        }
        {
            std::ofstream g(dir / "gold.tsv");
            for (const auto& w : abstract) g << w << "\t6.5\n";
            for (const auto& w : concrete) g << w << "\t1.5\n";
        }
        {
            std::ofstream cc(dir / "concepts.txt");
            for (const auto& w : abstract) cc << w << "\n";
            for (const auto& w : concrete) cc << w << "\n";
        }
    }

    std::string common(const std::string& out_dir) const {
        return "--titles " + (dir / "titles.txt").string() +
               " --corpus " + (dir / "corpus.txt").string() +
               " --embeddings " + (dir / "vectors.txt").string() +
               " --gold " + (dir / "gold.tsv").string() +
               " --output-dir " + out_dir +
               " --seed 42" +
               " --set thresholds.min_freq_train=2" +
               " --set thresholds.min_freq_eval=2";
    }
};

}  // namespace

TEST_CASE("help exits 0") { CHECK(run("--help") == 0); }

TEST_CASE("missing input file exits 2") {
    CHECK(run("build-dataset --titles does_not_exist.txt --corpus also_missing.txt") == 2);
}

TEST_CASE("unknown config key exits 2") {
    CHECK(run("build-dataset --set nope.nope=1") == 2);
}

TEST_CASE("nn_rad has no training step") {
    Fixture f;
    CHECK(run("train --model nn_rad " + f.common((f.dir / "out").string())) == 2);
}

TEST_CASE("end-to-end nb pipeline on the toy fixture") {
    Fixture f;
    const std::string out1 = (f.dir / "run1").string();
    const std::string out2 = (f.dir / "run2").string();

    REQUIRE(run("build-dataset " + f.common(out1)) == 0);
    CHECK(fs::exists(out1 + "/weak_set.tsv"));
    CHECK(fs::exists(out1 + "/train.jsonl"));
    CHECK(fs::exists(out1 + "/build_summary.json"));

    REQUIRE(run("train --model nb " + f.common(out1)) == 0);
    CHECK(fs::exists(out1 + "/nb_model.json"));

    REQUIRE(run("score --model nb --concepts " + (f.dir / "concepts.txt").string() +
                " --out " + out1 + "/scores.tsv " + f.common(out1)) == 0);
    CHECK(fs::exists(out1 + "/scores.tsv"));

    // output row count equals input concept count
    {
        std::ifstream in(out1 + "/scores.tsv");
        std::string line;
        std::size_t rows = 0;
        while (std::getline(in, line))
            if (!line.empty() && line[0] != '#') ++rows;
        CHECK(rows == 12);
    }

    REQUIRE(run("evaluate --scores " + out1 + "/scores.tsv --out " + out1 +
                "/eval.json " + f.common(out1)) == 0);

    // byte-identical rerun with the same seed
    REQUIRE(run("build-dataset " + f.common(out2)) == 0);
    REQUIRE(run("train --model nb " + f.common(out2)) == 0);
    REQUIRE(run("score --model nb --concepts " + (f.dir / "concepts.txt").string() +
                " --out " + out2 + "/scores.tsv " + f.common(out2)) == 0);
    CHECK(slurp(out1 + "/weak_set.tsv") == slurp(out2 + "/weak_set.tsv"));
    CHECK(slurp(out1 + "/train.jsonl") == slurp(out2 + "/train.jsonl"));
    CHECK(slurp(out1 + "/nb_model.json") == slurp(out2 + "/nb_model.json"));
    CHECK(slurp(out1 + "/scores.tsv") == slurp(out2 + "/scores.tsv"));

    // nn_rad scoring path needs no training
    REQUIRE(run("score --model nn_rad --concepts " + (f.dir / "concepts.txt").string() +
                " --out " + out1 + "/scores_rad.tsv " + f.common(out1)) == 0);
    CHECK(fs::exists(out1 + "/scores_rad.tsv"));

    fs::remove_all(f.dir);
}

TEST_CASE("evaluate with disjoint gold exits 2") {
    Fixture f;
    const std::string out = (f.dir / "ev").string();
    fs::create_directories(out);
    {
        std::ofstream s(out + "/scores.tsv");
        s << "alpha\t0.4\t\t3\nbeta\t0.6\t\t3\n";
    }
    {
        std::ofstream g(f.dir / "gold2.tsv");
        g << "gamma\t3.0\ndelta\t4.0\n";
    }
    CHECK(run("evaluate --scores " + out + "/scores.tsv --out " + out + "/eval.json" +
              " --gold " + (f.dir / "gold2.tsv").string() +
              " --output-dir " + out) == 2);
    fs::remove_all(f.dir);
}
