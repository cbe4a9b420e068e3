// abscore: weakly-supervised concept abstractness scoring pipeline.
#include <cstdio>
#include <exception>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "abst/io.hpp"
#include "abst/kernels.hpp"
#include "abst/pipeline.hpp"

using namespace abst;

int main(int argc, char** argv) {
    CLI::App app{"abscore - weakly supervised abstractness scoring"};
    app.require_subcommand(1);
    // global flags may appear after the subcommand name
    app.fallthrough();

    std::string config_path;
    std::vector<std::string> sets;   // section.key=value overrides
    app.add_option("--config", config_path, "pipeline config file (INI sections)");
    app.add_option("--set", sets, "override a config key, e.g. --set nb.alpha=0.5");

    // common overrides mirrored as first-class flags
    std::string corpus, titles, embeddings, gold, output_dir, mask_token;
    std::uint64_t seed = 0;
    int workers = -1;
    double radius = -1, alpha = -1;
    long n_score = -1;
    auto* o_corpus = app.add_option("--corpus", corpus, "corpus file (one sentence per line)");
    auto* o_titles = app.add_option("--titles", titles, "titles file (one concept per line)");
    auto* o_embed = app.add_option("--embeddings", embeddings, "text-format word vectors");
    auto* o_gold = app.add_option("--gold", gold, "gold ratings TSV");
    auto* o_outdir = app.add_option("--output-dir", output_dir, "artifact directory");
    auto* o_seed = app.add_option("--seed", seed, "global random seed");
    auto* o_workers = app.add_option("--workers", workers, "worker threads (0 = all cores)");
    auto* o_radius = app.add_option("--radius", radius, "NN-RAD radius");
    auto* o_alpha = app.add_option("--alpha", alpha, "NB smoothing");
    auto* o_nscore = app.add_option("--n-score", n_score, "max sentences per scored concept");
    auto* o_mask = app.add_option("--mask-token", mask_token, "concept mask literal");

    auto* c_build = app.add_subcommand("build-dataset",
                                       "weak labels + balanced masked training corpus");

    std::string model;
    auto* c_train = app.add_subcommand("train", "train nb or rnn on the built dataset");
    c_train->add_option("--model", model, "nb|rnn")->required();

    std::string concepts_path, out_path, lexicon_path, scores_path, train_path;
    std::uint64_t min_freq = 0;
    auto* c_score = app.add_subcommand("score", "score concepts with a trained model");
    c_score->add_option("--model", model, "nb|rnn|nn_rad")->required();
    c_score->add_option("--concepts", concepts_path, "concepts to score")->required();
    c_score->add_option("--out", out_path, "score report TSV")->required();
    c_score->add_option("--lexicon", lexicon_path, "also emit concept<TAB>score lexicon");
    c_score->add_option("--min-freq", min_freq, "mark concepts under this corpus frequency UNDEFINED");

    auto* c_eval = app.add_subcommand("evaluate", "Pearson correlation against gold ratings");
    c_eval->add_option("--scores", scores_path, "score report TSV")->required();
    c_eval->add_option("--out", out_path, "evaluation report")->required();

    double top_fraction = 0.18;
    std::size_t suffix_len = 3;
    auto* c_dsuf = app.add_subcommand("discover-suffixes",
                                      "rank word endings over-represented in top-scored concepts");
    c_dsuf->add_option("--scores", scores_path, "score report TSV")->required();
    c_dsuf->add_option("--out", out_path, "suffix stats TSV")->required();
    c_dsuf->add_option("--top-fraction", top_fraction, "population fraction (default 0.18)");
    c_dsuf->add_option("--suffix-len", suffix_len, "suffix length (default 3)");

    std::uint64_t min_count = 5;
    auto* c_dmark = app.add_subcommand("discover-markers",
                                       "rank context tokens contrasting the two classes");
    c_dmark->add_option("--train", train_path, "training JSONL (default from output dir)");
    c_dmark->add_option("--out", out_path, "marker stats TSV")->required();
    c_dmark->add_option("--min-count", min_count, "minimum total document frequency");

    std::vector<std::size_t> counts{1, 5, 10, 50, 100, 500};
    std::size_t runs = 50;
    auto* c_sens = app.add_subcommand("sensitivity",
                                      "correlation vs number of sentences per concept");
    c_sens->add_option("--model", model, "nb|rnn")->required();
    c_sens->add_option("--concepts", concepts_path, "concepts to score")->required();
    c_sens->add_option("--out", out_path, "sensitivity table TSV")->required();
    c_sens->add_option("--counts", counts, "sentence counts to test");
    c_sens->add_option("--runs", runs, "runs per count (default 50)");

    CLI11_PARSE(app, argc, argv);

    try {
        PipelineConfig cfg = config_path.empty() ? PipelineConfig{}
                                                 : PipelineConfig::from_file(config_path);
        for (const auto& s : sets) {
            const auto eq = s.find('=');
            const auto dot = s.find('.');
            if (eq == std::string::npos || dot == std::string::npos || dot > eq)
                throw InputError("--set expects section.key=value, got '" + s + "'");
            cfg.apply_kv(s.substr(0, dot), s.substr(dot + 1, eq - dot - 1), s.substr(eq + 1));
        }
        if (o_corpus->count()) cfg.corpus_path = corpus;
        if (o_titles->count()) cfg.titles_path = titles;
        if (o_embed->count()) cfg.embeddings_path = embeddings;
        if (o_gold->count()) cfg.gold_path = gold;
        if (o_outdir->count()) cfg.output_dir = output_dir;
        if (o_seed->count()) cfg.seed = seed;
        if (o_workers->count()) cfg.workers = workers;
        if (o_radius->count()) cfg.radius = radius;
        if (o_alpha->count()) cfg.alpha = alpha;
        if (o_nscore->count()) cfg.n_score = static_cast<std::size_t>(n_score);
        if (o_mask->count()) cfg.mask_token = mask_token;

        std::cerr << "[abscore] v" << kToolVersion << " backend=" << kern::backend_name()
                  << " config_hash=" << std::hex << cfg.hash() << std::dec
                  << " seed=" << cfg.seed << "\n";

        if (c_build->parsed()) {
            cmd_build_dataset(cfg);
        } else if (c_train->parsed()) {
            cmd_train(cfg, model);
        } else if (c_score->parsed()) {
            cmd_score(cfg, model, concepts_path, out_path, lexicon_path, min_freq);
        } else if (c_eval->parsed()) {
            cmd_evaluate(cfg, scores_path, cfg.gold_path, out_path);
        } else if (c_dsuf->parsed()) {
            cmd_discover_suffixes(cfg, scores_path, out_path, top_fraction, suffix_len);
        } else if (c_dmark->parsed()) {
            cmd_discover_markers(cfg, train_path.empty() ? train_jsonl_path(cfg) : train_path,
                                 out_path, min_count);
        } else if (c_sens->parsed()) {
            cmd_sensitivity(cfg, model, concepts_path, cfg.gold_path, out_path, counts, runs);
        }
    } catch (const InputError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
