#include "abst/pipeline.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>

#include <json.hpp>

#include "abst/analysis.hpp"
#include "abst/corpus.hpp"
#include "abst/embeddings.hpp"
#include "abst/io.hpp"
#include "abst/nb.hpp"
#include "abst/nn_rad.hpp"
#include "abst/weak_labels.hpp"

namespace fs = std::filesystem;

namespace abst {

namespace {

std::string trim(const std::string& s) {
    std::size_t b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return "";
    std::size_t e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

std::vector<std::string> split_csv(const std::string& s) {
    std::vector<std::string> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ','))
        if (!trim(item).empty()) out.push_back(trim(item));
    return out;
}

template <typename T>
T parse_num(const std::string& key, const std::string& v) {
    T out{};
    auto [p, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
    if (ec != std::errc{} || p != v.data() + v.size())
        throw InputError("config: bad numeric value for " + key + ": '" + v + "'");
    return out;
}

double parse_double(const std::string& key, const std::string& v) {
    char* end = nullptr;
    const double out = std::strtod(v.c_str(), &end);
    if (end != v.c_str() + v.size())
        throw InputError("config: bad numeric value for " + key + ": '" + v + "'");
    return out;
}

bool parse_bool(const std::string& key, const std::string& v) {
    if (v == "true" || v == "1" || v == "yes") return true;
    if (v == "false" || v == "0" || v == "no") return false;
    throw InputError("config: bad boolean value for " + key + ": '" + v + "'");
}

void require_file(const std::string& path, const std::string& what) {
    if (path.empty()) throw InputError("config: no " + what + " path set");
    if (!fs::exists(path)) throw InputError(what + " file not found: " + path);
}

std::ofstream open_out(const std::string& path) {
    std::ofstream out(path);
    if (!out) throw InputError("cannot write output file: " + path);
    return out;
}

void progress(const std::string& msg) { std::cerr << "[abscore] " << msg << "\n"; }

}  // namespace

void PipelineConfig::apply_kv(const std::string& section, const std::string& key,
                              const std::string& value) {
    const std::string k = section.empty() ? key : section + "." + key;
    if (k == "paths.corpus") corpus_path = value;
    else if (k == "paths.titles") titles_path = value;
    else if (k == "paths.embeddings") embeddings_path = value;
    else if (k == "paths.gold") gold_path = value;
    else if (k == "paths.output_dir") output_dir = value;
    else if (k == "thresholds.min_freq_train") min_freq_train = parse_num<std::uint64_t>(k, value);
    else if (k == "thresholds.min_freq_eval") min_freq_eval = parse_num<std::uint64_t>(k, value);
    else if (k == "thresholds.min_sentence_len") min_sentence_len = parse_num<std::size_t>(k, value);
    else if (k == "thresholds.max_sentence_len") max_sentence_len = parse_num<std::size_t>(k, value);
    else if (k == "thresholds.per_class_cap") per_class_cap = parse_num<std::size_t>(k, value);
    else if (k == "thresholds.n_score") n_score = parse_num<std::size_t>(k, value);
    else if (k == "weak_labels.suffixes") suffixes = split_csv(value);
    else if (k == "weak_labels.strict_negatives") strict_negatives = parse_bool(k, value);
    else if (k == "weak_labels.min_stem_length") min_stem_length = parse_num<std::size_t>(k, value);
    else if (k == "nb.alpha") alpha = parse_double(k, value);
    else if (k == "nn_rad.radius") radius = parse_double(k, value);
    else if (k == "nn_rad.radius_mode") {
        if (value != "distance" && value != "similarity")
            throw InputError("config: nn_rad.radius_mode must be distance|similarity");
        radius_mode = value;
    }
    else if (k == "rnn.cell_width") rnn.cell_width = parse_num<int>(k, value);
    else if (k == "rnn.keep_prob") rnn.keep_prob = parse_double(k, value);
    else if (k == "rnn.attention_size") rnn.attention_size = parse_num<int>(k, value);
    else if (k == "rnn.embed_dim") rnn.embed_dim = parse_num<int>(k, value);
    else if (k == "rnn.learning_rate") rnn.learning_rate = parse_double(k, value);
    else if (k == "rnn.epochs") rnn.epochs = parse_num<int>(k, value);
    else if (k == "rnn.batch_size") rnn.batch_size = parse_num<int>(k, value);
    else if (k == "rnn.proximity_bias") rnn.proximity_bias = parse_bool(k, value);
    else if (k == "run.seed") seed = parse_num<std::uint64_t>(k, value);
    else if (k == "run.workers") workers = parse_num<int>(k, value);
    else if (k == "run.mask_token") mask_token = value;
    else if (k == "run.gold_higher_is_abstract") gold_higher_is_abstract = parse_bool(k, value);
    else throw InputError("config: unknown key '" + k + "'");
}

PipelineConfig PipelineConfig::from_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InputError("config file not found: " + path);
    PipelineConfig cfg;
    std::string line, section;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const std::string t = trim(line);
        if (t.empty() || t[0] == '#' || t[0] == ';') continue;
        if (t.front() == '[' && t.back() == ']') {
            section = trim(t.substr(1, t.size() - 2));
            continue;
        }
        const std::size_t eq = t.find('=');
        if (eq == std::string::npos)
            throw InputError("config " + path + " line " + std::to_string(line_no) +
                             ": expected key=value");
        cfg.apply_kv(section, trim(t.substr(0, eq)), trim(t.substr(eq + 1)));
    }
    return cfg;
}

std::string PipelineConfig::canonical() const {
    std::ostringstream o;
    o << "paths.corpus=" << corpus_path << "\n"
      << "paths.titles=" << titles_path << "\n"
      << "paths.embeddings=" << embeddings_path << "\n"
      << "paths.gold=" << gold_path << "\n"
      // output_dir is where artifacts land, not what they contain; keeping
      // it out of the hash lets runs into different directories compare
      // byte-identical (workers are excluded for the same reason)
      << "thresholds.min_freq_train=" << min_freq_train << "\n"
      << "thresholds.min_freq_eval=" << min_freq_eval << "\n"
      << "thresholds.min_sentence_len=" << min_sentence_len << "\n"
      << "thresholds.max_sentence_len=" << max_sentence_len << "\n"
      << "thresholds.per_class_cap=" << per_class_cap << "\n"
      << "thresholds.n_score=" << n_score << "\n"
      << "weak_labels.suffixes=";
    for (std::size_t i = 0; i < suffixes.size(); ++i) o << (i ? "," : "") << suffixes[i];
    o << "\n"
      << "weak_labels.strict_negatives=" << strict_negatives << "\n"
      << "weak_labels.min_stem_length=" << min_stem_length << "\n"
      << "nb.alpha=" << alpha << "\n"
      << "nn_rad.radius=" << radius << "\n"
      << "nn_rad.radius_mode=" << radius_mode << "\n"
      << "rnn.cell_width=" << rnn.cell_width << "\n"
      << "rnn.keep_prob=" << rnn.keep_prob << "\n"
      << "rnn.attention_size=" << rnn.attention_size << "\n"
      << "rnn.embed_dim=" << rnn.embed_dim << "\n"
      << "rnn.learning_rate=" << rnn.learning_rate << "\n"
      << "rnn.epochs=" << rnn.epochs << "\n"
      << "rnn.batch_size=" << rnn.batch_size << "\n"
      << "rnn.proximity_bias=" << rnn.proximity_bias << "\n"
      << "run.seed=" << seed << "\n"
      << "run.mask_token=" << mask_token << "\n"
      << "run.gold_higher_is_abstract=" << gold_higher_is_abstract << "\n";
    // workers deliberately left out: it must never affect outputs
    return o.str();
}

std::uint64_t PipelineConfig::hash() const { return fnv1a64(canonical()); }

std::string nb_model_path(const PipelineConfig& cfg) { return cfg.output_dir + "/nb_model.json"; }
std::string rnn_model_path(const PipelineConfig& cfg) { return cfg.output_dir + "/rnn_model.bin"; }
std::string train_jsonl_path(const PipelineConfig& cfg) { return cfg.output_dir + "/train.jsonl"; }
std::string weak_set_path(const PipelineConfig& cfg) { return cfg.output_dir + "/weak_set.tsv"; }

namespace {

std::vector<SuffixRule> rules_from(const PipelineConfig& cfg) {
    std::vector<SuffixRule> rules;
    for (const auto& s : cfg.suffixes) rules.push_back({s, cfg.min_stem_length});
    if (rules.empty()) throw InputError("config: weak_labels.suffixes is empty");
    return rules;
}

WeakLabeledSet load_weak_set(const PipelineConfig& cfg) {
    require_file(weak_set_path(cfg), "weak set");
    std::ifstream in(weak_set_path(cfg));
    WeakLabeledSet wls;
    read_weak_set_tsv(in, wls.positives, wls.negatives);
    wls.seed = cfg.seed;
    return wls;
}

}  // namespace

BuildSummary cmd_build_dataset(const PipelineConfig& cfg) {
    require_file(cfg.titles_path, "titles");
    require_file(cfg.corpus_path, "corpus");
    fs::create_directories(cfg.output_dir);

    progress("reading titles from " + cfg.titles_path);
    std::ifstream titles_in(cfg.titles_path);
    auto titles = read_concepts_file(titles_in);
    if (titles.empty()) throw InputError("titles file is empty: " + cfg.titles_path);

    progress("counting title frequencies over the corpus");
    std::vector<Concept> unigrams;
    for (const auto& t : titles)
        if (t.is_unigram()) unigrams.push_back(t);
    std::ifstream corpus_in(cfg.corpus_path);
    auto freq = count_frequencies(corpus_in, unigrams);

    const auto rules = rules_from(cfg);
    const auto exclude =
        cfg.strict_negatives ? full_suffix_family() : rules;

    WeakLabeledSet wls;
    wls.seed = cfg.seed;
    wls.positives = build_positive_set(titles, rules, freq, cfg.min_freq_train);
    wls.negatives = build_negative_set(titles, wls.positives, exclude, freq,
                                       wls.positives.size(), cfg.seed, cfg.min_freq_train);
    progress("weak labels: " + std::to_string(wls.positives.size()) + " positives, " +
             std::to_string(wls.negatives.size()) + " negatives");

    progress("assembling the balanced training corpus");
    std::ifstream corpus_in2(cfg.corpus_path);
    auto data = assemble_training_corpus(wls, corpus_in2, cfg.per_class_cap, cfg.seed,
                                         cfg.min_sentence_len, cfg.max_sentence_len,
                                         cfg.mask_token);

    const std::uint64_t h = cfg.hash();
    {
        auto out = open_out(weak_set_path(cfg));
        write_weak_set_tsv(out, wls.positives, wls.negatives, h, cfg.seed);
    }
    {
        auto out = open_out(train_jsonl_path(cfg));
        write_training_jsonl(out, data, {}, h, cfg.seed);
    }

    BuildSummary summary;
    summary.positives = wls.positives.size();
    summary.negatives = wls.negatives.size();
    summary.sentences_per_class = data.size() / 2;
    summary.seed = cfg.seed;
    {
        nlohmann::json j;
        j["tool_version"] = kToolVersion;
        j["config_hash"] = h;
        j["seed"] = cfg.seed;
        j["positives"] = summary.positives;
        j["negatives"] = summary.negatives;
        j["sentences_per_class"] = summary.sentences_per_class;
        auto out = open_out(cfg.output_dir + "/build_summary.json");
        out << j.dump(2) << "\n";
    }
    progress("build-dataset done: " + std::to_string(data.size()) + " sentences");
    return summary;
}

void cmd_train(const PipelineConfig& cfg, const std::string& model) {
    if (model == "nn_rad")
        throw InputError("nn_rad needs no training; run `abscore score --model nn_rad`");
    if (model != "nb" && model != "rnn")
        throw InputError("unknown model '" + model + "' (expected nb|rnn)");
    require_file(train_jsonl_path(cfg), "training data");
    std::ifstream in(train_jsonl_path(cfg));
    auto data = read_training_jsonl(in);
    progress("training " + model + " on " + std::to_string(data.size()) + " sentences");

    nlohmann::json report;
    report["tool_version"] = kToolVersion;
    report["config_hash"] = cfg.hash();
    report["seed"] = cfg.seed;
    report["model"] = model;
    report["sentences"] = data.size();

    if (model == "nb") {
        NBModel m = train_nb(data, cfg.alpha, cfg.mask_token);
        save_nb(m, nb_model_path(cfg));
        report["vocab_size"] = m.vocab.size();
        report["artifact"] = "nb_model.json";
    } else {
        RnnConfig rc = cfg.rnn;
        rc.seed = cfg.seed;
        rc.mask_token = cfg.mask_token;
        EmbeddingTable table = load_embeddings(
            cfg.embeddings_path, static_cast<std::size_t>(rc.embed_dim));
        auto result = train_rnn(rc, data, table);
        save_rnn(result.model, rnn_model_path(cfg));
        report["loss_trace"] = result.epoch_loss;
        report["artifact"] = "rnn_model.bin";
    }
    auto out = open_out(cfg.output_dir + "/train_report_" + model + ".json");
    out << report.dump(2) << "\n";
    progress("train done");
}

std::vector<std::pair<Concept, std::vector<MaskedSentence>>> collect_concept_sentences(
    const PipelineConfig& cfg, const std::vector<Concept>& concepts, std::size_t cap,
    std::vector<std::uint64_t>* match_counts) {
    require_file(cfg.corpus_path, "corpus");
    ConceptMatcher matcher(concepts);
    std::vector<std::pair<Concept, std::vector<MaskedSentence>>> pools(concepts.size());
    for (std::size_t i = 0; i < concepts.size(); ++i) pools[i].first = concepts[i];

    std::map<Concept, std::size_t> index;
    for (std::size_t i = 0; i < concepts.size(); ++i) index[concepts[i]] = i;

    // per-concept reservoir keeps the sample deterministic and the memory
    // bounded by concepts * cap
    std::vector<std::mt19937_64> rngs;
    rngs.reserve(concepts.size());
    for (std::size_t i = 0; i < concepts.size(); ++i)
        rngs.emplace_back(cfg.seed ^ fnv1a64(concepts[i].surface()));
    std::vector<std::uint64_t> seen(concepts.size(), 0);

    std::ifstream in(cfg.corpus_path);
    extract_sentences(
        in, matcher,
        [&](const ConceptMatch& m) {
            const std::size_t i = index.at(m.target);
            ++seen[i];
            MaskedSentence ms = mask_concept(m.sentence, m.span_start,
                                             m.target.words.size(), cfg.mask_token);
            auto& pool = pools[i].second;
            if (pool.size() < cap) {
                pool.push_back(std::move(ms));
            } else if (cap > 0) {
                std::uniform_int_distribution<std::uint64_t> d(0, seen[i] - 1);
                const std::uint64_t slot = d(rngs[i]);
                if (slot < cap) pool[static_cast<std::size_t>(slot)] = std::move(ms);
            }
        },
        cfg.min_sentence_len, cfg.max_sentence_len);

    if (match_counts) *match_counts = seen;
    return pools;
}

std::vector<ScoreRow> cmd_score(const PipelineConfig& cfg, const std::string& model,
                                const std::string& concepts_path,
                                const std::string& out_path,
                                const std::string& lexicon_path, std::uint64_t min_freq) {
    require_file(concepts_path, "concepts");
    std::ifstream cin_(concepts_path);
    auto concepts = read_concepts_file(cin_);
    if (concepts.empty()) throw InputError("concepts file is empty: " + concepts_path);

    std::vector<ScoreRow> rows(concepts.size());
    for (std::size_t i = 0; i < concepts.size(); ++i)
        rows[i].name = concepts[i].surface();

    if (model == "nn_rad") {
        EmbeddingTable table = load_embeddings(cfg.embeddings_path);
        auto wls = load_weak_set(cfg);
        RadiusClassifier clf = build_radius_classifier(
            wls, table, cfg.radius,
            cfg.radius_mode == "distance" ? RadiusMode::Distance : RadiusMode::Similarity);
        progress("nn_rad: " + std::to_string(clf.size()) + " training vectors, " +
                 std::to_string(clf.dropped_oov()) + " dropped as OOV");
        parallel_for(concepts.size(), cfg.workers, [&](std::size_t i) {
            auto v = compose_multiword(table, concepts[i].words);
            if (!v) {
                rows[i].reason = "oov";
                return;
            }
            auto s = clf.score_vector(*v);
            if (!s) {
                rows[i].reason = "empty_neighborhood";
                return;
            }
            rows[i].ok = true;
            rows[i].score = *s;
        });
    } else if (model == "nb" || model == "rnn") {
        std::vector<std::uint64_t> counts;
        progress("collecting up to " + std::to_string(cfg.n_score) +
                 " sentences per concept");
        auto pools = collect_concept_sentences(cfg, concepts, cfg.n_score, &counts);
        auto score_pool = [&](std::size_t i, auto&& scorer) {
            rows[i].n_sentences = pools[i].second.size();
            if (min_freq > 0 && counts[i] < min_freq) {
                rows[i].reason = "below_min_freq";
                return;
            }
            if (pools[i].second.empty()) {
                rows[i].reason = "no_context";
                return;
            }
            rows[i].ok = true;
            rows[i].score = scorer(i);
        };
        if (model == "nb") {
            NBModel m = load_nb(nb_model_path(cfg));
            parallel_for(concepts.size(), cfg.workers, [&](std::size_t i) {
                score_pool(i, [&](std::size_t j) {
                    return score_concept_nb(m, pools[j].second, cfg.n_score);
                });
            });
        } else {
            RnnModel m = load_rnn(rnn_model_path(cfg));
            EmbeddingTable table = load_embeddings(
                cfg.embeddings_path, static_cast<std::size_t>(m.cfg.embed_dim));
            parallel_for(concepts.size(), cfg.workers, [&](std::size_t i) {
                score_pool(i, [&](std::size_t j) {
                    return score_concept_rnn(m, pools[j].second, table, cfg.n_score);
                });
            });
        }
    } else {
        throw InputError("unknown model '" + model + "' (expected nb|rnn|nn_rad)");
    }

    if (!out_path.empty()) {
        auto out = open_out(out_path);
        out << artifact_header(cfg.hash(), cfg.seed) << "\n";
        out << "# concept\tscore\treason\tn_sentences\n";
        out.precision(17);
        for (const auto& r : rows) {
            out << r.name << '\t';
            if (r.ok)
                out << r.score;
            else
                out << (r.reason == "no_context" || r.reason == "below_min_freq"
                            ? "UNDEFINED"
                            : "EXCLUDED");
            out << '\t' << (r.ok ? "-" : r.reason) << '\t' << r.n_sentences << "\n";
        }
    }
    if (!lexicon_path.empty()) {
        // released-dataset shape: concept<TAB>score, scored rows only
        auto out = open_out(lexicon_path);
        out << artifact_header(cfg.hash(), cfg.seed) << "\n";
        out.precision(17);
        for (const auto& r : rows)
            if (r.ok) out << r.name << '\t' << r.score << "\n";
    }
    return rows;
}

namespace {

// scores TSV -> concept -> optional score (nullopt = sentinel row)
std::map<std::string, std::optional<double>> read_scores_tsv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InputError("scores file not found: " + path);
    std::map<std::string, std::optional<double>> out;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty() || is_comment_line(line)) continue;
        const std::size_t tab = line.find('\t');
        if (tab == std::string::npos) continue;
        const std::string key = line.substr(0, tab);
        std::string rest = line.substr(tab + 1);
        const std::size_t tab2 = rest.find('\t');
        if (tab2 != std::string::npos) rest = rest.substr(0, tab2);
        if (rest == "UNDEFINED" || rest == "EXCLUDED") {
            out[key] = std::nullopt;
        } else {
            char* end = nullptr;
            const double v = std::strtod(rest.c_str(), &end);
            if (end == rest.c_str())
                throw InputError("scores file " + path + ": bad score '" + rest + "'");
            out[key] = v;
        }
    }
    return out;
}

}  // namespace

EvalReport cmd_evaluate(const PipelineConfig& cfg, const std::string& scores_path,
                        const std::string& gold_path, const std::string& out_path) {
    auto scores = read_scores_tsv(scores_path);
    require_file(gold_path, "gold");
    std::ifstream gin(gold_path);
    auto gold = read_gold_tsv(gin, cfg.gold_higher_is_abstract);
    if (gold.empty()) throw InputError("gold file is empty: " + gold_path);

    std::vector<double> xs, ys;
    for (const auto& [name, rating] : gold) {
        auto it = scores.find(name);
        if (it == scores.end() || !it->second) continue;
        xs.push_back(*it->second);
        ys.push_back(rating);
    }
    if (xs.empty())
        throw InputError("empty intersection between scores (" + scores_path +
                         ") and gold (" + gold_path + ")");

    EvalReport rep;
    rep.n_used = xs.size();
    rep.n_excluded = gold.size() - xs.size();
    rep.pearson_r = pearson(xs, ys);

    if (!out_path.empty()) {
        auto out = open_out(out_path);
        out << artifact_header(cfg.hash(), cfg.seed) << "\n";
        out.precision(17);
        out << "pearson_r\t" << rep.pearson_r << "\n";
        out << "n_used\t" << rep.n_used << "\n";
        out << "n_excluded\t" << rep.n_excluded << "\n";
    }
    progress("evaluate: r=" + std::to_string(rep.pearson_r) + " on " +
             std::to_string(rep.n_used) + " concepts (" + std::to_string(rep.n_excluded) +
             " excluded)");
    return rep;
}

void cmd_discover_suffixes(const PipelineConfig& cfg, const std::string& scores_path,
                           const std::string& out_path, double top_fraction,
                           std::size_t suffix_len) {
    auto scores = read_scores_tsv(scores_path);
    std::map<std::string, double> unigram_scores;
    for (const auto& [name, s] : scores)
        if (s && name.find(0x20) == std::string::npos) unigram_scores[name] = *s;
    auto stats = discover_suffixes(unigram_scores, top_fraction, suffix_len);

    auto out = open_out(out_path);
    out << artifact_header(cfg.hash(), cfg.seed) << "\n";
    out << "# suffix\tz\tlog10_p\tcount_population\tn_population\tcount_background\tn_background\n";
    out.precision(10);
    for (const auto& s : stats)
        out << s.suffix << '\t' << s.z << '\t' << s.log10_p << '\t' << s.count_population
            << '\t' << s.n_population << '\t' << s.count_background << '\t'
            << s.n_background << "\n";
    progress("discover-suffixes: " + std::to_string(stats.size()) + " suffixes ranked");
}

void cmd_discover_markers(const PipelineConfig& cfg, const std::string& train_jsonl,
                          const std::string& out_path, std::uint64_t min_count) {
    require_file(train_jsonl, "training data");
    std::ifstream in(train_jsonl);
    auto data = read_training_jsonl(in);
    std::vector<MaskedSentence> pos, neg;
    for (auto& s : data) {
        if (!s.label) continue;
        (*s.label == Label::Abstract ? pos : neg).push_back(std::move(s));
    }
    auto stats = discover_markers(pos, neg, min_count, cfg.mask_token);

    auto out = open_out(out_path);
    out << artifact_header(cfg.hash(), cfg.seed) << "\n";
    out << "# token\tz\tp\tdf_positive\tdf_negative\n";
    out.precision(10);
    for (const auto& s : stats)
        out << s.token << '\t' << s.z << '\t' << s.p_value << '\t' << s.df_positive
            << '\t' << s.df_negative << "\n";
    progress("discover-markers: " + std::to_string(stats.size()) + " tokens ranked");
}

void cmd_sensitivity(const PipelineConfig& cfg, const std::string& model,
                     const std::string& concepts_path, const std::string& gold_path,
                     const std::string& out_path, const std::vector<std::size_t>& counts,
                     std::size_t runs) {
    require_file(concepts_path, "concepts");
    require_file(gold_path, "gold");
    std::ifstream cin_(concepts_path);
    auto concepts = read_concepts_file(cin_);
    std::ifstream gin(gold_path);
    auto gold = read_gold_tsv(gin, cfg.gold_higher_is_abstract);

    const std::size_t cap = *std::max_element(counts.begin(), counts.end());
    progress("collecting sentence pools (cap " + std::to_string(cap) + ")");
    auto pools = collect_concept_sentences(cfg, concepts, cap);

    ConceptScorer scorer;
    NBModel nb_model;
    RnnModel rnn_model;
    std::optional<EmbeddingTable> table;
    if (model == "nb") {
        nb_model = load_nb(nb_model_path(cfg));
        scorer = [&](const Concept&, const std::vector<MaskedSentence>& sample)
            -> std::optional<double> {
            if (sample.empty()) return std::nullopt;
            return score_concept_nb(nb_model, sample, sample.size());
        };
    } else if (model == "rnn") {
        rnn_model = load_rnn(rnn_model_path(cfg));
        table = load_embeddings(cfg.embeddings_path,
                                static_cast<std::size_t>(rnn_model.cfg.embed_dim));
        scorer = [&](const Concept&, const std::vector<MaskedSentence>& sample)
            -> std::optional<double> {
            if (sample.empty()) return std::nullopt;
            return score_concept_rnn(rnn_model, sample, *table, sample.size());
        };
    } else {
        throw InputError("sensitivity supports nb|rnn (nn_rad is sentence-independent)");
    }

    auto rows = sensitivity_curve(scorer, pools, gold, counts, runs, cfg.seed);

    auto out = open_out(out_path);
    out << artifact_header(cfg.hash(), cfg.seed) << "\n";
    out << "count\tmean_r\tstd_r\n";
    out.precision(17);
    for (const auto& r : rows)
        out << r.count << '\t' << r.mean_r << '\t' << r.std_r << "\n";
    progress("sensitivity: " + std::to_string(rows.size()) + " counts x " +
             std::to_string(runs) + " runs");
}

}  // namespace abst
