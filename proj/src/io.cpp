#include "abst/io.hpp"

#include <atomic>
#include <charconv>
#include <thread>

#include <json.hpp>

#include "abst/corpus.hpp"

namespace abst {

std::uint64_t fnv1a64(std::string_view s) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : s) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    return h;
}

std::string artifact_header(std::uint64_t config_hash, std::uint64_t seed) {
    char buf[128];
    std::snprintf(buf, sizeof(buf), "# abscore v%s config_hash=%016llx seed=%llu",
                  std::string(kToolVersion).c_str(),
                  static_cast<unsigned long long>(config_hash),
                  static_cast<unsigned long long>(seed));
    return buf;
}

bool is_comment_line(std::string_view line) {
    return !line.empty() && line.front() == '#';
}

void write_training_jsonl(std::ostream& out, const std::vector<MaskedSentence>& data,
                          const std::vector<std::string>& concepts,
                          std::uint64_t config_hash, std::uint64_t seed) {
    out << artifact_header(config_hash, seed) << "\n";
    for (std::size_t i = 0; i < data.size(); ++i) {
        nlohmann::json j;
        j["concept"] = i < concepts.size() ? concepts[i] : "";
        j["tokens"] = data[i].tokens;
        j["mask_position"] = data[i].mask_position;
        if (data[i].label)
            j["label"] = label_name(*data[i].label);
        else
            j["label"] = nullptr;
        out << j.dump() << "\n";
    }
}

std::vector<MaskedSentence> read_training_jsonl(std::istream& in) {
    std::vector<MaskedSentence> out;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty() || is_comment_line(line)) continue;
        nlohmann::json j;
        try {
            j = nlohmann::json::parse(line);
        } catch (const nlohmann::json::exception& e) {
            throw InputError("training jsonl line " + std::to_string(line_no) + ": " +
                             e.what());
        }
        MaskedSentence m;
        m.tokens = j.at("tokens").get<std::vector<std::string>>();
        m.mask_position = j.at("mask_position").get<std::size_t>();
        if (!j.at("label").is_null()) {
            const std::string l = j.at("label").get<std::string>();
            if (l == "abstract")
                m.label = Label::Abstract;
            else if (l == "concrete")
                m.label = Label::Concrete;
            else
                throw InputError("training jsonl line " + std::to_string(line_no) +
                                 ": unknown label '" + l + "'");
        }
        out.push_back(std::move(m));
    }
    return out;
}

void write_weak_set_tsv(std::ostream& out, const std::vector<Concept>& positives,
                        const std::vector<Concept>& negatives,
                        std::uint64_t config_hash, std::uint64_t seed) {
    out << artifact_header(config_hash, seed) << "\n";
    for (const auto& c : positives)
        out << c.surface() << "\tabstract\t" << c.frequency << "\n";
    for (const auto& c : negatives)
        out << c.surface() << "\tconcrete\t" << c.frequency << "\n";
}

namespace {

std::vector<std::string> split_tab(const std::string& line) {
    std::vector<std::string> out;
    std::size_t b = 0;
    while (true) {
        std::size_t e = line.find('\t', b);
        out.push_back(line.substr(b, e == std::string::npos ? e : e - b));
        if (e == std::string::npos) break;
        b = e + 1;
    }
    return out;
}

}  // namespace

void read_weak_set_tsv(std::istream& in, std::vector<Concept>& positives,
                       std::vector<Concept>& negatives) {
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty() || is_comment_line(line)) continue;
        auto f = split_tab(line);
        if (f.size() < 2)
            throw InputError("weak set tsv line " + std::to_string(line_no) +
                             ": expected concept<TAB>label");
        Concept c;
        c.words = tokenize(f[0]);
        if (c.words.empty() || c.words.size() > 3)
            throw InputError("weak set tsv line " + std::to_string(line_no) +
                             ": bad concept '" + f[0] + "'");
        if (f.size() >= 3) {
            std::uint64_t v = 0;
            std::from_chars(f[2].data(), f[2].data() + f[2].size(), v);
            c.frequency = v;
        }
        if (f[1] == "abstract")
            positives.push_back(std::move(c));
        else if (f[1] == "concrete")
            negatives.push_back(std::move(c));
        else
            throw InputError("weak set tsv line " + std::to_string(line_no) +
                             ": unknown label '" + f[1] + "'");
    }
}

std::map<std::string, double> read_gold_tsv(std::istream& in, bool higher_is_abstract) {
    std::map<std::string, double> gold;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty() || is_comment_line(line)) continue;
        auto f = split_tab(line);
        if (f.size() < 2)
            throw InputError("gold tsv line " + std::to_string(line_no) +
                             ": expected concept<TAB>rating");
        char* end = nullptr;
        const double v = std::strtod(f[1].c_str(), &end);
        if (end == f[1].c_str())
            throw InputError("gold tsv line " + std::to_string(line_no) +
                             ": non-numeric rating '" + f[1] + "'");
        auto words = tokenize(f[0]);
        Concept c{words, 0};
        gold[c.surface()] = higher_is_abstract ? v : -v;
    }
    return gold;
}

std::vector<Concept> read_concepts_file(std::istream& in) {
    std::vector<Concept> out;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty() || is_comment_line(line)) continue;
        auto words = tokenize(line);
        if (words.empty()) continue;
        if (words.size() > 3)
            throw InputError("concepts file line " + std::to_string(line_no) +
                             ": more than 3 words in '" + line + "'");
        out.push_back(Concept{std::move(words), 0});
    }
    return out;
}

void parallel_for(std::size_t n, int workers, const std::function<void(std::size_t)>& fn) {
    if (n == 0) return;
    std::size_t w = workers > 0 ? static_cast<std::size_t>(workers)
                                : std::max(1u, std::thread::hardware_concurrency());
    w = std::min(w, n);
    if (w == 1) {
        for (std::size_t i = 0; i < n; ++i) fn(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    pool.reserve(w);
    for (std::size_t k = 0; k < w; ++k)
        pool.emplace_back([&] {
            for (std::size_t i = next.fetch_add(1); i < n; i = next.fetch_add(1)) fn(i);
        });
    for (auto& th : pool) th.join();
}

}  // namespace abst
