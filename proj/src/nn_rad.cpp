#include "abst/nn_rad.hpp"

#include <cmath>
#include <stdexcept>

#include "abst/kernels.hpp"

namespace abst {

namespace {

// Unit-normalizes in place; false for a zero vector.
bool normalize(std::vector<double>& v) {
    const double nn = kern::dot(v.data(), v.data(), v.size());
    if (nn == 0.0) return false;
    const double inv = 1.0 / std::sqrt(nn);
    kern::scale(inv, v.data(), v.size());
    return true;
}

}  // namespace

RadiusClassifier::RadiusClassifier(std::vector<std::vector<double>> unit_vectors,
                                   std::vector<Label> labels, double radius,
                                   RadiusMode mode)
    : dim_(unit_vectors.empty() ? 0 : unit_vectors.front().size()),
      labels_(std::move(labels)),
      radius_(radius),
      mode_(mode) {
    if (unit_vectors.empty() || unit_vectors.size() != labels_.size())
        throw std::invalid_argument("RadiusClassifier: vectors/labels mismatch or empty");
    if (mode_ == RadiusMode::Distance && (radius_ <= 0.0 || radius_ >= 2.0))
        throw std::invalid_argument("RadiusClassifier: distance radius must be in (0, 2)");
    bool has[2] = {false, false};
    for (Label l : labels_) has[l == Label::Abstract ? 0 : 1] = true;
    if (!has[0] || !has[1])
        throw std::invalid_argument("RadiusClassifier: both labels must be represented");
    data_.reserve(unit_vectors.size() * dim_);
    for (auto& v : unit_vectors) {
        if (v.size() != dim_)
            throw std::invalid_argument("RadiusClassifier: inconsistent dimensions");
        data_.insert(data_.end(), v.begin(), v.end());
    }
}

std::optional<double> RadiusClassifier::score_vector(std::span<const double> v) const {
    if (v.size() != dim_)
        throw std::invalid_argument("score_vector: dimension mismatch");
    std::vector<double> q(v.begin(), v.end());
    if (!normalize(q)) throw std::domain_error("score_vector: zero query vector");

    std::size_t in_radius = 0, abstract = 0;
    for (std::size_t i = 0; i < labels_.size(); ++i) {
        const double sim = kern::dot(data_.data() + i * dim_, q.data(), dim_);
        const bool inside = mode_ == RadiusMode::Distance ? (1.0 - sim) <= radius_
                                                          : sim >= radius_;
        if (!inside) continue;
        ++in_radius;
        if (labels_[i] == Label::Abstract) ++abstract;
    }
    if (in_radius == 0) return std::nullopt;
    return static_cast<double>(abstract) / static_cast<double>(in_radius);
}

RadiusClassifier build_radius_classifier(const WeakLabeledSet& wls,
                                         const EmbeddingTable& t, double radius,
                                         RadiusMode mode) {
    std::vector<std::vector<double>> vecs;
    std::vector<Label> labels;
    std::size_t dropped = 0;
    bool resolved[2] = {false, false};

    auto add = [&](const std::vector<Concept>& concepts, Label l) {
        for (const auto& c : concepts) {
            auto v = compose_multiword(t, c.words);
            if (!v || !normalize(*v)) {
                ++dropped;
                continue;
            }
            vecs.push_back(std::move(*v));
            labels.push_back(l);
            resolved[l == Label::Abstract ? 0 : 1] = true;
        }
    };
    add(wls.positives, Label::Abstract);
    add(wls.negatives, Label::Concrete);

    if (!resolved[0] || !resolved[1])
        throw std::runtime_error(
            "build_radius_classifier: a class has no embeddable concept "
            "(all out of vocabulary)");
    RadiusClassifier c(std::move(vecs), std::move(labels), radius, mode);
    c.set_dropped_oov(dropped);
    return c;
}

std::optional<double> score_concept_rad(const RadiusClassifier& c,
                                        const EmbeddingTable& t,
                                        const Concept& query) {
    auto v = compose_multiword(t, query.words);
    if (!v) return std::nullopt;
    return c.score_vector(*v);
}

}  // namespace abst
