#pragma once

#include <optional>
#include <span>
#include <vector>

#include "abst/embeddings.hpp"
#include "abst/types.hpp"
#include "abst/weak_labels.hpp"

namespace abst {

// How the 0.25 proximity threshold is read: as a cosine-distance bound
// (1 - similarity <= radius, the default) or as a similarity floor
// (similarity >= radius).
enum class RadiusMode { Distance, Similarity };

// Radius nearest-neighbor classifier: abstractness of a vector is the
// fraction of abstract weakly-labeled training concepts inside a fixed
// cosine radius. Scoring is an exact linear scan; training vectors are
// stored L2-normalized so a neighbor test is one dot product.
class RadiusClassifier {
public:
    RadiusClassifier(std::vector<std::vector<double>> unit_vectors,
                     std::vector<Label> labels, double radius,
                     RadiusMode mode = RadiusMode::Distance);

    // In-radius abstract fraction; nullopt when the neighborhood is empty.
    // Throws std::domain_error on a zero query vector.
    std::optional<double> score_vector(std::span<const double> v) const;

    std::size_t size() const { return labels_.size(); }
    std::size_t dim() const { return dim_; }
    double radius() const { return radius_; }
    std::size_t dropped_oov() const { return dropped_oov_; }
    void set_dropped_oov(std::size_t n) { dropped_oov_ = n; }

private:
    std::size_t dim_;
    std::vector<double> data_;     // normalized rows
    std::vector<Label> labels_;
    double radius_;
    RadiusMode mode_;
    std::size_t dropped_oov_ = 0;
};

// Embeds every resolvable training concept (multi-words averaged); OOV
// concepts are dropped and counted. Throws when a class resolves to
// nothing or the radius is degenerate.
RadiusClassifier build_radius_classifier(const WeakLabeledSet& wls,
                                         const EmbeddingTable& t,
                                         double radius = 0.25,
                                         RadiusMode mode = RadiusMode::Distance);

// compose_multiword then score_vector; nullopt when a constituent is OOV
// or the neighborhood is empty.
std::optional<double> score_concept_rad(const RadiusClassifier& c,
                                        const EmbeddingTable& t,
                                        const Concept& query);

}  // namespace abst
