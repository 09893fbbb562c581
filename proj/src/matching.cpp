#include "dctface/matching.hpp"

#include <algorithm>
#include <cmath>

#include "dctface/error.hpp"
#include "dctface/image.hpp"

namespace dctface {

const char* metric_name(DistanceMetric m) {
    return m == DistanceMetric::SumAbs ? "sum-abs" : "euclidean";
}

std::optional<DistanceMetric> metric_from_name(std::string_view name) {
    if (name == "sum-abs") return DistanceMetric::SumAbs;
    if (name == "euclidean") return DistanceMetric::Euclidean;
    return std::nullopt;
}

RankList::RankList(std::vector<MatchScore> scores) : entries_(std::move(scores)) {
    std::sort(entries_.begin(), entries_.end(), [](const MatchScore& a, const MatchScore& b) {
        if (a.distance != b.distance) return a.distance < b.distance;
        return a.subject_id < b.subject_id;
    });
}

bool RankList::contains(const std::string& subject_id) const {
    for (const MatchScore& s : entries_) {
        if (s.subject_id == subject_id) return true;
    }
    return false;
}

int RankList::rank_of(const std::string& subject_id) const {
    for (std::size_t i = 0; i < entries_.size(); ++i) {
        if (entries_[i].subject_id == subject_id) return static_cast<int>(i) + 1;
    }
    throw MatchError("subject \"" + subject_id + "\" is not in the rank list");
}

const MatchScore& RankList::top() const {
    if (entries_.empty()) {
        throw MatchError("rank list is empty");
    }
    return entries_.front();
}

double coeff_distance(const CoeffVector& a, const CoeffVector& b, DistanceMetric metric) {
    if (a.values.size() != b.values.size()) {
        throw MatchError("coefficient vectors have different lengths (" +
                         std::to_string(a.values.size()) + " vs " +
                         std::to_string(b.values.size()) + ")");
    }
    if (a.source_rows != b.source_rows || a.source_cols != b.source_cols) {
        throw MatchError("coefficient vectors come from different region shapes");
    }
    double acc = 0.0;
    if (metric == DistanceMetric::SumAbs) {
        for (std::size_t i = 0; i < a.values.size(); ++i) {
            acc += std::abs(a.values[i] - b.values[i]);
        }
        return acc;
    }
    for (std::size_t i = 0; i < a.values.size(); ++i) {
        const double d = a.values[i] - b.values[i];
        acc += d * d;
    }
    return std::sqrt(acc);
}

RankList rank_gallery(const FaceTemplate& probe, std::span<const FaceTemplate> gallery,
                      Region region, bool normalize, DistanceMetric metric) {
    if (gallery.empty()) {
        throw MatchError("gallery is empty");
    }
    for (const FaceTemplate& g : gallery) {
        if (g.specs != probe.specs) {
            throw MatchError("gallery template \"" + g.subject_id +
                             "\" was built with different region specs than the probe");
        }
    }

    const CoeffVector& probe_vec = probe.region(region);
    std::vector<MatchScore> scores;
    scores.reserve(gallery.size());
    CoeffVector scaled = probe_vec;
    for (const FaceTemplate& g : gallery) {
        const CoeffVector* lhs = &probe_vec;
        if (normalize) {
            const double factor = normalization_factor(g.mean_intensity, probe.mean_intensity);
            for (std::size_t i = 0; i < probe_vec.values.size(); ++i) {
                scaled.values[i] = probe_vec.values[i] * factor;
            }
            lhs = &scaled;
        }
        scores.push_back({g.subject_id, coeff_distance(*lhs, g.region(region), metric)});
    }
    return RankList(std::move(scores));
}

}  // namespace dctface
