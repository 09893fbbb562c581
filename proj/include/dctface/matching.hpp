#pragma once

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "dctface/features.hpp"

namespace dctface {

// "sum-abs" totals the per-coefficient absolute differences; "euclidean" is
// the usual L2 alternative.
enum class DistanceMetric { SumAbs, Euclidean };

const char* metric_name(DistanceMetric m);
std::optional<DistanceMetric> metric_from_name(std::string_view name);

struct MatchScore {
    std::string subject_id;
    double distance = 0.0;

    bool operator==(const MatchScore&) const = default;
};

// Gallery subjects ordered by ascending distance; ties broken by ascending
// subject id. Ranks are 1-based positions with no gaps.
class RankList {
public:
    RankList() = default;
    explicit RankList(std::vector<MatchScore> scores);

    const std::vector<MatchScore>& entries() const noexcept { return entries_; }
    std::size_t size() const noexcept { return entries_.size(); }
    bool contains(const std::string& subject_id) const;

    // 1 = smallest distance. Throws MatchError for an unknown subject.
    int rank_of(const std::string& subject_id) const;

    const MatchScore& top() const;

    bool operator==(const RankList&) const = default;

private:
    std::vector<MatchScore> entries_;
};

double coeff_distance(const CoeffVector& a, const CoeffVector& b, DistanceMetric metric);

// Distances between the probe's region vector and each gallery template's.
// With normalize on, the probe vector is first scaled by
// gallery_mean / probe_mean per pair; by DCT linearity this equals rescaling
// the probe pixels before transforming.
RankList rank_gallery(const FaceTemplate& probe, std::span<const FaceTemplate> gallery,
                      Region region, bool normalize, DistanceMetric metric);

}  // namespace dctface
