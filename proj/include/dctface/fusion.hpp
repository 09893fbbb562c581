#pragma once

#include <array>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "dctface/matching.hpp"

namespace dctface {

enum class FusionMethod { Global, Local, GlobalPlusLocal, GlobalAndLocal };

inline constexpr std::array<FusionMethod, 4> kFusionMethods = {
    FusionMethod::Global, FusionMethod::Local, FusionMethod::GlobalPlusLocal,
    FusionMethod::GlobalAndLocal};

const char* fusion_method_name(FusionMethod m);
// Accepts both the long names and the CLI short forms g | l | gl | and.
std::optional<FusionMethod> fusion_method_from_name(std::string_view name);

// Per-feature weights, indexed by Region. Only the features participating in
// a method matter; their weights are renormalized to sum 1 at use.
struct FeatureWeights {
    std::array<double, kRegionCount> values{};

    double& operator[](Region r) { return values[region_index(r)]; }
    double operator[](Region r) const { return values[region_index(r)]; }

    bool operator==(const FeatureWeights&) const = default;
};

// w_i = rate_i / sum(rates). Throws FusionError when rates are all zero or
// any is negative.
std::vector<double> normalized_weights(std::span<const double> rates);

// Default weights: the per-feature recognition rates
// (global 88.25, eye_left 86.10, eye_right 87.18, nose 56.20, mouth 52.35),
// normalized.
FeatureWeights default_feature_weights();

// (s - min) / (max - min) per score, in input order; all zeros when the
// scores are all equal.
std::vector<double> minmax_normalize(std::span<const MatchScore> scores);

struct FeatureRanking {
    Region region;
    RankList ranking;
};

// Weighted sum of min-max normalized per-feature scores. All rankings must
// cover the same subject set; weights are renormalized over the features
// present.
RankList fuse_weighted(std::span<const FeatureRanking> features, const FeatureWeights& weights);

// Outcome of an identification or verification attempt. INVALID means the
// global and local modalities disagreed (identification) or the claim did not
// hold rank 1 in both (verification).
struct Decision {
    FusionMethod method = FusionMethod::Global;
    bool normalized = true;
    bool valid = false;
    std::string subject_id;  // identified / claimed subject when valid
    RankList ranking;        // the ranking backing the decision (global one for AND)
};

Decision identify(const FaceTemplate& probe, std::span<const FaceTemplate> gallery,
                  FusionMethod method, const FeatureWeights& weights, bool normalize,
                  DistanceMetric metric);

// Accepts iff claimed_id holds rank 1 in the global ranking AND rank 1 in the
// local-fused ranking. Throws FusionError when claimed_id is not enrolled.
Decision verify(const FaceTemplate& probe, std::span<const FaceTemplate> gallery,
                const std::string& claimed_id, const FeatureWeights& weights, bool normalize,
                DistanceMetric metric);

// Runtime configuration file (JSON). Every field is optional; absent fields
// fall back to gallery defaults or built-ins. Keys: "method", "metric",
// "normalize", "weights" (five reals: global, eye_left, eye_right, nose,
// mouth), "kept_coefficients" (per-region counts), "region_sizes"
// (per-region [width, height]).
struct PipelineConfig {
    std::optional<FusionMethod> method;
    std::optional<DistanceMetric> metric;
    std::optional<bool> normalize;
    std::optional<FeatureWeights> weights;
    std::optional<RegionSpecs> region_specs;
};

PipelineConfig parse_config_json(const std::string& text);
PipelineConfig load_config_file(const std::string& path);

}  // namespace dctface
