#include "dctface/fusion.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <sstream>

#include "dctface/error.hpp"
#include "json.hpp"

namespace dctface {

const char* fusion_method_name(FusionMethod m) {
    switch (m) {
        case FusionMethod::Global: return "global";
        case FusionMethod::Local: return "local";
        case FusionMethod::GlobalPlusLocal: return "global+local";
        case FusionMethod::GlobalAndLocal: return "and";
    }
    return "?";
}

std::optional<FusionMethod> fusion_method_from_name(std::string_view name) {
    if (name == "global" || name == "g") return FusionMethod::Global;
    if (name == "local" || name == "l") return FusionMethod::Local;
    if (name == "global+local" || name == "gl") return FusionMethod::GlobalPlusLocal;
    if (name == "and") return FusionMethod::GlobalAndLocal;
    return std::nullopt;
}

std::vector<double> normalized_weights(std::span<const double> rates) {
    if (rates.empty()) {
        throw FusionError("cannot derive weights from an empty rate list");
    }
    double sum = 0.0;
    for (double r : rates) {
        if (r < 0.0) {
            throw FusionError("recognition rates must be non-negative");
        }
        sum += r;
    }
    if (sum <= 0.0) {
        throw FusionError("cannot derive weights from all-zero rates");
    }
    std::vector<double> out(rates.begin(), rates.end());
    for (double& w : out) w /= sum;
    return out;
}

FeatureWeights default_feature_weights() {
    // Per-feature recognition rates for entire image, left eye, right eye,
    // nose and mouth.
    const std::array<double, kRegionCount> rates = {88.25, 86.10, 87.18, 56.20, 52.35};
    const std::vector<double> w = normalized_weights(rates);
    FeatureWeights out;
    std::copy(w.begin(), w.end(), out.values.begin());
    return out;
}

std::vector<double> minmax_normalize(std::span<const MatchScore> scores) {
    if (scores.empty()) {
        throw FusionError("cannot min-max normalize an empty score list");
    }
    double lo = scores.front().distance;
    double hi = lo;
    for (const MatchScore& s : scores) {
        lo = std::min(lo, s.distance);
        hi = std::max(hi, s.distance);
    }
    std::vector<double> out;
    out.reserve(scores.size());
    if (hi == lo) {
        out.assign(scores.size(), 0.0);
        return out;
    }
    for (const MatchScore& s : scores) {
        out.push_back((s.distance - lo) / (hi - lo));
    }
    return out;
}

RankList fuse_weighted(std::span<const FeatureRanking> features, const FeatureWeights& weights) {
    if (features.empty()) {
        throw FusionError("cannot fuse an empty feature set");
    }

    // All rankings must cover the same subjects.
    std::vector<std::string> subjects;
    for (const MatchScore& s : features.front().ranking.entries()) {
        subjects.push_back(s.subject_id);
    }
    std::sort(subjects.begin(), subjects.end());
    for (const FeatureRanking& f : features) {
        std::vector<std::string> ids;
        for (const MatchScore& s : f.ranking.entries()) ids.push_back(s.subject_id);
        std::sort(ids.begin(), ids.end());
        if (ids != subjects) {
            throw FusionError("per-feature rankings cover different subject sets");
        }
    }

    double weight_sum = 0.0;
    for (const FeatureRanking& f : features) weight_sum += weights[f.region];
    if (weight_sum <= 0.0) {
        throw FusionError("participating feature weights sum to zero");
    }

    std::map<std::string, double> fused;
    for (const std::string& id : subjects) fused[id] = 0.0;
    for (const FeatureRanking& f : features) {
        const double w = weights[f.region] / weight_sum;
        const std::vector<double> norm = minmax_normalize(f.ranking.entries());
        for (std::size_t i = 0; i < norm.size(); ++i) {
            fused[f.ranking.entries()[i].subject_id] += w * norm[i];
        }
    }

    std::vector<MatchScore> scores;
    scores.reserve(fused.size());
    for (const auto& [id, score] : fused) scores.push_back({id, score});
    return RankList(std::move(scores));
}

namespace {

constexpr std::array<Region, 4> kLocalRegions = {Region::EyeLeft, Region::EyeRight, Region::Nose,
                                                 Region::Mouth};

RankList rank_locals_fused(const FaceTemplate& probe, std::span<const FaceTemplate> gallery,
                           const FeatureWeights& weights, bool normalize, DistanceMetric metric) {
    std::vector<FeatureRanking> locals;
    locals.reserve(kLocalRegions.size());
    for (Region r : kLocalRegions) {
        locals.push_back({r, rank_gallery(probe, gallery, r, normalize, metric)});
    }
    return fuse_weighted(locals, weights);
}

}  // namespace

Decision identify(const FaceTemplate& probe, std::span<const FaceTemplate> gallery,
                  FusionMethod method, const FeatureWeights& weights, bool normalize,
                  DistanceMetric metric) {
    Decision decision;
    decision.method = method;
    decision.normalized = normalize;

    switch (method) {
        case FusionMethod::Global: {
            decision.ranking = rank_gallery(probe, gallery, Region::Global, normalize, metric);
            decision.subject_id = decision.ranking.top().subject_id;
            decision.valid = true;
            break;
        }
        case FusionMethod::Local: {
            decision.ranking = rank_locals_fused(probe, gallery, weights, normalize, metric);
            decision.subject_id = decision.ranking.top().subject_id;
            decision.valid = true;
            break;
        }
        case FusionMethod::GlobalPlusLocal: {
            std::vector<FeatureRanking> all;
            all.reserve(kRegionCount);
            for (Region r : kRegions) {
                all.push_back({r, rank_gallery(probe, gallery, r, normalize, metric)});
            }
            decision.ranking = fuse_weighted(all, weights);
            decision.subject_id = decision.ranking.top().subject_id;
            decision.valid = true;
            break;
        }
        case FusionMethod::GlobalAndLocal: {
            const RankList global = rank_gallery(probe, gallery, Region::Global, normalize, metric);
            const RankList local = rank_locals_fused(probe, gallery, weights, normalize, metric);
            decision.ranking = global;
            if (global.top().subject_id == local.top().subject_id) {
                decision.subject_id = global.top().subject_id;
                decision.valid = true;
            }
            break;
        }
    }
    return decision;
}

Decision verify(const FaceTemplate& probe, std::span<const FaceTemplate> gallery,
                const std::string& claimed_id, const FeatureWeights& weights, bool normalize,
                DistanceMetric metric) {
    bool enrolled = false;
    for (const FaceTemplate& g : gallery) {
        if (g.subject_id == claimed_id) enrolled = true;
    }
    if (!enrolled) {
        throw FusionError("claimed subject \"" + claimed_id + "\" is not enrolled");
    }

    const RankList global = rank_gallery(probe, gallery, Region::Global, normalize, metric);
    const RankList local = rank_locals_fused(probe, gallery, weights, normalize, metric);

    Decision decision;
    decision.method = FusionMethod::GlobalAndLocal;
    decision.normalized = normalize;
    decision.subject_id = claimed_id;
    decision.ranking = global;
    decision.valid = global.rank_of(claimed_id) == 1 && local.rank_of(claimed_id) == 1;
    return decision;
}

namespace {

RegionSpecs region_specs_from_json(const nlohmann::json& j) {
    RegionSpecs specs = default_region_specs();
    if (j.contains("region_sizes")) {
        const auto& sizes = j.at("region_sizes");
        if (!sizes.is_object()) {
            throw ConfigError("config: \"region_sizes\" must be an object");
        }
        for (const auto& [key, value] : sizes.items()) {
            const std::optional<Region> r = region_from_name(key);
            if (!r) {
                throw ConfigError("config: unknown region \"" + key + "\" in region_sizes");
            }
            if (!value.is_array() || value.size() != 2 || !value[0].is_number_integer() ||
                !value[1].is_number_integer()) {
                throw ConfigError("config: region_sizes." + key + " must be [width, height]");
            }
            specs[region_index(*r)].width = value[0].get<int>();
            specs[region_index(*r)].height = value[1].get<int>();
        }
    }
    if (j.contains("kept_coefficients")) {
        const auto& kept = j.at("kept_coefficients");
        if (!kept.is_object()) {
            throw ConfigError("config: \"kept_coefficients\" must be an object");
        }
        for (const auto& [key, value] : kept.items()) {
            const std::optional<Region> r = region_from_name(key);
            if (!r) {
                throw ConfigError("config: unknown region \"" + key + "\" in kept_coefficients");
            }
            if (!value.is_number_integer()) {
                throw ConfigError("config: kept_coefficients." + key + " must be an integer");
            }
            specs[region_index(*r)].kept_coefficients = value.get<int>();
        }
    }
    for (const RegionSpec& spec : specs) {
        if (spec.width < 1 || spec.height < 1 || spec.kept_coefficients < 1 ||
            spec.kept_coefficients > spec.width * spec.height) {
            throw ConfigError(std::string("config: invalid spec for region ") +
                              region_name(spec.id));
        }
    }
    return specs;
}

}  // namespace

PipelineConfig parse_config_json(const std::string& text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw ConfigError(std::string("config: invalid JSON: ") + e.what());
    }
    if (!j.is_object()) {
        throw ConfigError("config: top level must be an object");
    }

    static const std::array<std::string, 6> known = {"method",  "metric",            "normalize",
                                                     "weights", "kept_coefficients", "region_sizes"};
    for (const auto& [key, value] : j.items()) {
        (void)value;
        if (std::find(known.begin(), known.end(), key) == known.end()) {
            throw ConfigError("config: unknown key \"" + key + "\"");
        }
    }

    PipelineConfig cfg;
    if (j.contains("method")) {
        if (!j.at("method").is_string()) {
            throw ConfigError("config: \"method\" must be a string");
        }
        const std::string name = j.at("method").get<std::string>();
        cfg.method = fusion_method_from_name(name);
        if (!cfg.method) {
            throw ConfigError("config: unknown method \"" + name + "\"");
        }
    }
    if (j.contains("metric")) {
        if (!j.at("metric").is_string()) {
            throw ConfigError("config: \"metric\" must be a string");
        }
        const std::string name = j.at("metric").get<std::string>();
        cfg.metric = metric_from_name(name);
        if (!cfg.metric) {
            throw ConfigError("config: unknown metric \"" + name + "\"");
        }
    }
    if (j.contains("normalize")) {
        if (!j.at("normalize").is_boolean()) {
            throw ConfigError("config: \"normalize\" must be a boolean");
        }
        cfg.normalize = j.at("normalize").get<bool>();
    }
    if (j.contains("weights")) {
        const auto& w = j.at("weights");
        if (!w.is_array() || w.size() != kRegionCount) {
            throw ConfigError(
                "config: \"weights\" must be five reals "
                "(global, eye_left, eye_right, nose, mouth)");
        }
        FeatureWeights weights;
        for (std::size_t i = 0; i < kRegionCount; ++i) {
            if (!w[i].is_number()) {
                throw ConfigError("config: weights must be numbers");
            }
            weights.values[i] = w[i].get<double>();
            if (weights.values[i] < 0.0) {
                throw ConfigError("config: weights must be non-negative");
            }
        }
        cfg.weights = weights;
    }
    if (j.contains("region_sizes") || j.contains("kept_coefficients")) {
        cfg.region_specs = region_specs_from_json(j);
    }
    return cfg;
}

PipelineConfig load_config_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw IoError("cannot open config file: " + path);
    }
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_config_json(ss.str());
}

}  // namespace dctface
