#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "dctface/fusion.hpp"

namespace dctface {

enum class EntryRole { Gallery, Probe };

struct ManifestEntry {
    std::string image_path;
    std::string landmarks_path;
    std::string subject_id;
    EntryRole role = EntryRole::Gallery;
};

// CSV with header "image,landmarks,subject,role". Exactly one gallery image
// per subject; every probe subject must be enrolled; at least one gallery and
// one probe entry.
struct DatasetManifest {
    std::vector<ManifestEntry> entries;
};

DatasetManifest parse_manifest_csv(const std::string& text);
// Relative image/landmark paths are resolved against the manifest's directory.
DatasetManifest load_manifest_file(const std::string& path);
void validate_manifest(const DatasetManifest& manifest);

// correct / total.
double recognition_rate(std::size_t correct, std::size_t total);

struct RankedTrial {
    RankList ranking;
    std::string true_id;
};

// rate[k-1] = fraction of trials whose true id has rank <= k, for k = 1..max_k.
std::vector<double> cmc_curve(std::span<const RankedTrial> trials, int max_k);

struct VerificationTrial {
    bool genuine = false;
    bool accepted = false;
};

struct FarFrr {
    std::optional<double> far;  // absent when there were no impostor trials
    std::optional<double> frr;  // absent when there were no genuine trials
};

FarFrr far_frr(std::span<const VerificationTrial> trials);

// One (method, normalized) cell of the experiment table. rank_rates are
// absent where the method defines no such rank (AND logic yields only a
// rank-1 agreement); far/frr are filled on the AND rows, where verification
// is defined.
struct ReportCell {
    FusionMethod method = FusionMethod::Global;
    bool normalized = false;
    std::array<std::optional<double>, 3> rank_rates;
    std::size_t correct = 0;
    std::size_t total = 0;
    std::optional<double> far;
    std::optional<double> frr;
    std::size_t invalid_count = 0;
};

struct ExperimentConfig {
    DistanceMetric metric = DistanceMetric::SumAbs;
    FeatureWeights weights = default_feature_weights();
    RegionSpecs region_specs = default_region_specs();
};

struct ExperimentReport {
    std::vector<ReportCell> cells;
    ExperimentConfig config;  // echo of what produced the numbers

    const ReportCell& cell(FusionMethod method, bool normalized) const;

    // Header "method,normalized,rank1,rank2,rank3,far,frr,invalid_count,total";
    // rates as percentages with two decimals, absent rates as empty fields.
    std::string to_csv() const;
};

// Enrolls the gallery entries, evaluates every probe under all four methods
// with normalization off and on, and measures FAR/FRR from AND-logic
// verification trials (genuine claim per probe plus one impostor claim per
// other enrolled subject). Deterministic given identical inputs.
ExperimentReport run_experiment(const DatasetManifest& manifest, const ExperimentConfig& config);

}  // namespace dctface
