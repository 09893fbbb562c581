#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <string_view>

#include "CLI11.hpp"
#include "dctface/error.hpp"
#include "dctface/evaluation.hpp"
#include "dctface/gallery.hpp"

namespace {

// Exit code contract: 0 success, 1 domain INVALID / not recognized,
// 2 usage error, 3 I/O or data error.
constexpr int kExitOk = 0;
constexpr int kExitInvalid = 1;
constexpr int kExitUsage = 2;
constexpr int kExitData = 3;

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

dctface::PipelineConfig resolve_config(const std::string& config_flag) {
    if (!config_flag.empty()) {
        return dctface::load_config_file(config_flag);
    }
    if (const char* env = std::getenv("DCTFACE_CONFIG"); env != nullptr && *env != '\0') {
        return dctface::load_config_file(env);
    }
    return {};
}

// Galleries carry the region specs their templates were built with; an
// explicitly configured spec set that disagrees is an error, never a silent
// rebuild.
void check_region_compat(const dctface::Gallery& gallery, const dctface::PipelineConfig& cfg) {
    if (cfg.region_specs && *cfg.region_specs != gallery.region_specs) {
        throw dctface::GalleryError(
            "configured region specs do not match the ones stored in the gallery");
    }
}

std::string format_distance(double d) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.6f", d);
    if (std::string_view(buf) == "-0.000000") return "0.000000";
    return buf;
}

struct CommonFlags {
    std::string gallery_path;
    std::string image_path;
    std::string landmarks_path;
    std::string config_path;
    std::string metric_name;
    bool no_normalize = false;
};

struct Resolved {
    dctface::Gallery gallery;
    dctface::FaceTemplate probe;
    dctface::DistanceMetric metric;
    bool normalize;
    dctface::FeatureWeights weights;
};

Resolved resolve_probe_run(const CommonFlags& flags) {
    const dctface::PipelineConfig cfg = resolve_config(flags.config_path);
    dctface::Gallery gallery = dctface::load_gallery(flags.gallery_path);
    check_region_compat(gallery, cfg);
    if (gallery.subjects.empty()) {
        throw dctface::MatchError("gallery \"" + flags.gallery_path + "\" has no subjects");
    }

    Resolved r{std::move(gallery), {}, dctface::DistanceMetric::SumAbs, true, {}};
    r.probe = dctface::build_template(dctface::load_pgm_file(flags.image_path),
                                      dctface::load_landmarks_file(flags.landmarks_path),
                                      r.gallery.region_specs);

    r.metric = cfg.metric.value_or(r.gallery.default_metric);
    if (!flags.metric_name.empty()) {
        const auto m = dctface::metric_from_name(flags.metric_name);
        if (!m) throw UsageError("unknown metric \"" + flags.metric_name + "\"");
        r.metric = *m;
    }
    r.normalize = cfg.normalize.value_or(r.gallery.default_normalize);
    if (flags.no_normalize) r.normalize = false;
    r.weights = cfg.weights.value_or(dctface::default_feature_weights());
    return r;
}

int run_enroll(const CommonFlags& flags, const std::string& subject_id) {
    const dctface::PipelineConfig cfg = resolve_config(flags.config_path);

    dctface::Gallery gallery;
    if (std::filesystem::exists(flags.gallery_path)) {
        gallery = dctface::load_gallery(flags.gallery_path);
        check_region_compat(gallery, cfg);
    } else {
        gallery.region_specs = cfg.region_specs.value_or(dctface::default_region_specs());
        gallery.default_metric = cfg.metric.value_or(dctface::DistanceMetric::SumAbs);
        gallery.default_normalize = cfg.normalize.value_or(true);
    }

    dctface::FaceTemplate t = dctface::build_template(
        dctface::load_pgm_file(flags.image_path),
        dctface::load_landmarks_file(flags.landmarks_path), gallery.region_specs);
    t.subject_id = subject_id;
    gallery.add(std::move(t));
    dctface::save_gallery(gallery, flags.gallery_path);
    std::cout << "enrolled," << subject_id << "\n";
    return kExitOk;
}

int run_identify(const CommonFlags& flags, const std::string& method_name, int top_k) {
    const dctface::PipelineConfig cfg = resolve_config(flags.config_path);
    dctface::FusionMethod method = cfg.method.value_or(dctface::FusionMethod::Global);
    if (!method_name.empty()) {
        const auto m = dctface::fusion_method_from_name(method_name);
        if (!m) throw UsageError("unknown method \"" + method_name + "\"");
        method = *m;
    }
    if (top_k < 0) throw UsageError("--top-k must be non-negative");

    const Resolved r = resolve_probe_run(flags);
    const dctface::Decision decision =
        dctface::identify(r.probe, r.gallery.subjects, method, r.weights, r.normalize, r.metric);

    if (method == dctface::FusionMethod::GlobalAndLocal) {
        if (!decision.valid) {
            std::cout << "INVALID\n";
            return kExitInvalid;
        }
        std::cout << decision.subject_id << "\n";
        return kExitOk;
    }

    std::size_t limit = decision.ranking.size();
    if (top_k > 0) limit = std::min(limit, static_cast<std::size_t>(top_k));
    for (std::size_t i = 0; i < limit; ++i) {
        const dctface::MatchScore& s = decision.ranking.entries()[i];
        std::cout << (i + 1) << "," << s.subject_id << "," << format_distance(s.distance) << "\n";
    }
    return kExitOk;
}

int run_verify(const CommonFlags& flags, const std::string& claim) {
    const Resolved r = resolve_probe_run(flags);
    if (r.gallery.find(claim) == nullptr) {
        throw UsageError("claimed subject \"" + claim + "\" is not enrolled");
    }
    const dctface::Decision decision =
        dctface::verify(r.probe, r.gallery.subjects, claim, r.weights, r.normalize, r.metric);
    if (decision.valid) {
        std::cout << "ACCEPT\n";
        return kExitOk;
    }
    std::cout << "INVALID\n";
    return kExitInvalid;
}

int run_evaluate(const std::string& manifest_path, const std::string& out_path,
                 const std::string& config_path) {
    const dctface::PipelineConfig cfg = resolve_config(config_path);
    dctface::ExperimentConfig ec;
    if (cfg.metric) ec.metric = *cfg.metric;
    if (cfg.weights) ec.weights = *cfg.weights;
    if (cfg.region_specs) ec.region_specs = *cfg.region_specs;

    const dctface::DatasetManifest manifest = dctface::load_manifest_file(manifest_path);
    const dctface::ExperimentReport report = dctface::run_experiment(manifest, ec);

    std::ofstream out(out_path, std::ios::binary | std::ios::trunc);
    if (!out) throw dctface::IoError("cannot open report file for writing: " + out_path);
    out << report.to_csv();
    if (!out) throw dctface::IoError("failed to write report file: " + out_path);
    return kExitOk;
}

int run_dct_inspect(const std::string& image_path, int k) {
    if (k < 1) throw UsageError("--coeffs must be at least 1");
    const dctface::GrayImage img = dctface::load_pgm_file(image_path);
    if (static_cast<std::size_t>(k) > img.pixel_count()) {
        throw UsageError("--coeffs " + std::to_string(k) + " exceeds the pixel count " +
                         std::to_string(img.pixel_count()));
    }
    const dctface::CoeffVector zz = dctface::zigzag_scan(dctface::dct_2d(img));
    double total = 0.0, leading = 0.0;
    for (int i = 0; i < zz.kept(); ++i) {
        const double sq = zz.values[i] * zz.values[i];
        total += sq;
        if (i < k) leading += sq;
    }
    for (int i = 0; i < k; ++i) {
        std::cout << i << "," << format_distance(zz.values[i]) << "\n";
    }
    const double fraction = total > 0.0 ? leading / total : 1.0;
    std::cout << "energy_fraction," << format_distance(fraction) << "\n";
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Face identification with global and local DCT features"};
    app.require_subcommand(1);

    CommonFlags flags;
    std::string subject_id, claim, method_name, manifest_path, out_path;
    int top_k = 0;
    int coeffs = 64;

    auto add_common = [&](CLI::App* cmd, bool with_match_flags) {
        cmd->add_option("--gallery", flags.gallery_path, "Gallery JSON file")->required();
        cmd->add_option("--image", flags.image_path, "Probe image (binary PGM)")->required();
        cmd->add_option("--landmarks", flags.landmarks_path, "Landmark sidecar JSON")->required();
        cmd->add_option("--config", flags.config_path,
                        "Config JSON (default: $DCTFACE_CONFIG)");
        if (with_match_flags) {
            cmd->add_option("--metric", flags.metric_name, "sum-abs or euclidean");
            cmd->add_flag("--no-normalize", flags.no_normalize,
                          "Disable per-pair intensity normalization");
        }
    };

    CLI::App* enroll = app.add_subcommand("enroll", "Add a subject to a gallery");
    add_common(enroll, false);
    enroll->add_option("--id", subject_id, "Subject id to enroll")->required();

    CLI::App* identify = app.add_subcommand("identify", "Rank gallery subjects for a probe");
    add_common(identify, true);
    identify->add_option("--method", method_name, "g | l | gl | and");
    identify->add_option("--top-k", top_k, "Print at most this many ranks (0 = all)");

    CLI::App* verify = app.add_subcommand("verify", "Check a claimed identity (AND logic)");
    add_common(verify, true);
    verify->add_option("--claim", claim, "Claimed subject id")->required();

    CLI::App* evaluate = app.add_subcommand("evaluate", "Run the experiment table on a manifest");
    evaluate->add_option("--manifest", manifest_path, "Dataset manifest CSV")->required();
    evaluate->add_option("--out", out_path, "Report CSV output path")->required();
    evaluate->add_option("--config", flags.config_path, "Config JSON (default: $DCTFACE_CONFIG)");

    CLI::App* inspect = app.add_subcommand("dct-inspect", "Dump leading zigzag coefficients");
    inspect->add_option("--image", flags.image_path, "Image (binary PGM)")->required();
    inspect->add_option("--coeffs", coeffs, "Number of leading coefficients");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitUsage;
    }

    try {
        if (enroll->parsed()) return run_enroll(flags, subject_id);
        if (identify->parsed()) return run_identify(flags, method_name, top_k);
        if (verify->parsed()) return run_verify(flags, claim);
        if (evaluate->parsed()) return run_evaluate(manifest_path, out_path, flags.config_path);
        if (inspect->parsed()) return run_dct_inspect(flags.image_path, coeffs);
    } catch (const UsageError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const dctface::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitData;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitData;
    }
    return kExitUsage;
}
