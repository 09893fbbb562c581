#include "dctface/evaluation.hpp"

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>

#include "dctface/error.hpp"
#include "dctface/gallery.hpp"
#include "dctface/image.hpp"

namespace dctface {

namespace {

std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> fields;
    std::string field;
    for (char c : line) {
        if (c == ',') {
            fields.push_back(field);
            field.clear();
        } else {
            field += c;
        }
    }
    fields.push_back(field);
    return fields;
}

std::string percent(double rate) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.2f", rate * 100.0);
    return buf;
}

}  // namespace

DatasetManifest parse_manifest_csv(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    if (!std::getline(in, line)) {
        throw ManifestError("manifest is empty");
    }
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line != "image,landmarks,subject,role") {
        throw ManifestError("manifest header must be \"image,landmarks,subject,role\"");
    }

    DatasetManifest manifest;
    std::size_t line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        const std::vector<std::string> fields = split_csv_line(line);
        if (fields.size() != 4) {
            throw ManifestError("manifest line " + std::to_string(line_no) +
                                ": expected 4 fields, got " + std::to_string(fields.size()));
        }
        ManifestEntry entry;
        entry.image_path = fields[0];
        entry.landmarks_path = fields[1];
        entry.subject_id = fields[2];
        if (fields[3] == "gallery") {
            entry.role = EntryRole::Gallery;
        } else if (fields[3] == "probe") {
            entry.role = EntryRole::Probe;
        } else {
            throw ManifestError("manifest line " + std::to_string(line_no) +
                                ": role must be \"gallery\" or \"probe\", got \"" + fields[3] +
                                "\"");
        }
        if (entry.image_path.empty() || entry.landmarks_path.empty() ||
            entry.subject_id.empty()) {
            throw ManifestError("manifest line " + std::to_string(line_no) +
                                ": empty field");
        }
        manifest.entries.push_back(std::move(entry));
    }
    validate_manifest(manifest);
    return manifest;
}

DatasetManifest load_manifest_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw IoError("cannot open manifest file: " + path);
    }
    std::stringstream ss;
    ss << in.rdbuf();
    DatasetManifest manifest = parse_manifest_csv(ss.str());

    const std::filesystem::path base = std::filesystem::path(path).parent_path();
    for (ManifestEntry& e : manifest.entries) {
        if (std::filesystem::path(e.image_path).is_relative()) {
            e.image_path = (base / e.image_path).string();
        }
        if (std::filesystem::path(e.landmarks_path).is_relative()) {
            e.landmarks_path = (base / e.landmarks_path).string();
        }
    }
    return manifest;
}

void validate_manifest(const DatasetManifest& manifest) {
    std::set<std::string> gallery_ids;
    std::size_t probes = 0;
    for (const ManifestEntry& e : manifest.entries) {
        if (e.role == EntryRole::Gallery) {
            if (!gallery_ids.insert(e.subject_id).second) {
                throw ManifestError("manifest declares more than one gallery image for subject \"" +
                                    e.subject_id + "\"");
            }
        } else {
            ++probes;
        }
    }
    if (gallery_ids.empty()) {
        throw ManifestError("manifest has no gallery entries");
    }
    if (probes == 0) {
        throw ManifestError("manifest has no probe entries");
    }
    for (const ManifestEntry& e : manifest.entries) {
        if (e.role == EntryRole::Probe && gallery_ids.count(e.subject_id) == 0) {
            throw ManifestError("probe subject \"" + e.subject_id +
                                "\" has no gallery entry");
        }
    }
}

double recognition_rate(std::size_t correct, std::size_t total) {
    if (total == 0) {
        throw Error("recognition rate of zero trials is undefined");
    }
    if (correct > total) {
        throw Error("correct count exceeds total count");
    }
    return static_cast<double>(correct) / static_cast<double>(total);
}

std::vector<double> cmc_curve(std::span<const RankedTrial> trials, int max_k) {
    if (trials.empty()) {
        throw Error("CMC curve of zero trials is undefined");
    }
    if (max_k < 1) {
        throw Error("CMC curve needs max_k >= 1");
    }
    std::vector<std::size_t> hits(static_cast<std::size_t>(max_k), 0);
    for (const RankedTrial& t : trials) {
        const int rank = t.ranking.rank_of(t.true_id);  // throws when the id is missing
        for (int k = rank; k <= max_k; ++k) {
            ++hits[static_cast<std::size_t>(k) - 1];
        }
    }
    std::vector<double> rates(static_cast<std::size_t>(max_k));
    for (std::size_t k = 0; k < rates.size(); ++k) {
        rates[k] = static_cast<double>(hits[k]) / static_cast<double>(trials.size());
    }
    return rates;
}

FarFrr far_frr(std::span<const VerificationTrial> trials) {
    std::size_t genuine = 0, genuine_rejected = 0;
    std::size_t impostor = 0, impostor_accepted = 0;
    for (const VerificationTrial& t : trials) {
        if (t.genuine) {
            ++genuine;
            if (!t.accepted) ++genuine_rejected;
        } else {
            ++impostor;
            if (t.accepted) ++impostor_accepted;
        }
    }
    FarFrr out;
    if (impostor > 0) {
        out.far = static_cast<double>(impostor_accepted) / static_cast<double>(impostor);
    }
    if (genuine > 0) {
        out.frr = static_cast<double>(genuine_rejected) / static_cast<double>(genuine);
    }
    return out;
}

const ReportCell& ExperimentReport::cell(FusionMethod method, bool normalized) const {
    for (const ReportCell& c : cells) {
        if (c.method == method && c.normalized == normalized) return c;
    }
    throw Error("report has no such cell");
}

std::string ExperimentReport::to_csv() const {
    std::string out = "method,normalized,rank1,rank2,rank3,far,frr,invalid_count,total\n";
    for (const ReportCell& c : cells) {
        out += fusion_method_name(c.method);
        out += c.normalized ? ",true" : ",false";
        for (const auto& rate : c.rank_rates) {
            out += ',';
            if (rate) out += percent(*rate);
        }
        out += ',';
        if (c.far) out += percent(*c.far);
        out += ',';
        if (c.frr) out += percent(*c.frr);
        out += ',' + std::to_string(c.invalid_count);
        out += ',' + std::to_string(c.total);
        out += '\n';
    }
    return out;
}

ExperimentReport run_experiment(const DatasetManifest& manifest, const ExperimentConfig& config) {
    validate_manifest(manifest);

    // Enroll the gallery.
    Gallery gallery;
    gallery.region_specs = config.region_specs;
    gallery.default_metric = config.metric;
    for (const ManifestEntry& e : manifest.entries) {
        if (e.role != EntryRole::Gallery) continue;
        FaceTemplate t = build_template(load_pgm_file(e.image_path),
                                        load_landmarks_file(e.landmarks_path),
                                        config.region_specs);
        t.subject_id = e.subject_id;
        gallery.add(std::move(t));
    }

    // Probe templates do not depend on the normalization flag, so build once.
    struct Probe {
        std::string true_id;
        FaceTemplate tmpl;
    };
    std::vector<Probe> probes;
    for (const ManifestEntry& e : manifest.entries) {
        if (e.role != EntryRole::Probe) continue;
        probes.push_back({e.subject_id,
                          build_template(load_pgm_file(e.image_path),
                                         load_landmarks_file(e.landmarks_path),
                                         config.region_specs)});
    }

    ExperimentReport report;
    report.config = config;

    for (FusionMethod method : kFusionMethods) {
        for (bool normalized : {false, true}) {
            ReportCell cell;
            cell.method = method;
            cell.normalized = normalized;
            cell.total = probes.size();

            if (method == FusionMethod::GlobalAndLocal) {
                std::size_t correct = 0;
                for (const Probe& p : probes) {
                    const Decision d = identify(p.tmpl, gallery.subjects, method, config.weights,
                                                normalized, config.metric);
                    if (!d.valid) {
                        ++cell.invalid_count;
                    } else if (d.subject_id == p.true_id) {
                        ++correct;
                    }
                }
                cell.correct = correct;
                cell.rank_rates[0] = recognition_rate(correct, probes.size());

                // Verification: one genuine claim per probe, plus an impostor
                // claim against every other enrolled subject.
                std::vector<VerificationTrial> trials;
                for (const Probe& p : probes) {
                    for (const FaceTemplate& g : gallery.subjects) {
                        const Decision d = verify(p.tmpl, gallery.subjects, g.subject_id,
                                                  config.weights, normalized, config.metric);
                        trials.push_back({g.subject_id == p.true_id, d.valid});
                    }
                }
                const FarFrr rates = far_frr(trials);
                cell.far = rates.far;
                cell.frr = rates.frr;
            } else {
                std::vector<RankedTrial> ranked;
                ranked.reserve(probes.size());
                for (const Probe& p : probes) {
                    const Decision d = identify(p.tmpl, gallery.subjects, method, config.weights,
                                                normalized, config.metric);
                    ranked.push_back({d.ranking, p.true_id});
                }
                const std::vector<double> cmc = cmc_curve(ranked, 3);
                for (std::size_t k = 0; k < 3; ++k) cell.rank_rates[k] = cmc[k];
                cell.correct = 0;
                for (const RankedTrial& t : ranked) {
                    if (t.ranking.rank_of(t.true_id) == 1) ++cell.correct;
                }
            }
            report.cells.push_back(std::move(cell));
        }
    }
    return report;
}

}  // namespace dctface
