#include "dctface/gallery.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "dctface/error.hpp"
#include "json.hpp"

namespace dctface {

namespace {

constexpr int kGalleryFormatVersion = 1;

void validate_against_specs(const FaceTemplate& t, const RegionSpecs& specs) {
    if (t.subject_id.empty()) {
        throw GalleryError("gallery templates must carry a subject id");
    }
    if (!(t.mean_intensity > 0.0)) {
        throw GalleryError("subject \"" + t.subject_id + "\": mean intensity must be positive");
    }
    for (const RegionSpec& spec : specs) {
        const CoeffVector& v = t.region(spec.id);
        if (v.kept() != spec.kept_coefficients) {
            throw GalleryError("subject \"" + t.subject_id + "\": region " +
                               region_name(spec.id) + " has " + std::to_string(v.kept()) +
                               " coefficients, spec declares " +
                               std::to_string(spec.kept_coefficients));
        }
        if (v.source_rows != spec.height || v.source_cols != spec.width) {
            throw GalleryError("subject \"" + t.subject_id + "\": region " +
                               region_name(spec.id) + " source shape does not match its spec");
        }
    }
}

void validate_gallery(const Gallery& g) {
    for (const RegionSpec& spec : g.region_specs) {
        if (spec.width < 1 || spec.height < 1 || spec.kept_coefficients < 1 ||
            spec.kept_coefficients > spec.width * spec.height) {
            throw GalleryError(std::string("invalid region spec for ") + region_name(spec.id));
        }
    }
    for (std::size_t i = 0; i < g.subjects.size(); ++i) {
        validate_against_specs(g.subjects[i], g.region_specs);
        if (g.subjects[i].specs != g.region_specs) {
            throw GalleryError("subject \"" + g.subjects[i].subject_id +
                               "\" carries region specs different from the gallery's");
        }
        if (i > 0 && !(g.subjects[i - 1].subject_id < g.subjects[i].subject_id)) {
            throw GalleryError("duplicate subject id \"" + g.subjects[i].subject_id + "\"");
        }
    }
}

}  // namespace

const FaceTemplate* Gallery::find(const std::string& subject_id) const {
    for (const FaceTemplate& t : subjects) {
        if (t.subject_id == subject_id) return &t;
    }
    return nullptr;
}

void Gallery::add(FaceTemplate t) {
    validate_against_specs(t, region_specs);
    if (t.specs != region_specs) {
        throw GalleryError("subject \"" + t.subject_id +
                           "\" was built with region specs different from the gallery's");
    }
    if (find(t.subject_id) != nullptr) {
        throw GalleryError("subject \"" + t.subject_id + "\" is already enrolled");
    }
    const auto pos = std::lower_bound(
        subjects.begin(), subjects.end(), t,
        [](const FaceTemplate& a, const FaceTemplate& b) { return a.subject_id < b.subject_id; });
    subjects.insert(pos, std::move(t));
}

std::string serialize_gallery(const Gallery& gallery) {
    validate_gallery(gallery);

    nlohmann::json j;
    j["version"] = kGalleryFormatVersion;
    j["dct"] = kDctConventionId;
    j["zigzag"] = kZigzagConventionId;
    j["defaults"] = {{"metric", metric_name(gallery.default_metric)},
                     {"normalize", gallery.default_normalize}};

    nlohmann::json specs = nlohmann::json::object();
    for (const RegionSpec& spec : gallery.region_specs) {
        specs[region_name(spec.id)] = {{"width", spec.width},
                                       {"height", spec.height},
                                       {"kept", spec.kept_coefficients}};
    }
    j["region_specs"] = specs;

    nlohmann::json subjects = nlohmann::json::array();
    for (const FaceTemplate& t : gallery.subjects) {
        nlohmann::json s;
        s["id"] = t.subject_id;
        s["mean_intensity"] = t.mean_intensity;
        nlohmann::json regions = nlohmann::json::object();
        for (const RegionSpec& spec : gallery.region_specs) {
            regions[region_name(spec.id)] = t.region(spec.id).values;
        }
        s["regions"] = regions;
        subjects.push_back(std::move(s));
    }
    j["subjects"] = subjects;

    return j.dump(2) + "\n";
}

Gallery parse_gallery_json(const std::string& text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw GalleryError(std::string("gallery: invalid JSON: ") + e.what());
    }
    if (!j.is_object()) {
        throw GalleryError("gallery: top level must be an object");
    }

    if (!j.contains("version") || !j.at("version").is_number_integer() ||
        j.at("version").get<int>() != kGalleryFormatVersion) {
        throw GalleryError("gallery: unsupported or missing format version");
    }
    if (!j.contains("dct") || j.at("dct") != kDctConventionId) {
        throw GalleryError(std::string("gallery: DCT convention mismatch (this build uses ") +
                           kDctConventionId + ")");
    }
    if (!j.contains("zigzag") || j.at("zigzag") != kZigzagConventionId) {
        throw GalleryError(std::string("gallery: zigzag convention mismatch (this build uses ") +
                           kZigzagConventionId + ")");
    }

    Gallery g;
    if (j.contains("defaults")) {
        const auto& d = j.at("defaults");
        if (!d.is_object() || !d.contains("metric") || !d.contains("normalize") ||
            !d.at("metric").is_string() || !d.at("normalize").is_boolean()) {
            throw GalleryError("gallery: malformed defaults");
        }
        const auto metric = metric_from_name(d.at("metric").get<std::string>());
        if (!metric) {
            throw GalleryError("gallery: unknown metric in defaults");
        }
        g.default_metric = *metric;
        g.default_normalize = d.at("normalize").get<bool>();
    }

    if (!j.contains("region_specs") || !j.at("region_specs").is_object()) {
        throw GalleryError("gallery: missing region_specs");
    }
    for (Region r : kRegions) {
        const char* name = region_name(r);
        if (!j.at("region_specs").contains(name)) {
            throw GalleryError(std::string("gallery: region_specs missing ") + name);
        }
        const auto& s = j.at("region_specs").at(name);
        if (!s.is_object() || !s.contains("width") || !s.contains("height") ||
            !s.contains("kept")) {
            throw GalleryError(std::string("gallery: malformed spec for ") + name);
        }
        RegionSpec& spec = g.region_specs[region_index(r)];
        spec.id = r;
        spec.width = s.at("width").get<int>();
        spec.height = s.at("height").get<int>();
        spec.kept_coefficients = s.at("kept").get<int>();
    }

    if (!j.contains("subjects") || !j.at("subjects").is_array()) {
        throw GalleryError("gallery: missing subjects array");
    }
    for (const auto& s : j.at("subjects")) {
        if (!s.is_object() || !s.contains("id") || !s.contains("mean_intensity") ||
            !s.contains("regions") || !s.at("id").is_string()) {
            throw GalleryError("gallery: malformed subject entry");
        }
        FaceTemplate t;
        t.subject_id = s.at("id").get<std::string>();
        t.mean_intensity = s.at("mean_intensity").get<double>();
        t.specs = g.region_specs;
        for (Region r : kRegions) {
            const char* name = region_name(r);
            if (!s.at("regions").contains(name) || !s.at("regions").at(name).is_array()) {
                throw GalleryError("gallery: subject \"" + t.subject_id +
                                   "\" is missing region " + name);
            }
            CoeffVector& v = t.regions[region_index(r)];
            v.values = s.at("regions").at(name).get<std::vector<double>>();
            v.source_rows = g.region_specs[region_index(r)].height;
            v.source_cols = g.region_specs[region_index(r)].width;
        }
        if (g.find(t.subject_id) != nullptr) {
            throw GalleryError("gallery: duplicate subject id \"" + t.subject_id + "\"");
        }
        validate_against_specs(t, g.region_specs);
        g.subjects.push_back(std::move(t));
    }
    std::sort(g.subjects.begin(), g.subjects.end(),
              [](const FaceTemplate& a, const FaceTemplate& b) {
                  return a.subject_id < b.subject_id;
              });
    validate_gallery(g);
    return g;
}

void save_gallery(const Gallery& gallery, const std::string& path) {
    const std::string text = serialize_gallery(gallery);
    const std::string tmp = path + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) {
            throw IoError("cannot open gallery file for writing: " + tmp);
        }
        out << text;
        if (!out) {
            throw IoError("failed to write gallery file: " + tmp);
        }
    }
    std::error_code ec;
    std::filesystem::rename(tmp, path, ec);
    if (ec) {
        std::filesystem::remove(tmp, ec);
        throw IoError("failed to move gallery file into place: " + path);
    }
}

Gallery load_gallery(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw IoError("cannot open gallery file: " + path);
    }
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_gallery_json(ss.str());
}

}  // namespace dctface
