#include "dctface/features.hpp"

#include <fstream>
#include <sstream>

#include "dctface/error.hpp"
#include "json.hpp"

namespace dctface {

const char* region_name(Region r) {
    switch (r) {
        case Region::Global: return "global";
        case Region::EyeLeft: return "eye_left";
        case Region::EyeRight: return "eye_right";
        case Region::Nose: return "nose";
        case Region::Mouth: return "mouth";
    }
    return "?";
}

std::optional<Region> region_from_name(std::string_view name) {
    for (Region r : kRegions) {
        if (name == region_name(r)) return r;
    }
    return std::nullopt;
}

Point FaceLandmarks::center_of(Region r) const {
    switch (r) {
        case Region::EyeLeft: return eye_left;
        case Region::EyeRight: return eye_right;
        case Region::Nose: return nose;
        case Region::Mouth: return mouth;
        case Region::Global: break;
    }
    throw ImageError("the global region has no landmark anchor");
}

namespace {

Point point_from_json(const nlohmann::json& j, const char* key) {
    if (!j.contains(key)) {
        throw ConfigError(std::string("landmarks: missing \"") + key + "\"");
    }
    const auto& p = j.at(key);
    if (!p.is_object() || !p.contains("x") || !p.contains("y") ||
        !p.at("x").is_number_integer() || !p.at("y").is_number_integer()) {
        throw ConfigError(std::string("landmarks: \"") + key +
                          "\" must be an object with integer x and y");
    }
    return Point{p.at("x").get<int>(), p.at("y").get<int>()};
}

}  // namespace

FaceLandmarks parse_landmarks_json(const std::string& text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw ConfigError(std::string("landmarks: invalid JSON: ") + e.what());
    }
    if (!j.is_object()) {
        throw ConfigError("landmarks: top level must be an object");
    }
    FaceLandmarks lm;
    lm.eye_left = point_from_json(j, "eye_left");
    lm.eye_right = point_from_json(j, "eye_right");
    lm.nose = point_from_json(j, "nose");
    lm.mouth = point_from_json(j, "mouth");
    return lm;
}

FaceLandmarks load_landmarks_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw IoError("cannot open landmarks file: " + path);
    }
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_landmarks_json(ss.str());
}

RegionSpecs default_region_specs() {
    return RegionSpecs{{
        {Region::Global, 128, 128, 64},
        {Region::EyeLeft, 16, 16, 64},
        {Region::EyeRight, 16, 16, 64},
        {Region::Nose, 40, 25, 64},
        {Region::Mouth, 50, 30, 64},
    }};
}

GrayImage crop_centered(const GrayImage& img, Point center, int width, int height) {
    if (width < 1 || height < 1) {
        throw ImageError("crop size must be at least 1x1");
    }
    const int x0 = center.x - width / 2;
    const int y0 = center.y - height / 2;
    if (x0 < 0 || y0 < 0 || x0 + width > img.width() || y0 + height > img.height()) {
        throw ImageError("landmark region " + std::to_string(width) + "x" +
                         std::to_string(height) + " centered at (" + std::to_string(center.x) +
                         "," + std::to_string(center.y) + ") leaves the image");
    }
    std::vector<double> pixels;
    pixels.reserve(static_cast<std::size_t>(width) * height);
    for (int y = y0; y < y0 + height; ++y) {
        for (int x = x0; x < x0 + width; ++x) {
            pixels.push_back(img.at(x, y));
        }
    }
    return GrayImage(width, height, std::move(pixels));
}

FaceTemplate build_template(const GrayImage& img, const FaceLandmarks& landmarks,
                            const RegionSpecs& specs) {
    const RegionSpec& global = specs[region_index(Region::Global)];
    if (img.width() != global.width || img.height() != global.height) {
        throw ImageError("template building requires a " + std::to_string(global.width) + "x" +
                         std::to_string(global.height) + " image, got " +
                         std::to_string(img.width()) + "x" + std::to_string(img.height()));
    }
    for (const RegionSpec& spec : specs) {
        if (spec.kept_coefficients < 1 ||
            spec.kept_coefficients > spec.width * spec.height) {
            throw ImageError(std::string("region spec for ") + region_name(spec.id) +
                             " keeps an invalid number of coefficients");
        }
    }

    FaceTemplate out;
    out.specs = specs;
    out.mean_intensity = mean_intensity(img);
    if (out.mean_intensity <= 0.0) {
        throw ImageError("degenerate image: mean intensity must be positive");
    }
    for (const RegionSpec& spec : specs) {
        const GrayImage patch = (spec.id == Region::Global)
                                    ? img
                                    : crop_centered(img, landmarks.center_of(spec.id),
                                                    spec.width, spec.height);
        out.regions[region_index(spec.id)] =
            truncate(zigzag_scan(dct_2d(patch)), spec.kept_coefficients);
    }
    return out;
}

}  // namespace dctface
