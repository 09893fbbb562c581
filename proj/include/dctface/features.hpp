#pragma once

#include <array>
#include <optional>
#include <string>
#include <string_view>

#include "dctface/dct.hpp"
#include "dctface/image.hpp"

namespace dctface {

enum class Region { Global = 0, EyeLeft, EyeRight, Nose, Mouth };

inline constexpr int kRegionCount = 5;
inline constexpr std::array<Region, kRegionCount> kRegions = {
    Region::Global, Region::EyeLeft, Region::EyeRight, Region::Nose, Region::Mouth};

constexpr std::size_t region_index(Region r) { return static_cast<std::size_t>(r); }
const char* region_name(Region r);
std::optional<Region> region_from_name(std::string_view name);

// x = column, y = row, zero-based, origin top-left.
struct Point {
    int x = 0;
    int y = 0;

    bool operator==(const Point&) const = default;
};

// Manually located anchor points, one per local feature.
struct FaceLandmarks {
    Point eye_left;
    Point eye_right;
    Point nose;
    Point mouth;

    Point center_of(Region r) const;
};

// Sidecar format: {"eye_left": {"x": int, "y": int}, "eye_right": ..., "nose": ..., "mouth": ...}
FaceLandmarks parse_landmarks_json(const std::string& text);
FaceLandmarks load_landmarks_file(const std::string& path);

// Crop geometry and coefficient budget for one region.
struct RegionSpec {
    Region id = Region::Global;
    int width = 0;
    int height = 0;
    int kept_coefficients = 0;

    bool operator==(const RegionSpec&) const = default;
};

using RegionSpecs = std::array<RegionSpec, kRegionCount>;

// Global 128x128, eyes 16x16, nose 40 wide x 25 tall, mouth 50 wide x 30 tall,
// 64 kept coefficients everywhere.
RegionSpecs default_region_specs();

// Stored representation of one face: truncated zigzag DCT coefficients per
// region plus the source image's mean intensity.
struct FaceTemplate {
    std::string subject_id;  // empty for probes
    double mean_intensity = 0.0;
    std::array<CoeffVector, kRegionCount> regions;
    RegionSpecs specs;

    const CoeffVector& region(Region r) const { return regions[region_index(r)]; }

    bool operator==(const FaceTemplate&) const = default;
};

// Copies the width x height rectangle whose top-left corner is
// (x - floor(width/2), y - floor(height/2)). No clamping: a rectangle that
// leaves the image throws ImageError.
GrayImage crop_centered(const GrayImage& img, Point center, int width, int height);

// Crops each region (global = whole image), applies DCT, zigzag-scans and
// truncates to the spec's kept count. The image must match the global spec's
// dimensions and every landmark-implied rectangle must be in bounds.
FaceTemplate build_template(const GrayImage& img, const FaceLandmarks& landmarks,
                            const RegionSpecs& specs = default_region_specs());

}  // namespace dctface
