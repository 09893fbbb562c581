#pragma once

#include <string>
#include <vector>

#include "dctface/fusion.hpp"

namespace dctface {

// Enrolled templates plus the configuration they were built under. Subjects
// are kept sorted by id and ids are unique.
struct Gallery {
    RegionSpecs region_specs = default_region_specs();
    DistanceMetric default_metric = DistanceMetric::SumAbs;
    bool default_normalize = true;
    std::vector<FaceTemplate> subjects;

    const FaceTemplate* find(const std::string& subject_id) const;

    // Validates the template against region_specs and id uniqueness, then
    // inserts keeping subjects sorted. Throws GalleryError on violations.
    void add(FaceTemplate t);
};

// Canonical UTF-8 JSON: version 1, transform provenance ids, region specs,
// defaults, subjects sorted by id, keys sorted, doubles in shortest
// round-trip decimal form. Serializing the same gallery twice produces
// byte-identical text.
std::string serialize_gallery(const Gallery& gallery);

// Parses and validates: version and provenance ids must match this build,
// array lengths must match the declared specs, ids must be unique. Mismatches
// throw GalleryError; nothing is silently reinterpreted.
Gallery parse_gallery_json(const std::string& text);

// Whole-file write via temp-then-rename, so readers never observe a partial
// gallery.
void save_gallery(const Gallery& gallery, const std::string& path);
Gallery load_gallery(const std::string& path);

}  // namespace dctface
