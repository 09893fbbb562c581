#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace dctface {

// Grayscale raster with real-valued pixels, stored row-major. Pixels are in
// [0,255] as loaded; intensity scaling may push them outside that range and
// nothing clamps until save_pgm. Immutable after construction.
class GrayImage {
public:
    GrayImage() = default;
    GrayImage(int width, int height, std::vector<double> pixels);

    static GrayImage filled(int width, int height, double value);

    int width() const noexcept { return width_; }
    int height() const noexcept { return height_; }
    std::size_t pixel_count() const noexcept { return pixels_.size(); }
    const std::vector<double>& pixels() const noexcept { return pixels_; }

    // x = column, y = row, origin top-left.
    double at(int x, int y) const { return pixels_[static_cast<std::size_t>(y) * width_ + x]; }

    bool operator==(const GrayImage&) const = default;

private:
    int width_ = 0;
    int height_ = 0;
    std::vector<double> pixels_;
};

// Decodes a binary PGM (magic "P5", maxval <= 255). Bytes are taken as-is,
// no rescaling. '#' comments are allowed in the header.
GrayImage load_pgm(std::span<const std::uint8_t> bytes);
GrayImage load_pgm_file(const std::string& path);

// Encodes as binary PGM with maxval 255. This is the only place pixel values
// are rounded and clamped back to [0,255].
std::vector<std::uint8_t> save_pgm(const GrayImage& img);
void save_pgm_file(const GrayImage& img, const std::string& path);

// Arithmetic mean of all pixels. Throws ImageError on an empty image.
double mean_intensity(const GrayImage& img);

// registered_mean / test_mean. Throws ImageError when test_mean <= 0.
double normalization_factor(double registered_mean, double test_mean);

// Multiplies every pixel by factor (> 0). Result is not clamped.
GrayImage scale_image(const GrayImage& img, double factor);

}  // namespace dctface
