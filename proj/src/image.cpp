#include "dctface/image.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <fstream>
#include <numeric>

#include "dctface/error.hpp"

namespace dctface {

GrayImage::GrayImage(int width, int height, std::vector<double> pixels)
    : width_(width), height_(height), pixels_(std::move(pixels)) {
    if (width < 0 || height < 0) {
        throw ImageError("image dimensions must be non-negative");
    }
    if (pixels_.size() != static_cast<std::size_t>(width) * static_cast<std::size_t>(height)) {
        throw ImageError("pixel count does not match width*height");
    }
}

GrayImage GrayImage::filled(int width, int height, double value) {
    return GrayImage(width, height,
                     std::vector<double>(static_cast<std::size_t>(width) * height, value));
}

namespace {

bool is_pgm_space(std::uint8_t c) {
    return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\v' || c == '\f';
}

// Cursor over the ASCII header. '#' starts a comment running to end of line.
class HeaderCursor {
public:
    explicit HeaderCursor(std::span<const std::uint8_t> bytes) : bytes_(bytes) {}

    void skip_space_and_comments() {
        while (pos_ < bytes_.size()) {
            if (is_pgm_space(bytes_[pos_])) {
                ++pos_;
            } else if (bytes_[pos_] == '#') {
                while (pos_ < bytes_.size() && bytes_[pos_] != '\n') ++pos_;
            } else {
                break;
            }
        }
    }

    long read_uint(const char* field) {
        skip_space_and_comments();
        if (pos_ >= bytes_.size() || !std::isdigit(bytes_[pos_])) {
            throw PgmParseError(PgmParseError::Kind::MalformedHeader,
                                std::string("PGM header: expected ") + field);
        }
        long value = 0;
        while (pos_ < bytes_.size() && std::isdigit(bytes_[pos_])) {
            value = value * 10 + (bytes_[pos_] - '0');
            if (value > 1000000000L) {
                throw PgmParseError(PgmParseError::Kind::MalformedHeader,
                                    std::string("PGM header: ") + field + " out of range");
            }
            ++pos_;
        }
        return value;
    }

    // The header ends with exactly one whitespace byte before the raster.
    void consume_raster_separator() {
        if (pos_ >= bytes_.size() || !is_pgm_space(bytes_[pos_])) {
            throw PgmParseError(PgmParseError::Kind::MalformedHeader,
                                "PGM header: missing whitespace before pixel data");
        }
        ++pos_;
    }

    std::size_t pos() const { return pos_; }

private:
    std::span<const std::uint8_t> bytes_;
    std::size_t pos_ = 0;
};

}  // namespace

GrayImage load_pgm(std::span<const std::uint8_t> bytes) {
    if (bytes.size() < 2 || bytes[0] != 'P' || bytes[1] != '5') {
        throw PgmParseError(PgmParseError::Kind::MalformedHeader, "PGM: magic is not \"P5\"");
    }
    HeaderCursor cur(bytes.subspan(2));
    const long width = cur.read_uint("width");
    const long height = cur.read_uint("height");
    const long maxval = cur.read_uint("maxval");
    if (width < 1 || height < 1) {
        throw PgmParseError(PgmParseError::Kind::MalformedHeader,
                            "PGM header: dimensions must be positive");
    }
    if (maxval < 1) {
        throw PgmParseError(PgmParseError::Kind::MalformedHeader,
                            "PGM header: maxval must be positive");
    }
    if (maxval > 255) {
        throw PgmParseError(PgmParseError::Kind::UnsupportedMaxval,
                            "PGM header: maxval " + std::to_string(maxval) + " exceeds 255");
    }
    cur.consume_raster_separator();

    const std::size_t count = static_cast<std::size_t>(width) * static_cast<std::size_t>(height);
    const std::size_t start = 2 + cur.pos();
    if (bytes.size() - start < count) {
        throw PgmParseError(PgmParseError::Kind::TruncatedData,
                            "PGM: expected " + std::to_string(count) + " pixel bytes, got " +
                                std::to_string(bytes.size() - start));
    }
    std::vector<double> pixels(count);
    for (std::size_t i = 0; i < count; ++i) {
        pixels[i] = static_cast<double>(bytes[start + i]);
    }
    return GrayImage(static_cast<int>(width), static_cast<int>(height), std::move(pixels));
}

GrayImage load_pgm_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw IoError("cannot open image file: " + path);
    }
    std::vector<std::uint8_t> bytes((std::istreambuf_iterator<char>(in)),
                                    std::istreambuf_iterator<char>());
    return load_pgm(bytes);
}

std::vector<std::uint8_t> save_pgm(const GrayImage& img) {
    if (img.pixel_count() == 0) {
        throw ImageError("cannot save an empty image");
    }
    std::string header = "P5\n" + std::to_string(img.width()) + " " +
                         std::to_string(img.height()) + "\n255\n";
    std::vector<std::uint8_t> out(header.begin(), header.end());
    out.reserve(out.size() + img.pixel_count());
    for (double p : img.pixels()) {
        const double clamped = std::clamp(std::round(p), 0.0, 255.0);
        out.push_back(static_cast<std::uint8_t>(clamped));
    }
    return out;
}

void save_pgm_file(const GrayImage& img, const std::string& path) {
    const std::vector<std::uint8_t> bytes = save_pgm(img);
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) {
        throw IoError("cannot open image file for writing: " + path);
    }
    out.write(reinterpret_cast<const char*>(bytes.data()),
              static_cast<std::streamsize>(bytes.size()));
    if (!out) {
        throw IoError("failed to write image file: " + path);
    }
}

double mean_intensity(const GrayImage& img) {
    if (img.pixel_count() == 0) {
        throw ImageError("mean intensity of an empty image is undefined");
    }
    const double sum = std::accumulate(img.pixels().begin(), img.pixels().end(), 0.0);
    return sum / static_cast<double>(img.pixel_count());
}

double normalization_factor(double registered_mean, double test_mean) {
    if (test_mean <= 0.0) {
        throw ImageError("normalization factor: test image mean must be positive");
    }
    return registered_mean / test_mean;
}

GrayImage scale_image(const GrayImage& img, double factor) {
    if (factor <= 0.0) {
        throw ImageError("scale factor must be positive");
    }
    std::vector<double> pixels(img.pixels());
    for (double& p : pixels) p *= factor;
    return GrayImage(img.width(), img.height(), std::move(pixels));
}

}  // namespace dctface
