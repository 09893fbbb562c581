#pragma once

#include <stdexcept>
#include <string>

namespace dctface {

// Base class for everything this toolkit throws on purpose.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

// Binary PGM decode failure; kind() tells the defects apart.
class PgmParseError : public Error {
public:
    enum class Kind { MalformedHeader, UnsupportedMaxval, TruncatedData };

    PgmParseError(Kind kind, const std::string& what) : Error(what), kind_(kind) {}
    Kind kind() const noexcept { return kind_; }

private:
    Kind kind_;
};

// Bad pixel data, degenerate images, out-of-bounds crops, wrong sizes.
class ImageError : public Error {
public:
    using Error::Error;
};

// Mismatched coefficient vectors, empty galleries, incompatible specs.
class MatchError : public Error {
public:
    using Error::Error;
};

// Fusion-level misuse: empty score lists, zero weights, unknown claims.
class FusionError : public Error {
public:
    using Error::Error;
};

// Malformed config or landmark sidecar files.
class ConfigError : public Error {
public:
    using Error::Error;
};

// Gallery file problems: parse errors, provenance mismatch, broken invariants.
class GalleryError : public Error {
public:
    using Error::Error;
};

// Dataset manifest violations.
class ManifestError : public Error {
public:
    using Error::Error;
};

// Filesystem-level failures (open/read/write/rename).
class IoError : public Error {
public:
    using Error::Error;
};

}  // namespace dctface
