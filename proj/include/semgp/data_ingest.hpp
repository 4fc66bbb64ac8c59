#ifndef SEMGP_DATA_INGEST_HPP
#define SEMGP_DATA_INGEST_HPP

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "semgp/dataset.hpp"
#include "semgp/matrix.hpp"

namespace semgp {

constexpr std::uint32_t kIdxImageMagic = 0x00000803;
constexpr std::uint32_t kIdxLabelMagic = 0x00000801;
constexpr std::size_t kImageSide = 28;
constexpr std::size_t kImagePixels = kImageSide * kImageSide;

struct RawImageSet {
    std::size_t count = 0;
    std::vector<std::uint8_t> pixels; // count * 28 * 28, row-major
    std::vector<std::uint8_t> labels; // digits 0..9

    const std::uint8_t* image(std::size_t i) const { return pixels.data() + i * kImagePixels; }
};

/// 3x3 box grid, (mean, population std) per box -> 18 features.
struct FeatureSpec {
    int grid_rows = 3;
    int grid_cols = 3;

    std::size_t feature_count() const {
        return static_cast<std::size_t>(grid_rows) * grid_cols * 2;
    }
};

RawImageSet parse_idx(const std::string& image_path, const std::string& label_path);
void write_idx(const RawImageSet& set, const std::string& image_path,
               const std::string& label_path);

/// Pixel values are scaled to [0,1] before statistics. 28 rows/cols split
/// into contiguous bands {9,9,10}; feature order is row-major boxes, mean
/// before std.
std::vector<double> box_features(const std::uint8_t* image, const FeatureSpec& spec = {});

Matrix extract_features(const RawImageSet& raw, const FeatureSpec& spec = {});

/// One-vs-rest task: seeded subsample of `per_digit` images per digit,
/// stratified 50/50 split preserving the 1:9 imbalance exactly.
std::pair<LabeledDataset, LabeledDataset> build_binary_task(const RawImageSet& raw,
                                                            const Matrix& features, int digit,
                                                            std::size_t per_digit,
                                                            std::uint64_t seed);

LabeledDataset load_csv(const std::string& path, const std::string& label_column);

// Feature cache: "SGF1" tag, then n and F as little-endian u64, then
// n*F little-endian doubles, row-major.
void write_feature_cache(const Matrix& features, const std::string& path);
Matrix read_feature_cache(const std::string& path);

/// Deterministic synthetic digit-like image set in MNIST's shape; each
/// class has a distinct 3x3 box intensity signature plus noise/jitter.
RawImageSet synth_image_set(std::size_t per_digit, std::uint64_t seed);

} // namespace semgp

#endif
