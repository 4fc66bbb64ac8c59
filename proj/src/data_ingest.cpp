#include "semgp/data_ingest.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <fstream>
#include <numeric>
#include <sstream>

#include "semgp/errors.hpp"
#include "semgp/rng.hpp"

namespace semgp {

namespace {

std::uint32_t read_be32(std::istream& in, const std::string& path, const char* what) {
    unsigned char buf[4];
    if (!in.read(reinterpret_cast<char*>(buf), 4))
        throw DataError(path + ": truncated while reading " + what);
    return (std::uint32_t(buf[0]) << 24) | (std::uint32_t(buf[1]) << 16) |
           (std::uint32_t(buf[2]) << 8) | std::uint32_t(buf[3]);
}

void write_be32(std::ostream& out, std::uint32_t v) {
    const unsigned char buf[4] = {static_cast<unsigned char>(v >> 24),
                                  static_cast<unsigned char>(v >> 16),
                                  static_cast<unsigned char>(v >> 8),
                                  static_cast<unsigned char>(v)};
    out.write(reinterpret_cast<const char*>(buf), 4);
}

std::ifstream open_binary(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw DataError(path + ": cannot open file");
    return in;
}

} // namespace

RawImageSet parse_idx(const std::string& image_path, const std::string& label_path) {
    auto img = open_binary(image_path);
    const std::uint32_t img_magic = read_be32(img, image_path, "magic");
    if (img_magic != kIdxImageMagic) {
        std::ostringstream msg;
        msg << image_path << ": bad image magic, expected 0x" << std::hex << kIdxImageMagic
            << ", found 0x" << img_magic;
        throw DataError(msg.str());
    }
    const std::uint32_t n = read_be32(img, image_path, "count");
    const std::uint32_t rows = read_be32(img, image_path, "rows");
    const std::uint32_t cols = read_be32(img, image_path, "cols");
    if (rows != kImageSide || cols != kImageSide)
        throw DataError(image_path + ": expected 28x28 images, found " + std::to_string(rows) +
                        "x" + std::to_string(cols));

    RawImageSet set;
    set.count = n;
    set.pixels.resize(static_cast<std::size_t>(n) * kImagePixels);
    if (!img.read(reinterpret_cast<char*>(set.pixels.data()),
                  static_cast<std::streamsize>(set.pixels.size())))
        throw DataError(image_path + ": truncated pixel payload, expected " +
                        std::to_string(set.pixels.size()) + " bytes");

    auto lab = open_binary(label_path);
    const std::uint32_t lab_magic = read_be32(lab, label_path, "magic");
    if (lab_magic != kIdxLabelMagic) {
        std::ostringstream msg;
        msg << label_path << ": bad label magic, expected 0x" << std::hex << kIdxLabelMagic
            << ", found 0x" << lab_magic;
        throw DataError(msg.str());
    }
    const std::uint32_t n_labels = read_be32(lab, label_path, "count");
    if (n_labels != n)
        throw DataError(label_path + ": label count " + std::to_string(n_labels) +
                        " does not match image count " + std::to_string(n));
    set.labels.resize(n);
    if (!lab.read(reinterpret_cast<char*>(set.labels.data()),
                  static_cast<std::streamsize>(n)))
        throw DataError(label_path + ": truncated label payload");
    for (std::size_t i = 0; i < set.labels.size(); ++i)
        if (set.labels[i] > 9)
            throw DataError(label_path + ": label " + std::to_string(int(set.labels[i])) +
                            " at index " + std::to_string(i) + " outside 0..9");
    return set;
}

void write_idx(const RawImageSet& set, const std::string& image_path,
               const std::string& label_path) {
    std::ofstream img(image_path, std::ios::binary);
    if (!img) throw DataError(image_path + ": cannot open for writing");
    write_be32(img, kIdxImageMagic);
    write_be32(img, static_cast<std::uint32_t>(set.count));
    write_be32(img, kImageSide);
    write_be32(img, kImageSide);
    img.write(reinterpret_cast<const char*>(set.pixels.data()),
              static_cast<std::streamsize>(set.pixels.size()));

    std::ofstream lab(label_path, std::ios::binary);
    if (!lab) throw DataError(label_path + ": cannot open for writing");
    write_be32(lab, kIdxLabelMagic);
    write_be32(lab, static_cast<std::uint32_t>(set.count));
    lab.write(reinterpret_cast<const char*>(set.labels.data()),
              static_cast<std::streamsize>(set.labels.size()));
}

std::vector<double> box_features(const std::uint8_t* image, const FeatureSpec& spec) {
    // 28 rows/cols split into contiguous bands; the remainder goes to the
    // last band ({9,9,10} for the 3x3 grid).
    auto band = [](int index, int parts) {
        const int base = static_cast<int>(kImageSide) / parts;
        const int start = index * base;
        const int stop = (index == parts - 1) ? static_cast<int>(kImageSide) : start + base;
        return std::pair<int, int>{start, stop};
    };
    std::vector<double> features;
    features.reserve(spec.feature_count());
    for (int br = 0; br < spec.grid_rows; ++br) {
        const auto [r0, r1] = band(br, spec.grid_rows);
        for (int bc = 0; bc < spec.grid_cols; ++bc) {
            const auto [c0, c1] = band(bc, spec.grid_cols);
            double sum = 0.0, sum_sq = 0.0;
            const double count = static_cast<double>((r1 - r0) * (c1 - c0));
            for (int r = r0; r < r1; ++r)
                for (int c = c0; c < c1; ++c) {
                    const double v = image[r * kImageSide + c] / 255.0;
                    sum += v;
                    sum_sq += v * v;
                }
            const double mean = sum / count;
            const double variance = std::max(0.0, sum_sq / count - mean * mean);
            features.push_back(mean);
            features.push_back(std::sqrt(variance));
        }
    }
    return features;
}

Matrix extract_features(const RawImageSet& raw, const FeatureSpec& spec) {
    Matrix m(raw.count, spec.feature_count());
    for (std::size_t i = 0; i < raw.count; ++i) {
        const auto f = box_features(raw.image(i), spec);
        std::copy(f.begin(), f.end(), m.data.begin() + static_cast<std::ptrdiff_t>(i * m.cols));
    }
    return m;
}

namespace {

template <typename T>
void shuffle_indices(std::vector<T>& v, Rng& rng) {
    for (std::size_t i = v.size(); i > 1; --i) std::swap(v[i - 1], v[rng.below(i)]);
}

} // namespace

std::pair<LabeledDataset, LabeledDataset> build_binary_task(const RawImageSet& raw,
                                                            const Matrix& features, int digit,
                                                            std::size_t per_digit,
                                                            std::uint64_t seed) {
    Rng rng(seed);
    std::vector<std::vector<std::size_t>> by_digit(10);
    for (std::size_t i = 0; i < raw.count; ++i) by_digit[raw.labels[i]].push_back(i);
    for (int d = 0; d < 10; ++d)
        if (by_digit[d].size() < per_digit)
            throw DataError("digit " + std::to_string(d) + " has only " +
                            std::to_string(by_digit[d].size()) + " samples, need " +
                            std::to_string(per_digit));

    std::vector<std::size_t> positives, negatives;
    for (int d = 0; d < 10; ++d) {
        shuffle_indices(by_digit[d], rng);
        auto& bucket = (d == digit) ? positives : negatives;
        bucket.insert(bucket.end(), by_digit[d].begin(),
                      by_digit[d].begin() + static_cast<std::ptrdiff_t>(per_digit));
    }
    // Stratified 50/50 split: the first half of each (already shuffled)
    // class goes to train, keeping the 1:9 imbalance exact in both sets.
    shuffle_indices(positives, rng);
    shuffle_indices(negatives, rng);
    auto assemble = [&](bool train_half) {
        std::vector<std::size_t> indices;
        auto take = [&](const std::vector<std::size_t>& src) {
            const std::size_t half = src.size() / 2;
            if (train_half)
                indices.insert(indices.end(), src.begin(),
                               src.begin() + static_cast<std::ptrdiff_t>(half));
            else
                indices.insert(indices.end(), src.begin() + static_cast<std::ptrdiff_t>(half),
                               src.end());
        };
        take(positives);
        take(negatives);
        shuffle_indices(indices, rng);
        LabeledDataset ds;
        ds.features = Matrix(indices.size(), features.cols);
        ds.labels.resize(indices.size());
        for (std::size_t i = 0; i < indices.size(); ++i) {
            const std::size_t src = indices[i];
            std::copy(features.row(src), features.row(src) + features.cols,
                      ds.features.data.begin() + static_cast<std::ptrdiff_t>(i * features.cols));
            ds.labels[i] = raw.labels[src] == digit ? 1 : 0;
        }
        return ds;
    };
    LabeledDataset train = assemble(true);
    LabeledDataset test = assemble(false);
    return {std::move(train), std::move(test)};
}

LabeledDataset load_csv(const std::string& path, const std::string& label_column) {
    std::ifstream in(path);
    if (!in) throw DataError(path + ": cannot open file");
    std::string line;
    if (!std::getline(in, line)) throw DataError(path + ": empty file, expected a header row");

    std::vector<std::string> header;
    {
        std::stringstream ss(line);
        std::string cell;
        while (std::getline(ss, cell, ',')) header.push_back(cell);
    }
    const auto label_it = std::find(header.begin(), header.end(), label_column);
    if (label_it == header.end())
        throw ConfigError(path + ": label column '" + label_column + "' not found in header");
    const std::size_t label_idx = static_cast<std::size_t>(label_it - header.begin());
    const std::size_t n_features = header.size() - 1;

    std::vector<double> values;
    std::vector<std::uint8_t> labels;
    std::size_t row = 1;
    while (std::getline(in, line)) {
        ++row;
        if (line.empty()) continue;
        std::stringstream ss(line);
        std::string cell;
        std::size_t col = 0;
        while (std::getline(ss, cell, ',')) {
            double v;
            try {
                std::size_t used = 0;
                v = std::stod(cell, &used);
                if (used != cell.size()) throw std::invalid_argument(cell);
            } catch (const std::exception&) {
                throw DataError(path + ": non-numeric cell '" + cell + "' at row " +
                                std::to_string(row) + ", column " + std::to_string(col + 1));
            }
            if (col == label_idx) {
                if (v != 0.0 && v != 1.0)
                    throw DataError(path + ": label must be 0 or 1 at row " + std::to_string(row));
                labels.push_back(static_cast<std::uint8_t>(v));
            } else {
                values.push_back(v);
            }
            ++col;
        }
        if (col != header.size())
            throw DataError(path + ": row " + std::to_string(row) + " has " + std::to_string(col) +
                            " cells, header has " + std::to_string(header.size()));
    }

    LabeledDataset ds;
    ds.features.rows = labels.size();
    ds.features.cols = n_features;
    ds.features.data = std::move(values);
    ds.labels = std::move(labels);
    return ds;
}

namespace {

constexpr char kCacheTag[4] = {'S', 'G', 'F', '1'};

void write_le64(std::ostream& out, std::uint64_t v) {
    unsigned char buf[8];
    for (int i = 0; i < 8; ++i) buf[i] = static_cast<unsigned char>(v >> (8 * i));
    out.write(reinterpret_cast<const char*>(buf), 8);
}

std::uint64_t read_le64(std::istream& in, const std::string& path) {
    unsigned char buf[8];
    if (!in.read(reinterpret_cast<char*>(buf), 8)) throw DataError(path + ": truncated header");
    std::uint64_t v = 0;
    for (int i = 0; i < 8; ++i) v |= std::uint64_t(buf[i]) << (8 * i);
    return v;
}

} // namespace

void write_feature_cache(const Matrix& features, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw DataError(path + ": cannot open for writing");
    out.write(kCacheTag, 4);
    write_le64(out, features.rows);
    write_le64(out, features.cols);
    for (double v : features.data) {
        std::uint64_t bits;
        std::memcpy(&bits, &v, 8);
        write_le64(out, bits);
    }
}

Matrix read_feature_cache(const std::string& path) {
    auto in = open_binary(path);
    char tag[4];
    if (!in.read(tag, 4) || std::memcmp(tag, kCacheTag, 4) != 0)
        throw DataError(path + ": bad feature-cache tag, expected SGF1");
    const std::uint64_t n = read_le64(in, path);
    const std::uint64_t f = read_le64(in, path);
    Matrix m(n, f);
    for (double& v : m.data) {
        const std::uint64_t bits = read_le64(in, path);
        std::memcpy(&v, &bits, 8);
    }
    return m;
}

RawImageSet synth_image_set(std::size_t per_digit, std::uint64_t seed) {
    Rng rng(seed);
    RawImageSet set;
    set.count = per_digit * 10;
    set.pixels.resize(set.count * kImagePixels);
    set.labels.resize(set.count);

    std::size_t idx = 0;
    for (int digit = 0; digit < 10; ++digit) {
        for (std::size_t s = 0; s < per_digit; ++s, ++idx) {
            set.labels[idx] = static_cast<std::uint8_t>(digit);
            std::uint8_t* img = set.pixels.data() + idx * kImagePixels;
            // Wide brightness range makes some instances much harder than
            // others, giving the TPR/TNR trade-off a rich front.
            const double scale = 0.3 + 0.7 * rng.unit();
            const int shift_r = static_cast<int>(rng.below(5)) - 2;
            const int shift_c = static_cast<int>(rng.below(5)) - 2;
            for (std::size_t r = 0; r < kImageSide; ++r) {
                for (std::size_t c = 0; c < kImageSide; ++c) {
                    const int rr = std::clamp(static_cast<int>(r) + shift_r, 0, 27);
                    const int cc = std::clamp(static_cast<int>(c) + shift_c, 0, 27);
                    const int box = (rr / 10) * 3 + std::min(cc / 10, 2);
                    // Per-class box intensity signature, compressed towards
                    // mid-gray so classes overlap under noise.
                    const double level = ((digit * 7 + box * 5) % 9) / 8.0;
                    const double base = 0.5 + 0.5 * (level - 0.5);
                    const double noise = (rng.unit() - 0.5) * 0.6;
                    const double v = std::clamp(base * scale + noise, 0.0, 1.0);
                    img[r * kImageSide + c] = static_cast<std::uint8_t>(v * 255.0);
                }
            }
        }
    }
    return set;
}

} // namespace semgp
