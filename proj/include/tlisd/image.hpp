#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace tlisd {

/// Interleaved 8-bit RGB image, row-major.
struct ImageRgb8 {
    int width = 0;
    int height = 0;
    std::vector<std::uint8_t> pixels; // 3 * width * height, RGB order

    std::int64_t pixel_count() const { return static_cast<std::int64_t>(width) * height; }
    const std::uint8_t* px(int x, int y) const {
        return pixels.data() + 3 * (static_cast<std::int64_t>(y) * width + x);
    }
    std::uint8_t* px(int x, int y) {
        return pixels.data() + 3 * (static_cast<std::int64_t>(y) * width + x);
    }
};

/// Single-channel double image, row-major.
struct ImageGray {
    int width = 0;
    int height = 0;
    std::vector<double> values; // width * height

    double at(int x, int y) const { return values[static_cast<std::int64_t>(y) * width + x]; }
    double& at(int x, int y) { return values[static_cast<std::int64_t>(y) * width + x]; }
};

/// Row-major binary mask (true = foreground).
struct MaskImage {
    int width = 0;
    int height = 0;
    std::vector<std::uint8_t> values; // 0 or 1
    // CDnet-style unknown labels: pixels excluded from metric counting.
    std::vector<std::uint8_t> excluded;

    bool at(int x, int y) const { return values[static_cast<std::int64_t>(y) * width + x] != 0; }
    std::int64_t positive_count() const;
};

/// Ordered same-sized RGB frames plus optional aligned ground-truth masks.
struct ImageSequence {
    std::vector<ImageRgb8> frames;
    std::vector<std::string> names;
    std::vector<std::optional<MaskImage>> masks;

    std::int64_t frame_count() const { return static_cast<std::int64_t>(frames.size()); }
    int width() const { return frames.empty() ? 0 : frames.front().width; }
    int height() const { return frames.empty() ? 0 : frames.front().height; }
    void validate() const;
};

/// Luma 0.299R + 0.587G + 0.114B rescaled to [0,1].
ImageGray luma_image(const ImageRgb8& frame);

ImageRgb8 load_image_rgb8(const std::string& path);
void save_image_rgb8(const ImageRgb8& img, const std::string& path);

/// 8-bit grayscale PNG of a [0,1] image (values clamped).
void save_image_gray(const ImageGray& img, const std::string& path);

/// Binarizes at 128; CDnet unknown/non-ROI labels (170, 85) become excluded.
MaskImage load_mask(const std::string& path);
void save_mask(const MaskImage& mask, const std::string& path);

/// Loads frames from `dir` (PNG/JPEG, lexicographic name order) and, when a
/// groundtruth/ subdirectory exists, masks with matching file stems.
ImageSequence load_sequence(const std::string& dir);

} // namespace tlisd
