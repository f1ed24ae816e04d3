#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "tlisd/image.hpp"
#include "tlisd/solver.hpp"
#include "tlisd/tensor.hpp"

namespace tlisd {

struct FrameMetrics {
    double precision = 0.0;
    double recall = 0.0;
    double f_measure = 0.0;
};

struct EvalReport {
    std::vector<FrameMetrics> per_frame;
    FrameMetrics aggregate; // micro-average over pooled TP/FP/FN
    double threshold = 0.0;
    double seconds_per_image = 0.0;
};

/// Pixelwise precision/recall/F against ground truth. Excluded ground-truth
/// pixels are skipped. Empty-empty counts as perfect; empty prediction
/// against nonempty truth scores zero.
FrameMetrics f_measure(const MaskImage& pred, const MaskImage& gt);

/// Threshold context for foreground masks: |S(:,:,1)| rescaled to [0,1] over
/// the whole sequence, thresholded by Otsu computed jointly over all frames.
class MaskExtractor {
public:
    MaskExtractor(const Tensor3& s, int width, int height);

    MaskImage mask(std::int64_t frame) const;
    std::vector<MaskImage> all_masks() const;
    double threshold() const { return threshold_; }

private:
    std::vector<double> magnitudes_; // normalized |S(:,:,1)|
    std::int64_t n1_ = 0, n2_ = 0;
    int width_ = 0, height_ = 0;
    double threshold_ = 0.0;
};

MaskImage extract_mask(const Tensor3& s, std::int64_t frame, int width, int height);

/// Otsu's threshold of values in [0,1] over a 256-bin histogram.
double otsu_threshold(std::span<const double> values);

struct SyntheticSpec {
    int width = 64;
    int height = 64;
    int frame_count = 40;

    // Foreground: per-frame random placement of rectangular objects.
    int object_count = 2;
    int object_min_size = 8;
    int object_max_size = 16;

    // Illumination: per-frame global gain plus smooth shadow fields moving
    // log-RGB along the chromaticity direction orthogonal to `direction_deg`
    // (so direction_deg is the planted invariant/projection angle).
    double direction_deg = 40.0;
    double gain_sigma = 0.10;
    double shadow_strength = 0.9;
    int shadow_blobs = 2;

    double noise_sigma = 0.0; // on the 0-1 scale, before quantization
    std::uint64_t seed = 0;

    void validate() const;
};

struct SyntheticSequence {
    ImageSequence sequence; // masks populated with the planted truth
    std::vector<MaskImage> truth;
    std::vector<ImageGray> illumination; // per-frame shadow fields
    double planted_direction_deg = 0.0;
};

/// Deterministic synthetic time-lapse generator: static textured background,
/// foreground blocks placed independently per frame, per-frame gain and
/// non-sparse shadow fields along a fixed log-chromaticity direction.
SyntheticSequence generate_synthetic(const SyntheticSpec& spec);

struct BenchRow {
    int repeat = 0;
    std::int64_t iterations = 0;
    double total_seconds = 0.0;
    double seconds_per_iteration = 0.0;
    double seconds_per_image = 0.0;
    double svd_fft_share = 0.0;
};

struct BenchReport {
    std::vector<BenchRow> rows;
    BenchRow median; // medians over repeats, repeat = -1
};

/// Runs decompose `repeats` times and reports per-iteration / per-image
/// wall-clock medians plus the share spent inside FFTs and SVDs.
BenchReport benchmark(const Tensor3& d, const SolverConfig& cfg, int repeats);

void write_bench_csv(const BenchReport& report, const std::string& path);
void write_eval_csv(const EvalReport& report, const std::vector<std::string>& names,
                    const std::string& path);
void write_eval_json(const EvalReport& report, const std::string& path);

} // namespace tlisd
