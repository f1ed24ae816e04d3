#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "tlisd/image.hpp"
#include "tlisd/tensor.hpp"

namespace tlisd {

/// Per-pixel 2-vector of log-chromaticity coordinates, row-major.
struct LogChromaticityImage {
    int width = 0;
    int height = 0;
    std::vector<std::array<double, 2>> chroma; // width * height

    const std::array<double, 2>& at(int x, int y) const {
        return chroma[static_cast<std::int64_t>(y) * width + x];
    }
};

/// Clustered invariant-direction angles (degrees in [0,180)) with supports.
struct DominantDirections {
    std::vector<double> angles;            // sorted ascending, <= 10 entries
    std::vector<std::int64_t> supports;    // per retained cluster
    std::vector<double> per_image_angle;   // best direction of each frame
};

struct PriorOptions {
    int kmeans_k = 10;
    double support_fraction = 0.10;
    double angle_resolution_deg = 1.0;
    int kmeans_restarts = 10;
    std::uint64_t seed = 0;
};

/// Unit projection vector for a direction angle in degrees.
std::array<double, 2> direction_vector(double theta_deg);

/// Log-chromaticity of an RGB frame: channels offset by +1 (0-255 scale),
/// log-ratios against the geometric mean, projected onto a fixed orthonormal
/// basis of the plane orthogonal to (1,1,1)/sqrt(3).
LogChromaticityImage log_chromaticity(const ImageRgb8& frame);

/// Entropy-minimizing projection angle over the candidate grid: for each
/// theta, project the chromaticity cloud onto direction_vector(theta), build
/// a Scott's-rule histogram of the 5th-95th percentile values and take the
/// Shannon entropy; smallest-entropy theta wins, ties toward smaller theta.
/// Throws DegenerateChromaticityError for a (near-)constant cloud.
double best_invariant_direction(const LogChromaticityImage& chroma,
                                const PriorOptions& opts = {});

/// 1-D k-means over per-image angles with k = min(kmeans_k, distinct angles);
/// keeps centroids supported by >= ceil(support_fraction * n2) images, falls
/// back to the single largest cluster when none qualifies.
DominantDirections dominant_directions(std::span<const double> per_image_angles,
                                       const PriorOptions& opts = {});

/// Scalar projection of every pixel onto direction_vector(theta), linearly
/// rescaled to [0,1] per image (constant projections map to 0).
ImageGray invariant_representation(const LogChromaticityImage& chroma, double theta_deg);

/// Prior tensor: slice 1 holds the vectorized luma images, slice p >= 2 the
/// invariant representations for dominant direction p-1. Pixels vectorize
/// row-major (index = y*width + x), frames map to columns.
Tensor3 assemble_tensor(const ImageSequence& seq, const DominantDirections& dirs);

struct PriorArtifacts {
    DominantDirections directions;
    Tensor3 tensor;
    // Frames whose direction search degenerated and received the
    // sequence-median angle instead.
    std::vector<std::int64_t> substituted_frames;
};

/// Full prior pipeline: per-frame chromaticity and direction search (parallel
/// across frames), clustering, tensor assembly. Degenerate frames get the
/// sequence-median direction; throws only when every frame is degenerate.
PriorArtifacts compute_priors(const ImageSequence& seq, const PriorOptions& opts = {});

} // namespace tlisd
