#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "tlisd/tensor.hpp"

namespace tlisd {

struct ProxTnnResult {
    Tensor3 value;
    // Maximum number of singular values surviving the threshold over all
    // Fourier frontal slices.
    std::int64_t t_rank = 0;
    // Tensor nuclear norm of `value`, free from the thresholded spectra.
    double nuclear_norm = 0.0;
};

struct ProxTnnStats {
    double fft_seconds = 0.0;
    double svd_seconds = 0.0;
};

/// Proximal operator of the tensor nuclear norm:
/// argmin_X ||X||_* + (1/(2*tau)) ||X - a||_F^2.
/// Soft-thresholds the singular values of every Fourier frontal slice by tau.
ProxTnnResult prox_tnn(const Tensor3& a, double tau, ProxTnnStats* stats = nullptr);

/// Tube-wise shrinkage solving argmin_S tau*||S||_{1,1,2} + 1/2 ||S - v||_F^2:
/// each tube g = v(i,j,:) maps to (1 - tau/||g||_2)_+ * g.
Tensor3 prox_group_l112(const Tensor3& v, double tau);

/// argmin_c gamma*(||c||_k^sp)^2 + 1/2 ||c - v||_2^2 via sorted magnitudes,
/// a descending scan over r and a binary search for the support breakpoint l.
std::vector<double> prox_ksupport_sq(std::span<const double> v, std::int64_t k, double gamma);

/// In-place variant writing into `out` (same length as v).
void prox_ksupport_sq(std::span<const double> v, std::int64_t k, double gamma,
                      std::span<double> out);

} // namespace tlisd
