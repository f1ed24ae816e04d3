#include "tlisd/prox.hpp"

#include <Eigen/Dense>

#include <chrono>
#include <cmath>
#include <vector>

namespace tlisd {

namespace {

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

} // namespace

ProxTnnResult prox_tnn(const Tensor3& a, double tau, ProxTnnStats* stats) {
    if (!(tau > 0.0)) {
        throw ParameterError("prox_tnn: tau must be positive");
    }
    const std::int64_t n1 = a.n1(), n2 = a.n2(), n3 = a.n3();
    const std::int64_t half = fourier_half_count(n3);
    const std::int64_t stride = n1 * n2;

    auto t0 = std::chrono::steady_clock::now();
    auto freq = fft_mode3_half(a);
    const double fft_fwd = seconds_since(t0);

    std::vector<std::int64_t> retained(static_cast<std::size_t>(half), 0);
    std::vector<double> slice_nuclear(static_cast<std::size_t>(half), 0.0);
    t0 = std::chrono::steady_clock::now();
#pragma omp parallel for schedule(dynamic)
    for (std::int64_t p = 0; p < half; ++p) {
        Eigen::Map<Eigen::MatrixXcd> slice(freq.data() + p * stride, n1, n2);
        Eigen::JacobiSVD<Eigen::MatrixXcd> svd(slice, Eigen::ComputeThinU | Eigen::ComputeThinV);
        const Eigen::VectorXd& sv = svd.singularValues();
        std::int64_t rank = 0;
        while (rank < sv.size() && sv[rank] > tau) ++rank;
        double nuc = 0.0;
        if (rank == 0) {
            slice.setZero();
        } else {
            Eigen::VectorXd thresholded = sv.head(rank).array() - tau;
            nuc = thresholded.sum();
            slice.noalias() = svd.matrixU().leftCols(rank) * thresholded.asDiagonal() *
                              svd.matrixV().leftCols(rank).adjoint();
        }
        retained[static_cast<std::size_t>(p)] = rank;
        slice_nuclear[static_cast<std::size_t>(p)] = nuc;
    }
    const double svd_secs = seconds_since(t0);

    ProxTnnResult result;
    double nuclear_total = 0.0;
    for (std::int64_t p = 0; p < half; ++p) {
        result.t_rank = std::max(result.t_rank, retained[static_cast<std::size_t>(p)]);
        const bool self_conjugate = (p == 0) || (n3 % 2 == 0 && p == n3 / 2);
        nuclear_total += slice_nuclear[static_cast<std::size_t>(p)] * (self_conjugate ? 1.0 : 2.0);
    }
    result.nuclear_norm = nuclear_total / static_cast<double>(n3);

    t0 = std::chrono::steady_clock::now();
    result.value = ifft_mode3_half(freq, n1, n2, n3);
    const double fft_bwd = seconds_since(t0);

    if (stats) {
        stats->fft_seconds += fft_fwd + fft_bwd;
        stats->svd_seconds += svd_secs;
    }
    return result;
}

Tensor3 prox_group_l112(const Tensor3& v, double tau) {
    if (!(tau > 0.0)) {
        throw ParameterError("prox_group_l112: tau must be positive");
    }
    const std::int64_t n1 = v.n1(), n2 = v.n2(), n3 = v.n3();
    const std::int64_t stride = n1 * n2;
    Tensor3 out(n1, n2, n3);
#pragma omp parallel for schedule(static)
    for (std::int64_t j = 0; j < n2; ++j) {
        const double* in_base = v.data() + j * n1;
        double* out_base = out.data() + j * n1;
        for (std::int64_t i = 0; i < n1; ++i) {
            double sq = 0.0;
            for (std::int64_t p = 0; p < n3; ++p) {
                const double x = in_base[i + p * stride];
                sq += x * x;
            }
            const double norm = std::sqrt(sq);
            const double factor = norm > tau ? 1.0 - tau / norm : 0.0;
            for (std::int64_t p = 0; p < n3; ++p) {
                out_base[i + p * stride] = factor * in_base[i + p * stride];
            }
        }
    }
    return out;
}

} // namespace tlisd
