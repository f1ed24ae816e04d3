#pragma once

#include <Eigen/Dense>
#include <complex>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "tlisd/errors.hpp"

namespace tlisd {

/// Dense real 3-way tensor, frontal-slice-major layout: element (i,j,p) lives
/// at data[i + j*n1 + p*n1*n2]. Frontal slice p is therefore a contiguous
/// column-major n1 x n2 matrix; tubes (i,j,:) are strided by n1*n2.
class Tensor3 {
public:
    Tensor3() = default;
    Tensor3(std::int64_t n1, std::int64_t n2, std::int64_t n3);

    std::int64_t n1() const { return n1_; }
    std::int64_t n2() const { return n2_; }
    std::int64_t n3() const { return n3_; }
    std::int64_t size() const { return static_cast<std::int64_t>(data_.size()); }
    bool same_dims(const Tensor3& other) const {
        return n1_ == other.n1_ && n2_ == other.n2_ && n3_ == other.n3_;
    }

    double& operator()(std::int64_t i, std::int64_t j, std::int64_t p) {
        return data_[i + j * n1_ + p * n1_ * n2_];
    }
    double operator()(std::int64_t i, std::int64_t j, std::int64_t p) const {
        return data_[i + j * n1_ + p * n1_ * n2_];
    }

    double* data() { return data_.data(); }
    const double* data() const { return data_.data(); }

    /// Contiguous view of frontal slice p (n1*n2 doubles, column-major).
    std::span<double> slice(std::int64_t p) {
        return {data_.data() + p * n1_ * n2_, static_cast<std::size_t>(n1_ * n2_)};
    }
    std::span<const double> slice(std::int64_t p) const {
        return {data_.data() + p * n1_ * n2_, static_cast<std::size_t>(n1_ * n2_)};
    }
    Eigen::Map<Eigen::MatrixXd> slice_matrix(std::int64_t p) {
        return {data_.data() + p * n1_ * n2_, n1_, n2_};
    }
    Eigen::Map<const Eigen::MatrixXd> slice_matrix(std::int64_t p) const {
        return {data_.data() + p * n1_ * n2_, n1_, n2_};
    }

    bool all_finite() const;
    double frobenius_norm() const;
    double max_abs() const;

    static Tensor3 zeros(std::int64_t n1, std::int64_t n2, std::int64_t n3) {
        return Tensor3(n1, n2, n3);
    }

private:
    std::int64_t n1_ = 0, n2_ = 0, n3_ = 0;
    std::vector<double> data_;
};

/// Complex tensor with the same layout, holding the mode-3 DFT of a Tensor3.
/// For real input, slice p and slice n3-p+2 (1-based, p >= 2) are conjugates.
class FourierTensor3 {
public:
    FourierTensor3() = default;
    FourierTensor3(std::int64_t n1, std::int64_t n2, std::int64_t n3);

    std::int64_t n1() const { return n1_; }
    std::int64_t n2() const { return n2_; }
    std::int64_t n3() const { return n3_; }

    std::complex<double>& operator()(std::int64_t i, std::int64_t j, std::int64_t p) {
        return data_[i + j * n1_ + p * n1_ * n2_];
    }
    std::complex<double> operator()(std::int64_t i, std::int64_t j, std::int64_t p) const {
        return data_[i + j * n1_ + p * n1_ * n2_];
    }

    std::complex<double>* data() { return data_.data(); }
    const std::complex<double>* data() const { return data_.data(); }

    Eigen::Map<Eigen::MatrixXcd> slice_matrix(std::int64_t p) {
        return {data_.data() + p * n1_ * n2_, n1_, n2_};
    }
    Eigen::Map<const Eigen::MatrixXcd> slice_matrix(std::int64_t p) const {
        return {data_.data() + p * n1_ * n2_, n1_, n2_};
    }

private:
    std::int64_t n1_ = 0, n2_ = 0, n3_ = 0;
    std::vector<std::complex<double>> data_;
};

/// Unnormalized forward DFT along every tube (mode 3).
FourierTensor3 fft_mode3(const Tensor3& t);

/// Inverse of fft_mode3 with 1/n3 normalization; imaginary residue discarded.
Tensor3 ifft_mode3(const FourierTensor3& f);

/// Number of independent Fourier slices for real input: floor(n3/2)+1.
/// The remaining slices are conjugate mirrors.
std::int64_t fourier_half_count(std::int64_t n3);

/// Half-spectrum mode-3 transform (r2c): returns fourier_half_count(n3)
/// slices in the usual layout. Used by the slice-wise kernels so only half
/// the SVDs run; results are mirrored back by conjugation.
std::vector<std::complex<double>> fft_mode3_half(const Tensor3& t);

/// Inverse of fft_mode3_half (c2r, 1/n3 normalized). Destroys `half`.
Tensor3 ifft_mode3_half(std::vector<std::complex<double>>& half,
                        std::int64_t n1, std::int64_t n2, std::int64_t n3);

/// Sum over all tubes of their Euclidean norms.
double norm_l112(const Tensor3& s);

/// Average nuclear norm of the Fourier-domain frontal slices.
double tensor_nuclear_norm(const Tensor3& l);

/// k-support norm of a vector: l2 penalty on the k-r-1 largest magnitudes
/// plus an averaged-tail term, with r selected by the validity condition on
/// the sorted magnitudes. Interpolates between l1 (k=1) and l2 (k=d).
double ksupport_norm(std::span<const double> v, std::int64_t k);

/// Binary tensor snapshot: little-endian "TLS3" magic, u32 dims n1,n2,n3,
/// then float64 data in layout order.
void save_tensor(const Tensor3& t, const std::string& path);
Tensor3 load_tensor(const std::string& path);

} // namespace tlisd
