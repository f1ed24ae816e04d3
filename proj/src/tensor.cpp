#include "tlisd/tensor.hpp"

#include <fftw3.h>

#include <cmath>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <mutex>

namespace tlisd {

namespace {

// FFTW's planner is not thread-safe; execution is.
std::mutex& planner_mutex() {
    static std::mutex m;
    return m;
}

struct PlanGuard {
    fftw_plan plan = nullptr;
    ~PlanGuard() {
        if (plan) {
            std::lock_guard<std::mutex> lock(planner_mutex());
            fftw_destroy_plan(plan);
        }
    }
};

void check_dims(std::int64_t n1, std::int64_t n2, std::int64_t n3) {
    if (n1 < 1 || n2 < 1 || n3 < 1) {
        throw ParameterError("tensor dims must all be >= 1");
    }
}

} // namespace

Tensor3::Tensor3(std::int64_t n1, std::int64_t n2, std::int64_t n3)
    : n1_(n1), n2_(n2), n3_(n3), data_(static_cast<std::size_t>(n1 * n2 * n3), 0.0) {
    check_dims(n1, n2, n3);
}

FourierTensor3::FourierTensor3(std::int64_t n1, std::int64_t n2, std::int64_t n3)
    : n1_(n1), n2_(n2), n3_(n3),
      data_(static_cast<std::size_t>(n1 * n2 * n3), std::complex<double>(0.0, 0.0)) {
    check_dims(n1, n2, n3);
}

bool Tensor3::all_finite() const {
    for (double v : data_) {
        if (!std::isfinite(v)) return false;
    }
    return true;
}

double Tensor3::frobenius_norm() const {
    // Per-slice partials, summed sequentially so the result does not depend
    // on thread count.
    double total = 0.0;
    for (std::int64_t p = 0; p < n3_; ++p) {
        total += slice_matrix(p).squaredNorm();
    }
    return std::sqrt(total);
}

double Tensor3::max_abs() const {
    double m = 0.0;
    for (double v : data_) m = std::max(m, std::abs(v));
    return m;
}

std::int64_t fourier_half_count(std::int64_t n3) {
    return n3 / 2 + 1;
}

FourierTensor3 fft_mode3(const Tensor3& t) {
    const int n3 = static_cast<int>(t.n3());
    const std::int64_t tubes = t.n1() * t.n2();
    FourierTensor3 out(t.n1(), t.n2(), t.n3());
    for (std::int64_t idx = 0; idx < tubes * n3; ++idx) {
        out.data()[idx] = std::complex<double>(t.data()[idx], 0.0);
    }
    PlanGuard guard;
    {
        std::lock_guard<std::mutex> lock(planner_mutex());
        guard.plan = fftw_plan_many_dft(
            1, &n3, static_cast<int>(tubes),
            reinterpret_cast<fftw_complex*>(out.data()), nullptr, static_cast<int>(tubes), 1,
            reinterpret_cast<fftw_complex*>(out.data()), nullptr, static_cast<int>(tubes), 1,
            FFTW_FORWARD, FFTW_ESTIMATE);
    }
    fftw_execute(guard.plan);
    return out;
}

Tensor3 ifft_mode3(const FourierTensor3& f) {
    const int n3 = static_cast<int>(f.n3());
    const std::int64_t tubes = f.n1() * f.n2();
    std::vector<std::complex<double>> scratch(f.data(), f.data() + tubes * n3);
    PlanGuard guard;
    {
        std::lock_guard<std::mutex> lock(planner_mutex());
        guard.plan = fftw_plan_many_dft(
            1, &n3, static_cast<int>(tubes),
            reinterpret_cast<fftw_complex*>(scratch.data()), nullptr, static_cast<int>(tubes), 1,
            reinterpret_cast<fftw_complex*>(scratch.data()), nullptr, static_cast<int>(tubes), 1,
            FFTW_BACKWARD, FFTW_ESTIMATE);
    }
    fftw_execute(guard.plan);
    Tensor3 out(f.n1(), f.n2(), f.n3());
    const double scale = 1.0 / n3;
    for (std::int64_t idx = 0; idx < tubes * n3; ++idx) {
        out.data()[idx] = scratch[idx].real() * scale;
    }
    return out;
}

std::vector<std::complex<double>> fft_mode3_half(const Tensor3& t) {
    const int n3 = static_cast<int>(t.n3());
    const std::int64_t tubes = t.n1() * t.n2();
    const std::int64_t half = fourier_half_count(n3);
    std::vector<std::complex<double>> out(static_cast<std::size_t>(tubes * half));
    PlanGuard guard;
    {
        std::lock_guard<std::mutex> lock(planner_mutex());
        guard.plan = fftw_plan_many_dft_r2c(
            1, &n3, static_cast<int>(tubes),
            const_cast<double*>(t.data()), nullptr, static_cast<int>(tubes), 1,
            reinterpret_cast<fftw_complex*>(out.data()), nullptr, static_cast<int>(tubes), 1,
            FFTW_ESTIMATE | FFTW_PRESERVE_INPUT);
    }
    fftw_execute(guard.plan);
    return out;
}

Tensor3 ifft_mode3_half(std::vector<std::complex<double>>& half,
                        std::int64_t n1, std::int64_t n2, std::int64_t n3) {
    const int n = static_cast<int>(n3);
    const std::int64_t tubes = n1 * n2;
    Tensor3 out(n1, n2, n3);
    PlanGuard guard;
    {
        std::lock_guard<std::mutex> lock(planner_mutex());
        guard.plan = fftw_plan_many_dft_c2r(
            1, &n, static_cast<int>(tubes),
            reinterpret_cast<fftw_complex*>(half.data()), nullptr, static_cast<int>(tubes), 1,
            out.data(), nullptr, static_cast<int>(tubes), 1,
            FFTW_ESTIMATE);
    }
    fftw_execute(guard.plan);
    const double scale = 1.0 / n3;
    double* d = out.data();
    for (std::int64_t idx = 0; idx < tubes * n3; ++idx) d[idx] *= scale;
    return out;
}

double norm_l112(const Tensor3& s) {
    const std::int64_t n1 = s.n1(), n2 = s.n2(), n3 = s.n3();
    const std::int64_t stride = n1 * n2;
    std::vector<double> column_sums(static_cast<std::size_t>(n2), 0.0);
#pragma omp parallel for schedule(static)
    for (std::int64_t j = 0; j < n2; ++j) {
        const double* base = s.data() + j * n1;
        double acc = 0.0;
        for (std::int64_t i = 0; i < n1; ++i) {
            double sq = 0.0;
            for (std::int64_t p = 0; p < n3; ++p) {
                const double v = base[i + p * stride];
                sq += v * v;
            }
            acc += std::sqrt(sq);
        }
        column_sums[static_cast<std::size_t>(j)] = acc;
    }
    double total = 0.0;
    for (double v : column_sums) total += v;
    return total;
}

double tensor_nuclear_norm(const Tensor3& l) {
    const std::int64_t n3 = l.n3();
    const std::int64_t half = fourier_half_count(n3);
    auto freq = fft_mode3_half(l);
    const std::int64_t stride = l.n1() * l.n2();
    std::vector<double> per_slice(static_cast<std::size_t>(half), 0.0);
#pragma omp parallel for schedule(dynamic)
    for (std::int64_t p = 0; p < half; ++p) {
        Eigen::Map<const Eigen::MatrixXcd> slice(freq.data() + p * stride, l.n1(), l.n2());
        Eigen::JacobiSVD<Eigen::MatrixXcd> svd(slice);
        per_slice[static_cast<std::size_t>(p)] = svd.singularValues().sum();
    }
    double total = 0.0;
    for (std::int64_t p = 0; p < half; ++p) {
        const bool self_conjugate = (p == 0) || (n3 % 2 == 0 && p == n3 / 2);
        total += per_slice[static_cast<std::size_t>(p)] * (self_conjugate ? 1.0 : 2.0);
    }
    return total / static_cast<double>(n3);
}

void save_tensor(const Tensor3& t, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot open for writing: " + path);
    const char magic[4] = {'T', 'L', 'S', '3'};
    out.write(magic, 4);
    const std::uint32_t dims[3] = {static_cast<std::uint32_t>(t.n1()),
                                   static_cast<std::uint32_t>(t.n2()),
                                   static_cast<std::uint32_t>(t.n3())};
    out.write(reinterpret_cast<const char*>(dims), sizeof(dims));
    out.write(reinterpret_cast<const char*>(t.data()),
              static_cast<std::streamsize>(t.size() * sizeof(double)));
    if (!out) throw IoError("short write: " + path);
}

Tensor3 load_tensor(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open for reading: " + path);
    char magic[4];
    in.read(magic, 4);
    if (!in || std::memcmp(magic, "TLS3", 4) != 0) {
        throw IoError("not a tensor snapshot (bad magic): " + path);
    }
    std::uint32_t dims[3];
    in.read(reinterpret_cast<char*>(dims), sizeof(dims));
    if (!in) throw IoError("truncated header: " + path);
    if (dims[0] < 1 || dims[1] < 1 || dims[2] < 1) {
        throw IoError("invalid dims in snapshot: " + path);
    }
    Tensor3 t(dims[0], dims[1], dims[2]);
    in.read(reinterpret_cast<char*>(t.data()),
            static_cast<std::streamsize>(t.size() * sizeof(double)));
    if (!in) throw IoError("truncated data: " + path);
    return t;
}

} // namespace tlisd
