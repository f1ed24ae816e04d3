#include "tlisd/solver.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>

#include "tlisd/prox.hpp"

namespace tlisd {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

Eigen::Map<Eigen::ArrayXd> flat(Tensor3& t) {
    return {t.data(), t.size()};
}

Eigen::Map<const Eigen::ArrayXd> flat(const Tensor3& t) {
    return {t.data(), t.size()};
}

double soft(double x, double tau) {
    if (x > tau) return x - tau;
    if (x < -tau) return x + tau;
    return 0.0;
}

double ksupport_sq_sum(const Tensor3& c, std::int64_t k) {
    double total = 0.0;
    for (std::int64_t p = 0; p < c.n3(); ++p) {
        const double n = ksupport_norm(c.slice(p), k);
        total += n * n;
    }
    return total;
}

void write_checkpoint(const SolverConfig& cfg, std::int64_t iter,
                      const Tensor3& l, const Tensor3& s, const Tensor3& c) {
    namespace fs = std::filesystem;
    fs::create_directories(cfg.checkpoint_dir);
    char name[64];
    std::snprintf(name, sizeof(name), "L_%06lld.tls3", static_cast<long long>(iter));
    save_tensor(l, (fs::path(cfg.checkpoint_dir) / name).string());
    std::snprintf(name, sizeof(name), "S_%06lld.tls3", static_cast<long long>(iter));
    save_tensor(s, (fs::path(cfg.checkpoint_dir) / name).string());
    std::snprintf(name, sizeof(name), "C_%06lld.tls3", static_cast<long long>(iter));
    save_tensor(c, (fs::path(cfg.checkpoint_dir) / name).string());
}

} // namespace

std::string variant_name(Variant v) {
    switch (v) {
        case Variant::TLISD: return "tlisd";
        case Variant::NO_C: return "no-c";
        case Variant::L1_C: return "l1-c";
    }
    return "tlisd";
}

Variant variant_from_name(const std::string& name) {
    if (name == "tlisd") return Variant::TLISD;
    if (name == "no-c") return Variant::NO_C;
    if (name == "l1-c") return Variant::L1_C;
    throw ParameterError("unknown variant '" + name + "' (expected tlisd, no-c or l1-c)");
}

void SolverConfig::validate() const {
    if (lambda1 > 0.0 && !std::isfinite(lambda1)) throw ParameterError("lambda1 must be finite");
    if (!(lambda2 > 0.0)) throw ParameterError("lambda2 must be positive");
    if (k < 0) throw ParameterError("k must be >= 0 (0 selects the n1 default)");
    if (!(rho > 1.0)) throw ParameterError("rho must be > 1");
    if (!(mu0 > 0.0)) throw ParameterError("mu0 must be positive");
    if (!(mu_max >= mu0)) throw ParameterError("mu_max must be >= mu0");
    if (!(tol > 0.0 && tol < 1.0)) throw ParameterError("tol must lie in (0,1)");
    if (max_iters < 1) throw ParameterError("max_iters must be >= 1");
    if (checkpoint_interval < 0) throw ParameterError("checkpoint_interval must be >= 0");
    if (checkpoint_interval > 0 && checkpoint_dir.empty()) {
        throw ParameterError("checkpoint_interval set but checkpoint_dir empty");
    }
}

double SolverConfig::effective_lambda1(std::int64_t n1, std::int64_t n2, std::int64_t n3) const {
    if (lambda1 > 0.0) return lambda1;
    return 1.0 / std::sqrt(static_cast<double>(std::max(n1, n2)) * static_cast<double>(n3));
}

std::int64_t SolverConfig::effective_k(std::int64_t n1) const {
    return k > 0 ? k : n1;
}

double objective_value(const Tensor3& l, const Tensor3& s, const Tensor3& c,
                       double lambda1, double lambda2, std::int64_t k, Variant variant) {
    double obj = tensor_nuclear_norm(l) + lambda1 * norm_l112(s);
    if (variant == Variant::TLISD) {
        obj += lambda2 * ksupport_sq_sum(c, k);
    } else if (variant == Variant::L1_C) {
        obj += lambda2 * flat(c).abs().sum();
    }
    return obj;
}

DecompositionResult decompose(const Tensor3& d, const SolverConfig& cfg) {
    cfg.validate();
    if (!d.all_finite()) {
        throw ParameterError("decompose: input tensor contains non-finite values");
    }
    const std::int64_t n1 = d.n1(), n2 = d.n2(), n3 = d.n3();
    const std::int64_t slice_len = n1 * n2;
    const double lambda1 = cfg.effective_lambda1(n1, n2, n3);
    const double lambda2 = cfg.lambda2;
    const std::int64_t k = cfg.effective_k(n1);
    if (k > slice_len) {
        throw ParameterError("k exceeds the frontal-slice length n1*n2");
    }

    const double d_norm = d.frobenius_norm();
    const double residual_denom = d_norm > 0.0 ? d_norm : 1.0;

    DecompositionResult res;
    res.L = Tensor3(n1, n2, n3);
    res.S = Tensor3(n1, n2, n3);
    res.C = Tensor3(n1, n2, n3);
    Tensor3 y(n1, n2, n3);
    Tensor3 work(n1, n2, n3);
    double mu = cfg.mu0;

    const auto run_start = Clock::now();
    ProxTnnStats tnn_stats;
    for (std::int64_t iter = 1; iter <= cfg.max_iters; ++iter) {
        const auto iter_start = Clock::now();
        const double mu_inv = 1.0 / mu;

        flat(work) = flat(d) - flat(res.S) - flat(res.C) + mu_inv * flat(y);
        ProxTnnResult l_step = prox_tnn(work, mu_inv, &tnn_stats);
        res.L = std::move(l_step.value);

        flat(work) = flat(d) - flat(res.L) - flat(res.C) + mu_inv * flat(y);
        res.S = prox_group_l112(work, lambda1 * mu_inv);

        if (cfg.variant != Variant::NO_C) {
            flat(work) = flat(d) - flat(res.L) - flat(res.S) + mu_inv * flat(y);
            if (cfg.variant == Variant::TLISD) {
                const double gamma = lambda2 * mu_inv;
#pragma omp parallel for schedule(dynamic)
                for (std::int64_t p = 0; p < n3; ++p) {
                    prox_ksupport_sq(work.slice(p), k, gamma, res.C.slice(p));
                }
            } else { // L1_C
                const double tau = lambda2 * mu_inv;
                const double* in = work.data();
                double* out = res.C.data();
#pragma omp parallel for schedule(static)
                for (std::int64_t idx = 0; idx < work.size(); ++idx) {
                    out[idx] = soft(in[idx], tau);
                }
            }
        }

        flat(work) = flat(d) - flat(res.L) - flat(res.S) - flat(res.C);
        const double residual_norm = work.frobenius_norm();
        flat(y) += mu * flat(work);

        const double residual = residual_norm / residual_denom;
        double objective = l_step.nuclear_norm + lambda1 * norm_l112(res.S);
        if (cfg.variant == Variant::TLISD) {
            objective += lambda2 * ksupport_sq_sum(res.C, k);
        } else if (cfg.variant == Variant::L1_C) {
            objective += lambda2 * flat(res.C).abs().sum();
        }

        TraceRecord rec;
        rec.iter = iter;
        rec.residual = residual;
        rec.t_rank = l_step.t_rank;
        rec.objective = objective;
        rec.mu = mu;
        rec.c_norm = res.C.frobenius_norm();
        rec.seconds = seconds_since(iter_start);
        res.trace.push_back(rec);
        res.iterations = iter;

        if (cfg.checkpoint_interval > 0 && iter % cfg.checkpoint_interval == 0) {
            write_checkpoint(cfg, iter, res.L, res.S, res.C);
        }

        mu = std::min(cfg.rho * mu, cfg.mu_max);
        if (residual < cfg.tol) {
            res.converged = true;
            break;
        }
    }
    res.fft_seconds = tnn_stats.fft_seconds;
    res.svd_seconds = tnn_stats.svd_seconds;
    res.total_seconds = seconds_since(run_start);
    return res;
}

std::vector<std::int64_t> estimate_rank_trace(const DecompositionResult& result) {
    std::vector<std::int64_t> ranks;
    ranks.reserve(result.trace.size());
    for (const auto& rec : result.trace) ranks.push_back(rec.t_rank);
    return ranks;
}

void write_trace_csv(const DecompositionResult& result, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw IoError("cannot open for writing: " + path);
    out << "iter,residual,t_rank,objective,mu,c_norm,seconds\n";
    char line[256];
    for (const auto& rec : result.trace) {
        std::snprintf(line, sizeof(line), "%lld,%.17g,%lld,%.17g,%.17g,%.17g,%.6f\n",
                      static_cast<long long>(rec.iter), rec.residual,
                      static_cast<long long>(rec.t_rank), rec.objective, rec.mu, rec.c_norm,
                      rec.seconds);
        out << line;
    }
    if (!out) throw IoError("short write: " + path);
}

} // namespace tlisd
