#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "tlisd/tensor.hpp"

namespace tlisd {

enum class Variant {
    TLISD, // low-rank + group-sparse S + squared k-support on C
    NO_C,  // drop the C term entirely (C stays zero)
    L1_C,  // replace the k-support step with elementwise soft-thresholding
};

std::string variant_name(Variant v);
Variant variant_from_name(const std::string& name);

struct SolverConfig {
    // Negative lambda1 means "use the default 1/sqrt(max(n1,n2)*n3)".
    double lambda1 = -1.0;
    double lambda2 = 0.03;
    // Cardinality parameter of the k-support norm; 0 means "use n1".
    std::int64_t k = 0;
    double rho = 1.2;
    double mu0 = 1e-3;
    double mu_max = 1e10;
    double tol = 1e-5;
    std::int64_t max_iters = 500;
    Variant variant = Variant::TLISD;

    // Snapshot L/S/C every `checkpoint_interval` iterations into
    // `checkpoint_dir` (0 disables).
    std::int64_t checkpoint_interval = 0;
    std::string checkpoint_dir;

    void validate() const;
    double effective_lambda1(std::int64_t n1, std::int64_t n2, std::int64_t n3) const;
    std::int64_t effective_k(std::int64_t n1) const;
};

struct TraceRecord {
    std::int64_t iter = 0;
    double residual = 0.0;
    std::int64_t t_rank = 0;
    double objective = 0.0;
    double mu = 0.0;
    double c_norm = 0.0;
    double seconds = 0.0;
};

struct DecompositionResult {
    Tensor3 L, S, C;
    bool converged = false;
    std::int64_t iterations = 0;
    std::vector<TraceRecord> trace;
    // Aggregate time spent inside the mode-3 transforms and the slice SVDs,
    // for the benchmark report.
    double fft_seconds = 0.0;
    double svd_seconds = 0.0;
    double total_seconds = 0.0;
};

/// Inexact augmented Lagrangian loop: alternate prox updates of L, S, C and
/// multiplier ascent Y += mu*(D-L-S-C), with mu growing geometrically until
/// the relative feasibility residual drops below cfg.tol.
DecompositionResult decompose(const Tensor3& d, const SolverConfig& cfg);

/// Per-iteration t-rank series of a traced run.
std::vector<std::int64_t> estimate_rank_trace(const DecompositionResult& result);

/// Objective of the selected variant evaluated at (L,S,C).
double objective_value(const Tensor3& l, const Tensor3& s, const Tensor3& c,
                       double lambda1, double lambda2, std::int64_t k, Variant variant);

/// Trace CSV with columns iter,residual,t_rank,objective,mu,c_norm,seconds.
void write_trace_csv(const DecompositionResult& result, const std::string& path);

} // namespace tlisd
