#pragma once

#include <string>
#include <vector>

#include "letterfit/models.hpp"

namespace letterfit {

enum class JacobianMode { analytic, finite_difference };

/// "free_scale" estimates C by least squares alongside the shape parameters
/// (the mode that reproduces published fits); "constrained" recomputes C from
/// the normalization at every step and optimizes shapes only.
enum class ScaleMode { free_scale, constrained };

struct FitOptions {
    int max_iterations = 200;
    double rel_sse_tolerance = 1e-12;
    double param_step_tolerance = 1e-10;
    JacobianMode jacobian = JacobianMode::analytic;
    double fd_step = 1e-7; // relative central-difference step
    ScaleMode scale_mode = ScaleMode::free_scale;
};

enum class FitStatus {
    converged_sse,
    converged_step,
    max_iterations,
    stalled,            // damping exhausted without an improving step
    singular_jacobian,
    domain_error,
};

struct FitResult {
    std::string model;
    ParamVector params;
    ParamVector initial_params;
    double sse = 0.0;
    std::vector<double> residuals; // y_r - f(r), rank order
    int iterations = 0;
    bool converged = false;
    FitStatus status = FitStatus::domain_error;
    std::string message;
};

/// Damped Gauss-Newton least squares seeded by the linearizing transform.
/// Damping grows when a step raises the SSE and shrinks on success, so the
/// final SSE never exceeds the seed's. freqs is indexed by rank-1.
FitResult fit(ModelId id, const std::vector<double>& freqs, int n, const FitOptions& opts = {});
FitResult fit(ModelId id, const RankedDistribution& dist, const FitOptions& opts = {});

/// One result per family in equation order; a family that fails is recorded
/// as a non-converged result without aborting the batch. The parallel
/// version fits families concurrently and returns bit-identical results.
std::vector<FitResult> fit_all(const std::vector<double>& freqs, int n,
                               const FitOptions& opts = {});
std::vector<FitResult> fit_all(const RankedDistribution& dist, const FitOptions& opts = {});
std::vector<FitResult> fit_all_serial(const std::vector<double>& freqs, int n,
                                      const FitOptions& opts = {});
std::vector<FitResult> fit_all_serial(const RankedDistribution& dist,
                                      const FitOptions& opts = {});

struct PiecewiseFit {
    PiecewiseSpec spec;
    FitResult result;
};

/// Exhaustive search over breakpoint placements with per-segment closed-form
/// constants; the global SSE minimizer wins, ties going to the smallest
/// breakpoint vector lexicographically. The parallel scan partitions the
/// placement list and reduces deterministically.
PiecewiseFit fit_piecewise(const std::vector<double>& freqs, int n, int segments);
PiecewiseFit fit_piecewise(const RankedDistribution& dist, int segments);
PiecewiseFit fit_piecewise_serial(const std::vector<double>& freqs, int n, int segments);
PiecewiseFit fit_piecewise_serial(const RankedDistribution& dist, int segments);

} // namespace letterfit
