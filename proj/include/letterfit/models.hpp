#pragma once

#include <array>
#include <string_view>
#include <vector>

#include "letterfit/distribution.hpp"

namespace letterfit {

/// The ten rank-frequency families, in equation order.
enum class ModelId {
    gusein_zade,
    power_law,
    exponential,
    logarithmic,
    weibull,
    quadratic_log,
    yule,
    menzerath_altmann,
    cocho_beta,
    frappat,
};

/// Scale C plus up to three shape parameters; which fields are live depends
/// on the family (see ModelSpec::uses_*).
struct ParamVector {
    double C = 0.0;
    double a = 0.0;
    double b = 0.0;
    double c = 0.0;
};

struct ModelSpec {
    ModelId id;
    const char* name; // CLI identifier
    int eq;           // 1..10
    int p;            // free parameters, the constrained scale excluded
    bool needs_n;
    bool additive_scale; // C enters as an added constant, not a factor
    bool uses_a, uses_b, uses_c;
};

const std::array<ModelSpec, 10>& model_registry();
const ModelSpec& model_spec(ModelId id);
const ModelSpec* model_by_name(std::string_view name);

/// f(r) for the family, natural logs throughout. Throws DomainError on
/// r outside 1..n or parameters the formula cannot take (yule needs b > 0).
double evaluate(ModelId id, const ParamVector& params, int r, int n);

/// f(r) together with the partial derivatives wrt the live parameters,
/// ordered C, a, b, c. For yule the b slot is the derivative wrt beta = ln b,
/// the unconstrained variable the fitter actually moves.
struct ModelGradient {
    double f;
    std::array<double, 4> d;
};
ModelGradient evaluate_gradient(ModelId id, const ParamVector& params, int r, int n);

/// Scale making the frequencies sum to one for the given shape parameters.
/// For the additive families this solves the linear normalization equation;
/// otherwise C = 1 / sum(g). Throws DomainError when sum(g) <= 0.
double normalize_scale(ModelId id, const ParamVector& shape, int n);

/// Seed parameters from the family's linearizing transform: log-linear
/// regression where the model supports it, direct least squares where the
/// model is already linear, and the exponential fit's scale for frappat.
/// freqs is indexed by rank-1. Needs p+2 ranks with f > 0.
ParamVector linearize(ModelId id, const std::vector<double>& freqs, int n);
ParamVector linearize(ModelId id, const RankedDistribution& dist);

/// Piecewise plateau fit: exclusive segment starts plus one constant per
/// segment, f = C_k * ln((n+1)/r) on the segment containing r.
struct PiecewiseSpec {
    std::vector<int> breakpoints; // strictly increasing, each in 2..n
    std::vector<double> constants;

    int segments() const { return static_cast<int>(constants.size()); }
};

double evaluate_piecewise(const PiecewiseSpec& spec, int r, int n);

} // namespace letterfit
