#include "letterfit/fitter.hpp"

#include <cfloat>
#include <cmath>
#include <cstdint>
#include <limits>

#include "letterfit/errors.hpp"
#include "letterfit/linalg.hpp"

namespace letterfit {

namespace {

constexpr double kLambdaInit = 1e-3;
constexpr double kLambdaMax = 1e14;
constexpr double kLambdaMin = 1e-14;

// Mapping between the optimizer's flat theta vector and ParamVector slots.
// Yule's b is driven through beta = ln(b) so it stays positive.
struct Packing {
    ModelId id;
    bool with_scale;
    int slots[4]; // theta index for C,a,b,c or -1
    int count = 0;

    Packing(ModelId model, ScaleMode mode) : id(model) {
        const ModelSpec& spec = model_spec(model);
        with_scale = (mode == ScaleMode::free_scale);
        slots[0] = with_scale ? count++ : -1;
        slots[1] = spec.uses_a ? count++ : -1;
        slots[2] = spec.uses_b ? count++ : -1;
        slots[3] = spec.uses_c ? count++ : -1;
    }

    std::vector<double> pack(const ParamVector& p) const {
        std::vector<double> theta(count);
        if (slots[0] >= 0)
            theta[slots[0]] = p.C;
        if (slots[1] >= 0)
            theta[slots[1]] = p.a;
        if (slots[2] >= 0)
            theta[slots[2]] = (id == ModelId::yule) ? std::log(p.b) : p.b;
        if (slots[3] >= 0)
            theta[slots[3]] = p.c;
        return theta;
    }

    ParamVector unpack(const std::vector<double>& theta, int n) const {
        ParamVector p;
        if (slots[1] >= 0)
            p.a = theta[slots[1]];
        if (slots[2] >= 0)
            p.b = (id == ModelId::yule) ? std::exp(theta[slots[2]]) : theta[slots[2]];
        if (slots[3] >= 0)
            p.c = theta[slots[3]];
        p.C = with_scale ? theta[slots[0]] : normalize_scale(id, p, n);
        return p;
    }
};

struct Evaluation {
    std::vector<double> model; // f(r)
    std::vector<double> residuals;
    double sse = 0.0;
    bool ok = false;
};

Evaluation evaluate_theta(const Packing& packing, const std::vector<double>& theta,
                          const std::vector<double>& y, int n) {
    Evaluation ev;
    try {
        ParamVector p = packing.unpack(theta, n);
        ev.model.resize(n);
        ev.residuals.resize(n);
        for (int r = 1; r <= n; ++r) {
            double f = evaluate(packing.id, p, r, n);
            ev.model[r - 1] = f;
            double e = y[r - 1] - f;
            ev.residuals[r - 1] = e;
            ev.sse += e * e;
        }
        ev.ok = std::isfinite(ev.sse);
    } catch (const DomainError&) {
        ev.ok = false;
    }
    return ev;
}

// Model Jacobian d f(r) / d theta, row-major n x count.
std::vector<double> jacobian(const Packing& packing, const std::vector<double>& theta,
                             const std::vector<double>& y, int n, const FitOptions& opts) {
    const int k = packing.count;
    std::vector<double> J(static_cast<std::size_t>(n) * k);
    const bool analytic =
        opts.jacobian == JacobianMode::analytic && opts.scale_mode == ScaleMode::free_scale;
    if (analytic) {
        ParamVector p = packing.unpack(theta, n);
        for (int r = 1; r <= n; ++r) {
            ModelGradient g = evaluate_gradient(packing.id, p, r, n);
            for (int slot = 0; slot < 4; ++slot)
                if (packing.slots[slot] >= 0)
                    J[static_cast<std::size_t>(r - 1) * k + packing.slots[slot]] = g.d[slot];
        }
        return J;
    }
    // Central differences; also the route for constrained scale, where C
    // depends on every shape parameter through the normalization.
    std::vector<double> probe = theta;
    for (int j = 0; j < k; ++j) {
        double h = opts.fd_step * std::max(std::abs(theta[j]), 1.0);
        probe[j] = theta[j] + h;
        Evaluation hi = evaluate_theta(packing, probe, y, n);
        probe[j] = theta[j] - h;
        Evaluation lo = evaluate_theta(packing, probe, y, n);
        probe[j] = theta[j];
        if (!hi.ok || !lo.ok)
            throw DomainError("finite-difference probe left the model domain");
        for (int r = 0; r < n; ++r)
            J[static_cast<std::size_t>(r) * k + j] = (hi.model[r] - lo.model[r]) / (2.0 * h);
    }
    return J;
}

ParamVector fallback_seed(ModelId id, int n) {
    ParamVector p;
    p.a = 0.5;
    p.b = 0.5;
    p.c = 0.0;
    try {
        p.C = normalize_scale(id, p, n);
    } catch (const DomainError&) {
        p.C = 1.0 / n;
    }
    return p;
}

FitResult finish_result(const ModelSpec& spec, const Packing& packing,
                        const std::vector<double>& theta, const Evaluation& ev, int n,
                        const ParamVector& seed, int iterations, FitStatus status) {
    FitResult out;
    out.model = spec.name;
    out.params = packing.unpack(theta, n);
    out.initial_params = seed;
    out.residuals = ev.residuals;
    out.sse = 0.0;
    for (double e : ev.residuals)
        out.sse += e * e;
    out.iterations = iterations;
    out.status = status;
    out.converged =
        status == FitStatus::converged_sse || status == FitStatus::converged_step;
    return out;
}

} // namespace

FitResult fit(ModelId id, const std::vector<double>& freqs, int n, const FitOptions& opts) {
    const ModelSpec& spec = model_spec(id);
    if (static_cast<int>(freqs.size()) != n)
        throw LengthMismatchError("frequency vector does not match n");
    if (n < spec.p + 2)
        throw InsufficientDataError(std::string(spec.name) + " needs at least p+2 data points");
    if (opts.max_iterations < 1 || opts.rel_sse_tolerance <= 0 ||
        opts.param_step_tolerance <= 0 || opts.fd_step <= 0)
        throw DomainError("invalid fit options");

    ParamVector seed;
    try {
        seed = linearize(id, freqs, n);
    } catch (const Error&) {
        seed = fallback_seed(id, n);
    }

    Packing packing(id, opts.scale_mode);
    std::vector<double> theta = packing.pack(seed);
    Evaluation ev = evaluate_theta(packing, theta, freqs, n);
    if (!ev.ok) {
        seed = fallback_seed(id, n);
        theta = packing.pack(seed);
        ev = evaluate_theta(packing, theta, freqs, n);
        if (!ev.ok) {
            FitResult out;
            out.model = spec.name;
            out.initial_params = seed;
            out.sse = std::numeric_limits<double>::quiet_NaN();
            out.status = FitStatus::domain_error;
            out.message = "model undefined at seed parameters";
            return out;
        }
    }

    if (packing.count == 0) {
        // Constrained Gusein-Zade: nothing to optimize.
        return finish_result(spec, packing, theta, ev, n, seed, 0, FitStatus::converged_sse);
    }

    const int k = packing.count;
    double lambda = kLambdaInit;
    FitStatus status = FitStatus::max_iterations;
    int iterations = 0;

    for (int iter = 1; iter <= opts.max_iterations; ++iter) {
        iterations = iter;
        std::vector<double> J;
        try {
            J = jacobian(packing, theta, freqs, n, opts);
        } catch (const DomainError&) {
            status = FitStatus::singular_jacobian;
            break;
        }
        std::vector<double> g(k, 0.0), H(static_cast<std::size_t>(k) * k, 0.0);
        for (int r = 0; r < n; ++r)
            for (int a = 0; a < k; ++a) {
                g[a] += J[static_cast<std::size_t>(r) * k + a] * ev.residuals[r];
                for (int b = 0; b < k; ++b)
                    H[static_cast<std::size_t>(a) * k + b] +=
                        J[static_cast<std::size_t>(r) * k + a] *
                        J[static_cast<std::size_t>(r) * k + b];
            }

        bool stop = false;
        while (true) {
            std::vector<double> A = H;
            for (int j = 0; j < k; ++j)
                A[static_cast<std::size_t>(j) * k + j] +=
                    lambda * (H[static_cast<std::size_t>(j) * k + j] + 1e-30);
            std::vector<double> delta = g;
            if (!linalg::solve_inplace(A, delta, k)) {
                lambda *= 10.0;
                if (lambda > kLambdaMax) {
                    status = FitStatus::singular_jacobian;
                    stop = true;
                    break;
                }
                continue;
            }
            std::vector<double> cand(k);
            double step = 0.0;
            for (int j = 0; j < k; ++j) {
                cand[j] = theta[j] + delta[j];
                step = std::max(step, std::abs(delta[j]));
            }
            Evaluation cev = evaluate_theta(packing, cand, freqs, n);
            if (cev.ok && cev.sse <= ev.sse) {
                double rel = std::abs(ev.sse - cev.sse) / std::max(ev.sse, DBL_MIN);
                theta = std::move(cand);
                ev = std::move(cev);
                lambda = std::max(lambda * 0.1, kLambdaMin);
                if (rel < opts.rel_sse_tolerance) {
                    status = FitStatus::converged_sse;
                    stop = true;
                } else if (step < opts.param_step_tolerance) {
                    status = FitStatus::converged_step;
                    stop = true;
                }
                break;
            }
            lambda *= 10.0;
            if (step < opts.param_step_tolerance) {
                // Damping already restricts moves below the step tolerance.
                status = FitStatus::converged_step;
                stop = true;
                break;
            }
            if (lambda > kLambdaMax) {
                status = FitStatus::stalled;
                stop = true;
                break;
            }
        }
        if (stop)
            break;
    }

    return finish_result(spec, packing, theta, ev, n, seed, iterations, status);
}

FitResult fit(ModelId id, const RankedDistribution& dist, const FitOptions& opts) {
    return fit(id, dist.frequencies(), dist.n(), opts);
}

namespace {

FitResult fit_one_or_stub(ModelId id, const std::vector<double>& freqs, int n,
                          const FitOptions& opts) {
    try {
        return fit(id, freqs, n, opts);
    } catch (const Error& e) {
        FitResult out;
        out.model = model_spec(id).name;
        out.sse = std::numeric_limits<double>::quiet_NaN();
        out.status = FitStatus::domain_error;
        out.message = e.what();
        return out;
    }
}

} // namespace

std::vector<FitResult> fit_all_serial(const std::vector<double>& freqs, int n,
                                      const FitOptions& opts) {
    std::vector<FitResult> out(model_registry().size());
    for (std::size_t i = 0; i < model_registry().size(); ++i)
        out[i] = fit_one_or_stub(model_registry()[i].id, freqs, n, opts);
    return out;
}

std::vector<FitResult> fit_all(const std::vector<double>& freqs, int n, const FitOptions& opts) {
    std::vector<FitResult> out(model_registry().size());
#pragma omp parallel for schedule(dynamic)
    for (std::size_t i = 0; i < model_registry().size(); ++i)
        out[i] = fit_one_or_stub(model_registry()[i].id, freqs, n, opts);
    return out;
}

std::vector<FitResult> fit_all(const RankedDistribution& dist, const FitOptions& opts) {
    return fit_all(dist.frequencies(), dist.n(), opts);
}

std::vector<FitResult> fit_all_serial(const RankedDistribution& dist, const FitOptions& opts) {
    return fit_all_serial(dist.frequencies(), dist.n(), opts);
}

namespace {

// Closed-form plateau constants for one placement, then the exact SSE by
// direct summation so near-zero values do not cancel away.
double placement_sse(const std::vector<int>& bps, const std::vector<double>& y,
                     const std::vector<double>& x, int n, std::vector<double>* constants) {
    if (constants)
        constants->clear();
    double sse = 0.0;
    int lo = 1;
    for (std::size_t seg = 0; seg <= bps.size(); ++seg) {
        int hi = (seg < bps.size()) ? bps[seg] - 1 : n;
        double sxy = 0.0, sxx = 0.0;
        for (int r = lo; r <= hi; ++r) {
            sxy += y[r - 1] * x[r - 1];
            sxx += x[r - 1] * x[r - 1];
        }
        double c = sxy / sxx;
        if (constants)
            constants->push_back(c);
        for (int r = lo; r <= hi; ++r) {
            double e = y[r - 1] - c * x[r - 1];
            sse += e * e;
        }
        lo = hi + 1;
    }
    return sse;
}

std::vector<std::vector<int>> enumerate_placements(int n, int segments) {
    // Combinations of segments-1 breakpoints from {2..n}, lexicographic.
    const int need = segments - 1;
    std::vector<std::vector<int>> combos;
    std::vector<int> cur(need);
    for (int i = 0; i < need; ++i)
        cur[i] = 2 + i;
    while (true) {
        combos.push_back(cur);
        int j = need - 1;
        while (j >= 0 && cur[j] == n - (need - 1 - j))
            --j;
        if (j < 0)
            break;
        ++cur[j];
        for (int i = j + 1; i < need; ++i)
            cur[i] = cur[i - 1] + 1;
    }
    return combos;
}

PiecewiseFit piecewise_common(const std::vector<double>& freqs, int n, int segments,
                              bool parallel) {
    if (segments < 2)
        throw DomainError("piecewise fit needs at least 2 segments");
    if (static_cast<int>(freqs.size()) != n)
        throw LengthMismatchError("frequency vector does not match n");
    if (n < segments + 1)
        throw TooFewRanksError("piecewise fit needs n >= segments+1 ranks");
    double combo_count = 1.0;
    for (int i = 1; i <= segments - 1; ++i)
        combo_count *= static_cast<double>(n - i) / i;
    if (combo_count > 2e7)
        throw DomainError("piecewise breakpoint search space is too large");

    std::vector<double> x(n);
    for (int r = 1; r <= n; ++r)
        x[r - 1] = std::log(static_cast<double>(n + 1) / r);

    auto combos = enumerate_placements(n, segments);
    std::vector<double> sse(combos.size());

    if (parallel) {
#pragma omp parallel for schedule(static)
        for (std::size_t i = 0; i < combos.size(); ++i)
            sse[i] = placement_sse(combos[i], freqs, x, n, nullptr);
    } else {
        for (std::size_t i = 0; i < combos.size(); ++i)
            sse[i] = placement_sse(combos[i], freqs, x, n, nullptr);
    }

    // Placements are generated in lexicographic order, so the first index
    // attaining the minimum is the required tie-break.
    std::size_t best = 0;
    for (std::size_t i = 1; i < combos.size(); ++i)
        if (sse[i] < sse[best])
            best = i;

    PiecewiseFit out;
    out.spec.breakpoints = combos[best];
    double final_sse = placement_sse(combos[best], freqs, x, n, &out.spec.constants);

    FitResult& res = out.result;
    res.model = "piecewise_gusein_zade";
    res.sse = final_sse;
    res.residuals.resize(n);
    for (int r = 1; r <= n; ++r)
        res.residuals[r - 1] = freqs[r - 1] - evaluate_piecewise(out.spec, r, n);
    res.iterations = static_cast<int>(combos.size());
    res.converged = true;
    res.status = FitStatus::converged_sse;
    return out;
}

} // namespace

PiecewiseFit fit_piecewise(const std::vector<double>& freqs, int n, int segments) {
    return piecewise_common(freqs, n, segments, true);
}

PiecewiseFit fit_piecewise(const RankedDistribution& dist, int segments) {
    return piecewise_common(dist.frequencies(), dist.n(), segments, true);
}

PiecewiseFit fit_piecewise_serial(const std::vector<double>& freqs, int n, int segments) {
    return piecewise_common(freqs, n, segments, false);
}

PiecewiseFit fit_piecewise_serial(const RankedDistribution& dist, int segments) {
    return piecewise_common(dist.frequencies(), dist.n(), segments, false);
}

} // namespace letterfit
