#include "letterfit/models.hpp"

#include <cmath>

#include "letterfit/errors.hpp"
#include "letterfit/linalg.hpp"

namespace letterfit {

namespace {

const std::array<ModelSpec, 10> kRegistry = {{
    // id, name, eq, p, needs_n, additive_scale, uses_a, uses_b, uses_c
    {ModelId::gusein_zade, "gusein_zade", 1, 0, true, false, false, false, false},
    {ModelId::power_law, "power_law", 2, 1, false, false, true, false, false},
    {ModelId::exponential, "exponential", 3, 1, false, false, true, false, false},
    {ModelId::logarithmic, "logarithmic", 4, 1, false, true, true, false, false},
    // Weibull carries p=2 as in the published selection table (its delta AIC
    // and delta BIC columns only reproduce with the equal-p cancellation).
    {ModelId::weibull, "weibull", 5, 2, true, false, true, false, false},
    {ModelId::quadratic_log, "quadratic_log", 6, 2, false, true, true, true, false},
    {ModelId::yule, "yule", 7, 2, false, false, true, true, false},
    {ModelId::menzerath_altmann, "menzerath_altmann", 8, 2, false, false, true, true, false},
    {ModelId::cocho_beta, "cocho_beta", 9, 2, true, false, true, true, false},
    {ModelId::frappat, "frappat", 10, 3, false, true, true, true, true},
}};

void check_rank(int r, int n) {
    if (n < 1 || r < 1 || r > n)
        throw DomainError("rank out of range");
}

double log_reverse(int r, int n) {
    return std::log(static_cast<double>(n + 1) / r);
}

} // namespace

const std::array<ModelSpec, 10>& model_registry() {
    return kRegistry;
}

const ModelSpec& model_spec(ModelId id) {
    return kRegistry[static_cast<int>(id)];
}

const ModelSpec* model_by_name(std::string_view name) {
    for (const auto& spec : kRegistry)
        if (name == spec.name)
            return &spec;
    return nullptr;
}

double evaluate(ModelId id, const ParamVector& p, int r, int n) {
    check_rank(r, n);
    switch (id) {
    case ModelId::gusein_zade:
        return p.C * log_reverse(r, n);
    case ModelId::power_law:
        return p.C * std::pow(r, -p.a);
    case ModelId::exponential:
        return p.C * std::exp(-p.a * r);
    case ModelId::logarithmic:
        return p.C - p.a * std::log(r);
    case ModelId::weibull:
        return p.C * std::pow(log_reverse(r, n), p.a);
    case ModelId::quadratic_log: {
        double L = std::log(r);
        return p.C - p.a * L - p.b * L * L;
    }
    case ModelId::yule:
        if (p.b <= 0.0)
            throw DomainError("yule requires b > 0");
        return p.C * std::pow(p.b, r) * std::pow(r, -p.a);
    case ModelId::menzerath_altmann:
        return p.C * std::exp(-p.b / r) * std::pow(r, -p.a);
    case ModelId::cocho_beta:
        return p.C * std::pow(n + 1.0 - r, p.b) * std::pow(r, -p.a);
    case ModelId::frappat:
        return p.C + p.b * r + p.c * std::exp(-p.a * r);
    }
    throw DomainError("unknown model");
}

ModelGradient evaluate_gradient(ModelId id, const ParamVector& p, int r, int n) {
    check_rank(r, n);
    ModelGradient g{0.0, {0.0, 0.0, 0.0, 0.0}};
    double L = std::log(r);
    switch (id) {
    case ModelId::gusein_zade: {
        double x = log_reverse(r, n);
        g.f = p.C * x;
        g.d[0] = x;
        return g;
    }
    case ModelId::power_law: {
        double base = std::pow(r, -p.a);
        g.f = p.C * base;
        g.d[0] = base;
        g.d[1] = -L * g.f;
        return g;
    }
    case ModelId::exponential: {
        double base = std::exp(-p.a * r);
        g.f = p.C * base;
        g.d[0] = base;
        g.d[1] = -r * g.f;
        return g;
    }
    case ModelId::logarithmic:
        g.f = p.C - p.a * L;
        g.d[0] = 1.0;
        g.d[1] = -L;
        return g;
    case ModelId::weibull: {
        double x = log_reverse(r, n);
        double base = std::pow(x, p.a);
        g.f = p.C * base;
        g.d[0] = base;
        g.d[1] = g.f * std::log(x);
        return g;
    }
    case ModelId::quadratic_log:
        g.f = p.C - p.a * L - p.b * L * L;
        g.d[0] = 1.0;
        g.d[1] = -L;
        g.d[2] = -L * L;
        return g;
    case ModelId::yule: {
        if (p.b <= 0.0)
            throw DomainError("yule requires b > 0");
        double base = std::pow(p.b, r) * std::pow(r, -p.a);
        g.f = p.C * base;
        g.d[0] = base;
        g.d[1] = -L * g.f;
        g.d[2] = r * g.f; // wrt beta = ln b
        return g;
    }
    case ModelId::menzerath_altmann: {
        double base = std::exp(-p.b / r) * std::pow(r, -p.a);
        g.f = p.C * base;
        g.d[0] = base;
        g.d[1] = -L * g.f;
        g.d[2] = -g.f / r;
        return g;
    }
    case ModelId::cocho_beta: {
        double base = std::pow(n + 1.0 - r, p.b) * std::pow(r, -p.a);
        g.f = p.C * base;
        g.d[0] = base;
        g.d[1] = -L * g.f;
        g.d[2] = std::log(n + 1.0 - r) * g.f;
        return g;
    }
    case ModelId::frappat: {
        double e = std::exp(-p.a * r);
        g.f = p.C + p.b * r + p.c * e;
        g.d[0] = 1.0;
        g.d[1] = -p.c * r * e;
        g.d[2] = r;
        g.d[3] = e;
        return g;
    }
    }
    throw DomainError("unknown model");
}

double normalize_scale(ModelId id, const ParamVector& shape, int n) {
    if (n < 1)
        throw DomainError("normalize_scale needs n >= 1");
    const ModelSpec& spec = model_spec(id);
    if (spec.additive_scale) {
        // Sum of the C-free part; C = (1 - sum) / n.
        double rest = 0.0;
        for (int r = 1; r <= n; ++r) {
            double L = std::log(r);
            switch (id) {
            case ModelId::logarithmic:
                rest += -shape.a * L;
                break;
            case ModelId::quadratic_log:
                rest += -shape.a * L - shape.b * L * L;
                break;
            case ModelId::frappat:
                rest += shape.b * r + shape.c * std::exp(-shape.a * r);
                break;
            default:
                throw DomainError("unknown additive model");
            }
        }
        return (1.0 - rest) / n;
    }
    ParamVector unit = shape;
    unit.C = 1.0;
    double sum = 0.0;
    for (int r = 1; r <= n; ++r)
        sum += evaluate(id, unit, r, n);
    if (!(sum > 0.0))
        throw DomainError("normalization sum is not positive");
    return 1.0 / sum;
}

ParamVector linearize(ModelId id, const std::vector<double>& freqs, int n) {
    if (static_cast<int>(freqs.size()) != n)
        throw LengthMismatchError("frequency vector does not match n");
    const ModelSpec& spec = model_spec(id);

    std::vector<int> positive;
    for (int r = 1; r <= n; ++r)
        if (freqs[r - 1] > 0.0)
            positive.push_back(r);
    if (static_cast<int>(positive.size()) < spec.p + 2)
        throw InsufficientDataError(std::string(spec.name) +
                                    " seed needs at least p+2 ranks with positive frequency");

    ParamVector out;
    switch (id) {
    case ModelId::gusein_zade: {
        // Least squares of f on ln((n+1)/r) through the origin, zeros included.
        double sxy = 0.0, sxx = 0.0;
        for (int r = 1; r <= n; ++r) {
            double x = log_reverse(r, n);
            sxy += freqs[r - 1] * x;
            sxx += x * x;
        }
        out.C = sxy / sxx;
        return out;
    }
    case ModelId::logarithmic:
    case ModelId::quadratic_log: {
        // Already linear in f; fit all ranks directly.
        int k = (id == ModelId::logarithmic) ? 2 : 3;
        std::vector<double> X(n * k), y(n);
        for (int r = 1; r <= n; ++r) {
            double L = std::log(r);
            X[(r - 1) * k + 0] = 1.0;
            X[(r - 1) * k + 1] = L;
            if (k == 3)
                X[(r - 1) * k + 2] = L * L;
            y[r - 1] = freqs[r - 1];
        }
        auto beta = linalg::ols(X, y, n, k);
        out.C = beta[0];
        out.a = -beta[1];
        if (k == 3)
            out.b = -beta[2];
        return out;
    }
    case ModelId::frappat: {
        ParamVector exp_seed = linearize(ModelId::exponential, freqs, n);
        out.C = 0.0;
        out.a = exp_seed.a;
        out.b = 0.0;
        out.c = exp_seed.C;
        return out;
    }
    default:
        break;
    }

    // Remaining families are log-linear; regress ln f on the transform.
    int m = static_cast<int>(positive.size());
    int k = (id == ModelId::yule || id == ModelId::menzerath_altmann ||
             id == ModelId::cocho_beta)
                ? 3
                : 2;
    std::vector<double> X(m * k), y(m);
    for (int i = 0; i < m; ++i) {
        int r = positive[i];
        y[i] = std::log(freqs[r - 1]);
        X[i * k + 0] = 1.0;
        switch (id) {
        case ModelId::power_law:
            X[i * k + 1] = std::log(r);
            break;
        case ModelId::exponential:
            X[i * k + 1] = r;
            break;
        case ModelId::weibull:
            X[i * k + 1] = std::log(log_reverse(r, n));
            break;
        case ModelId::yule:
            X[i * k + 1] = r;
            X[i * k + 2] = std::log(r);
            break;
        case ModelId::menzerath_altmann:
            X[i * k + 1] = 1.0 / r;
            X[i * k + 2] = std::log(r);
            break;
        case ModelId::cocho_beta:
            X[i * k + 1] = std::log(r);
            X[i * k + 2] = std::log(n + 1.0 - r);
            break;
        default:
            throw DomainError("unknown model");
        }
    }
    auto beta = linalg::ols(X, y, m, k);
    out.C = std::exp(beta[0]);
    switch (id) {
    case ModelId::power_law:
        out.a = -beta[1];
        break;
    case ModelId::exponential:
        out.a = -beta[1];
        break;
    case ModelId::weibull:
        out.a = beta[1];
        break;
    case ModelId::yule:
        out.b = std::exp(beta[1]);
        out.a = -beta[2];
        break;
    case ModelId::menzerath_altmann:
        out.b = -beta[1];
        out.a = -beta[2];
        break;
    case ModelId::cocho_beta:
        out.a = -beta[1];
        out.b = beta[2];
        break;
    default:
        break;
    }
    return out;
}

ParamVector linearize(ModelId id, const RankedDistribution& dist) {
    return linearize(id, dist.frequencies(), dist.n());
}

double evaluate_piecewise(const PiecewiseSpec& spec, int r, int n) {
    check_rank(r, n);
    if (spec.constants.empty() ||
        spec.breakpoints.size() + 1 != spec.constants.size())
        throw DomainError("piecewise spec needs one constant per segment");
    for (std::size_t i = 0; i < spec.breakpoints.size(); ++i) {
        if (spec.breakpoints[i] < 2 || spec.breakpoints[i] > n)
            throw DomainError("piecewise breakpoint out of range");
        if (i > 0 && spec.breakpoints[i] <= spec.breakpoints[i - 1])
            throw DomainError("piecewise breakpoints must be strictly increasing");
    }
    std::size_t seg = 0;
    while (seg < spec.breakpoints.size() && r >= spec.breakpoints[seg])
        ++seg;
    return spec.constants[seg] * log_reverse(r, n);
}

} // namespace letterfit
