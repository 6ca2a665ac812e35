#include "letterfit/selection.hpp"

#include <cmath>
#include <limits>

#include "letterfit/errors.hpp"

namespace letterfit {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Tie-break: fewer parameters first, then equation order.
bool better(const SelectionRow& x, const SelectionRow& y, double SelectionRow::* criterion) {
    if (x.*criterion != y.*criterion)
        return x.*criterion < y.*criterion;
    if (x.p != y.p)
        return x.p < y.p;
    return x.eq < y.eq;
}

} // namespace

double sse(const std::vector<double>& observed, const std::vector<double>& fitted) {
    if (observed.size() != fitted.size())
        throw LengthMismatchError("observed and fitted lengths differ");
    double acc = 0.0;
    for (std::size_t i = 0; i < observed.size(); ++i) {
        double e = observed[i] - fitted[i];
        acc += e * e;
    }
    return acc;
}

double aic_from_sse(double sse, int n, int p) {
    if (n < 1 || p < 0)
        throw DomainError("aic_from_sse needs n >= 1 and p >= 0");
    if (!(sse > 0.0))
        throw DomainError("aic_from_sse needs sse > 0");
    return n * std::log(sse / n) + 2.0 * p;
}

double bic_from_sse(double sse, int n, int p) {
    if (n < 1 || p < 0)
        throw DomainError("bic_from_sse needs n >= 1 and p >= 0");
    if (!(sse > 0.0))
        throw DomainError("bic_from_sse needs sse > 0");
    return n * std::log(sse / n) + std::log(static_cast<double>(n)) * p;
}

SelectionTable build_table(const std::vector<FitResult>& fits, int n) {
    if (fits.empty())
        throw InsufficientDataError("build_table needs at least one fit");

    SelectionTable table;
    table.rows.reserve(fits.size());
    for (const auto& fit : fits) {
        SelectionRow row;
        row.model = fit.model;
        const ModelSpec* spec = model_by_name(fit.model);
        row.eq = spec ? spec->eq : 0;
        row.p = spec ? spec->p : 0;
        row.sse = fit.sse;
        row.converged = fit.converged;
        if (fit.sse == 0.0) {
            row.perfect_fit = true;
            row.aic = -kInf;
            row.bic = -kInf;
        } else if (std::isfinite(fit.sse) && fit.sse > 0.0) {
            row.aic = aic_from_sse(fit.sse, n, row.p);
            row.bic = bic_from_sse(fit.sse, n, row.p);
        } else {
            row.aic = std::numeric_limits<double>::quiet_NaN();
            row.bic = std::numeric_limits<double>::quiet_NaN();
        }
        table.rows.push_back(row);
    }

    const SelectionRow* best_aic = nullptr;
    const SelectionRow* best_bic = nullptr;
    for (const auto& row : table.rows) {
        if (!std::isnan(row.aic) && (!best_aic || better(row, *best_aic, &SelectionRow::aic)))
            best_aic = &row;
        if (!std::isnan(row.bic) && (!best_bic || better(row, *best_bic, &SelectionRow::bic)))
            best_bic = &row;
    }
    if (!best_aic)
        throw DomainError("no fit produced a finite information criterion");
    table.best_aic = best_aic->model;
    table.best_bic = best_bic->model;

    for (auto& row : table.rows) {
        // -inf - -inf would be NaN; a perfect fit pins its own delta at 0.
        row.delta_aic = (row.aic == best_aic->aic) ? 0.0 : row.aic - best_aic->aic;
        row.delta_bic = (row.bic == best_bic->bic) ? 0.0 : row.bic - best_bic->bic;
    }
    return table;
}

std::vector<std::vector<double>> residual_table(const std::vector<FitResult>& fits) {
    std::size_t n = 0;
    for (const auto& fit : fits)
        n = std::max(n, fit.residuals.size());
    std::vector<std::vector<double>> matrix(
        n, std::vector<double>(fits.size(), std::numeric_limits<double>::quiet_NaN()));
    for (std::size_t j = 0; j < fits.size(); ++j)
        for (std::size_t r = 0; r < fits[j].residuals.size(); ++r)
            matrix[r][j] = fits[j].residuals[r];
    return matrix;
}

} // namespace letterfit
