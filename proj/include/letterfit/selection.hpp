#pragma once

#include <string>
#include <vector>

#include "letterfit/fitter.hpp"

namespace letterfit {

/// Sum of squared deviations between observed and fitted values.
double sse(const std::vector<double>& observed, const std::vector<double>& fitted);

/// n*ln(sse/n) + 2p, the additive constant dropped: only differences are
/// meaningful. Throws DomainError on sse <= 0; callers flag perfect fits.
double aic_from_sse(double sse, int n, int p);

/// As AIC with penalty ln(n)*p.
double bic_from_sse(double sse, int n, int p);

struct SelectionRow {
    std::string model;
    int eq = 0;
    int p = 0;
    double sse = 0.0;
    double aic = 0.0;
    double bic = 0.0;
    double delta_aic = 0.0;
    double delta_bic = 0.0;
    bool converged = false;
    bool perfect_fit = false; // sse == 0; AIC/BIC reported as -inf
};

struct SelectionTable {
    std::vector<SelectionRow> rows; // input order
    std::string best_aic;
    std::string best_bic;
};

/// Delta columns relative to the per-criterion minimum; best model flagged
/// per criterion, ties going to fewer parameters then equation order.
/// Non-converged fits keep their rows with a warning marker.
SelectionTable build_table(const std::vector<FitResult>& fits, int n);

/// Per-rank residual matrix, rows = ranks, one column per fit (in input
/// order). Fits without residuals (failed families) contribute NaN columns.
std::vector<std::vector<double>> residual_table(const std::vector<FitResult>& fits);

} // namespace letterfit
