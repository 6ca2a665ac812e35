#pragma once

#include <string>
#include <utility>
#include <vector>

#include "letterfit/distribution.hpp"
#include "letterfit/fitter.hpp"
#include "letterfit/selection.hpp"
#include "letterfit/trends.hpp"

namespace letterfit {

/// %.6g formatting used for every TSV number; JSON keeps full precision.
std::string fmt6(double value);

/// Symbol as printed in reports: the space symbol renders as '_'.
std::string symbol_label(char32_t symbol);

void write_ranked_tsv(const RankedDistribution& dist, const std::string& path);

/// One row per document (id, year, total, rank string), then a merged row.
/// corpus may be null when only merged counts are available.
void write_rank_strings_tsv(const Corpus* corpus, const RankedDistribution& merged,
                            const std::string& path);

void write_fit_json(const FitResult& fit, const std::string& path);

/// rank, letter, observed, then one fitted column per result.
void write_fitted_curves_tsv(const RankedDistribution& dist,
                             const std::vector<FitResult>& fits, const std::string& path);

void write_selection_tsv(const SelectionTable& table, const std::string& path);
void write_selection_json(const SelectionTable& table, const std::string& path);

void write_residuals_tsv(const RankedDistribution& dist, const std::vector<FitResult>& fits,
                         const std::string& path);

void write_gusein_ratio_tsv(const GuseinRatioSeries& series, const std::string& path);
void write_piecewise_tsv(const PiecewiseSpec& spec, int n, const std::string& path);
void write_piecewise_json(const PiecewiseSpec& spec, const FitResult& fit,
                          const std::vector<double>& plateau_means, const std::string& path);

void write_letter_matrix_tsv(const Corpus& corpus, const std::vector<int>& era_boundaries,
                             const std::string& path);
void write_letter_series_tsv(const std::vector<TrendSeries>& series, const std::string& path);
void write_rank_switches_tsv(
    const std::vector<std::pair<std::pair<char32_t, char32_t>, std::vector<RankSwitchEntry>>>&
        reports,
    const std::string& path);

} // namespace letterfit
