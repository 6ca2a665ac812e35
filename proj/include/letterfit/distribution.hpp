#pragma once

#include <string>
#include <vector>

#include "letterfit/corpus.hpp"

namespace letterfit {

struct RankedEntry {
    int rank; // 1-based
    char32_t symbol;
    std::uint64_t count;
    double frequency;
};

/// Normalized frequencies sorted descending, ranks 1..n with no gaps.
/// Ties are broken by ascending alphabet order so rank strings are
/// reproducible. Zero-count letters stay in, ranked last.
struct RankedDistribution {
    LanguageProfile profile;
    bool has_space = false; // space ranked as an extra symbol (n+1 alphabet size)
    std::vector<RankedEntry> entries;

    int n() const { return static_cast<int>(entries.size()); }
    std::vector<double> frequencies() const;
};

RankedDistribution to_ranked(const LetterCounts& counts);

/// Distribution from an already-averaged frequency vector (one slot per
/// alphabet letter, in alphabet order). Used for the mean-of-documents
/// aggregation mode; counts are not meaningful there and report as 0.
/// space_frequency < 0 means no space symbol.
RankedDistribution from_frequencies(const LanguageProfile& profile,
                                    const std::vector<double>& letter_freqs,
                                    double space_frequency = -1.0);

/// Letters concatenated in rank order, lowercase, no separators; the space
/// symbol prints as '_'.
std::string rank_string(const RankedDistribution& dist);

/// space_count / (space_count + letter total). Requires keep_space counting.
double space_fraction(const LetterCounts& counts);

struct GuseinRatioPoint {
    int rank;
    char32_t symbol;
    double frequency;
    double ratio; // f / ln((n+1)/r)
};

struct GuseinRatioSeries {
    std::vector<GuseinRatioPoint> entries;
};

GuseinRatioSeries gusein_ratio(const RankedDistribution& dist);

/// Mean ratio per contiguous rank group. Breakpoints are exclusive group
/// starts (each in 2..n, strictly increasing); k breakpoints give k+1 groups.
std::vector<double> group_means(const GuseinRatioSeries& series,
                                const std::vector<int>& breakpoints);

} // namespace letterfit
