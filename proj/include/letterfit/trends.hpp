#pragma once

#include <string>
#include <vector>

#include "letterfit/distribution.hpp"

namespace letterfit {

/// One counted document in manifest order.
struct CorpusDocument {
    Document meta;
    LetterCounts counts;
};

struct Corpus {
    LanguageProfile profile;
    std::vector<CorpusDocument> docs;
};

Corpus build_corpus(const std::vector<Document>& docs, const LanguageProfile& profile);

/// Rows in manifest order, columns in alphabet order; each row sums to 1.
std::vector<std::vector<double>> per_document_table(const Corpus& corpus);

struct TrendPoint {
    std::string document_id;
    int year = 0; // first year of the document
    double frequency = 0.0;
};

struct TrendSeries {
    char32_t letter;
    std::vector<TrendPoint> points; // manifest order (assumed chronological)
};

std::vector<TrendSeries> letter_series(const Corpus& corpus,
                                       const std::vector<char32_t>& letters);

struct RankSwitchEntry {
    std::string document_id;
    int year = 0;
    char32_t leader;        // which of the pair ranks higher here
    bool switched = false;  // leader differs from the previous document
};

/// Per-document leader of a letter pair, with flip markers. Ties inside a
/// document resolve by alphabet order, matching the ranking tie-break.
std::vector<RankSwitchEntry> rank_switches(const Corpus& corpus, char32_t first,
                                           char32_t second);

/// Index of the era a year falls in: the number of boundaries <= year.
int era_index(int year, const std::vector<int>& boundaries);

/// Paper-style default era boundaries per language (empty for custom).
std::vector<int> default_era_boundaries(ProfileId id);

} // namespace letterfit
