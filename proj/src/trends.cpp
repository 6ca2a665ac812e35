#include "letterfit/trends.hpp"

#include <algorithm>

#include "letterfit/errors.hpp"

namespace letterfit {

Corpus build_corpus(const std::vector<Document>& docs, const LanguageProfile& profile) {
    Corpus corpus;
    corpus.profile = profile;
    auto counts = count_corpus(docs, profile);
    corpus.docs.reserve(docs.size());
    for (std::size_t i = 0; i < docs.size(); ++i)
        corpus.docs.push_back({docs[i], std::move(counts[i])});
    return corpus;
}

std::vector<std::vector<double>> per_document_table(const Corpus& corpus) {
    std::vector<std::vector<double>> table;
    table.reserve(corpus.docs.size());
    for (const auto& doc : corpus.docs) {
        std::vector<double> row(corpus.profile.size());
        for (int i = 0; i < corpus.profile.size(); ++i)
            row[i] = static_cast<double>(doc.counts.counts[i]) /
                     static_cast<double>(doc.counts.total);
        table.push_back(std::move(row));
    }
    return table;
}

std::vector<TrendSeries> letter_series(const Corpus& corpus,
                                       const std::vector<char32_t>& letters) {
    std::vector<TrendSeries> out;
    out.reserve(letters.size());
    for (char32_t letter : letters) {
        int idx = corpus.profile.index_of(letter);
        if (idx < 0)
            throw DomainError("series letter not in profile alphabet: " + utf8_encode(letter));
        TrendSeries series;
        series.letter = letter;
        for (const auto& doc : corpus.docs)
            series.points.push_back({doc.meta.id, doc.meta.anchor_year(),
                                     static_cast<double>(doc.counts.counts[idx]) /
                                         static_cast<double>(doc.counts.total)});
        out.push_back(std::move(series));
    }
    return out;
}

std::vector<RankSwitchEntry> rank_switches(const Corpus& corpus, char32_t first,
                                           char32_t second) {
    int ia = corpus.profile.index_of(first);
    int ib = corpus.profile.index_of(second);
    if (ia < 0 || ib < 0)
        throw DomainError("switch pair letter not in profile alphabet");
    if (ia == ib)
        throw DomainError("switch pair needs two distinct letters");

    std::vector<RankSwitchEntry> out;
    out.reserve(corpus.docs.size());
    for (const auto& doc : corpus.docs) {
        std::uint64_t ca = doc.counts.counts[ia];
        std::uint64_t cb = doc.counts.counts[ib];
        char32_t leader;
        if (ca != cb)
            leader = (ca > cb) ? first : second;
        else
            leader = (ia < ib) ? first : second;
        RankSwitchEntry entry;
        entry.document_id = doc.meta.id;
        entry.year = doc.meta.anchor_year();
        entry.leader = leader;
        entry.switched = !out.empty() && out.back().leader != leader;
        out.push_back(entry);
    }
    return out;
}

int era_index(int year, const std::vector<int>& boundaries) {
    int era = 0;
    for (int b : boundaries)
        if (year >= b)
            ++era;
    return era;
}

std::vector<int> default_era_boundaries(ProfileId id) {
    switch (id) {
    case ProfileId::english:
        return {1800, 1902};
    case ProfileId::spanish:
        return {1935, 1965};
    default:
        return {};
    }
}

} // namespace letterfit
