#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "letterfit/profile.hpp"

namespace letterfit {

struct Document {
    std::string id;
    std::string label;
    std::vector<int> years; // ascending
    std::string path;
    std::string text; // raw UTF-8

    /// First listed year; used as the time anchor for trend series.
    int anchor_year() const;
};

/// Raw per-symbol counts for one document or a merged corpus.
/// `total` covers alphabet letters only; spaces and dropped characters are
/// tracked separately and enter a distribution only on request.
struct LetterCounts {
    LanguageProfile profile;
    std::vector<std::uint64_t> counts; // one slot per alphabet letter
    std::uint64_t space_count = 0;
    std::uint64_t dropped = 0; // non-letter, non-whitespace input characters
    std::uint64_t total = 0;

    std::uint64_t at(char32_t letter) const;
};

/// Lowercase, fold, drop everything outside the alphabet. With keep_space,
/// each whitespace run after the first letter becomes one U+0020 symbol.
/// Idempotent on its own output.
std::u32string normalize_text(std::string_view raw, const LanguageProfile& profile);

/// Splits the text into chunks aligned on letter boundaries and counts them
/// in parallel; bit-identical to count_letters_serial for any thread count.
LetterCounts count_letters(const Document& doc, const LanguageProfile& profile);
LetterCounts count_letters_serial(const Document& doc, const LanguageProfile& profile);

/// Letterwise sum. All parts must share one profile; merge order never
/// changes the result.
LetterCounts merge_counts(const std::vector<LetterCounts>& parts);

/// Reads a TSV manifest (id, label, years comma-separated, path) or a JSON
/// manifest (array of objects with the same fields) and loads each text.
/// Paths are resolved relative to the manifest location.
std::vector<Document> load_manifest(const std::string& manifest_path);

std::vector<LetterCounts> count_corpus(const std::vector<Document>& docs,
                                       const LanguageProfile& profile);
std::vector<LetterCounts> count_corpus_serial(const std::vector<Document>& docs,
                                              const LanguageProfile& profile);

void write_counts_tsv(const LetterCounts& counts, const std::string& path);
LetterCounts read_counts_tsv(const std::string& path, const LanguageProfile& profile);

} // namespace letterfit
