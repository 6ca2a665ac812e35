#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace letterfit {

/// Decodes the UTF-8 code point starting at pos and advances pos past it.
/// Malformed bytes decode as U+FFFD and advance by one byte.
char32_t utf8_decode(std::string_view s, std::size_t& pos);

std::string utf8_encode(char32_t cp);

/// Lowercases ASCII and the Latin-1 uppercase range (so accented capitals
/// like U+00C1 fold to their lowercase forms). Other code points pass through.
char32_t latin_lower(char32_t cp);

enum class ProfileId { english, spanish, custom };

/// Alphabet and character-folding rules a corpus is counted under.
struct LanguageProfile {
    ProfileId id = ProfileId::english;
    std::u32string alphabet;                     // ordered, lowercase, unique
    std::unordered_map<char32_t, char32_t> fold; // variant -> base letter
    bool keep_space = false;

    int size() const { return static_cast<int>(alphabet.size()); }

    /// Position in alphabet order, -1 if not a base letter.
    int index_of(char32_t letter) const;

    bool operator==(const LanguageProfile&) const = default;

    static LanguageProfile english_profile(bool keep_space = false);
    /// 27 letters (n~ ranks on its own); acute vowels and u-umlaut fold to base.
    static LanguageProfile spanish_profile(bool keep_space = false);
    /// Custom profile from a JSON file: {"alphabet": ["a", ...], "fold": {"x": "y", ...}}.
    static LanguageProfile load(const std::string& path, bool keep_space = false);
};

/// Throws DomainError if the alphabet has duplicates, non-lowercase entries,
/// or fold targets outside the alphabet.
void validate(const LanguageProfile& profile);

} // namespace letterfit
