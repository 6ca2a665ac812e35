#include "letterfit/corpus.hpp"

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "letterfit/errors.hpp"
#include "json.hpp"

namespace letterfit {

namespace {

constexpr std::size_t kParallelThreshold = 1 << 16;

bool is_space_cp(char32_t cp) {
    return cp == U' ' || cp == U'\t' || cp == U'\n' || cp == U'\v' || cp == U'\f' ||
           cp == U'\r' || cp == U' ';
}

// Folded code point -> alphabet slot, resolved once per counting pass.
struct SymbolTable {
    std::unordered_map<char32_t, int> index;

    explicit SymbolTable(const LanguageProfile& profile) {
        for (int i = 0; i < profile.size(); ++i)
            index.emplace(profile.alphabet[i], i);
        for (const auto& [from, to] : profile.fold)
            index.emplace(from, profile.index_of(to));
    }

    int classify(char32_t cp) const {
        auto it = index.find(latin_lower(cp));
        return it == index.end() ? -1 : it->second;
    }
};

struct Accum {
    std::vector<std::uint64_t> counts;
    std::uint64_t spaces = 0;
    std::uint64_t dropped = 0;

    explicit Accum(int n) : counts(n, 0) {}

    void add(const Accum& other) {
        for (std::size_t i = 0; i < counts.size(); ++i)
            counts[i] += other.counts[i];
        spaces += other.spaces;
        dropped += other.dropped;
    }
};

// Counts [begin, end). `seen_letter` is the automaton state entering the
// range; ranges handed out by the chunker always start at a letter, so
// whitespace runs never straddle a chunk boundary. Accumulates locally and
// returns by value, keeping parallel chunks off each other's cache lines.
Accum count_range(std::string_view text, const SymbolTable& table, std::size_t begin,
                  std::size_t end, bool seen_letter, int alphabet_size) {
    Accum acc(alphabet_size);
    std::uint64_t spaces = 0, dropped = 0;
    bool prev_space = false;
    std::size_t pos = begin;
    while (pos < end) {
        char32_t cp = utf8_decode(text, pos);
        int idx = table.classify(cp);
        if (idx >= 0) {
            ++acc.counts[idx];
            prev_space = false;
            seen_letter = true;
        } else if (is_space_cp(cp)) {
            if (seen_letter && !prev_space) {
                ++spaces;
                prev_space = true;
            }
        } else {
            ++dropped;
        }
    }
    acc.spaces = spaces;
    acc.dropped = dropped;
    return acc;
}

// Byte offset of the first alphabet letter at or after `pos`; text.size() if
// none. Dropped characters skipped over are tallied when `acc` is given.
std::size_t scan_to_letter(std::string_view text, const SymbolTable& table, std::size_t pos,
                           Accum* acc) {
    while (pos < text.size()) {
        std::size_t at = pos;
        char32_t cp = utf8_decode(text, pos);
        if (table.classify(cp) >= 0)
            return at;
        if (acc && !is_space_cp(cp))
            ++acc->dropped;
    }
    return text.size();
}

std::size_t align_utf8(std::string_view text, std::size_t pos) {
    while (pos < text.size() && (static_cast<unsigned char>(text[pos]) & 0xC0) == 0x80)
        ++pos;
    return pos;
}

LetterCounts finish(const Document& doc, const LanguageProfile& profile, Accum&& acc) {
    LetterCounts out;
    out.profile = profile;
    out.counts = std::move(acc.counts);
    out.space_count = acc.spaces;
    out.dropped = acc.dropped;
    out.total = 0;
    for (auto c : out.counts)
        out.total += c;
    if (out.total == 0)
        throw EmptyDocumentError("document \"" + doc.id + "\" has no alphabet letters");
    return out;
}

std::string read_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw Error("cannot open text file: " + path.string());
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

std::vector<std::string> split_tab(const std::string& line) {
    std::vector<std::string> fields;
    std::size_t start = 0;
    while (true) {
        std::size_t tab = line.find('\t', start);
        if (tab == std::string::npos) {
            fields.push_back(line.substr(start));
            break;
        }
        fields.push_back(line.substr(start, tab - start));
        start = tab + 1;
    }
    return fields;
}

std::vector<int> parse_years(const std::string& field) {
    std::vector<int> years;
    std::stringstream ss(field);
    std::string tok;
    while (std::getline(ss, tok, ','))
        if (!tok.empty())
            years.push_back(std::stoi(tok));
    return years;
}

} // namespace

int Document::anchor_year() const {
    if (years.empty())
        return 0;
    return *std::min_element(years.begin(), years.end());
}

std::uint64_t LetterCounts::at(char32_t letter) const {
    int idx = profile.index_of(letter);
    if (idx < 0)
        throw DomainError("letter not in profile alphabet: " + utf8_encode(letter));
    return counts[idx];
}

std::u32string normalize_text(std::string_view raw, const LanguageProfile& profile) {
    SymbolTable table(profile);
    std::u32string out;
    out.reserve(raw.size());
    bool prev_space = false;
    std::size_t pos = 0;
    while (pos < raw.size()) {
        char32_t cp = utf8_decode(raw, pos);
        int idx = table.classify(cp);
        if (idx >= 0) {
            out.push_back(profile.alphabet[idx]);
            prev_space = false;
        } else if (is_space_cp(cp) && profile.keep_space) {
            if (!out.empty() && !prev_space) {
                out.push_back(U' ');
                prev_space = true;
            }
        }
    }
    return out;
}

LetterCounts count_letters_serial(const Document& doc, const LanguageProfile& profile) {
    validate(profile);
    SymbolTable table(profile);
    Accum acc = count_range(doc.text, table, 0, doc.text.size(), false, profile.size());
    return finish(doc, profile, std::move(acc));
}

LetterCounts count_letters(const Document& doc, const LanguageProfile& profile) {
    validate(profile);
    const std::string_view text = doc.text;
#ifdef _OPENMP
    if (text.size() >= kParallelThreshold) {
        SymbolTable table(profile);
        Accum prefix(profile.size());
        std::size_t first_letter = scan_to_letter(text, table, 0, &prefix);
        if (first_letter == text.size())
            throw EmptyDocumentError("document \"" + doc.id + "\" has no alphabet letters");

        int nchunks = std::max(1, omp_get_max_threads());
        std::vector<std::size_t> start(nchunks + 1, text.size());
        start[0] = first_letter;
        std::size_t span = text.size() - first_letter;
        for (int i = 1; i < nchunks; ++i) {
            std::size_t nominal = first_letter + span * i / nchunks;
            nominal = std::max(nominal, start[i - 1]);
            start[i] = scan_to_letter(text, table, align_utf8(text, nominal), nullptr);
        }
        start[nchunks] = text.size();

        std::vector<Accum> parts(nchunks, Accum(profile.size()));
#pragma omp parallel for schedule(static)
        for (int i = 0; i < nchunks; ++i)
            parts[i] = count_range(text, table, start[i], start[i + 1], true, profile.size());

        Accum acc(profile.size());
        acc.add(prefix);
        for (const auto& part : parts)
            acc.add(part);
        return finish(doc, profile, std::move(acc));
    }
#endif
    return count_letters_serial(doc, profile);
}

LetterCounts merge_counts(const std::vector<LetterCounts>& parts) {
    if (parts.empty())
        throw EmptyCountsError("merge_counts needs at least one part");
    LetterCounts out = parts.front();
    for (std::size_t i = 1; i < parts.size(); ++i) {
        const LetterCounts& part = parts[i];
        if (part.profile != out.profile)
            throw ProfileMismatchError("cannot merge counts made under different profiles");
        for (std::size_t k = 0; k < out.counts.size(); ++k)
            out.counts[k] += part.counts[k];
        out.space_count += part.space_count;
        out.dropped += part.dropped;
        out.total += part.total;
    }
    return out;
}

std::vector<Document> load_manifest(const std::string& manifest_path) {
    namespace fs = std::filesystem;
    fs::path mpath(manifest_path);
    fs::path base = mpath.parent_path();
    std::vector<Document> docs;

    if (mpath.extension() == ".json") {
        std::ifstream in(mpath);
        if (!in)
            throw Error("cannot open manifest: " + manifest_path);
        nlohmann::json j;
        in >> j;
        for (const auto& row : j) {
            Document d;
            d.id = row.at("id").get<std::string>();
            d.label = row.value("label", d.id);
            for (const auto& y : row.at("years"))
                d.years.push_back(y.get<int>());
            d.path = row.at("path").get<std::string>();
            docs.push_back(std::move(d));
        }
    } else {
        std::ifstream in(mpath);
        if (!in)
            throw Error("cannot open manifest: " + manifest_path);
        std::string line;
        bool first = true;
        while (std::getline(in, line)) {
            if (!line.empty() && line.back() == '\r')
                line.pop_back();
            if (line.empty())
                continue;
            auto fields = split_tab(line);
            if (first) {
                first = false;
                if (fields.size() < 4 || fields[0] != "id")
                    throw Error("manifest must start with header: id\\tlabel\\tyears\\tpath");
                continue;
            }
            if (fields.size() < 4)
                throw Error("manifest row has fewer than 4 fields: " + line);
            Document d;
            d.id = fields[0];
            d.label = fields[1];
            d.years = parse_years(fields[2]);
            d.path = fields[3];
            docs.push_back(std::move(d));
        }
        if (first)
            throw Error("manifest is empty: " + manifest_path);
    }

    for (std::size_t i = 0; i < docs.size(); ++i)
        for (std::size_t k = i + 1; k < docs.size(); ++k)
            if (docs[i].id == docs[k].id)
                throw Error("duplicate document id in manifest: " + docs[i].id);

    for (auto& d : docs) {
        fs::path p(d.path);
        if (p.is_relative())
            p = base / p;
        d.text = read_file(p);
    }
    return docs;
}

std::vector<LetterCounts> count_corpus_serial(const std::vector<Document>& docs,
                                              const LanguageProfile& profile) {
    std::vector<LetterCounts> out;
    out.reserve(docs.size());
    for (const auto& doc : docs)
        out.push_back(count_letters_serial(doc, profile));
    return out;
}

std::vector<LetterCounts> count_corpus(const std::vector<Document>& docs,
                                       const LanguageProfile& profile) {
    std::vector<LetterCounts> out(docs.size());
    std::exception_ptr error;
#pragma omp parallel for schedule(dynamic)
    for (std::size_t i = 0; i < docs.size(); ++i) {
        try {
            out[i] = count_letters_serial(docs[i], profile);
        } catch (...) {
#pragma omp critical
            if (!error)
                error = std::current_exception();
        }
    }
    if (error)
        std::rethrow_exception(error);
    return out;
}

void write_counts_tsv(const LetterCounts& counts, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw Error("cannot write counts file: " + path);
    out << "letter\tcount\n";
    for (int i = 0; i < counts.profile.size(); ++i)
        out << utf8_encode(counts.profile.alphabet[i]) << '\t' << counts.counts[i] << '\n';
    out << "space\t" << counts.space_count << '\n';
    out << "total\t" << counts.total << '\n';
}

LetterCounts read_counts_tsv(const std::string& path, const LanguageProfile& profile) {
    std::ifstream in(path);
    if (!in)
        throw Error("cannot open counts file: " + path);
    LetterCounts out;
    out.profile = profile;
    out.counts.assign(profile.size(), 0);

    std::string line;
    bool first = true;
    std::uint64_t declared_total = 0;
    bool has_total = false;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r')
            line.pop_back();
        if (line.empty())
            continue;
        auto fields = split_tab(line);
        if (first) {
            first = false;
            if (fields.size() < 2 || fields[0] != "letter")
                throw Error("counts file must start with header: letter\\tcount");
            continue;
        }
        if (fields.size() < 2)
            throw Error("counts row has fewer than 2 fields: " + line);
        std::uint64_t value = std::stoull(fields[1]);
        if (fields[0] == "space") {
            out.space_count = value;
        } else if (fields[0] == "total") {
            declared_total = value;
            has_total = true;
        } else {
            std::size_t pos = 0;
            char32_t cp = utf8_decode(fields[0], pos);
            int idx = (pos == fields[0].size()) ? profile.index_of(cp) : -1;
            if (idx < 0)
                throw Error("counts row letter not in profile alphabet: " + fields[0]);
            out.counts[idx] = value;
        }
    }
    for (auto c : out.counts)
        out.total += c;
    if (has_total && declared_total != out.total)
        throw Error("counts file total does not match letter rows: " + path);
    return out;
}

} // namespace letterfit
