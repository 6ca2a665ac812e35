#include <cmath>

#include "doctest.h"

#include "letterfit/errors.hpp"
#include "letterfit/trends.hpp"

using namespace letterfit;

namespace {

Document make_doc(std::string id, int year, std::string text) {
    Document d;
    d.id = std::move(id);
    d.label = d.id;
    d.years = {year, year + 2};
    d.text = std::move(text);
    return d;
}

Corpus small_corpus() {
    auto profile = LanguageProfile::english_profile();
    std::vector<Document> docs = {
        make_doc("d1", 1801, "aaaa bb c"),
        make_doc("d2", 1850, "aa bbbb cc"),
        make_doc("d3", 1910, "a bb cccc"),
    };
    return build_corpus(docs, profile);
}

} // namespace

TEST_SUITE("trends") {
    TEST_CASE("per-document matrix rows are alphabet-ordered frequencies summing to 1") {
        auto corpus = small_corpus();
        auto table = per_document_table(corpus);
        REQUIRE(table.size() == 3);
        REQUIRE(table[0].size() == 26);
        for (const auto& row : table) {
            double sum = 0.0;
            for (double v : row)
                sum += v;
            CHECK(sum == doctest::Approx(1.0).epsilon(1e-12));
        }
        CHECK(table[0][0] == doctest::Approx(4.0 / 7));
        CHECK(table[2][2] == doctest::Approx(4.0 / 7));
    }

    TEST_CASE("matrix rows agree with the ranked distribution re-sorted") {
        auto corpus = small_corpus();
        auto table = per_document_table(corpus);
        for (std::size_t d = 0; d < corpus.docs.size(); ++d) {
            auto dist = to_ranked(corpus.docs[d].counts);
            for (const auto& entry : dist.entries) {
                int idx = corpus.profile.index_of(entry.symbol);
                CHECK(table[d][idx] == doctest::Approx(entry.frequency).epsilon(1e-15));
            }
        }
    }

    TEST_CASE("letter series anchor at the first year") {
        auto corpus = small_corpus();
        auto series = letter_series(corpus, {U'a', U'c'});
        REQUIRE(series.size() == 2);
        CHECK(series[0].letter == U'a');
        REQUIRE(series[0].points.size() == 3);
        CHECK(series[0].points[0].year == 1801);
        CHECK(series[0].points[1].year == 1850);
        CHECK(series[0].points[0].frequency == doctest::Approx(4.0 / 7));
        // a declines, c rises across the three documents
        CHECK(series[0].points.front().frequency > series[0].points.back().frequency);
        CHECK(series[1].points.front().frequency < series[1].points.back().frequency);
        CHECK_THROWS_AS(letter_series(corpus, {U'!'}), DomainError);
    }

    TEST_CASE("a constant corpus gives a flat series") {
        auto profile = LanguageProfile::english_profile();
        std::vector<Document> docs = {make_doc("x", 1900, "abc abc"),
                                      make_doc("y", 1950, "abcabcabc")};
        auto corpus = build_corpus(docs, profile);
        auto series = letter_series(corpus, {U'a'});
        CHECK(series[0].points[0].frequency == doctest::Approx(series[0].points[1].frequency));
    }

    TEST_CASE("rank switches flag the flip document") {
        auto profile = LanguageProfile::english_profile();
        std::vector<Document> docs = {
            make_doc("d1", 1900, "dd l"),   // d leads
            make_doc("d2", 1920, "ddd ll"), // d leads
            make_doc("d3", 1950, "d lll"),  // l takes over
            make_doc("d4", 1980, "dd llll"),
        };
        auto corpus = build_corpus(docs, profile);
        auto entries = rank_switches(corpus, U'd', U'l');
        REQUIRE(entries.size() == 4);
        CHECK(entries[0].leader == U'd');
        CHECK_FALSE(entries[0].switched);
        CHECK(entries[1].leader == U'd');
        CHECK_FALSE(entries[1].switched);
        CHECK(entries[2].leader == U'l');
        CHECK(entries[2].switched);
        CHECK(entries[3].leader == U'l');
        CHECK_FALSE(entries[3].switched);
    }

    TEST_CASE("equal counts resolve by alphabet order") {
        auto profile = LanguageProfile::english_profile();
        std::vector<Document> docs = {make_doc("tie", 1900, "xy xy")};
        auto corpus = build_corpus(docs, profile);
        CHECK(rank_switches(corpus, U'x', U'y')[0].leader == U'x');
        CHECK(rank_switches(corpus, U'y', U'x')[0].leader == U'x');
        CHECK_THROWS_AS(rank_switches(corpus, U'x', U'x'), DomainError);
    }

    TEST_CASE("the pair leader appears earlier in the rank string") {
        auto corpus = small_corpus();
        auto entries = rank_switches(corpus, U'a', U'c');
        for (std::size_t d = 0; d < corpus.docs.size(); ++d) {
            auto rs = rank_string(to_ranked(corpus.docs[d].counts));
            char leader = static_cast<char>(entries[d].leader);
            char other = leader == 'a' ? 'c' : 'a';
            CHECK(rs.find(leader) < rs.find(other));
        }
    }

    TEST_CASE("an injected drift shows up in era means and switch report") {
        // 24 synthetic documents where letter w gains share over time while
        // t loses it; i and a swap leadership halfway through.
        auto profile = LanguageProfile::english_profile();
        std::vector<Document> docs;
        for (int k = 0; k < 24; ++k) {
            int year = 1800 + k * 9;
            std::string text;
            int t_count = 60 - k, w_count = 20 + k;
            int i_count = (k < 12) ? 40 : 30, a_count = (k < 12) ? 30 : 40;
            text.append(t_count, 't');
            text.append(w_count, 'w');
            text.append(i_count, 'i');
            text.append(a_count, 'a');
            text.append(50, 'e');
            Document d;
            d.id = "y" + std::to_string(year);
            d.years = {year};
            d.text = text;
            docs.push_back(std::move(d));
        }
        auto corpus = build_corpus(docs, profile);

        auto series = letter_series(corpus, {U't', U'w'});
        auto era_mean = [&](const TrendSeries& s, int lo, int hi) {
            double sum = 0;
            int count = 0;
            for (const auto& p : s.points)
                if (p.year >= lo && p.year < hi) {
                    sum += p.frequency;
                    ++count;
                }
            return sum / count;
        };
        CHECK(era_mean(series[0], 1800, 1900) > era_mean(series[0], 1900, 2020)); // t falls
        CHECK(era_mean(series[1], 1800, 1900) < era_mean(series[1], 1900, 2020)); // w rises

        auto switches = rank_switches(corpus, U'i', U'a');
        CHECK(switches.front().leader == U'i');
        CHECK(switches.back().leader == U'a');
        int flips = 0;
        for (const auto& e : switches)
            flips += e.switched;
        CHECK(flips == 1);
        CHECK(switches[12].switched);
    }

    TEST_CASE("era assignment follows the published groupings") {
        std::vector<int> english = default_era_boundaries(ProfileId::english);
        CHECK(english == std::vector<int>{1800, 1902});
        CHECK(era_index(1789, english) == 0);
        CHECK(era_index(1801, english) == 1);
        CHECK(era_index(1897, english) == 1);
        CHECK(era_index(1905, english) == 2);
        CHECK(era_index(2009, english) == 2);

        std::vector<int> spanish = default_era_boundaries(ProfileId::spanish);
        CHECK(spanish == std::vector<int>{1935, 1965});
        CHECK(era_index(1917, spanish) == 0);
        CHECK(era_index(1934, spanish) == 0);
        CHECK(era_index(1935, spanish) == 1);
        CHECK(era_index(1964, spanish) == 1);
        CHECK(era_index(1965, spanish) == 2);
        CHECK(era_index(2001, spanish) == 2);
    }
}
