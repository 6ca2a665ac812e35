#include "letterfit/distribution.hpp"

#include <algorithm>
#include <cmath>

#include "letterfit/errors.hpp"

namespace letterfit {

std::vector<double> RankedDistribution::frequencies() const {
    std::vector<double> f;
    f.reserve(entries.size());
    for (const auto& e : entries)
        f.push_back(e.frequency);
    return f;
}

RankedDistribution to_ranked(const LetterCounts& counts) {
    if (counts.total == 0)
        throw EmptyCountsError("cannot rank an empty letter count");

    RankedDistribution dist;
    dist.profile = counts.profile;
    dist.has_space = counts.profile.keep_space;

    struct Item {
        char32_t symbol;
        std::uint64_t count;
        int alpha_index;
    };
    std::vector<Item> items;
    items.reserve(counts.counts.size() + 1);
    for (int i = 0; i < counts.profile.size(); ++i)
        items.push_back({counts.profile.alphabet[i], counts.counts[i], i});
    if (dist.has_space)
        items.push_back({U' ', counts.space_count, counts.profile.size()});

    // Sorting on integer counts keeps ties exact; alphabet order breaks them.
    std::sort(items.begin(), items.end(), [](const Item& x, const Item& y) {
        if (x.count != y.count)
            return x.count > y.count;
        return x.alpha_index < y.alpha_index;
    });

    std::uint64_t denom = counts.total + (dist.has_space ? counts.space_count : 0);
    dist.entries.reserve(items.size());
    for (std::size_t i = 0; i < items.size(); ++i)
        dist.entries.push_back({static_cast<int>(i) + 1, items[i].symbol, items[i].count,
                                static_cast<double>(items[i].count) / static_cast<double>(denom)});
    return dist;
}

RankedDistribution from_frequencies(const LanguageProfile& profile,
                                    const std::vector<double>& letter_freqs,
                                    double space_frequency) {
    if (static_cast<int>(letter_freqs.size()) != profile.size())
        throw LengthMismatchError("frequency vector does not match profile alphabet");

    struct Item {
        char32_t symbol;
        double freq;
        int alpha_index;
    };
    std::vector<Item> items;
    double sum = 0.0;
    for (int i = 0; i < profile.size(); ++i) {
        if (letter_freqs[i] < 0.0)
            throw DomainError("negative frequency");
        items.push_back({profile.alphabet[i], letter_freqs[i], i});
        sum += letter_freqs[i];
    }
    bool has_space = space_frequency >= 0.0;
    if (has_space) {
        items.push_back({U' ', space_frequency, profile.size()});
        sum += space_frequency;
    }
    if (!(sum > 0.0))
        throw EmptyCountsError("frequency vector sums to zero");

    std::sort(items.begin(), items.end(), [](const Item& x, const Item& y) {
        if (x.freq != y.freq)
            return x.freq > y.freq;
        return x.alpha_index < y.alpha_index;
    });

    RankedDistribution dist;
    dist.profile = profile;
    dist.has_space = has_space;
    for (std::size_t i = 0; i < items.size(); ++i)
        dist.entries.push_back(
            {static_cast<int>(i) + 1, items[i].symbol, 0, items[i].freq / sum});
    return dist;
}

std::string rank_string(const RankedDistribution& dist) {
    std::string out;
    for (const auto& e : dist.entries)
        out += (e.symbol == U' ') ? "_" : utf8_encode(e.symbol);
    return out;
}

double space_fraction(const LetterCounts& counts) {
    if (!counts.profile.keep_space)
        throw SpaceNotTrackedError("space_fraction requires counting with keep_space");
    return static_cast<double>(counts.space_count) /
           static_cast<double>(counts.space_count + counts.total);
}

GuseinRatioSeries gusein_ratio(const RankedDistribution& dist) {
    GuseinRatioSeries series;
    const int n = dist.n();
    series.entries.reserve(n);
    for (const auto& e : dist.entries) {
        double denom = std::log(static_cast<double>(n + 1) / e.rank);
        series.entries.push_back({e.rank, e.symbol, e.frequency, e.frequency / denom});
    }
    return series;
}

std::vector<double> group_means(const GuseinRatioSeries& series,
                                const std::vector<int>& breakpoints) {
    const int n = static_cast<int>(series.entries.size());
    for (std::size_t i = 0; i < breakpoints.size(); ++i) {
        if (breakpoints[i] < 2 || breakpoints[i] > n)
            throw DomainError("group breakpoint out of range");
        if (i > 0 && breakpoints[i] <= breakpoints[i - 1])
            throw DomainError("group breakpoints must be strictly increasing");
    }
    std::vector<double> means;
    std::size_t next = 0;
    double sum = 0;
    int count = 0;
    for (const auto& e : series.entries) {
        if (next < breakpoints.size() && e.rank == breakpoints[next]) {
            means.push_back(sum / count);
            sum = 0;
            count = 0;
            ++next;
        }
        sum += e.ratio;
        ++count;
    }
    means.push_back(sum / count);
    return means;
}

} // namespace letterfit
