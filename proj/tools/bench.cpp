// Compares the OpenMP kernels against their serial references on synthetic
// inputs and checks that both produce identical results.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <random>
#include <string>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "letterfit/corpus.hpp"
#include "letterfit/distribution.hpp"
#include "letterfit/fitter.hpp"

using namespace letterfit;

namespace {

double seconds(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::string synth_text(std::size_t bytes, std::uint32_t seed) {
    // Letter pool weighted roughly like running text, with punctuation,
    // digits, accents, and uneven whitespace runs mixed in.
    static const char* pool[] = {
        "e", "e", "e", "t", "t", "a", "a", "o", "i", "n", "s", "h", "r", "d",
        "l", "u", "c", "m", "w", "f", "g", "y", "p", "b", "v", "k", "j", "x",
        "q", "z", ",", ".", ";", "7", "á", "ñ", "E", "T",
    };
    std::mt19937 rng(seed);
    std::uniform_int_distribution<int> pick(0, std::size(pool) - 1);
    std::uniform_int_distribution<int> word_len(2, 9);
    std::uniform_int_distribution<int> gap_len(1, 3);
    std::string text;
    text.reserve(bytes + 16);
    while (text.size() < bytes) {
        int wl = word_len(rng);
        for (int i = 0; i < wl; ++i)
            text += pool[pick(rng)];
        int gl = gap_len(rng);
        for (int i = 0; i < gl; ++i)
            text += ' ';
    }
    return text;
}

bool same_counts(const LetterCounts& x, const LetterCounts& y) {
    return x.counts == y.counts && x.space_count == y.space_count && x.dropped == y.dropped &&
           x.total == y.total;
}

bool same_fits(const std::vector<FitResult>& x, const std::vector<FitResult>& y) {
    if (x.size() != y.size())
        return false;
    for (std::size_t i = 0; i < x.size(); ++i)
        if (x[i].sse != y[i].sse || x[i].params.C != y[i].params.C ||
            x[i].params.a != y[i].params.a || x[i].params.b != y[i].params.b ||
            x[i].params.c != y[i].params.c || x[i].iterations != y[i].iterations)
            return false;
    return true;
}

} // namespace

int main(int argc, char** argv) {
    std::size_t megabytes = 32;
    int reps = 200;
    try {
        if (argc > 1)
            megabytes = std::stoul(argv[1]);
        if (argc > 2)
            reps = std::stoi(argv[2]);
    } catch (const std::exception&) {
        std::fprintf(stderr, "usage: letterfit_bench [megabytes] [reps]\n");
        return 2;
    }

#ifdef _OPENMP
    std::printf("threads: %d\n", omp_get_max_threads());
#else
    std::printf("threads: 1 (built without OpenMP)\n");
#endif

    // --- letter counting ---
    Document doc;
    doc.id = "bench";
    doc.text = synth_text(megabytes << 20, 20260808);
    LanguageProfile profile = LanguageProfile::spanish_profile(true);

    auto t0 = std::chrono::steady_clock::now();
    LetterCounts serial = count_letters_serial(doc, profile);
    double t_serial = seconds(t0);

    t0 = std::chrono::steady_clock::now();
    LetterCounts parallel = count_letters(doc, profile);
    double t_parallel = seconds(t0);

    std::printf("count_letters   %4zu MB   serial %.3fs   parallel %.3fs   x%.2f   identical: %s\n",
                megabytes, t_serial, t_parallel, t_serial / t_parallel,
                same_counts(serial, parallel) ? "yes" : "NO");

    // --- model fitting ---
    RankedDistribution dist = to_ranked(serial);
    auto freqs = dist.frequencies();
    int n = dist.n();

    std::vector<FitResult> fits_serial, fits_parallel;
    t0 = std::chrono::steady_clock::now();
    for (int i = 0; i < reps; ++i)
        fits_serial = fit_all_serial(freqs, n);
    t_serial = seconds(t0);
    t0 = std::chrono::steady_clock::now();
    for (int i = 0; i < reps; ++i)
        fits_parallel = fit_all(freqs, n);
    t_parallel = seconds(t0);

    std::printf("fit_all         %4d reps  serial %.3fs   parallel %.3fs   x%.2f   identical: %s\n",
                reps, t_serial, t_parallel, t_serial / t_parallel,
                same_fits(fits_serial, fits_parallel) ? "yes" : "NO");

    // --- piecewise breakpoint scan ---
    int segments = 5;
    PiecewiseFit pw_serial, pw_parallel;
    t0 = std::chrono::steady_clock::now();
    for (int i = 0; i < reps; ++i)
        pw_serial = fit_piecewise_serial(freqs, n, segments);
    t_serial = seconds(t0);
    t0 = std::chrono::steady_clock::now();
    for (int i = 0; i < reps; ++i)
        pw_parallel = fit_piecewise(freqs, n, segments);
    t_parallel = seconds(t0);

    bool same_pw = pw_serial.spec.breakpoints == pw_parallel.spec.breakpoints &&
                   pw_serial.spec.constants == pw_parallel.spec.constants &&
                   pw_serial.result.sse == pw_parallel.result.sse;
    std::printf("fit_piecewise   %4d reps  serial %.3fs   parallel %.3fs   x%.2f   identical: %s\n",
                reps, t_serial, t_parallel, t_serial / t_parallel, same_pw ? "yes" : "NO");

    return 0;
}
