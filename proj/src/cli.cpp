#include "letterfit/cli.hpp"

#include <algorithm>
#include <filesystem>
#include <iostream>
#include <optional>
#include <sstream>

#include "CLI11.hpp"

#include "letterfit/corpus.hpp"
#include "letterfit/distribution.hpp"
#include "letterfit/errors.hpp"
#include "letterfit/fitter.hpp"
#include "letterfit/report_io.hpp"
#include "letterfit/selection.hpp"
#include "letterfit/trends.hpp"

namespace letterfit::cli {

namespace {

namespace fs = std::filesystem;

struct Options {
    std::string lang = "en";
    std::string manifest;
    std::string counts_path;
    std::string model;
    std::string out_dir;
    bool keep_space = false;
    std::string scale_mode = "free";
    std::string merge_mode = "pooled";
    std::string format = "tsv";
    int segments = 2;
    std::string eras;
    std::string letters;
};

// Files created by the current invocation, removed together on failure so a
// failed run leaves no partial output behind.
class OutputSet {
  public:
    std::string add(const fs::path& dir, const std::string& name) {
        fs::create_directories(dir);
        std::string p = (dir / name).string();
        files_.push_back(p);
        return p;
    }

    void discard_all() {
        std::error_code ec;
        for (const auto& f : files_)
            fs::remove(f, ec);
    }

  private:
    std::vector<std::string> files_;
};

LanguageProfile profile_from(const Options& opts) {
    if (opts.lang == "en")
        return LanguageProfile::english_profile(opts.keep_space);
    if (opts.lang == "es")
        return LanguageProfile::spanish_profile(opts.keep_space);
    if (opts.lang.rfind("custom:", 0) == 0)
        return LanguageProfile::load(opts.lang.substr(7), opts.keep_space);
    throw Error("unknown --lang value (use en, es, or custom:<profile.json>): " + opts.lang);
}

FitOptions fit_options(const Options& opts) {
    FitOptions fo;
    if (opts.scale_mode == "free")
        fo.scale_mode = ScaleMode::free_scale;
    else if (opts.scale_mode == "constrained")
        fo.scale_mode = ScaleMode::constrained;
    else
        throw Error("unknown --scale-mode (use free or constrained): " + opts.scale_mode);
    return fo;
}

std::vector<char32_t> parse_letter_list(const std::string& csv) {
    std::vector<char32_t> out;
    std::stringstream ss(csv);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        if (tok.empty())
            continue;
        std::size_t pos = 0;
        char32_t cp = utf8_decode(tok, pos);
        if (pos != tok.size())
            throw Error("--letters entries must be single characters: " + tok);
        out.push_back(cp);
    }
    return out;
}

std::vector<int> parse_int_list(const std::string& csv) {
    std::vector<int> out;
    std::stringstream ss(csv);
    std::string tok;
    while (std::getline(ss, tok, ','))
        if (!tok.empty())
            out.push_back(std::stoi(tok));
    return out;
}

struct Inputs {
    LanguageProfile profile;
    std::optional<Corpus> corpus; // present with --manifest
    LetterCounts merged;
    RankedDistribution dist;
};

Inputs load_inputs(const Options& opts, bool need_corpus) {
    Inputs in{profile_from(opts), std::nullopt, {}, {}};
    if (!opts.manifest.empty()) {
        auto docs = load_manifest(opts.manifest);
        in.corpus = build_corpus(docs, in.profile);
        std::vector<LetterCounts> parts;
        parts.reserve(in.corpus->docs.size());
        for (const auto& d : in.corpus->docs)
            parts.push_back(d.counts);
        in.merged = merge_counts(parts);
        if (opts.merge_mode == "pooled") {
            in.dist = to_ranked(in.merged);
        } else if (opts.merge_mode == "mean") {
            // Equal weight per document rather than per letter.
            std::vector<double> mean(in.profile.size(), 0.0);
            double space_mean = 0.0;
            for (const auto& d : in.corpus->docs) {
                double denom = static_cast<double>(d.counts.total) +
                               (in.profile.keep_space
                                    ? static_cast<double>(d.counts.space_count)
                                    : 0.0);
                for (int i = 0; i < in.profile.size(); ++i)
                    mean[i] += d.counts.counts[i] / denom;
                space_mean += d.counts.space_count / denom;
            }
            for (auto& v : mean)
                v /= static_cast<double>(in.corpus->docs.size());
            space_mean /= static_cast<double>(in.corpus->docs.size());
            in.dist = from_frequencies(in.profile, mean,
                                       in.profile.keep_space ? space_mean : -1.0);
        } else {
            throw Error("unknown --merge-mode (use pooled or mean): " + opts.merge_mode);
        }
        return in;
    }
    if (!opts.counts_path.empty()) {
        if (need_corpus)
            throw Error("this subcommand needs --manifest, not --counts");
        in.merged = read_counts_tsv(opts.counts_path, in.profile);
        in.dist = to_ranked(in.merged);
        return in;
    }
    throw Error("no input given (use --manifest or --counts)");
}

std::vector<FitResult> selected_fits(const Options& opts, const Inputs& in) {
    FitOptions fo = fit_options(opts);
    if (!opts.model.empty()) {
        const ModelSpec* spec = model_by_name(opts.model);
        if (!spec) {
            std::string known;
            for (const auto& s : model_registry())
                known += std::string(" ") + s.name;
            throw Error("unknown --model " + opts.model + "; known models:" + known);
        }
        return {fit(spec->id, in.dist, fo)};
    }
    return fit_all(in.dist, fo);
}

void do_count(const Options& opts, OutputSet& outputs) {
    Inputs in = load_inputs(opts, true);
    for (const auto& doc : in.corpus->docs) {
        write_counts_tsv(doc.counts, outputs.add(opts.out_dir, "counts_" + doc.meta.id + ".tsv"));
        std::cerr << doc.meta.id << ": letters=" << doc.counts.total
                  << " spaces=" << doc.counts.space_count << " dropped=" << doc.counts.dropped
                  << "\n";
    }
    write_counts_tsv(in.merged, outputs.add(opts.out_dir, "counts_merged.tsv"));
}

void do_rank(const Options& opts, OutputSet& outputs) {
    Inputs in = load_inputs(opts, false);
    write_ranked_tsv(in.dist, outputs.add(opts.out_dir, "ranked.tsv"));
    write_rank_strings_tsv(in.corpus ? &*in.corpus : nullptr, in.dist,
                           outputs.add(opts.out_dir, "rank_strings.tsv"));
}

void do_fit(const Options& opts, OutputSet& outputs) {
    Inputs in = load_inputs(opts, false);
    auto fits = selected_fits(opts, in);
    for (const auto& f : fits)
        write_fit_json(f, outputs.add(opts.out_dir, "fit_" + f.model + ".json"));
    write_fitted_curves_tsv(in.dist, fits, outputs.add(opts.out_dir, "fitted_curves.tsv"));
}

void do_select(const Options& opts, OutputSet& outputs) {
    Inputs in = load_inputs(opts, false);
    auto fits = fit_all(in.dist, fit_options(opts));
    auto table = build_table(fits, in.dist.n());
    for (const auto& row : table.rows)
        if (!row.converged)
            std::cerr << "warning: " << row.model << " did not converge\n";
    write_selection_tsv(table, outputs.add(opts.out_dir, "selection.tsv"));
    if (opts.format == "json")
        write_selection_json(table, outputs.add(opts.out_dir, "selection.json"));
    write_residuals_tsv(in.dist, fits, outputs.add(opts.out_dir, "residuals.tsv"));
}

void do_piecewise(const Options& opts, OutputSet& outputs) {
    Inputs in = load_inputs(opts, false);
    auto pw = fit_piecewise(in.dist, opts.segments);
    auto series = gusein_ratio(in.dist);
    auto means = group_means(series, pw.spec.breakpoints);
    write_gusein_ratio_tsv(series, outputs.add(opts.out_dir, "gusein_ratio.tsv"));
    write_piecewise_tsv(pw.spec, in.dist.n(),
                        outputs.add(opts.out_dir, "piecewise_segments.tsv"));
    write_piecewise_json(pw.spec, pw.result, means,
                         outputs.add(opts.out_dir, "piecewise.json"));
}

void do_trends(const Options& opts, OutputSet& outputs) {
    Inputs in = load_inputs(opts, true);
    const Corpus& corpus = *in.corpus;

    std::vector<int> eras = opts.eras.empty() ? default_era_boundaries(in.profile.id)
                                              : parse_int_list(opts.eras);

    std::vector<char32_t> letters;
    if (!opts.letters.empty()) {
        letters = parse_letter_list(opts.letters);
    } else if (in.profile.id == ProfileId::english) {
        letters = {U't', U'i', U'a', U'w'};
    } else if (in.profile.id == ProfileId::spanish) {
        letters = {U'd', U'l', U'm'};
    } else {
        letters.assign(in.profile.alphabet.begin(), in.profile.alphabet.end());
    }

    // Switch pairs: consecutive disjoint pairs of --letters when given,
    // otherwise the per-language defaults.
    std::vector<std::pair<char32_t, char32_t>> pairs;
    if (!opts.letters.empty()) {
        for (std::size_t i = 0; i + 1 < letters.size(); i += 2)
            pairs.emplace_back(letters[i], letters[i + 1]);
    } else if (in.profile.id == ProfileId::english) {
        pairs = {{U'a', U'i'}};
    } else if (in.profile.id == ProfileId::spanish) {
        pairs = {{U'd', U'l'}};
    }

    write_letter_matrix_tsv(corpus, eras, outputs.add(opts.out_dir, "letter_matrix.tsv"));
    write_letter_series_tsv(letter_series(corpus, letters),
                            outputs.add(opts.out_dir, "letter_series.tsv"));
    std::vector<std::pair<std::pair<char32_t, char32_t>, std::vector<RankSwitchEntry>>> reports;
    for (const auto& pair : pairs)
        reports.emplace_back(pair, rank_switches(corpus, pair.first, pair.second));
    write_rank_switches_tsv(reports, outputs.add(opts.out_dir, "rank_switches.tsv"));
}

void do_report(const Options& opts, OutputSet& outputs) {
    do_count(opts, outputs);
    do_rank(opts, outputs);
    do_fit(opts, outputs);
    do_select(opts, outputs);
    do_piecewise(opts, outputs);
    do_trends(opts, outputs);
}

void add_common(CLI::App* cmd, Options& opts, bool with_counts) {
    cmd->add_option("--lang", opts.lang, "Language profile: en, es, or custom:<profile.json>");
    cmd->add_option("--manifest", opts.manifest, "Corpus manifest (TSV or JSON)");
    if (with_counts)
        cmd->add_option("--counts", opts.counts_path, "Counts TSV instead of a manifest");
    cmd->add_flag("--keep-space", opts.keep_space, "Rank the space as a symbol");
    cmd->add_option("--merge-mode", opts.merge_mode,
                    "Corpus aggregation: pooled (default) or mean");
    cmd->add_option("--out", opts.out_dir, "Output directory")->required();
    cmd->add_option("--format", opts.format, "Table format: tsv (default) or json");
}

} // namespace

int run(const std::vector<std::string>& args) {
    CLI::App app{"Ranked letter-frequency analysis and model fitting"};
    app.require_subcommand(1);
    Options opts;

    CLI::App* count = app.add_subcommand("count", "Count letters per document and merged");
    add_common(count, opts, false);

    CLI::App* rank = app.add_subcommand("rank", "Ranked distribution and rank strings");
    add_common(rank, opts, true);

    CLI::App* fitc = app.add_subcommand("fit", "Fit rank-frequency models");
    add_common(fitc, opts, true);
    fitc->add_option("--model", opts.model, "Fit one family instead of all ten");
    fitc->add_option("--scale-mode", opts.scale_mode, "free (default) or constrained");

    CLI::App* select = app.add_subcommand("select", "Fit all models and build the comparison table");
    add_common(select, opts, true);
    select->add_option("--scale-mode", opts.scale_mode, "free (default) or constrained");

    CLI::App* piecewise = app.add_subcommand("piecewise", "Piecewise plateau fit and ratio series");
    add_common(piecewise, opts, true);
    piecewise->add_option("--segments", opts.segments, "Number of plateau segments (default 2)");

    CLI::App* trends = app.add_subcommand("trends", "Temporal letter usage analysis");
    add_common(trends, opts, false);
    trends->add_option("--eras", opts.eras, "Era boundaries, e.g. 1800,1902");
    trends->add_option("--letters", opts.letters, "Letters for the series, e.g. t,i,a,w");

    CLI::App* report = app.add_subcommand("report", "All outputs in one directory");
    add_common(report, opts, false);
    report->add_option("--scale-mode", opts.scale_mode, "free (default) or constrained");
    report->add_option("--segments", opts.segments, "Number of plateau segments (default 2)");
    report->add_option("--eras", opts.eras, "Era boundaries, e.g. 1800,1902");
    report->add_option("--letters", opts.letters, "Letters for the series, e.g. t,i,a,w");

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        return app.exit(e);
    }

    OutputSet outputs;
    try {
        if (count->parsed())
            do_count(opts, outputs);
        else if (rank->parsed())
            do_rank(opts, outputs);
        else if (fitc->parsed())
            do_fit(opts, outputs);
        else if (select->parsed())
            do_select(opts, outputs);
        else if (piecewise->parsed())
            do_piecewise(opts, outputs);
        else if (trends->parsed())
            do_trends(opts, outputs);
        else if (report->parsed())
            do_report(opts, outputs);
        return 0;
    } catch (const std::exception& e) {
        std::cerr << "letterfit: " << e.what() << "\n";
        outputs.discard_all();
        return 1;
    }
}

} // namespace letterfit::cli
