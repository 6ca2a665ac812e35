#include "letterfit/report_io.hpp"

#include <cstdio>
#include <fstream>

#include "letterfit/errors.hpp"
#include "json.hpp"

namespace letterfit {

namespace {

std::ofstream open_out(const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw Error("cannot write output file: " + path);
    return out;
}

nlohmann::ordered_json params_json(ModelId id, const ParamVector& params) {
    const ModelSpec& spec = model_spec(id);
    nlohmann::ordered_json j;
    j["C"] = params.C;
    if (spec.uses_a)
        j["a"] = params.a;
    if (spec.uses_b)
        j["b"] = params.b;
    if (spec.uses_c)
        j["c"] = params.c;
    return j;
}

const char* status_name(FitStatus status) {
    switch (status) {
    case FitStatus::converged_sse:
        return "converged_sse";
    case FitStatus::converged_step:
        return "converged_step";
    case FitStatus::max_iterations:
        return "max_iterations";
    case FitStatus::stalled:
        return "stalled";
    case FitStatus::singular_jacobian:
        return "singular_jacobian";
    case FitStatus::domain_error:
        return "domain_error";
    }
    return "unknown";
}

} // namespace

std::string fmt6(double value) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.6g", value);
    return buf;
}

std::string symbol_label(char32_t symbol) {
    return symbol == U' ' ? "_" : utf8_encode(symbol);
}

void write_ranked_tsv(const RankedDistribution& dist, const std::string& path) {
    auto out = open_out(path);
    out << "rank\tletter\tcount\tfrequency\n";
    for (const auto& e : dist.entries)
        out << e.rank << '\t' << symbol_label(e.symbol) << '\t' << e.count << '\t'
            << fmt6(e.frequency) << '\n';
}

void write_rank_strings_tsv(const Corpus* corpus, const RankedDistribution& merged,
                            const std::string& path) {
    auto out = open_out(path);
    out << "id\tyear\ttotal\trank_string\n";
    if (corpus)
        for (const auto& doc : corpus->docs)
            out << doc.meta.id << '\t' << doc.meta.anchor_year() << '\t' << doc.counts.total
                << '\t' << rank_string(to_ranked(doc.counts)) << '\n';
    std::uint64_t merged_total = 0;
    for (const auto& e : merged.entries)
        merged_total += e.count;
    out << "merged\t0\t" << merged_total << '\t' << rank_string(merged) << '\n';
}

void write_fit_json(const FitResult& fit, const std::string& path) {
    const ModelSpec* spec = model_by_name(fit.model);
    nlohmann::ordered_json j;
    j["model"] = fit.model;
    if (spec)
        j["params"] = params_json(spec->id, fit.params);
    j["sse"] = fit.sse;
    j["converged"] = fit.converged;
    j["iterations"] = fit.iterations;
    j["status"] = status_name(fit.status);
    if (!fit.message.empty())
        j["message"] = fit.message;
    if (spec)
        j["initial_params"] = params_json(spec->id, fit.initial_params);
    j["residuals"] = fit.residuals;
    auto out = open_out(path);
    out << j.dump(2) << '\n';
}

void write_fitted_curves_tsv(const RankedDistribution& dist,
                             const std::vector<FitResult>& fits, const std::string& path) {
    auto out = open_out(path);
    out << "rank\tletter\tobserved";
    for (const auto& fit : fits)
        out << '\t' << fit.model;
    out << '\n';
    for (const auto& e : dist.entries) {
        out << e.rank << '\t' << symbol_label(e.symbol) << '\t' << fmt6(e.frequency);
        for (const auto& fit : fits) {
            if (static_cast<std::size_t>(e.rank - 1) < fit.residuals.size())
                out << '\t' << fmt6(e.frequency - fit.residuals[e.rank - 1]);
            else
                out << '\t' << "nan";
        }
        out << '\n';
    }
}

void write_selection_tsv(const SelectionTable& table, const std::string& path) {
    auto out = open_out(path);
    out << "function\teq\tp\tsse\tdelta_aic\tdelta_bic\n";
    for (const auto& row : table.rows)
        out << row.model << '\t' << row.eq << '\t' << row.p << '\t' << fmt6(row.sse) << '\t'
            << fmt6(row.delta_aic) << '\t' << fmt6(row.delta_bic) << '\n';
}

void write_selection_json(const SelectionTable& table, const std::string& path) {
    nlohmann::ordered_json rows = nlohmann::ordered_json::array();
    for (const auto& row : table.rows) {
        nlohmann::ordered_json r;
        r["function"] = row.model;
        r["eq"] = row.eq;
        r["p"] = row.p;
        r["sse"] = row.sse;
        r["delta_aic"] = row.delta_aic;
        r["delta_bic"] = row.delta_bic;
        r["converged"] = row.converged;
        if (row.perfect_fit)
            r["perfect_fit"] = true;
        rows.push_back(std::move(r));
    }
    nlohmann::ordered_json j;
    j["rows"] = std::move(rows);
    j["best_aic"] = table.best_aic;
    j["best_bic"] = table.best_bic;
    auto out = open_out(path);
    out << j.dump(2) << '\n';
}

void write_residuals_tsv(const RankedDistribution& dist, const std::vector<FitResult>& fits,
                         const std::string& path) {
    auto matrix = residual_table(fits);
    auto out = open_out(path);
    out << "rank";
    for (const auto& fit : fits)
        out << '\t' << fit.model;
    out << '\n';
    for (std::size_t r = 0; r < matrix.size(); ++r) {
        out << dist.entries[r].rank;
        for (double v : matrix[r])
            out << '\t' << fmt6(v);
        out << '\n';
    }
}

void write_gusein_ratio_tsv(const GuseinRatioSeries& series, const std::string& path) {
    auto out = open_out(path);
    out << "rank\tletter\tfrequency\tratio\n";
    for (const auto& e : series.entries)
        out << e.rank << '\t' << symbol_label(e.symbol) << '\t' << fmt6(e.frequency) << '\t'
            << fmt6(e.ratio) << '\n';
}

void write_piecewise_tsv(const PiecewiseSpec& spec, int n, const std::string& path) {
    auto out = open_out(path);
    out << "segment\tstart_rank\tend_rank\tC\n";
    int lo = 1;
    for (int seg = 0; seg < spec.segments(); ++seg) {
        int hi = (seg < static_cast<int>(spec.breakpoints.size())) ? spec.breakpoints[seg] - 1 : n;
        out << seg + 1 << '\t' << lo << '\t' << hi << '\t' << fmt6(spec.constants[seg]) << '\n';
        lo = hi + 1;
    }
}

void write_piecewise_json(const PiecewiseSpec& spec, const FitResult& fit,
                          const std::vector<double>& plateau_means, const std::string& path) {
    nlohmann::ordered_json j;
    j["segments"] = spec.segments();
    j["breakpoints"] = spec.breakpoints;
    j["constants"] = spec.constants;
    j["sse"] = fit.sse;
    j["plateau_means"] = plateau_means;
    j["placements_scanned"] = fit.iterations;
    auto out = open_out(path);
    out << j.dump(2) << '\n';
}

void write_letter_matrix_tsv(const Corpus& corpus, const std::vector<int>& era_boundaries,
                             const std::string& path) {
    auto table = per_document_table(corpus);
    auto out = open_out(path);
    out << "id\tyear\tera";
    for (int i = 0; i < corpus.profile.size(); ++i)
        out << '\t' << utf8_encode(corpus.profile.alphabet[i]);
    out << '\n';
    for (std::size_t d = 0; d < corpus.docs.size(); ++d) {
        const auto& doc = corpus.docs[d];
        out << doc.meta.id << '\t' << doc.meta.anchor_year() << '\t'
            << era_index(doc.meta.anchor_year(), era_boundaries);
        for (double v : table[d])
            out << '\t' << fmt6(v);
        out << '\n';
    }
}

void write_letter_series_tsv(const std::vector<TrendSeries>& series, const std::string& path) {
    auto out = open_out(path);
    out << "letter\tid\tyear\tfrequency\n";
    for (const auto& s : series)
        for (const auto& point : s.points)
            out << utf8_encode(s.letter) << '\t' << point.document_id << '\t' << point.year
                << '\t' << fmt6(point.frequency) << '\n';
}

void write_rank_switches_tsv(
    const std::vector<std::pair<std::pair<char32_t, char32_t>, std::vector<RankSwitchEntry>>>&
        reports,
    const std::string& path) {
    auto out = open_out(path);
    out << "pair\tid\tyear\tleader\tswitched\n";
    for (const auto& [pair, entries] : reports) {
        std::string pair_label = utf8_encode(pair.first) + utf8_encode(pair.second);
        for (const auto& e : entries)
            out << pair_label << '\t' << e.document_id << '\t' << e.year << '\t'
                << utf8_encode(e.leader) << '\t' << (e.switched ? 1 : 0) << '\n';
    }
}

} // namespace letterfit
