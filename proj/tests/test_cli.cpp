#include <algorithm>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "doctest.h"
#include "json.hpp"

#include "letterfit/cli.hpp"
#include "letterfit/corpus.hpp"
#include "letterfit/distribution.hpp"
#include "letterfit/fitter.hpp"
#include "letterfit/models.hpp"

using namespace letterfit;
namespace fs = std::filesystem;

namespace {

const std::string kFixtures = LETTERFIT_FIXTURES_DIR;
const std::string kManifest = kFixtures + "/english/manifest.tsv";

struct TempDir {
    fs::path path;
    explicit TempDir(const std::string& name) : path(fs::temp_directory_path() / name) {
        fs::remove_all(path);
        fs::create_directories(path);
    }
    ~TempDir() { fs::remove_all(path); }
    std::string str() const { return path.string(); }
};

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    REQUIRE(in);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

std::string first_line(const fs::path& p) {
    std::ifstream in(p);
    std::string line;
    std::getline(in, line);
    return line;
}

} // namespace

TEST_SUITE("cli") {
    TEST_CASE("count writes per-document and merged counts files") {
        TempDir out("letterfit_cli_count");
        int rc = cli::run({"count", "--lang", "en", "--manifest", kManifest, "--out", out.str()});
        REQUIRE(rc == 0);
        for (const char* id : {"fx01", "fx02", "fx03", "fx04", "fx05", "fx06"})
            CHECK(fs::exists(out.path / ("counts_" + std::string(id) + ".tsv")));
        REQUIRE(fs::exists(out.path / "counts_merged.tsv"));
        CHECK(first_line(out.path / "counts_merged.tsv") == "letter\tcount");

        auto docs = load_manifest(kManifest);
        auto profile = LanguageProfile::english_profile();
        auto merged = merge_counts(count_corpus(docs, profile));
        auto loaded = read_counts_tsv((out.path / "counts_merged.tsv").string(), profile);
        CHECK(loaded.counts == merged.counts);
        CHECK(loaded.total == merged.total);
    }

    TEST_CASE("rank emits the ranked table and per-document rank strings") {
        TempDir out("letterfit_cli_rank");
        REQUIRE(cli::run({"rank", "--manifest", kManifest, "--out", out.str()}) == 0);
        CHECK(first_line(out.path / "ranked.tsv") == "rank\tletter\tcount\tfrequency");
        auto strings = slurp(out.path / "rank_strings.tsv");
        CHECK(strings.find("fx01\t1790") != std::string::npos);
        CHECK(strings.find("merged\t") != std::string::npos);
    }

    TEST_CASE("fit on the bundled counts fixture emits the documented JSON") {
        TempDir out("letterfit_cli_fit");
        std::string counts = kFixtures + "/counts_english.tsv";
        REQUIRE(cli::run({"fit", "--model", "cocho_beta", "--counts", counts, "--out",
                          out.str()}) == 0);
        auto j = nlohmann::json::parse(slurp(out.path / "fit_cocho_beta.json"));
        CHECK(j["model"] == "cocho_beta");
        REQUIRE(j.contains("params"));
        CHECK(j["params"].contains("C"));
        CHECK(j["params"].contains("a"));
        CHECK(j["params"].contains("b"));
        CHECK(j.contains("sse"));
        CHECK(j["converged"].is_boolean());
        CHECK(j["iterations"].is_number_integer());
        CHECK(j["residuals"].is_array());

        // The emitted numbers are exactly the library fit on the same input.
        auto profile = LanguageProfile::english_profile();
        auto dist = to_ranked(read_counts_tsv(counts, profile));
        auto expect = fit(ModelId::cocho_beta, dist);
        CHECK(j["params"]["a"].get<double>() == expect.params.a);
        CHECK(j["params"]["b"].get<double>() == expect.params.b);
        CHECK(j["sse"].get<double>() == expect.sse);
        CHECK(fs::exists(out.path / "fitted_curves.tsv"));
    }

    TEST_CASE("select emits the documented header and residual matrix") {
        TempDir out("letterfit_cli_select");
        REQUIRE(cli::run({"select", "--manifest", kManifest, "--out", out.str(), "--format",
                          "json"}) == 0);
        std::string header = first_line(out.path / "selection.tsv");
        CHECK(header == "function\teq\tp\tsse\tdelta_aic\tdelta_bic");
        CHECK(fs::exists(out.path / "selection.json"));
        CHECK(first_line(out.path / "residuals.tsv").rfind("rank\tgusein_zade", 0) == 0);
        auto j = nlohmann::json::parse(slurp(out.path / "selection.json"));
        CHECK(j["rows"].size() == 10);
    }

    TEST_CASE("piecewise emits ratio series, segments, and summary") {
        TempDir out("letterfit_cli_piecewise");
        REQUIRE(cli::run({"piecewise", "--manifest", kManifest, "--segments", "2", "--out",
                          out.str()}) == 0);
        CHECK(first_line(out.path / "gusein_ratio.tsv") == "rank\tletter\tfrequency\tratio");
        CHECK(first_line(out.path / "piecewise_segments.tsv") ==
              "segment\tstart_rank\tend_rank\tC");
        auto j = nlohmann::json::parse(slurp(out.path / "piecewise.json"));
        CHECK(j["segments"] == 2);
        CHECK(j["breakpoints"].size() == 1);
        CHECK(j["constants"].size() == 2);
        CHECK(j["plateau_means"].size() == 2);
    }

    TEST_CASE("trends emits matrix, series, and switch report") {
        TempDir out("letterfit_cli_trends");
        REQUIRE(cli::run({"trends", "--manifest", kManifest, "--out", out.str(), "--letters",
                          "a,i", "--eras", "1800,1902"}) == 0);
        auto matrix_header = first_line(out.path / "letter_matrix.tsv");
        CHECK(matrix_header.rfind("id\tyear\tera\ta\tb", 0) == 0);
        auto matrix = slurp(out.path / "letter_matrix.tsv");
        CHECK(matrix.find("fx01\t1790\t0") != std::string::npos);
        CHECK(matrix.find("fx03\t1905\t2") != std::string::npos);
        CHECK(first_line(out.path / "letter_series.tsv") == "letter\tid\tyear\tfrequency");
        auto switches = slurp(out.path / "rank_switches.tsv");
        CHECK(switches.find("ai\tfx01") != std::string::npos);
    }

    TEST_CASE("report is the union of the individual outputs") {
        TempDir out("letterfit_cli_report");
        REQUIRE(cli::run({"report", "--manifest", kManifest, "--out", out.str()}) == 0);
        for (const char* name :
             {"counts_merged.tsv", "ranked.tsv", "rank_strings.tsv", "fit_cocho_beta.json",
              "fit_gusein_zade.json", "fitted_curves.tsv", "selection.tsv", "residuals.tsv",
              "gusein_ratio.tsv", "piecewise_segments.tsv", "piecewise.json",
              "letter_matrix.tsv", "letter_series.tsv", "rank_switches.tsv"})
            CHECK(fs::exists(out.path / name));
    }

    TEST_CASE("constrained scale mode flows through the fit subcommand") {
        TempDir out("letterfit_cli_constrained");
        std::string counts = kFixtures + "/counts_english.tsv";
        REQUIRE(cli::run({"fit", "--model", "gusein_zade", "--scale-mode", "constrained",
                          "--counts", counts, "--out", out.str()}) == 0);
        auto j = nlohmann::json::parse(slurp(out.path / "fit_gusein_zade.json"));
        ParamVector none;
        CHECK(j["params"]["C"].get<double>() ==
              doctest::Approx(normalize_scale(ModelId::gusein_zade, none, 26)).epsilon(1e-14));
        CHECK(j["iterations"] == 0);

        CHECK(cli::run({"fit", "--scale-mode", "bogus", "--counts", counts, "--out",
                        out.str() + "/x"}) != 0);
    }

    TEST_CASE("spanish report carries the n-tilde through every output") {
        TempDir out("letterfit_cli_es");
        std::string manifest = kFixtures + "/spanish/manifest.tsv";
        REQUIRE(cli::run({"report", "--lang", "es", "--manifest", manifest, "--format", "json",
                          "--out", out.str()}) == 0);
        CHECK(slurp(out.path / "rank_strings.tsv").find("ñ") != std::string::npos);
        CHECK(slurp(out.path / "counts_merged.tsv").find("ñ\t") != std::string::npos);
        CHECK(first_line(out.path / "letter_matrix.tsv").find("ñ") != std::string::npos);
        auto j = nlohmann::json::parse(slurp(out.path / "selection.json"));
        CHECK(j["rows"].size() == 10);
    }

    TEST_CASE("failures exit nonzero and leave no partial outputs") {
        TempDir out("letterfit_cli_fail");
        int rc = cli::run({"count", "--manifest", out.str() + "/missing.tsv", "--out",
                           out.str() + "/sub"});
        CHECK(rc != 0);
        bool no_leftovers = !fs::exists(out.path / "sub") || fs::is_empty(out.path / "sub");
        CHECK(no_leftovers);

        CHECK(cli::run({"fit", "--model", "not_a_model", "--manifest", kManifest, "--out",
                        out.str() + "/sub2"}) != 0);
        CHECK(cli::run({"rank", "--out", out.str() + "/sub3"}) != 0);
        CHECK(cli::run({"count", "--counts", "x.tsv", "--out", out.str() + "/sub4"}) != 0);
    }

    TEST_CASE("rank on published-order counts reproduces the rank string") {
        TempDir out("letterfit_cli_obama");
        // Counts with strictly decreasing values along the published order.
        const std::string order = "etoanrsihdlucwfmgypbvkjqxz";
        fs::path counts_path = out.path / "obama_counts.tsv";
        {
            std::ofstream counts(counts_path);
            counts << "letter\tcount\n";
            for (char letter = 'a'; letter <= 'z'; ++letter)
                counts << letter << '\t' << 100 - order.find(letter) << '\n';
        }
        REQUIRE(cli::run({"rank", "--counts", counts_path.string(), "--out", out.str()}) == 0);
        auto strings = slurp(out.path / "rank_strings.tsv");
        CHECK(strings.find("merged\t0\t" /* year, then total */) != std::string::npos);
        CHECK(strings.find(order) != std::string::npos);
    }

    TEST_CASE("keep-space ranks the space symbol") {
        TempDir out("letterfit_cli_space");
        REQUIRE(cli::run({"rank", "--manifest", kManifest, "--keep-space", "--out",
                          out.str()}) == 0);
        auto ranked = slurp(out.path / "ranked.tsv");
        CHECK(ranked.find("\t_\t") != std::string::npos);
        int rows = std::count(ranked.begin(), ranked.end(), '\n');
        CHECK(rows == 1 + 27); // header + 26 letters + space
    }

    TEST_CASE("keep-space report runs the whole pipeline at n+1 symbols") {
        TempDir out("letterfit_cli_space_report");
        REQUIRE(cli::run({"report", "--lang", "en", "--manifest", kManifest, "--keep-space",
                          "--out", out.str()}) == 0);
        auto ranked = slurp(out.path / "ranked.tsv");
        CHECK(std::count(ranked.begin(), ranked.end(), '\n') == 1 + 27);
        auto strings = slurp(out.path / "rank_strings.tsv");
        CHECK(strings.find('_') != std::string::npos);
        CHECK(fs::exists(out.path / "piecewise.json"));
    }

    TEST_CASE("mean merge mode is accepted and normalizes") {
        TempDir out("letterfit_cli_mean");
        REQUIRE(cli::run({"rank", "--manifest", kManifest, "--merge-mode", "mean", "--out",
                          out.str()}) == 0);
        CHECK(fs::exists(out.path / "ranked.tsv"));
        CHECK(cli::run({"rank", "--manifest", kManifest, "--merge-mode", "bogus", "--out",
                        out.str()}) != 0);
    }
}
