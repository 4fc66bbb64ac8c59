#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <array>
#include <filesystem>
#include <fstream>
#include <limits>
#include <sstream>

#include <json.hpp>

#include "semgp/errors.hpp"
#include "semgp/experiment.hpp"

using namespace semgp;

namespace {

namespace fs = std::filesystem;

struct TempDir {
    fs::path path;
    TempDir() : path(fs::temp_directory_path() / fs::path("semgp_experiment_test")) {
        fs::remove_all(path);
        fs::create_directories(path);
    }
    ~TempDir() { fs::remove_all(path); }
    std::string file(const char* name) const { return (path / name).string(); }
};

ExperimentConfig tiny_config(const TempDir& tmp) {
    ExperimentConfig cfg = parse_config_text(
        "population = 12\n"
        "generations = 2\n"
        "neighborhood = 4\n"
        "runs = 2\n"
        "digits = 0, 1\n"
        "variants = moead-tch, nsga2\n"
        "synth_per_digit = 10\n");
    cfg.out_dir = tmp.file("results");
    return cfg;
}

} // namespace

TEST_CASE("empty config text yields the published defaults") {
    const ExperimentConfig cfg = parse_config_text("");
    CHECK(cfg.engine.population == 500);
    CHECK(cfg.engine.generations == 50);
    CHECK(cfg.engine.rates.crossover == 0.6);
    CHECK(cfg.engine.rates.mutation == 0.4);
    CHECK(cfg.engine.rates.internal_node_bias == 0.9);
    CHECK(cfg.engine.tournament_size == 7);
    CHECK(cfg.engine.init_depth_min == 1);
    CHECK(cfg.engine.init_depth_max == 5);
    CHECK(cfg.engine.limits.max_depth == 8);
    CHECK(cfg.engine.limits.max_length == 800);
    CHECK(cfg.engine.neighborhood == 20);
    CHECK(cfg.engine.ssc.ubss == 0.5);
    CHECK(cfg.engine.ssc.max_trials == 20);
    CHECK(cfg.runs == 30);
    CHECK(cfg.per_digit == 6000);
    CHECK(cfg.digits.size() == 10);
    CHECK(cfg.variants == known_variants());
}

TEST_CASE("config parsing handles comments, lists and 'inf'") {
    const ExperimentConfig cfg = parse_config_text(
        "# a comment line\n"
        "population = 40   # trailing comment\n"
        "ubss = inf\n"
        "\n"
        "digits = 9,0 , 5\n"
        "variants = moead-tch-ssc\n"
        "replacement_tie = keep\n"
        "moead_mating = tournament\n"
        "ssc_pairing = any\n"
        "base_seed = 77\n");
    CHECK(cfg.engine.population == 40);
    CHECK(cfg.engine.ssc.ubss == std::numeric_limits<double>::infinity());
    CHECK(cfg.digits == std::vector<int>{9, 0, 5});
    CHECK(cfg.variants == std::vector<std::string>{"moead-tch-ssc"});
    CHECK_FALSE(cfg.engine.replacement_tie_replace);
    CHECK(cfg.engine.moead_mating == MoeadMating::Tournament);
    CHECK(cfg.engine.ssc.pairing == SscPairing::Any);
    CHECK(cfg.base_seed == 77);
}

TEST_CASE("config rejection cases") {
    CHECK_THROWS_AS(parse_config_text("not_a_key = 1\n"), ConfigError);
    CHECK_THROWS_AS(parse_config_text("population 40\n"), ConfigError);
    CHECK_THROWS_AS(parse_config_text("crossover_rate = 0.7\n"), ConfigError); // sums to 1.1
    CHECK_THROWS_AS(parse_config_text("ubss = 0\n"), ConfigError);
    CHECK_THROWS_AS(parse_config_text("ubss = -1\n"), ConfigError);
    CHECK_THROWS_AS(parse_config_text("init_depth_min = 6\ninit_depth_max = 3\n"), ConfigError);
    CHECK_THROWS_AS(parse_config_text("population = 10\nneighborhood = 11\n"), ConfigError);
    CHECK_THROWS_AS(parse_config_text("digits = 12\n"), ConfigError);
    CHECK_THROWS_AS(parse_config_text("variants = nsga3\n"), ConfigError);
    CHECK_THROWS_AS(parse_config_text("csv = a.csv\nsynth_per_digit = 10\n"), ConfigError);
    CHECK_THROWS_AS(load_config("/nonexistent/config.txt"), ConfigError);
    // Valid pair of overrides still sums to 1.
    const auto ok = parse_config_text("crossover_rate = 0.7\nmutation_rate = 0.3\n");
    CHECK(ok.engine.rates.crossover == 0.7);
}

TEST_CASE("seed derivation is pure and collision-averse") {
    const std::uint64_t s = derive_seed(1, "moead-tch", 3, 7);
    CHECK(derive_seed(1, "moead-tch", 3, 7) == s);
    CHECK(derive_seed(2, "moead-tch", 3, 7) != s);
    CHECK(derive_seed(1, "moead-tch-ssc", 3, 7) != s);
    CHECK(derive_seed(1, "moead-tch", 4, 7) != s);
    CHECK(derive_seed(1, "moead-tch", 3, 8) != s);
    CHECK(result_key("nsga2", 4, 12) == "nsga2|4|12");
}

TEST_CASE("result records round trip through json") {
    RunResult r;
    r.variant = "spea2";
    r.digit = 4;
    r.run_index = 9;
    r.seed = 0xdeadbeefcafe;
    r.config_hash = 12345;
    r.wall_ms = 12.5;
    r.front = {{0.875, 0.5}, {0.25, 1.0}};
    r.ep = {{0.875, 0.5}};
    r.gen_log.push_back({{0.875, 1.0}, 3, {0.5, 0.75}});
    const std::string line = result_to_json(r);
    const RunResult back = result_from_json(line);
    CHECK(back.variant == r.variant);
    CHECK(back.digit == r.digit);
    CHECK(back.run_index == r.run_index);
    CHECK(back.seed == r.seed);
    CHECK(back.config_hash == r.config_hash);
    CHECK(back.wall_ms == r.wall_ms);
    CHECK(back.front == r.front);
    CHECK(back.ep == r.ep);
    REQUIRE(back.gen_log.size() == 1);
    CHECK(back.gen_log[0].ideal == r.gen_log[0].ideal);
    CHECK(back.gen_log[0].ep_size == r.gen_log[0].ep_size);
    CHECK(back.gen_log[0].best == r.gen_log[0].best);

    auto j = nlohmann::json::parse(line);
    j["schema"] = 2;
    CHECK_THROWS_AS(result_from_json(j.dump()), DataError);
}

TEST_CASE("config hash separates engine settings, ignores output paths") {
    ExperimentConfig a;
    ExperimentConfig b = a;
    CHECK(config_hash(a) == config_hash(b));
    b.out_dir = "elsewhere";
    b.workers = 8;
    CHECK(config_hash(a) == config_hash(b));
    b.engine.ssc.ubss = 0.25;
    CHECK(config_hash(a) != config_hash(b));
}

TEST_CASE("experiment runs, resumes, and reports end to end") {
    TempDir tmp;
    const ExperimentConfig cfg = tiny_config(tmp);

    const ExperimentSummary first = run_experiment(cfg);
    CHECK(first.executed == 8); // 2 variants x 2 digits x 2 runs
    CHECK(first.skipped == 0);
    CHECK(first.failed == 0);

    const auto results = load_results(cfg.out_dir);
    REQUIRE(results.size() == 8);
    for (const auto& r : results) {
        CHECK(r.seed == derive_seed(cfg.base_seed, r.variant, r.digit, r.run_index));
        CHECK(r.config_hash == config_hash(cfg));
        CHECK(!r.front.empty());
        for (const auto& p : r.front) {
            CHECK(p[0] >= 0.0);
            CHECK(p[0] <= 1.0);
            CHECK(p[1] >= 0.0);
            CHECK(p[1] <= 1.0);
        }
    }

    // Re-running skips every cell.
    const ExperimentSummary second = run_experiment(cfg);
    CHECK(second.executed == 0);
    CHECK(second.skipped == 8);

    // Deleting one record and marking another as failed triggers a retry of
    // exactly those two cells.
    const std::string results_path = (fs::path(cfg.out_dir) / "results.jsonl").string();
    std::vector<std::string> lines;
    {
        std::ifstream in(results_path);
        std::string line;
        while (std::getline(in, line))
            if (!line.empty()) lines.push_back(line);
    }
    REQUIRE(lines.size() == 8);
    {
        std::ofstream out(results_path, std::ios::trunc);
        for (std::size_t i = 0; i < lines.size(); ++i) {
            if (i == 3) continue; // dropped: must be recomputed
            if (i == 5) {
                auto j = nlohmann::json::parse(lines[i]);
                nlohmann::json err;
                err["schema"] = kResultSchemaVersion;
                err["variant"] = j["variant"];
                err["digit"] = j["digit"];
                err["run"] = j["run"];
                err["error"] = "engine exploded";
                out << err.dump() << "\n";
                continue;
            }
            out << lines[i] << "\n";
        }
    }
    const ExperimentSummary resumed = run_experiment(cfg);
    CHECK(resumed.executed == 2);
    CHECK(resumed.skipped == 6);
    CHECK(resumed.failed == 0);

    // Resumed cells reproduce the original results bit for bit.
    const auto all = load_results(cfg.out_dir);
    REQUIRE(all.size() == 8); // 6 kept + 2 recomputed; the error record is skipped
    for (const auto& r : all)
        CHECK(r.seed == derive_seed(cfg.base_seed, r.variant, r.digit, r.run_index));
    const RunResult dropped = result_from_json(lines[3]);
    int matches = 0;
    for (const auto& r : all)
        if (r.variant == dropped.variant && r.digit == dropped.digit &&
            r.run_index == dropped.run_index) {
            ++matches;
            CHECK(r.front == dropped.front);
            CHECK(r.ep == dropped.ep);
        }
    CHECK(matches == 1);

    // Report: one row per (variant, digit); baseline rows have p = 1.
    const auto rows = build_report(load_results(cfg.out_dir), "moead-tch");
    REQUIRE(rows.size() == 4);
    for (const auto& row : rows) {
        CHECK(row.runs == 2);
        CHECK(row.po_hv >= row.mean_hv - 1e-12);
        if (row.variant == "moead-tch") {
            CHECK(row.p_vs_baseline == 1.0);
            CHECK(row.marker == ' ');
        }
    }
    std::ostringstream report_text;
    write_report(rows, cfg.out_dir, report_text);
    CHECK(report_text.str().find("nsga2") != std::string::npos);
    std::ifstream csv(fs::path(cfg.out_dir) / "report.csv");
    REQUIRE(csv.good());
    std::string line;
    int csv_lines = 0;
    while (std::getline(csv, line))
        if (!line.empty()) ++csv_lines;
    CHECK(csv_lines == 5); // header + 4 rows

    // Payoff table covers both variants with a zero diagonal.
    const auto payoff = build_payoff(load_results(cfg.out_dir));
    REQUIRE(payoff.strategies == std::vector<std::string>{"moead-tch", "nsga2"});
    CHECK(payoff.wins[0][0] == 0);
    CHECK(payoff.wins[1][1] == 0);
    std::ostringstream payoff_text;
    write_payoff(payoff, payoff_text);
    CHECK(payoff_text.str().find("nsga2") != std::string::npos);

    // Plots: the per-variant CSV reproduces the accumulated PO front.
    const auto written = plot_fronts(cfg.out_dir, 0);
    REQUIRE(written.size() == 3); // two CSVs + one SVG
    std::vector<std::vector<FrontPoint>> fronts;
    for (const auto& r : load_results(cfg.out_dir))
        if (r.variant == "nsga2" && r.digit == 0) fronts.push_back(front_points(r));
    auto expected = accumulated_po_front(fronts);
    std::sort(expected.begin(), expected.end(),
              [](const FrontPoint& a, const FrontPoint& b) { return a.tpr > b.tpr; });
    std::ifstream front_csv(fs::path(cfg.out_dir) / "front_d0_nsga2.csv");
    REQUIRE(front_csv.good());
    std::getline(front_csv, line);
    CHECK(line == "tpr,tnr");
    std::vector<std::array<double, 2>> parsed;
    while (std::getline(front_csv, line)) {
        if (line.empty()) continue;
        const auto comma = line.find(',');
        parsed.push_back({std::stod(line.substr(0, comma)), std::stod(line.substr(comma + 1))});
    }
    REQUIRE(parsed.size() == expected.size());
    for (std::size_t i = 0; i < parsed.size(); ++i) {
        CHECK(parsed[i][0] == expected[i].tpr);
        CHECK(parsed[i][1] == expected[i].tnr);
    }
}

TEST_CASE("run_experiment without a data source fails up front") {
    TempDir tmp;
    ExperimentConfig cfg =
        parse_config_text("population = 10\nneighborhood = 4\nruns = 1\ndigits = 0\n");
    cfg.out_dir = tmp.file("results");
    cfg.variants = {"nsga2"};
    CHECK_THROWS_AS(run_experiment(cfg), ConfigError);
}
