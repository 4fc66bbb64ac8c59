#include <filesystem>
#include <iostream>

#include <CLI11.hpp>

#include "semgp/config.hpp"
#include "semgp/data_ingest.hpp"
#include "semgp/errors.hpp"
#include "semgp/experiment.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitConfigError = 1;
constexpr int kExitDataError = 2;
constexpr int kExitPartial = 3;

int cmd_run(const std::string& config_path) {
    const semgp::ExperimentConfig cfg = semgp::load_config(config_path);
    const auto summary = semgp::run_experiment(cfg);
    std::cout << "executed " << summary.executed << ", skipped " << summary.skipped << ", failed "
              << summary.failed << " run cells; results in " << cfg.out_dir << "/results.jsonl\n";
    return summary.failed > 0 ? kExitPartial : kExitOk;
}

int cmd_report(const std::string& results_dir, const std::string& baseline) {
    const auto results = semgp::load_results(results_dir);
    const auto rows = semgp::build_report(results, baseline);
    semgp::write_report(rows, results_dir, std::cout);
    return kExitOk;
}

int cmd_payoff(const std::string& results_dir) {
    const auto results = semgp::load_results(results_dir);
    semgp::write_payoff(semgp::build_payoff(results), std::cout);
    return kExitOk;
}

int cmd_plot(const std::string& results_dir, int digit) {
    for (const auto& path : semgp::plot_fronts(results_dir, digit))
        std::cout << "wrote " << path << "\n";
    return kExitOk;
}

int cmd_features(const std::string& images, const std::string& labels, const std::string& out) {
    const auto raw = semgp::parse_idx(images, labels);
    const auto features = semgp::extract_features(raw);
    semgp::write_feature_cache(features, out);
    std::cout << "wrote " << out << " (" << features.rows << " x " << features.cols << ")\n";
    return kExitOk;
}

int cmd_synth(std::size_t per_digit, std::uint64_t seed, const std::string& out_images,
              const std::string& out_labels) {
    const auto set = semgp::synth_image_set(per_digit, seed);
    semgp::write_idx(set, out_images, out_labels);
    std::cout << "wrote " << set.count << " images to " << out_images << " / " << out_labels
              << "\n";
    return kExitOk;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Multi-objective GP engine (MOEA/D-TCH, SSC, NSGA-II, SPEA2)"};
    app.require_subcommand(1);

    std::string config_path, results_dir = "results", baseline = "moead-tch";
    std::string images, labels, out;
    int digit = 0;
    std::size_t per_digit = 600;
    std::uint64_t seed = 1;

    auto* run = app.add_subcommand("run", "execute all configured experiment cells");
    run->add_option("--config", config_path, "experiment config file")->required();

    auto* report = app.add_subcommand("report", "hypervolume table from persisted results");
    report->add_option("--results", results_dir, "results directory");
    report->add_option("--baseline", baseline, "variant used for significance markers");

    auto* payoff = app.add_subcommand("payoff", "pairwise win-count table");
    payoff->add_option("--results", results_dir, "results directory");

    auto* plot = app.add_subcommand("plot", "accumulated PO front staircase (SVG + CSV)");
    plot->add_option("--results", results_dir, "results directory");
    plot->add_option("--digit", digit, "digit 0..9")->check(CLI::Range(0, 9));

    auto* features = app.add_subcommand("features", "extract box features into a binary cache");
    features->add_option("--images", images, "IDX image file")->required();
    features->add_option("--labels", labels, "IDX label file")->required();
    features->add_option("--out", out, "output cache path")->required();

    auto* synth = app.add_subcommand("synth", "generate a synthetic digit-like IDX dataset");
    synth->add_option("--per-digit", per_digit, "images per digit");
    synth->add_option("--seed", seed, "generator seed");
    synth->add_option("--out-images", images, "output IDX image file")->required();
    synth->add_option("--out-labels", labels, "output IDX label file")->required();

    CLI11_PARSE(app, argc, argv);

    try {
        if (run->parsed()) return cmd_run(config_path);
        if (report->parsed()) return cmd_report(results_dir, baseline);
        if (payoff->parsed()) return cmd_payoff(results_dir);
        if (plot->parsed()) return cmd_plot(results_dir, digit);
        if (features->parsed()) return cmd_features(images, labels, out);
        if (synth->parsed()) return cmd_synth(per_digit, seed, images, labels);
    } catch (const semgp::ConfigError& ex) {
        std::cerr << "config error: " << ex.what() << "\n";
        return kExitConfigError;
    } catch (const semgp::DataError& ex) {
        std::cerr << "data error: " << ex.what() << "\n";
        return kExitDataError;
    } catch (const std::exception& ex) {
        std::cerr << "error: " << ex.what() << "\n";
        return kExitDataError;
    }
    return kExitOk;
}
