#ifndef SEMGP_EXPERIMENT_HPP
#define SEMGP_EXPERIMENT_HPP

#include <cstdint>
#include <iosfwd>
#include <map>
#include <string>
#include <vector>

#include "semgp/config.hpp"
#include "semgp/engine.hpp"
#include "semgp/metrics.hpp"

namespace semgp {

constexpr int kResultSchemaVersion = 1;

/// Stable per-cell seed: base_seed XOR fnv1a("variant|digit|run").
std::uint64_t derive_seed(std::uint64_t base_seed, const std::string& variant, int digit,
                          int run_index);

std::string result_key(const std::string& variant, int digit, int run_index);

std::string result_to_json(const RunResult& r);
RunResult result_from_json(const std::string& line);

/// One-vs-rest train/test split for `digit` under `cfg`'s data source.
std::pair<LabeledDataset, LabeledDataset> load_task(const ExperimentConfig& cfg, int digit);

/// Runs one (variant, digit, run) cell to completion.
RunResult run_single(const ExperimentConfig& cfg, const std::string& variant,
                     const LabeledDataset& train, const LabeledDataset& test, int digit,
                     int run_index);

struct ExperimentSummary {
    int executed = 0;
    int skipped = 0; // already present in results.jsonl
    int failed = 0;
};

/// Executes every (variant, digit, run) cell, appending line-delimited JSON
/// records to <out_dir>/results.jsonl; cells whose key is already present
/// are skipped (resume). Engine failures are recorded and do not abort.
ExperimentSummary run_experiment(const ExperimentConfig& cfg);

std::vector<RunResult> load_results(const std::string& results_dir);

struct ReportRow {
    std::string variant;
    int digit = 0;
    int runs = 0;
    double mean_hv = 0.0;
    double std_hv = 0.0;
    double po_hv = 0.0;
    double p_vs_baseline = 1.0;
    char marker = ' '; // '+' significantly better than baseline, '-' worse
};

std::vector<ReportRow> build_report(const std::vector<RunResult>& results,
                                    const std::string& baseline_variant, double alpha = 0.05);
void write_report(const std::vector<ReportRow>& rows, const std::string& results_dir,
                  std::ostream& text_out);

PayoffTable build_payoff(const std::vector<RunResult>& results, double alpha = 0.05);
void write_payoff(const PayoffTable& table, std::ostream& out);

/// Accumulated PO front per variant as an SVG staircase plus one CSV of
/// points per variant. Returns the written file paths.
std::vector<std::string> plot_fronts(const std::string& results_dir, int digit);

std::vector<FrontPoint> front_points(const RunResult& r);

} // namespace semgp

#endif
