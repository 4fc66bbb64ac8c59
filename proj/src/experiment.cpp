#include "semgp/experiment.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <tuple>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <map>
#include <mutex>
#include <sstream>
#include <thread>

#include <json.hpp>

#include "semgp/data_ingest.hpp"
#include "semgp/errors.hpp"
#include "semgp/moead.hpp"
#include "semgp/pareto.hpp"
#include "semgp/rng.hpp"

namespace semgp {

using nlohmann::json;
namespace fs = std::filesystem;

std::uint64_t derive_seed(std::uint64_t base_seed, const std::string& variant, int digit,
                          int run_index) {
    return base_seed ^ fnv1a(result_key(variant, digit, run_index));
}

std::string result_key(const std::string& variant, int digit, int run_index) {
    return variant + "|" + std::to_string(digit) + "|" + std::to_string(run_index);
}

std::string result_to_json(const RunResult& r) {
    json j;
    j["schema"] = kResultSchemaVersion;
    j["variant"] = r.variant;
    j["digit"] = r.digit;
    j["run"] = r.run_index;
    j["seed"] = r.seed;
    j["config_hash"] = r.config_hash;
    j["wall_ms"] = r.wall_ms;
    j["front"] = r.front;
    j["ep"] = r.ep;
    json log = json::array();
    for (const auto& g : r.gen_log)
        log.push_back({{"ideal", g.ideal}, {"ep_size", g.ep_size}, {"best", g.best}});
    j["gen_log"] = std::move(log);
    return j.dump();
}

RunResult result_from_json(const std::string& line) {
    const json j = json::parse(line);
    if (j.at("schema").get<int>() != kResultSchemaVersion)
        throw DataError("unsupported result schema version " +
                        std::to_string(j.at("schema").get<int>()));
    RunResult r;
    r.variant = j.at("variant").get<std::string>();
    r.digit = j.at("digit").get<int>();
    r.run_index = j.at("run").get<int>();
    r.seed = j.at("seed").get<std::uint64_t>();
    r.config_hash = j.at("config_hash").get<std::uint64_t>();
    r.wall_ms = j.at("wall_ms").get<double>();
    r.front = j.at("front").get<std::vector<std::array<double, 2>>>();
    r.ep = j.at("ep").get<std::vector<std::array<double, 2>>>();
    for (const auto& g : j.at("gen_log")) {
        GenerationLog gl;
        gl.ideal = g.at("ideal").get<std::array<double, 2>>();
        gl.ep_size = g.at("ep_size").get<std::size_t>();
        gl.best = g.at("best").get<std::array<double, 2>>();
        r.gen_log.push_back(gl);
    }
    return r;
}

namespace {

// Stratified seeded 50/50 split for the CSV path (the IDX path splits
// inside build_binary_task).
std::pair<LabeledDataset, LabeledDataset> split_csv_dataset(const LabeledDataset& full,
                                                            std::uint64_t seed) {
    Rng rng(seed);
    std::vector<std::size_t> pos, neg;
    for (std::size_t i = 0; i < full.size(); ++i)
        (full.labels[i] == 1 ? pos : neg).push_back(i);
    auto shuffle = [&](std::vector<std::size_t>& v) {
        for (std::size_t i = v.size(); i > 1; --i) std::swap(v[i - 1], v[rng.below(i)]);
    };
    shuffle(pos);
    shuffle(neg);
    auto build = [&](bool first_half) {
        std::vector<std::size_t> idx;
        auto take = [&](const std::vector<std::size_t>& src) {
            const std::size_t half = src.size() / 2;
            if (first_half)
                idx.insert(idx.end(), src.begin(), src.begin() + static_cast<std::ptrdiff_t>(half));
            else
                idx.insert(idx.end(), src.begin() + static_cast<std::ptrdiff_t>(half), src.end());
        };
        take(pos);
        take(neg);
        LabeledDataset ds;
        ds.features = Matrix(idx.size(), full.features.cols);
        ds.labels.resize(idx.size());
        for (std::size_t i = 0; i < idx.size(); ++i) {
            std::copy(full.features.row(idx[i]), full.features.row(idx[i]) + full.features.cols,
                      ds.features.data.begin() + static_cast<std::ptrdiff_t>(i * ds.features.cols));
            ds.labels[i] = full.labels[idx[i]];
        }
        return ds;
    };
    return {build(true), build(false)};
}

} // namespace

std::pair<LabeledDataset, LabeledDataset> load_task(const ExperimentConfig& cfg, int digit) {
    if (!cfg.csv_path.empty()) {
        const LabeledDataset full = load_csv(cfg.csv_path, cfg.csv_label_column);
        return split_csv_dataset(full, cfg.base_seed ^ fnv1a("csv-split"));
    }
    RawImageSet raw;
    std::size_t per_digit = cfg.per_digit;
    if (cfg.synth_per_digit > 0) {
        raw = synth_image_set(cfg.synth_per_digit, cfg.base_seed ^ fnv1a("synth"));
        per_digit = cfg.synth_per_digit;
    } else if (!cfg.images_path.empty()) {
        raw = parse_idx(cfg.images_path, cfg.labels_path);
    } else {
        throw ConfigError("no data source configured (csv, images/labels, or synth_per_digit)");
    }
    Matrix features;
    if (!cfg.feature_cache.empty() && fs::exists(cfg.feature_cache)) {
        features = read_feature_cache(cfg.feature_cache);
        if (features.rows != raw.count)
            throw DataError(cfg.feature_cache + ": cached row count " +
                            std::to_string(features.rows) + " does not match image count " +
                            std::to_string(raw.count));
    } else {
        features = extract_features(raw);
        if (!cfg.feature_cache.empty()) write_feature_cache(features, cfg.feature_cache);
    }
    return build_binary_task(raw, features, digit, per_digit,
                             cfg.base_seed ^ fnv1a("split|" + std::to_string(digit)));
}

RunResult run_single(const ExperimentConfig& cfg, const std::string& variant,
                     const LabeledDataset& train, const LabeledDataset& test, int digit,
                     int run_index) {
    const std::uint64_t seed = derive_seed(cfg.base_seed, variant, digit, run_index);
    RunResult r;
    if (variant == "moead-tch")
        r = run_moead(cfg.engine, train, test, MoeadVariant::Canonical, seed);
    else if (variant == "moead-tch-ssc")
        r = run_moead(cfg.engine, train, test, MoeadVariant::Ssc, seed);
    else if (variant == "nsga2")
        r = run_nsga2(cfg.engine, train, test, seed);
    else if (variant == "spea2")
        r = run_spea2(cfg.engine, train, test, seed);
    else
        throw ConfigError("unknown variant '" + variant + "'");
    r.digit = digit;
    r.run_index = run_index;
    r.config_hash = config_hash(cfg);
    return r;
}

namespace {

std::vector<std::string> existing_keys(const std::string& results_path) {
    std::vector<std::string> keys;
    std::ifstream in(results_path);
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        try {
            const json j = json::parse(line);
            if (j.contains("error")) continue; // failed cells are retried
            keys.push_back(result_key(j.at("variant").get<std::string>(), j.at("digit").get<int>(),
                                      j.at("run").get<int>()));
        } catch (const std::exception&) {
            // Malformed line: ignore, the cell will be recomputed.
        }
    }
    return keys;
}

struct Cell {
    std::string variant;
    int digit;
    int run;
};

} // namespace

ExperimentSummary run_experiment(const ExperimentConfig& cfg) {
    validate_config(cfg);
    fs::create_directories(cfg.out_dir);
    const std::string results_path = (fs::path(cfg.out_dir) / "results.jsonl").string();
    const auto done = existing_keys(results_path);

    ExperimentSummary summary;
    std::vector<Cell> pending;
    for (const auto& variant : cfg.variants)
        for (int digit : cfg.digits)
            for (int run = 0; run < cfg.runs; ++run) {
                if (std::find(done.begin(), done.end(), result_key(variant, digit, run)) !=
                    done.end()) {
                    ++summary.skipped;
                    continue;
                }
                pending.push_back({variant, digit, run});
            }
    if (pending.empty()) return summary;

    // Tasks are shared read-only across workers; load each digit once.
    std::map<int, std::pair<LabeledDataset, LabeledDataset>> tasks;
    for (int digit : cfg.digits)
        if (!tasks.count(digit)) tasks.emplace(digit, load_task(cfg, digit));

    int workers = cfg.workers;
    if (const char* env = std::getenv("SEMGP_WORKERS")) workers = std::max(1, std::atoi(env));
    workers = std::min<int>(workers, static_cast<int>(pending.size()));

    std::ofstream out(results_path, std::ios::app);
    if (!out) throw DataError(results_path + ": cannot open for append");
    std::mutex out_mutex;
    std::atomic<std::size_t> next{0};
    std::atomic<int> executed{0}, failed{0};

    auto worker = [&] {
        for (;;) {
            const std::size_t i = next.fetch_add(1);
            if (i >= pending.size()) return;
            const Cell& cell = pending[i];
            const auto& [train, test] = tasks.at(cell.digit);
            std::string line;
            try {
                const RunResult r = run_single(cfg, cell.variant, train, test, cell.digit, cell.run);
                line = result_to_json(r);
                ++executed;
            } catch (const std::exception& ex) {
                json j;
                j["schema"] = kResultSchemaVersion;
                j["variant"] = cell.variant;
                j["digit"] = cell.digit;
                j["run"] = cell.run;
                j["error"] = ex.what();
                line = j.dump();
                ++failed;
            }
            std::lock_guard<std::mutex> lock(out_mutex);
            out << line << "\n";
            out.flush();
        }
    };

    if (workers <= 1) {
        worker();
    } else {
        std::vector<std::thread> threads;
        for (int w = 0; w < workers; ++w) threads.emplace_back(worker);
        for (auto& t : threads) t.join();
    }
    summary.executed = executed;
    summary.failed = failed;
    return summary;
}

std::vector<RunResult> load_results(const std::string& results_dir) {
    const std::string path = (fs::path(results_dir) / "results.jsonl").string();
    std::ifstream in(path);
    if (!in) throw DataError(path + ": cannot open results file");
    std::vector<RunResult> results;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        const json j = json::parse(line);
        if (j.contains("error")) continue;
        results.push_back(result_from_json(line));
    }
    return results;
}

std::vector<FrontPoint> front_points(const RunResult& r) {
    std::vector<FrontPoint> pts;
    pts.reserve(r.front.size());
    for (std::size_t i = 0; i < r.front.size(); ++i)
        pts.push_back({r.front[i][0], r.front[i][1], r.run_index, static_cast<int>(i)});
    return pts;
}

namespace {

struct CellStats {
    std::vector<double> hvs;                   // ordered by run index
    std::vector<std::vector<FrontPoint>> fronts;
};

std::map<std::string, std::map<int, CellStats>> group_results(
    const std::vector<RunResult>& results) {
    std::vector<RunResult> sorted = results;
    std::stable_sort(sorted.begin(), sorted.end(), [](const RunResult& a, const RunResult& b) {
        return std::tie(a.variant, a.digit, a.run_index) <
               std::tie(b.variant, b.digit, b.run_index);
    });
    std::map<std::string, std::map<int, CellStats>> grouped;
    for (const auto& r : sorted) {
        CellStats& c = grouped[r.variant][r.digit];
        c.fronts.push_back(front_points(r));
        c.hvs.push_back(hypervolume_2d(c.fronts.back()));
    }
    return grouped;
}

double sample_std(const std::vector<double>& v, double mean) {
    if (v.size() < 2) return 0.0;
    double s = 0.0;
    for (double x : v) s += (x - mean) * (x - mean);
    return std::sqrt(s / static_cast<double>(v.size() - 1));
}

double mean_of(const std::vector<double>& v) {
    double s = 0.0;
    for (double x : v) s += x;
    return v.empty() ? 0.0 : s / static_cast<double>(v.size());
}

} // namespace

std::vector<ReportRow> build_report(const std::vector<RunResult>& results,
                                    const std::string& baseline_variant, double alpha) {
    const auto grouped = group_results(results);
    std::vector<ReportRow> rows;
    for (const auto& [variant, digits] : grouped) {
        for (const auto& [digit, stats] : digits) {
            ReportRow row;
            row.variant = variant;
            row.digit = digit;
            row.runs = static_cast<int>(stats.hvs.size());
            row.mean_hv = mean_of(stats.hvs);
            row.std_hv = sample_std(stats.hvs, row.mean_hv);
            row.po_hv = hypervolume_2d(accumulated_po_front(stats.fronts));
            if (variant != baseline_variant && grouped.count(baseline_variant) &&
                grouped.at(baseline_variant).count(digit)) {
                const auto& base = grouped.at(baseline_variant).at(digit);
                row.p_vs_baseline = wilcoxon_rank_sum(base.hvs, stats.hvs).p_value;
                if (row.p_vs_baseline < alpha)
                    row.marker = row.mean_hv > mean_of(base.hvs) ? '+' : '-';
            }
            rows.push_back(row);
        }
    }
    return rows;
}

void write_report(const std::vector<ReportRow>& rows, const std::string& results_dir,
                  std::ostream& text_out) {
    text_out << std::left << std::setw(16) << "variant" << std::setw(7) << "digit" << std::setw(6)
             << "runs" << std::setw(22) << "hypervolume" << std::setw(10) << "po_front"
             << std::setw(12) << "p_vs_base" << "sig\n";
    std::ofstream csv(fs::path(results_dir) / "report.csv");
    csv << "variant,digit,runs,mean_hv,std_hv,po_hv,p_vs_baseline,marker\n";
    for (const auto& r : rows) {
        std::ostringstream hv;
        hv << std::fixed << std::setprecision(3) << r.mean_hv << " +/- " << r.std_hv;
        text_out << std::left << std::setw(16) << r.variant << std::setw(7) << r.digit
                 << std::setw(6) << r.runs << std::setw(22) << hv.str() << std::setw(10)
                 << std::fixed << std::setprecision(3) << r.po_hv << std::setw(12)
                 << std::setprecision(5) << r.p_vs_baseline << r.marker << "\n";
        csv << r.variant << ',' << r.digit << ',' << r.runs << ',' << std::setprecision(17)
            << r.mean_hv << ',' << r.std_hv << ',' << r.po_hv << ',' << r.p_vs_baseline << ','
            << r.marker << "\n";
    }
}

PayoffTable build_payoff(const std::vector<RunResult>& results, double alpha) {
    const auto grouped = group_results(results);
    HypervolumeSamples samples;
    for (const auto& [variant, digits] : grouped)
        for (const auto& [digit, stats] : digits) samples[variant][digit] = stats.hvs;
    return payoff_table(samples, alpha);
}

void write_payoff(const PayoffTable& table, std::ostream& out) {
    out << std::left << std::setw(16) << "";
    for (const auto& s : table.strategies) out << std::setw(16) << s;
    out << "\n";
    for (std::size_t row = 0; row < table.strategies.size(); ++row) {
        out << std::left << std::setw(16) << table.strategies[row];
        for (std::size_t col = 0; col < table.strategies.size(); ++col) {
            if (row == col)
                out << std::setw(16) << "-";
            else
                out << std::setw(16) << table.wins[row][col];
        }
        out << "\n";
    }
}

namespace {

std::string svg_staircase(const std::vector<FrontPoint>& front, const std::string& color) {
    // Staircase polyline from (0, max tnr) down to (max tpr, 0) in a unit
    // viewport mapped to 400x400 with a 50px margin.
    auto mx = [](double v) { return 50.0 + v * 400.0; };
    auto my = [](double v) { return 450.0 - v * 400.0; };
    std::vector<FrontPoint> pts = front;
    std::sort(pts.begin(), pts.end(),
              [](const FrontPoint& a, const FrontPoint& b) { return a.tpr < b.tpr; });
    std::ostringstream s;
    s << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"2\" points=\"";
    double prev_tnr = pts.empty() ? 0.0 : pts.front().tnr;
    for (std::size_t i = 0; i < pts.size(); ++i) {
        if (i > 0) s << mx(pts[i].tpr) << "," << my(prev_tnr) << " ";
        s << mx(pts[i].tpr) << "," << my(pts[i].tnr) << " ";
        prev_tnr = pts[i].tnr;
    }
    s << "\"/>\n";
    for (const auto& p : pts)
        s << "<circle cx=\"" << mx(p.tpr) << "\" cy=\"" << my(p.tnr)
          << "\" r=\"3\" fill=\"" << color << "\"/>\n";
    return s.str();
}

} // namespace

std::vector<std::string> plot_fronts(const std::string& results_dir, int digit) {
    const auto results = load_results(results_dir);
    const auto grouped = group_results(results);
    static const std::map<std::string, std::string> colors = {
        {"moead-tch", "#d62728"},
        {"moead-tch-ssc", "#2ca02c"},
        {"nsga2", "#1f77b4"},
        {"spea2", "#9467bd"},
    };

    std::vector<std::string> written;
    std::ostringstream body;
    for (const auto& [variant, color] : colors) {
        auto vit = grouped.find(variant);
        if (vit == grouped.end() || !vit->second.count(digit)) continue;
        const auto front = accumulated_po_front(vit->second.at(digit).fronts);
        // CSV of the exact accumulated PO front points.
        const std::string csv_path =
            (fs::path(results_dir) / ("front_d" + std::to_string(digit) + "_" + variant + ".csv"))
                .string();
        std::ofstream csv(csv_path);
        csv << "tpr,tnr\n" << std::setprecision(17);
        std::vector<FrontPoint> sorted = front;
        std::sort(sorted.begin(), sorted.end(),
                  [](const FrontPoint& a, const FrontPoint& b) { return a.tpr > b.tpr; });
        for (const auto& p : sorted) csv << p.tpr << ',' << p.tnr << "\n";
        written.push_back(csv_path);
        body << svg_staircase(front, color);
        body << "<text x=\"60\" y=\"" << 20 + 15 * (written.size()) << "\" fill=\"" << color
             << "\" font-size=\"12\">" << variant << "</text>\n";
    }
    if (written.empty())
        std::cerr << "warning: no fronts found for digit " << digit << "\n";

    const std::string svg_path =
        (fs::path(results_dir) / ("front_d" + std::to_string(digit) + ".svg")).string();
    std::ofstream svg(svg_path);
    svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"500\" height=\"500\" "
           "viewBox=\"0 0 500 500\">\n"
        << "<rect width=\"500\" height=\"500\" fill=\"white\"/>\n"
        << "<line x1=\"50\" y1=\"450\" x2=\"450\" y2=\"450\" stroke=\"black\"/>\n"
        << "<line x1=\"50\" y1=\"50\" x2=\"50\" y2=\"450\" stroke=\"black\"/>\n"
        << "<text x=\"240\" y=\"480\" font-size=\"14\">TPR</text>\n"
        << "<text x=\"15\" y=\"250\" font-size=\"14\" transform=\"rotate(-90 20 250)\">TNR</text>\n"
        << body.str() << "</svg>\n";
    written.push_back(svg_path);
    return written;
}

} // namespace semgp
