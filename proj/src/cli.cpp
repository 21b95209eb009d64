#include "dpkm/cli.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>

#include "CLI11.hpp"
#include "dpkm/benchmark.hpp"
#include "dpkm/error.hpp"
#include "dpkm/json_io.hpp"
#include "dpkm/pipeline.hpp"
#include "dpkm/serve.hpp"
#include "dpkm/synthetic.hpp"

namespace dpkm {

namespace {

struct DataArgs {
    std::string csv;
    std::string label_col;
    bool no_labels = false;
    std::vector<std::string> exclude;
    char delimiter = ',';
    std::string normalize = "none";
    std::string config;
};

struct DensityArgs {
    double t = default_neighbor_fraction;
    std::string kernel = "gaussian";
};

struct ImprovedArgs {
    double q = KernelSpec::default_q;
    std::string mode = "iterate";
    std::string distance = "feature";
    std::size_t max_iter = 300;
    double tol = 1e-6;
};

// Options whose values may come from the config file when not given on the
// command line.
struct Tracked {
    CLI::Option* t = nullptr;
    CLI::Option* kernel = nullptr;
    CLI::Option* q = nullptr;
    CLI::Option* normalize = nullptr;
};

void add_data_options(CLI::App* cmd, DataArgs& a, Tracked& tracked) {
    cmd->add_option("csv", a.csv, "Input CSV file")->required();
    cmd->add_option("--label-col", a.label_col, "Label column name or 0-based index (default: last column)");
    cmd->add_flag("--no-labels", a.no_labels, "Treat every column as a feature");
    cmd->add_option("--exclude-cols", a.exclude, "Columns (names or 0-based indices) to drop")->delimiter(',');
    cmd->add_option("--delimiter", a.delimiter, "Field delimiter");
    tracked.normalize = cmd->add_option("--normalize", a.normalize, "none | minmax | zscore")
                            ->check(CLI::IsMember({"none", "minmax", "zscore", "min_max", "z_score"}));
    cmd->add_option("--config", a.config, "JSON file of per-dataset defaults (t, q, kernel, normalize)");
}

void add_density_options(CLI::App* cmd, DensityArgs& a, Tracked& tracked) {
    tracked.t = cmd->add_option("--t", a.t, "Neighbor fraction for the truncation distance");
    tracked.kernel =
        cmd->add_option("--kernel", a.kernel, "Local density kernel")->check(CLI::IsMember({"gaussian", "cutoff"}));
}

void add_improved_options(CLI::App* cmd, ImprovedArgs& a, Tracked& tracked) {
    tracked.q = cmd->add_option("--q", a.q, "Kernel exponent q in (0, 2]")
                    ->check(CLI::Validator(
                        [](std::string& v) -> std::string {
                            double q = 0.0;
                            const auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), q);
                            const bool ok = ec == std::errc{} && ptr == v.data() + v.size() && q > 0.0 && q <= 2.0;
                            return ok ? "" : "q must be a number in (0, 2]";
                        },
                        "(0, 2]"));
    cmd->add_option("--mode", a.mode, "iterate | single-pass")
        ->check(CLI::IsMember({"iterate", "single-pass", "single_pass"}));
    cmd->add_option("--distance", a.distance, "feature (kernel feature space) | point (||x - c||^q)")
        ->check(CLI::IsMember({"feature", "point"}));
    cmd->add_option("--max-iter", a.max_iter, "Iteration cap")->check(CLI::PositiveNumber);
    cmd->add_option("--tol", a.tol, "Centroid-shift tolerance")->check(CLI::NonNegativeNumber);
}

ColumnRef column_ref(const std::string& s) {
    if (!s.empty() && std::all_of(s.begin(), s.end(), [](unsigned char c) { return std::isdigit(c); })) {
        return static_cast<std::size_t>(std::stoull(s));
    }
    return s;
}

json read_json(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw DataError("cannot open config " + path);
    try {
        return json::parse(in);
    } catch (const json::exception& e) {
        throw DataError("config " + path + ": " + e.what());
    }
}

// Config values fill options that were not given explicitly.
void apply_config(const DataArgs& data, const Tracked& tracked, DensityArgs* density, ImprovedArgs* improved,
                  std::string& normalize) {
    if (data.config.empty()) return;
    const auto cfg = read_json(data.config);
    const auto name = std::filesystem::path(data.csv).stem().string();
    json entry = cfg.contains("default") ? cfg["default"] : json::object();
    if (cfg.contains(name)) entry.update(cfg[name]);
    try {
        if (density && entry.contains("t") && tracked.t && tracked.t->count() == 0) density->t = entry["t"].get<double>();
        if (density && entry.contains("kernel") && tracked.kernel && tracked.kernel->count() == 0)
            density->kernel = entry["kernel"].get<std::string>();
        if (improved && entry.contains("q") && tracked.q && tracked.q->count() == 0) improved->q = entry["q"].get<double>();
        if (entry.contains("normalize") && tracked.normalize && tracked.normalize->count() == 0)
            normalize = entry["normalize"].get<std::string>();
    } catch (const json::exception& e) {
        throw DataError("config " + data.config + ": " + e.what());
    }
}

Dataset load(const DataArgs& a, const std::string& normalize) {
    CsvOptions opts;
    opts.delimiter = a.delimiter;
    if (!a.no_labels) {
        if (a.label_col.empty()) {
            opts.last_column_is_label = true;
        } else {
            opts.label_column = column_ref(a.label_col);
        }
    }
    for (const auto& c : a.exclude) opts.exclude_columns.push_back(column_ref(c));
    return dpkm::normalize(load_csv(a.csv, opts), parse_normalization(normalize));
}

ImprovedOptions improved_options(const ImprovedArgs& a) {
    ImprovedOptions o;
    o.kernel = KernelSpec(a.q);
    o.mode = parse_improved_mode(a.mode);
    o.distance = parse_kernel_distance_mode(a.distance);
    o.max_iter = a.max_iter;
    o.tol = a.tol;
    return o;
}

PipelineConfig pipeline_config(const DensityArgs& d, const ImprovedArgs& i) {
    PipelineConfig c;
    c.t = d.t;
    c.density_kernel = parse_density_kernel(d.kernel);
    c.improved = improved_options(i);
    return c;
}

void write_output(std::ostream& out, const std::string& path, const std::string& text) {
    if (path.empty()) {
        out << text;
        return;
    }
    std::ofstream f(path, std::ios::binary);
    if (!f) throw DataError("cannot write " + path);
    f << text;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Density-peak initialized K-means with conditionally positive definite kernel distances", "dpkm"};
    app.require_subcommand(1);

    // density
    DataArgs density_data;
    DensityArgs density_args;
    Tracked density_tracked;
    std::string density_format = "json";
    std::string density_output;
    auto* density = app.add_subcommand("density", "Export the decision-graph profile (rho, delta, gamma)");
    add_data_options(density, density_data, density_tracked);
    add_density_options(density, density_args, density_tracked);
    density->add_option("--out", density_format, "json | decision-graph")
        ->check(CLI::IsMember({"json", "decision-graph"}));
    density->add_option("--output", density_output, "Write to this file instead of standard output");

    // cluster
    DataArgs cluster_data;
    DensityArgs cluster_density;
    ImprovedArgs cluster_improved;
    Tracked cluster_tracked;
    std::optional<std::size_t> cluster_k;
    bool auto_k = false;
    std::optional<std::size_t> max_k;
    std::uint64_t seed = 0;
    std::string algorithm = "improved";
    std::optional<double> rect_rho, rect_delta;
    bool cluster_no_timing = false;
    auto* cluster = app.add_subcommand("cluster", "Cluster a dataset and emit the result as JSON");
    add_data_options(cluster, cluster_data, cluster_tracked);
    add_density_options(cluster, cluster_density, cluster_tracked);
    add_improved_options(cluster, cluster_improved, cluster_tracked);
    auto* k_opt = cluster->add_option("--k", cluster_k, "Number of clusters")->check(CLI::PositiveNumber);
    auto* auto_opt = cluster->add_flag("--auto-k", auto_k, "Choose k from the largest jump in sorted gamma");
    cluster->add_option("--max-k", max_k, "Upper bound for --auto-k")->check(CLI::PositiveNumber);
    auto* rho_opt = cluster->add_option("--rect-rho-min", rect_rho, "Rectangle selection: rho threshold");
    auto* delta_opt = cluster->add_option("--rect-delta-min", rect_delta, "Rectangle selection: delta threshold");
    rho_opt->needs(delta_opt);
    delta_opt->needs(rho_opt);
    k_opt->excludes(auto_opt);
    k_opt->excludes(rho_opt);
    auto_opt->excludes(rho_opt);
    cluster->add_option("--seed", seed, "Seed for the baseline's random initial centers");
    cluster->add_option("--algorithm", algorithm, "improved | baseline")
        ->check(CLI::IsMember({"improved", "baseline"}));
    cluster->add_flag("--no-timing", cluster_no_timing, "Omit wall-clock fields (byte-stable output)");

    // bench
    DataArgs bench_data;
    DensityArgs bench_density;
    ImprovedArgs bench_improved;
    Tracked bench_tracked;
    std::size_t bench_k = 3;
    std::size_t runs = 20;
    std::uint64_t seed_base = 0;
    bool parallel = false;
    bool bench_no_timing = false;
    std::string bench_format = "both";
    std::string json_out;
    auto* bench = app.add_subcommand("bench", "Seeded baseline runs versus the improved algorithm");
    add_data_options(bench, bench_data, bench_tracked);
    add_density_options(bench, bench_density, bench_tracked);
    add_improved_options(bench, bench_improved, bench_tracked);
    bench->add_option("--k", bench_k, "Number of clusters")->required()->check(CLI::PositiveNumber);
    bench->add_option("--runs", runs, "Baseline runs")->check(CLI::PositiveNumber);
    bench->add_option("--seed-base", seed_base, "Baseline seeds are seed-base, seed-base+1, ...");
    bench->add_flag("--parallel", parallel, "Run baselines concurrently (timings marked unreliable)");
    bench->add_flag("--no-timing", bench_no_timing, "Omit wall-clock fields from the JSON report");
    bench->add_option("--format", bench_format, "json (stdout) | table (stdout) | both (json stdout, table stderr)")
        ->check(CLI::IsMember({"json", "table", "both"}));
    bench->add_option("--json-out", json_out, "Also write the JSON report to this file");

    // serve
    DataArgs serve_data;
    DensityArgs serve_density;
    ImprovedArgs serve_improved;
    Tracked serve_tracked;
    std::string host = "127.0.0.1";
    int port = 8080;
    std::optional<std::size_t> serve_k;
    std::string static_dir;
    auto* serve = app.add_subcommand("serve", "Serve the decision-graph explorer API");
    add_data_options(serve, serve_data, serve_tracked);
    add_density_options(serve, serve_density, serve_tracked);
    add_improved_options(serve, serve_improved, serve_tracked);
    serve->add_option("--host", host, "Bind address");
    serve->add_option("--port", port, "Port (0 = any free port)")->check(CLI::Range(0, 65535));
    serve->add_option("--k", serve_k, "k for the initial clustering (default: gamma jump)")->check(CLI::PositiveNumber);
    serve->add_option("--static-dir", static_dir, "Directory holding the UI bundle")->check(CLI::ExistingDirectory);

    // generate
    std::string shape;
    std::size_t per_group = 100;
    double noise = 0.05;
    std::uint64_t gen_seed = 7;
    auto* generate = app.add_subcommand("generate", "Write a synthetic demo dataset as CSV");
    generate->add_option("shape", shape, "two-blobs | two-arcs | decision-graph")
        ->required()
        ->check(CLI::IsMember({"two-blobs", "two-arcs", "decision-graph"}));
    generate->add_option("--n", per_group, "Points per group")->check(CLI::PositiveNumber);
    generate->add_option("--noise", noise, "Jitter (two-arcs) or blob radius (two-blobs)");
    generate->add_option("--seed", gen_seed, "Generator seed");

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::CallForHelp& e) {
        app.exit(e, out, err);
        return exit_ok;
    } catch (const CLI::CallForAllHelp& e) {
        app.exit(e, out, err);
        return exit_ok;
    } catch (const CLI::ParseError& e) {
        app.exit(e, err, err);
        return exit_usage;
    }

    try {
        if (*density) {
            apply_config(density_data, density_tracked, &density_args, nullptr, density_data.normalize);
            const auto data = load(density_data, density_data.normalize);
            const auto profile = build_profile(pairwise_euclidean(data), density_args.t,
                                               parse_density_kernel(density_args.kernel));
            write_output(out, density_output,
                         density_format == "json" ? profile_to_json(profile).dump(2) + "\n"
                                                  : decision_graph_text(profile));
            return exit_ok;
        }

        if (*cluster) {
            apply_config(cluster_data, cluster_tracked, &cluster_density, &cluster_improved, cluster_data.normalize);
            const auto data = load(cluster_data, cluster_data.normalize);
            json doc{{"dataset", data.name},
                     {"n", data.size()},
                     {"d", data.dims()},
                     {"normalization", to_string(parse_normalization(cluster_data.normalize))}};
            ClusteringResult result;
            if (algorithm == "baseline") {
                if (!cluster_k) throw AlgorithmError("--algorithm baseline needs --k");
                BaselineOptions opts{*cluster_k, seed, cluster_improved.max_iter, cluster_improved.tol};
                result = kmeans_baseline(data.points, opts);
                doc["config"] = {{"algorithm", "baseline"},
                                 {"k", *cluster_k},
                                 {"seed", seed},
                                 {"max_iter", opts.max_iter},
                                 {"tol", opts.tol}};
            } else {
                auto config = pipeline_config(cluster_density, cluster_improved);
                if (rect_rho) {
                    config.centers = CenterRule::rectangle(*rect_rho, *rect_delta);
                } else if (auto_k || !cluster_k) {
                    config.centers = CenterRule::jump(max_k);
                } else {
                    config.centers = CenterRule::top(*cluster_k);
                }
                auto output = run_improved(data, config);
                result = std::move(output.result);
                doc["config"] = config_to_json(config);
                doc["selection"] = selection_to_json(output.centers);
            }
            doc["k"] = result.k();
            doc["accuracy"] = data.labels ? json(accuracy(result.assignment, *data.labels).accuracy) : json(nullptr);
            doc["result"] = result_to_json(result, !cluster_no_timing);
            out << doc.dump(2) << "\n";
            return exit_ok;
        }

        if (*bench) {
            apply_config(bench_data, bench_tracked, &bench_density, &bench_improved, bench_data.normalize);
            const auto data = load(bench_data, bench_data.normalize);
            BenchmarkConfig config;
            config.k = bench_k;
            config.seeds = seed_range(seed_base, runs);
            config.max_iter = bench_improved.max_iter;
            config.tol = bench_improved.tol;
            config.improved = pipeline_config(bench_density, bench_improved);
            config.parallel = parallel;
            auto report = run_benchmark(data, config);
            report.normalization = to_string(parse_normalization(bench_data.normalize));
            const auto report_json = report_to_json(report, !bench_no_timing).dump(2) + "\n";
            if (!json_out.empty()) write_output(out, json_out, report_json);
            if (bench_format == "table") {
                out << format_table(report);
            } else {
                out << report_json;
                if (bench_format == "both") err << format_table(report);
            }
            return exit_ok;
        }

        if (*serve) {
            apply_config(serve_data, serve_tracked, &serve_density, &serve_improved, serve_data.normalize);
            auto data = load(serve_data, serve_data.normalize);
            auto config = pipeline_config(serve_density, serve_improved);
            config.centers = serve_k ? CenterRule::top(*serve_k) : CenterRule::jump();
            const ExplorerService service(std::move(data), config);
            if (!service.has_profile()) err << "warning: " << service.profile_error().value_or("no profile") << "\n";
            ExplorerServer server(service, static_dir.empty() ? std::nullopt
                                                              : std::optional<std::filesystem::path>(static_dir));
            const int bound = server.bind(host, port);
            err << "listening on http://" << host << ":" << bound << "\n";
            err.flush();
            server.listen();
            return exit_ok;
        }

        if (*generate) {
            Dataset d = shape == "two-arcs"    ? synthetic::two_arcs(per_group, noise, gen_seed)
                        : shape == "two-blobs" ? synthetic::two_blobs(per_group, noise, 20.0, gen_seed)
                                               : synthetic::decision_graph_example();
            for (const auto& f : d.feature_names) out << f << ",";
            out << "class\n";
            char cell[64];
            for (std::size_t i = 0; i < d.size(); ++i) {
                for (std::size_t j = 0; j < d.dims(); ++j) {
                    std::snprintf(cell, sizeof cell, "%.17g,", d.points(i, j));
                    out << cell;
                }
                out << (*d.labels)[i] << "\n";
            }
            return exit_ok;
        }
    } catch (const DataError& e) {
        err << "data error: " << e.what() << "\n";
        return exit_data;
    } catch (const AlgorithmError& e) {
        err << "algorithm error: " << e.what() << "\n";
        return exit_algorithm;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return exit_algorithm;
    }
    return exit_usage;
}

}  // namespace dpkm
