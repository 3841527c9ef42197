#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "cqec/baselines.hpp"
#include "cqec/config.hpp"
#include "cqec/csv.hpp"
#include "cqec/ensemble.hpp"
#include "cqec/svg.hpp"
#include "cqec/trajectory.hpp"

namespace fs = std::filesystem;
using ordered_json = nlohmann::ordered_json;
using namespace cqec;

namespace {

struct CommonArgs {
    std::string config_path;
    std::string preset;
    std::string out_dir = ".";
    std::vector<std::string> overrides;
    std::optional<std::uint64_t> seed;
};

void add_common(CLI::App* cmd, CommonArgs& a) {
    auto* cfg = cmd->add_option("--config", a.config_path, "JSON config file");
    cmd->add_option("--preset", a.preset, "named parameter set: fig2, fig3a, fig4ab, fig4cf")
        ->excludes(cfg);
    cmd->add_option("--out", a.out_dir, "output directory")->capture_default_str();
    cmd->add_option("--set", a.overrides, "override a config key, key=value (repeatable)");
    cmd->add_option("--seed", a.seed, "noise seed override");
}

SimConfig resolve_config(const CommonArgs& a) {
    SimConfig cfg;
    if (!a.preset.empty()) cfg = preset_config(a.preset);
    else if (!a.config_path.empty()) cfg = load_config(a.config_path);
    for (const auto& kv : a.overrides) {
        const auto eq = kv.find('=');
        if (eq == std::string::npos)
            throw std::invalid_argument("--set expects key=value, got: " + kv);
        apply_override(cfg, kv.substr(0, eq), kv.substr(eq + 1));
    }
    if (a.seed) cfg.seed = *a.seed;
    cfg.validate();
    return cfg;
}

fs::path prepare_out(const std::string& dir) {
    fs::path p(dir);
    fs::create_directories(p);
    return p;
}

std::string hex_u64(std::uint64_t v) {
    char buf[20];
    std::snprintf(buf, sizeof(buf), "0x%016llx", static_cast<unsigned long long>(v));
    return buf;
}

ordered_json diag_json(const Diagnostics& d) {
    ordered_json j;
    j["max_trace_err"] = d.max_trace_err;
    j["max_herm_err"] = d.max_herm_err;
    j["min_eigenvalue"] = d.min_eigenvalue;
    j["syndrome_lo"] = d.syndrome_lo;
    j["syndrome_hi"] = d.syndrome_hi;
    j["checkpoints"] = d.checkpoints;
    return j;
}

ordered_json config_json(const SimConfig& cfg) { return ordered_json::parse(config_to_json(cfg)); }

void write_json(const fs::path& path, const ordered_json& j) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write file: " + path.string());
    out << j.dump(2) << '\n';
}

int cmd_simulate(const CommonArgs& args) {
    const SimConfig cfg = resolve_config(args);
    RunParams rp = cfg.to_run_params();
    rp.keep_frames = true;
    const auto t0 = std::chrono::steady_clock::now();
    const TrajectoryResult res = run_trajectory(rp);
    const double wall =
        std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();

    const fs::path out = prepare_out(args.out_dir);
    write_trajectory_csv((out / "trajectory.csv").string(), res.frames);

    ordered_json j;
    j["final_fidelity"] = res.final_fidelity;
    j["correction_events"] = res.correction_events;
    j["lambda_on_steps"] = res.lambda_on_steps;
    ordered_json first = ordered_json::array();
    for (double t : res.first_lambda_on)
        first.push_back(std::isnan(t) ? ordered_json(nullptr) : ordered_json(t));
    j["first_lambda_on"] = first;
    j["dw_checksum"] = hex_u64(res.dw_checksum);
    j["rows"] = res.frames.size();
    j["wall_ms"] = wall;
    j["diagnostics"] = diag_json(res.diag);
    j["config"] = config_json(cfg);
    write_json(out / "summary.json", j);

    std::cout << "final F_logical = " << format_number(res.final_fidelity) << ", "
              << res.frames.size() << " rows -> " << (out / "trajectory.csv").string() << "\n";
    return 0;
}

ordered_json ensemble_summary(const SimConfig& cfg, const EnsembleResult& r) {
    ordered_json j;
    j["mean_final_fidelity"] = r.mean_final_fidelity;
    j["final_stderr"] = r.final_std_error;
    j["n_completed"] = r.n_completed;
    j["failed_indices"] = r.failed_indices;
    j["failure_messages"] = r.failure_messages;
    j["wall_ms"] = r.wall_ms;
    j["diagnostics"] = diag_json(r.diag);
    j["config"] = config_json(cfg);
    return j;
}

int cmd_ensemble(const CommonArgs& args) {
    const SimConfig cfg = resolve_config(args);
    const fs::path out = prepare_out(args.out_dir);

    if (cfg.sweep_parameter.empty()) {
        const EnsembleResult r = run_ensemble(cfg.to_ensemble_params());
        write_ensemble_csv((out / "ensemble.csv").string(), r);
        write_json(out / "summary.json", ensemble_summary(cfg, r));
        std::cout << "mean final fidelity = " << format_number(r.mean_final_fidelity) << " +- "
                  << format_number(r.final_std_error) << " (" << r.n_completed << "/"
                  << cfg.n_trajectories << " trajectories) -> "
                  << (out / "ensemble.csv").string() << "\n";
        return 0;
    }

    ordered_json index;
    index["sweep_parameter"] = cfg.sweep_parameter;
    index["points"] = ordered_json::array();
    for (double v : cfg.sweep_values) {
        SimConfig point = cfg;
        point.sweep_parameter.clear();
        point.sweep_values.clear();
        apply_override(point, cfg.sweep_parameter, format_number(v));
        point.validate();
        const EnsembleResult r = run_ensemble(point.to_ensemble_params());
        const std::string name = "ensemble_" + cfg.sweep_parameter + "_" + format_number(v) +
                                 ".csv";
        write_ensemble_csv((out / name).string(), r);
        ordered_json entry;
        entry["value"] = v;
        entry["file"] = name;
        entry["summary"] = ensemble_summary(point, r);
        index["points"].push_back(entry);
        std::cout << cfg.sweep_parameter << " = " << format_number(v)
                  << ": mean final fidelity = " << format_number(r.mean_final_fidelity) << " -> "
                  << name << "\n";
    }
    write_json(out / "sweep_index.json", index);
    return 0;
}

int cmd_replay(const CommonArgs& args, std::string lambdas_arg) {
    SimConfig cfg = resolve_config(args);
    std::vector<double> lam_over_kappa;
    if (!lambdas_arg.empty()) {
        std::istringstream ss(lambdas_arg);
        std::string item;
        while (std::getline(ss, item, ',')) lam_over_kappa.push_back(std::stod(item));
    } else if (cfg.sweep_parameter == "lambda0_over_kappa" && !cfg.sweep_values.empty()) {
        lam_over_kappa = cfg.sweep_values;
    } else {
        lam_over_kappa = {0.75, 1.0, 1.25};
    }
    if (lam_over_kappa.empty()) throw std::invalid_argument("replay needs at least one lambda");

    const fs::path out = prepare_out(args.out_dir);
    ordered_json manifest;
    manifest["seed"] = cfg.seed;
    manifest["lambda_over_kappa"] = lam_over_kappa;
    manifest["files"] = ordered_json::array();
    manifest["dw_checksums"] = ordered_json::array();

    std::vector<std::uint64_t> sums;
    for (double v : lam_over_kappa) {
        SimConfig point = cfg;
        point.sweep_parameter.clear();
        point.sweep_values.clear();
        apply_override(point, "lambda0_over_kappa", format_number(v));
        point.validate();
        RunParams rp = point.to_run_params();
        rp.keep_frames = true;
        const TrajectoryResult res = run_trajectory(rp);
        const std::string name = "replay_lam" + format_number(v) + ".csv";
        write_trajectory_csv((out / name).string(), res.frames);
        manifest["files"].push_back(name);
        manifest["dw_checksums"].push_back(hex_u64(res.dw_checksum));
        sums.push_back(res.dw_checksum);
        std::cout << "lambda/kappa = " << format_number(v)
                  << ": final F_logical = " << format_number(res.final_fidelity) << " -> " << name
                  << "\n";
    }
    bool identical = true;
    for (std::uint64_t s : sums) identical = identical && s == sums[0];
    manifest["identical"] = identical;
    write_json(out / "replay_manifest.json", manifest);
    if (!identical) {
        std::cerr << "error: dW checksums differ between replays; the noise stream is not "
                     "deterministic\n";
        return 1;
    }
    std::cout << "dW checksum " << hex_u64(sums[0]) << " identical across " << sums.size()
              << " replays\n";
    return 0;
}

int cmd_baseline(const CommonArgs& args, double gamma, double t_max, int points) {
    const fs::path out = prepare_out(args.out_dir);
    write_baseline_csv((out / "baseline.csv").string(), gamma, t_max, points);
    std::cout << points << " grid points -> " << (out / "baseline.csv").string() << "\n";
    return 0;
}

int cmd_plot(const std::vector<std::string>& inputs, const std::string& out_file,
             const std::string& x_col, const std::string& band_col, const std::string& title,
             const std::string& y_label) {
    std::vector<PlotSeries> series;
    for (const auto& input : inputs) {
        std::string path = input;
        std::string ycol;
        const auto colon = input.rfind(':');
        if (colon != std::string::npos && colon > 1) {  // leave windows drive letters alone
            path = input.substr(0, colon);
            ycol = input.substr(colon + 1);
        }
        const CsvTable table = read_csv(path);
        if (table.columns.size() < 2) throw std::runtime_error("CSV has no data column: " + path);
        if (ycol.empty()) ycol = table.columns[1] == x_col ? table.columns[0] : table.columns[1];
        PlotSeries s;
        s.label = fs::path(path).stem().string() + ":" + ycol;
        s.x = table.col(x_col);
        s.y = table.col(ycol);
        if (!band_col.empty() && table.column(band_col) >= 0) {
            const auto err = table.col(band_col);
            s.band_lo.resize(s.y.size());
            s.band_hi.resize(s.y.size());
            for (std::size_t i = 0; i < s.y.size(); ++i) {
                s.band_lo[i] = s.y[i] - err[i];
                s.band_hi[i] = s.y[i] + err[i];
            }
        }
        series.push_back(std::move(s));
    }
    PlotOptions opt;
    opt.title = title;
    opt.x_label = x_col;
    opt.y_label = y_label;
    write_svg(out_file, series, opt);
    std::cout << series.size() << " series -> " << out_file << "\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Continuous feedback error-correction simulator for the three-qubit flip code"};
    app.require_subcommand(1);

    CommonArgs sim_args, ens_args, rep_args, base_args;
    std::string lambdas_arg;
    double base_gamma = 1.0, base_t_max = 4.0;
    int base_points = 201;

    auto* sim = app.add_subcommand("simulate", "run one trajectory, write CSV + summary");
    add_common(sim, sim_args);

    auto* ens = app.add_subcommand("ensemble", "run N trajectories, write mean/stderr CSV");
    add_common(ens, ens_args);

    auto* rep = app.add_subcommand("replay", "re-run one noise stream under several lambdas");
    add_common(rep, rep_args);
    rep->add_option("--lambdas", lambdas_arg, "comma list of lambda/kappa values");

    auto* base = app.add_subcommand("baseline", "write the analytic reference curves");
    add_common(base, base_args);
    base->add_option("--gamma", base_gamma, "flip rate")->capture_default_str();
    base->add_option("--t-max", base_t_max, "grid end time")->capture_default_str();
    base->add_option("--points", base_points, "grid size")->capture_default_str();

    std::vector<std::string> plot_inputs;
    std::string plot_out = "plot.svg", plot_x = "t", plot_band, plot_title, plot_ylabel;
    auto* plot = app.add_subcommand("plot", "render CSV columns to a standalone SVG");
    plot->add_option("inputs", plot_inputs, "CSV inputs, path[:column]")->required();
    plot->add_option("--out", plot_out, "output SVG file")->capture_default_str();
    plot->add_option("--x", plot_x, "x column name")->capture_default_str();
    plot->add_option("--band", plot_band, "stderr column for a shaded band");
    plot->add_option("--title", plot_title, "plot title");
    plot->add_option("--ylabel", plot_ylabel, "y axis label");

    CLI11_PARSE(app, argc, argv);

    try {
        if (sim->parsed()) return cmd_simulate(sim_args);
        if (ens->parsed()) return cmd_ensemble(ens_args);
        if (rep->parsed()) return cmd_replay(rep_args, lambdas_arg);
        if (base->parsed()) return cmd_baseline(base_args, base_gamma, base_t_max, base_points);
        if (plot->parsed())
            return cmd_plot(plot_inputs, plot_out, plot_x, plot_band, plot_title, plot_ylabel);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
