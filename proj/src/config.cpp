#include "cqec/config.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

#include "json.hpp"

namespace cqec {

namespace {

using ordered_json = nlohmann::ordered_json;

[[noreturn]] void bad_field(const std::string& key, const std::string& why) {
    throw std::invalid_argument("config field '" + key + "': " + why);
}

}  // namespace

void SimConfig::validate() const {
    if (gamma < 0.0) bad_field("gamma", "must be >= 0");
    if (kappa_over_gamma <= 0.0) bad_field("kappa_over_gamma", "must be > 0");
    if (eta <= 0.0 || eta > 1.0) bad_field("eta", "must be in (0, 1]");
    if (lambda0_over_kappa < 0.0) bad_field("lambda0_over_kappa", "must be >= 0");
    if (epsilon <= 0.0) bad_field("epsilon", "must be > 0");
    if (dt_gamma <= 0.0) bad_field("dt_gamma", "must be > 0");
    if (T_gamma <= 0.0) bad_field("T_gamma", "must be > 0");
    if (output_stride < 1) bad_field("output_stride", "must be >= 1");
    if (checkpoint_stride < 0) bad_field("checkpoint_stride", "must be >= 0");
    if (controller != "off" && controller != "mbe_z" && controller != "ahn")
        bad_field("controller", "must be off, mbe_z or ahn");
    if (t_on_gamma < 0.0) bad_field("t_on_gamma", "must be >= 0");
    if (real_initial != "000" && real_initial != "111" && real_initial != "custom")
        bad_field("real_initial", "must be 000, 111 or custom");
    if (flip_qubit < 0 || flip_qubit > 3) bad_field("flip_qubit", "must be 1..3 (0 disables)");
    if (flip_qubit != 0 && (flip_time_gamma < 0.0 || flip_time_gamma > T_gamma))
        bad_field("flip_time_gamma", "must lie within [0, T_gamma]");
    if (n_trajectories < 1) bad_field("n_trajectories", "must be >= 1");
    if (kernel != "auto" && kernel != "generic" && kernel != "scalar" && kernel != "avx2")
        bad_field("kernel", "must be auto, generic, scalar or avx2");
    if (!sweep_parameter.empty()) {
        if (sweep_parameter != "eta" && sweep_parameter != "lambda0_over_kappa" &&
            sweep_parameter != "kappa_over_gamma" && sweep_parameter != "t_on_gamma")
            bad_field("sweep_parameter",
                      "must be eta, lambda0_over_kappa, kappa_over_gamma or t_on_gamma");
        if (sweep_values.empty()) bad_field("sweep_values", "sweep requested with no values");
    }
    try {
        initial_state().validate();
    } catch (const std::exception& e) {
        bad_field("real_initial", e.what());
    }
    to_run_params().validate();
}

LogicalState SimConfig::initial_state() const {
    if (real_initial == "000") return LogicalState{cx{1.0, 0.0}, cx{0.0, 0.0}};
    if (real_initial == "111") return LogicalState{cx{0.0, 0.0}, cx{1.0, 0.0}};
    return LogicalState{cx{alpha_re, alpha_im}, cx{beta_re, beta_im}};
}

RunParams SimConfig::to_run_params() const {
    const double u = unit();
    RunParams p;
    p.gamma = gamma;
    p.kappa = kappa_over_gamma * u;
    p.eta = eta;
    p.dt = dt_gamma / u;
    p.t_final = T_gamma / u;
    p.output_stride = output_stride;
    p.checkpoint_stride = checkpoint_stride;
    p.controller.mode = parse_controller_mode(controller);
    p.controller.lambda0 = lambda0_over_kappa * p.kappa;
    p.controller.epsilon = epsilon;
    p.controller.t_on = t_on_gamma / u;
    p.initial_real = initial_state();
    p.initial_estimator = initial_state();
    p.injection.qubit = flip_qubit;
    p.injection.time = flip_time_gamma / u;
    p.seed = seed;
    p.kernel = parse_kernel_kind(kernel);
    return p;
}

EnsembleParams SimConfig::to_ensemble_params() const {
    EnsembleParams e;
    e.base = to_run_params();
    e.n_trajectories = n_trajectories;
    return e;
}

SimConfig parse_config(const std::string& json_text) {
    SimConfig cfg;
    if (json_text.empty()) return cfg;
    ordered_json j;
    try {
        j = ordered_json::parse(json_text);
    } catch (const std::exception& e) {
        throw std::invalid_argument(std::string("config is not valid JSON: ") + e.what());
    }
    if (!j.is_object()) throw std::invalid_argument("config must be a JSON object");

    for (const auto& [key, value] : j.items()) {
        try {
            if (key == "gamma") cfg.gamma = value.get<double>();
            else if (key == "kappa_over_gamma") cfg.kappa_over_gamma = value.get<double>();
            else if (key == "eta") cfg.eta = value.get<double>();
            else if (key == "lambda0_over_kappa") cfg.lambda0_over_kappa = value.get<double>();
            else if (key == "epsilon") cfg.epsilon = value.get<double>();
            else if (key == "dt_gamma") cfg.dt_gamma = value.get<double>();
            else if (key == "T_gamma") cfg.T_gamma = value.get<double>();
            else if (key == "seed") cfg.seed = value.get<std::uint64_t>();
            else if (key == "output_stride") cfg.output_stride = value.get<int>();
            else if (key == "checkpoint_stride") cfg.checkpoint_stride = value.get<long long>();
            else if (key == "controller") cfg.controller = value.get<std::string>();
            else if (key == "t_on_gamma") cfg.t_on_gamma = value.get<double>();
            else if (key == "real_initial") cfg.real_initial = value.get<std::string>();
            else if (key == "alpha_re") cfg.alpha_re = value.get<double>();
            else if (key == "alpha_im") cfg.alpha_im = value.get<double>();
            else if (key == "beta_re") cfg.beta_re = value.get<double>();
            else if (key == "beta_im") cfg.beta_im = value.get<double>();
            else if (key == "flip_qubit") cfg.flip_qubit = value.get<int>();
            else if (key == "flip_time_gamma") cfg.flip_time_gamma = value.get<double>();
            else if (key == "n_trajectories") cfg.n_trajectories = value.get<int>();
            else if (key == "kernel") cfg.kernel = value.get<std::string>();
            else if (key == "sweep_parameter") cfg.sweep_parameter = value.get<std::string>();
            else if (key == "sweep_values") cfg.sweep_values = value.get<std::vector<double>>();
            else throw std::invalid_argument("unknown key");
        } catch (const std::invalid_argument& e) {
            if (std::string(e.what()) == "unknown key")
                bad_field(key, "not a recognized configuration key");
            throw;
        } catch (const std::exception& e) {
            bad_field(key, std::string("bad value: ") + e.what());
        }
    }
    return cfg;
}

SimConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open config file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_config(buf.str());
}

SimConfig preset_config(const std::string& name) {
    SimConfig cfg;
    cfg.real_initial = "111";
    cfg.controller = "mbe_z";
    // kappa/gamma = 800 needs dt well below the default before the Euler step
    // keeps the state positive along whole trajectories
    cfg.dt_gamma = 1e-6;
    if (name == "fig2") {
        cfg.lambda0_over_kappa = 0.75;  // lambda = 600 gamma at kappa = 800 gamma
        cfg.T_gamma = 1.0;
        cfg.n_trajectories = 1;
    } else if (name == "fig3a") {
        cfg.lambda0_over_kappa = 1.0;
        cfg.T_gamma = 1.0;
        cfg.n_trajectories = 100;
    } else if (name == "fig4ab") {
        cfg.lambda0_over_kappa = 1.0;
        cfg.T_gamma = 1.0;
        cfg.t_on_gamma = 0.9;
        cfg.n_trajectories = 100;
    } else if (name == "fig4cf") {
        cfg.T_gamma = 1.0;
        cfg.n_trajectories = 1;
        cfg.sweep_parameter = "lambda0_over_kappa";
        cfg.sweep_values = {0.0, 0.75, 1.0, 1.25};
    } else {
        throw std::invalid_argument("unknown preset: " + name +
                                    " (expected fig2, fig3a, fig4ab or fig4cf)");
    }
    return cfg;
}

std::vector<std::string> preset_names() { return {"fig2", "fig3a", "fig4ab", "fig4cf"}; }

void apply_override(SimConfig& cfg, const std::string& key, const std::string& value) {
    ordered_json v;
    if (key == "sweep_values") {
        v = ordered_json::array();
        std::istringstream ss(value);
        std::string item;
        try {
            while (std::getline(ss, item, ',')) v.push_back(std::stod(item));
        } catch (const std::exception&) {
            bad_field(key, "bad value: " + value);
        }
    } else if (key == "controller" || key == "real_initial" || key == "kernel" ||
               key == "sweep_parameter") {
        v = value;
    } else {
        try {
            v = ordered_json::parse(value);
        } catch (const std::exception&) {
            bad_field(key, "bad value: " + value);
        }
    }
    ordered_json merged = ordered_json::parse(config_to_json(cfg));
    merged[key] = v;
    cfg = parse_config(merged.dump());
}

std::string config_to_json(const SimConfig& cfg) {
    ordered_json j;
    j["gamma"] = cfg.gamma;
    j["kappa_over_gamma"] = cfg.kappa_over_gamma;
    j["eta"] = cfg.eta;
    j["lambda0_over_kappa"] = cfg.lambda0_over_kappa;
    j["epsilon"] = cfg.epsilon;
    j["dt_gamma"] = cfg.dt_gamma;
    j["T_gamma"] = cfg.T_gamma;
    j["seed"] = cfg.seed;
    j["output_stride"] = cfg.output_stride;
    j["checkpoint_stride"] = cfg.checkpoint_stride;
    j["controller"] = cfg.controller;
    j["t_on_gamma"] = cfg.t_on_gamma;
    j["real_initial"] = cfg.real_initial;
    j["alpha_re"] = cfg.alpha_re;
    j["alpha_im"] = cfg.alpha_im;
    j["beta_re"] = cfg.beta_re;
    j["beta_im"] = cfg.beta_im;
    j["flip_qubit"] = cfg.flip_qubit;
    j["flip_time_gamma"] = cfg.flip_time_gamma;
    j["n_trajectories"] = cfg.n_trajectories;
    j["kernel"] = cfg.kernel;
    j["sweep_parameter"] = cfg.sweep_parameter;
    j["sweep_values"] = cfg.sweep_values;
    return j.dump(2) + "\n";
}

}  // namespace cqec
