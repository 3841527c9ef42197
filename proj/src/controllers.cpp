#include "cqec/controllers.hpp"

#include <cmath>
#include <stdexcept>

namespace cqec {

std::array<double, 3> decide_lambdas(const ControllerConfig& cfg, const ControllerState& st,
                                     double t, const std::array<double, 3>& z_means,
                                     const std::array<double, 3>& syndrome_means) {
    std::array<double, 3> lam{0.0, 0.0, 0.0};
    if (t < cfg.t_on) return lam;
    switch (cfg.mode) {
        case ControllerMode::Off:
            break;
        case ControllerMode::MbeZ:
            for (int q = 0; q < 3; ++q) {
                if (std::abs(z_means[q] - st.z0[q]) > cfg.epsilon * std::abs(st.z0[q]))
                    lam[q] = cfg.lambda0;
            }
            break;
        case ControllerMode::Ahn: {
            const double s1 = syndrome_means[0], s2 = syndrome_means[1], s3 = syndrome_means[2];
            lam[0] = cfg.lambda0 * (1.0 - s1) * (1.0 + s2) * (1.0 - s3);
            lam[1] = cfg.lambda0 * (1.0 - s1) * (1.0 - s2) * (1.0 + s3);
            lam[2] = cfg.lambda0 * (1.0 + s1) * (1.0 - s2) * (1.0 - s3);
            break;
        }
    }
    return lam;
}

ControllerMode parse_controller_mode(const std::string& name) {
    if (name == "off") return ControllerMode::Off;
    if (name == "mbe_z") return ControllerMode::MbeZ;
    if (name == "ahn") return ControllerMode::Ahn;
    throw std::invalid_argument("unknown controller: " + name);
}

const char* controller_mode_name(ControllerMode m) {
    switch (m) {
        case ControllerMode::Off: return "off";
        case ControllerMode::MbeZ: return "mbe_z";
        case ControllerMode::Ahn: return "ahn";
    }
    return "unknown";
}

}  // namespace cqec
