#pragma once

#include <array>
#include <string>

namespace cqec {

enum class ControllerMode { Off, MbeZ, Ahn };

struct ControllerConfig {
    ControllerMode mode = ControllerMode::MbeZ;
    double lambda0 = 0.0;  // feedback strength when a drive is switched on
    double epsilon = 1.05; // relative deviation threshold (MbeZ)
    double t_on = 0.0;     // drives held at zero before this time
};

struct ControllerState {
    std::array<double, 3> z0{1.0, 1.0, 1.0};  // references captured at t = 0
};

// Decides the drive strengths for the next step from estimator observables.
// t is the time at which the returned strengths will act (one step after
// the observation), so the t_on gate is on application time.
//   MbeZ: lambda_q = lambda0 when |<Z_q> - z0_q| > epsilon * |z0_q|, else 0
//   Ahn:  lambda_1 = lambda0 (1-s1)(1+s2)(1-s3), cyclic, with
//         s = (<ZZI>, <IZZ>, <ZIZ>)
std::array<double, 3> decide_lambdas(const ControllerConfig& cfg, const ControllerState& st,
                                     double t, const std::array<double, 3>& z_means,
                                     const std::array<double, 3>& syndrome_means);

ControllerMode parse_controller_mode(const std::string& name);
const char* controller_mode_name(ControllerMode m);

}  // namespace cqec
