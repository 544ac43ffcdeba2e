#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace zeno {

inline constexpr double kSpeedOfLightCmPerS = 3.0e10;

/// Open confocal cavity described by its mirror factor F = (1-R)^-2,
/// length (cm), fractional solid angle (of 4 pi), and the emitter's
/// free-space decay rate.
struct CavityGeometry {
    double mirror_factor = 0.0;
    double length_cm = 0.0;
    double solid_angle_fraction = 0.0;
    double free_space_rate = 0.0;
};

struct CavityRates {
    double half_width = 0.0;       // Gamma_s, 1/s
    double coupling = 0.0;         // g_s, rad/s
    double background_rate = 0.0;  // gamma_b, 1/s
};

/// Gamma_s = c/(L sqrt(F)), g_s = sqrt(c f gamma_f / (2 L)),
/// gamma_b = (1 - f) gamma_f.
CavityRates cavity_params(const CavityGeometry& geom);

struct PulseSchedule {
    double tau = 0.0;      // interruption interval, s
    double t_p = 0.0;      // pump pulse duration, s
    double omega_p = 0.0;  // pump Rabi frequency, rad/s
    double gamma_u = 0.0;  // auxiliary-state decay rate, 1/s
};

struct ScheduleThresholds {
    double separation_factor = 10.0;  // reading of ">>" / "<<"
    double pi_pulse_tolerance = 0.05;
};

struct ScheduleReport {
    bool interval_exceeds_pulse = false;   // tau >> t_p
    bool pi_pulse = false;                 // Omega_p t_p = pi within tolerance
    bool pulse_within_lifetime = false;    // t_p << 1/gamma_u
    bool interval_exceeds_lifetime = false;  // tau >> 1/gamma_u
    double pulse_area = 0.0;

    bool all_pass() const {
        return interval_exceeds_pulse && pi_pulse && pulse_within_lifetime &&
               interval_exceeds_lifetime;
    }
};

ScheduleReport validate_schedule(const PulseSchedule& s, const ScheduleThresholds& th = {});

/// Fully bound computation plan for a named scenario.
struct PresetPlan {
    enum class Kind { CavityEvolution, RateSweep };

    std::string name;
    Kind kind = Kind::CavityEvolution;

    // CavityEvolution (fig3 / fig4)
    std::vector<CavityGeometry> cavities;
    double detuning = 0.0;            // rad/s
    std::vector<double> taus;         // interruption intervals, s
    double t_max = 0.0;               // s

    // RateSweep (antizeno)
    double alpha = 0.0;
    double omega_c = 0.0;
    double omega_a = 0.0;
    double nu_min = 0.0, nu_max = 0.0;
    int nu_points = 0;
};

/// Known names: fig3, fig4, antizeno. Throws std::invalid_argument otherwise.
PresetPlan preset(std::string_view name);

}  // namespace zeno
