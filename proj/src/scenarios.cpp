#include "zeno/scenarios.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace zeno {

CavityRates cavity_params(const CavityGeometry& geom) {
    if (!(geom.mirror_factor > 1.0))
        throw std::domain_error("cavity_params: mirror factor must be > 1");
    if (!(geom.length_cm > 0.0))
        throw std::domain_error("cavity_params: length must be > 0");
    if (!(geom.solid_angle_fraction > 0.0 && geom.solid_angle_fraction < 1.0))
        throw std::domain_error("cavity_params: solid angle fraction must be in (0, 1)");
    if (!(geom.free_space_rate > 0.0))
        throw std::domain_error("cavity_params: free-space rate must be > 0");
    const double c = kSpeedOfLightCmPerS;
    CavityRates r;
    r.half_width = c / (geom.length_cm * std::sqrt(geom.mirror_factor));
    r.coupling = std::sqrt(c * geom.solid_angle_fraction * geom.free_space_rate /
                           (2.0 * geom.length_cm));
    r.background_rate = (1.0 - geom.solid_angle_fraction) * geom.free_space_rate;
    return r;
}

ScheduleReport validate_schedule(const PulseSchedule& s, const ScheduleThresholds& th) {
    if (!(s.tau > 0.0 && s.t_p > 0.0 && s.omega_p > 0.0 && s.gamma_u > 0.0))
        throw std::domain_error("validate_schedule: all schedule parameters must be > 0");
    ScheduleReport r;
    r.pulse_area = s.omega_p * s.t_p;
    r.interval_exceeds_pulse = s.tau >= th.separation_factor * s.t_p;
    r.pi_pulse = std::abs(r.pulse_area - std::numbers::pi) <=
                 th.pi_pulse_tolerance * std::numbers::pi;
    r.pulse_within_lifetime = s.t_p * s.gamma_u <= 1.0 / th.separation_factor;
    r.interval_exceeds_lifetime = s.tau * s.gamma_u >= th.separation_factor;
    return r;
}

PresetPlan preset(std::string_view name) {
    PresetPlan p;
    p.name = std::string(name);
    const CavityGeometry lo{1e5, 15.0, 0.02, 1e6};
    const CavityGeometry hi{1e6, 15.0, 0.02, 1e6};
    if (name == "fig3") {
        p.kind = PresetPlan::Kind::CavityEvolution;
        p.cavities = {lo, hi};
        p.detuning = 0.0;
        p.taus = {3e-8};
        p.t_max = 4e-6;
    } else if (name == "fig4") {
        p.kind = PresetPlan::Kind::CavityEvolution;
        p.cavities = {hi};
        p.detuning = 1e8;
        p.taus = {3.0 * std::numbers::pi * 1e-8, 5.0 * std::numbers::pi * 1e-8};
        p.t_max = 2e-6;
    } else if (name == "antizeno") {
        p.kind = PresetPlan::Kind::RateSweep;
        p.alpha = 1.0;
        p.omega_c = 1e19;
        p.omega_a = 1e15;
        p.nu_min = 1e12;
        p.nu_max = 1e17;
        p.nu_points = 50;
    } else {
        throw std::invalid_argument("unknown preset: " + std::string(name));
    }
    return p;
}

}  // namespace zeno
