#pragma once

#include <complex>
#include <iosfwd>
#include <span>
#include <vector>

#include "zeno/reservoirs.hpp"

namespace zeno {

/// Raised by the Volterra solver when the requested step violates the
/// resolution criterion; carries the step that would satisfy it.
class StepTooCoarse : public std::invalid_argument {
public:
    StepTooCoarse(const std::string& what, double suggested)
        : std::invalid_argument(what), suggested_step(suggested) {}
    double suggested_step;
};

struct MeasurementSchedule {
    double tau = 0.0;  // interruption interval, s
    int count = 1;     // number of intervals

    MeasurementSchedule(double interval, int n);
    static MeasurementSchedule until(double interval, double t_max);
};

struct EvolutionTrace {
    std::vector<double> times;
    std::vector<double> population;                 // W(t) in [0, 1]
    std::vector<std::complex<double>> amplitude;    // alpha_e(t) incl. background factor
    std::vector<char> interrupted;                  // 1 at interruption samples
    std::vector<double> interruption_times;
};

/// Integrates d(alpha)/dt = -int_0^t Phi(t-s) e^{i Delta (t-s)} alpha(s) ds
/// with alpha(0) = 1, by trapezoidal product integration on a uniform grid
/// of `steps` steps covering [0, t_max]. Second-order accurate. Throws
/// StepTooCoarse unless h * max(|Delta|, decay_scale, coupling_scale) <= 0.05.
std::vector<std::complex<double>> volterra_solve(const MemoryKernel& kernel,
                                                 double detuning, double t_max, int steps);

/// Exact excited amplitude for the Lorentzian kernel, from the quadratic
/// characteristic equation of the equivalent second-order ODE.
std::complex<double> lorentzian_exact_amplitude(double coupling, double half_width,
                                                double detuning, double t);

/// Interrupted evolution: the per-interval amplitude restarts (phase and
/// kernel memory erased) after each measurement, and the background modes
/// contribute an uninterruptible factor exp(-gamma_b t).
EvolutionTrace interrupted_evolution(const CompositeResponse& system, double detuning,
                                     const MeasurementSchedule& schedule);

/// Same system with no interruptions, sampled up to t_max.
EvolutionTrace uninterrupted_evolution(const CompositeResponse& system, double detuning,
                                       double t_max);

struct DetunedRate {
    double tau = 0.0;
    double kappa_eff = 0.0;            // fitted from the interrupted trace
    double kappa_pred = 0.0;           // short-time-amplitude prediction
    double kappa_uninterrupted = 0.0;  // envelope rate without measurements
};

/// Effective decay rates of interrupted evolution at the given intervals,
/// against the uninterrupted envelope. Requires detuning != 0.
std::vector<DetunedRate> detuned_enhancement(const CompositeResponse& system,
                                             double detuning, std::span<const double> taus);

struct LinearFit {
    double slope = 0.0;
    double intercept = 0.0;
    double r_squared = 0.0;
};

LinearFit fit_line(std::span<const double> x, std::span<const double> y);

/// CSV columns: t, W, Re alpha_e, Im alpha_e, interrupted.
void write_csv(const EvolutionTrace& trace, std::ostream& out);

}  // namespace zeno
