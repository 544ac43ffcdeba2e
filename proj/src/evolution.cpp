#include "zeno/evolution.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <ostream>

#include "zeno/decay.hpp"

namespace zeno {
namespace {

/// Per-interval amplitude samples on a uniform grid over [0, tau]:
/// exact for a Lorentzian sharp part, Volterra otherwise.
std::vector<std::complex<double>> interval_amplitude(const CompositeResponse& system,
                                                     double detuning, double tau,
                                                     int steps) {
    if (const auto* lor = dynamic_cast<const LorentzianMode*>(system.sharp.get())) {
        std::vector<std::complex<double>> a(steps + 1);
        for (int i = 0; i <= steps; ++i)
            a[i] = lorentzian_exact_amplitude(lor->coupling(), lor->half_width(), detuning,
                                              tau * i / steps);
        return a;
    }
    auto kernel = MemoryKernel::from_response(system.sharp);
    return volterra_solve(kernel, detuning, tau, steps);
}

int samples_for(const CompositeResponse& system, double detuning, double span) {
    // >= 40 samples per Rabi period and per 1/Gamma, whichever is finer.
    double g = 0.0, gamma = 0.0;
    if (const auto* lor = dynamic_cast<const LorentzianMode*>(system.sharp.get())) {
        g = lor->coupling();
        gamma = lor->half_width();
    } else {
        const auto kernel = MemoryKernel::from_response(system.sharp);
        g = kernel.coupling_scale();
        gamma = kernel.decay_scale();
    }
    const double rate = std::max({2.0 * g / std::numbers::pi, gamma, std::abs(detuning)});
    const int n = static_cast<int>(std::ceil(40.0 * rate * span));
    return std::clamp(n, 8, 2000000);
}

}  // namespace

MeasurementSchedule::MeasurementSchedule(double interval, int n) : tau(interval), count(n) {
    if (!(tau > 0.0)) throw std::domain_error("MeasurementSchedule: tau must be > 0");
    if (n < 1) throw std::domain_error("MeasurementSchedule: count must be >= 1");
}

MeasurementSchedule MeasurementSchedule::until(double interval, double t_max) {
    if (!(interval > 0.0) || !(t_max > 0.0))
        throw std::domain_error("MeasurementSchedule: interval and t_max must be > 0");
    return MeasurementSchedule(interval,
                               std::max(1, static_cast<int>(std::floor(t_max / interval))));
}

std::vector<std::complex<double>> volterra_solve(const MemoryKernel& kernel,
                                                 double detuning, double t_max, int steps) {
    if (!(t_max > 0.0)) throw std::domain_error("volterra_solve: t_max must be > 0");
    if (steps < 1) throw std::domain_error("volterra_solve: steps must be >= 1");
    const double h = t_max / steps;
    const double scale =
        std::max({std::abs(detuning), kernel.decay_scale(), kernel.coupling_scale()});
    if (h * scale > 0.05)
        throw StepTooCoarse("volterra_solve: step too coarse for the kernel scales",
                            scale > 0.0 ? 0.05 / scale : t_max);

    std::vector<double> ts(steps + 1);
    for (int i = 0; i <= steps; ++i) ts[i] = i * h;
    const auto phi = kernel.eval_batch(ts);
    std::vector<std::complex<double>> K(steps + 1);
    for (int i = 0; i <= steps; ++i) K[i] = phi[i] * std::polar(1.0, detuning * ts[i]);

    std::vector<std::complex<double>> alpha(steps + 1);
    std::vector<std::complex<double>> I(steps + 1);  // trapezoidal convolution
    alpha[0] = 1.0;
    I[0] = 0.0;
    const std::complex<double> denom = 1.0 + 0.25 * h * h * K[0];
    for (int n = 0; n < steps; ++n) {
        // I[n+1] without its alpha[n+1] term.
        std::complex<double> part = 0.5 * K[n + 1] * alpha[0];
        for (int j = 1; j <= n; ++j) part += K[n + 1 - j] * alpha[j];
        part *= h;
        alpha[n + 1] = (alpha[n] - 0.5 * h * (I[n] + part)) / denom;
        I[n + 1] = part + 0.5 * h * K[0] * alpha[n + 1];
    }
    return alpha;
}

std::complex<double> lorentzian_exact_amplitude(double coupling, double half_width,
                                                double detuning, double t) {
    if (t < 0.0) throw std::domain_error("lorentzian_exact_amplitude: t must be >= 0");
    const std::complex<double> b(half_width, -detuning);
    const std::complex<double> disc = std::sqrt(b * b - 4.0 * coupling * coupling);
    const std::complex<double> rp = 0.5 * (-b + disc);
    const std::complex<double> rm = 0.5 * (-b - disc);
    if (std::abs(rp - rm) <= 1e-12 * std::abs(rp))
        return (1.0 - rp * t) * std::exp(rp * t);
    return (rp * std::exp(rm * t) - rm * std::exp(rp * t)) / (rp - rm);
}

EvolutionTrace interrupted_evolution(const CompositeResponse& system, double detuning,
                                     const MeasurementSchedule& schedule) {
    const int per = samples_for(system, detuning, schedule.tau);
    const auto a = interval_amplitude(system, detuning, schedule.tau, per);
    const double mag_end = std::abs(a.back());

    EvolutionTrace trace;
    const size_t total = static_cast<size_t>(schedule.count) * per + 1;
    trace.times.reserve(total);
    trace.population.reserve(total);
    trace.amplitude.reserve(total);
    trace.interrupted.reserve(total);

    double carry = 1.0;  // |alpha(tau)|^n accumulated over completed intervals
    for (int n = 0; n < schedule.count; ++n) {
        const double t0 = n * schedule.tau;
        const int first = (n == 0) ? 0 : 1;
        for (int k = first; k <= per; ++k) {
            const double t = t0 + schedule.tau * k / per;
            const double bg = std::exp(-system.gamma_b * t);
            const double mag = carry * std::abs(a[k]);
            trace.times.push_back(t);
            trace.population.push_back(bg * mag * mag);
            trace.amplitude.push_back(std::sqrt(bg) * carry * a[k]);
            trace.interrupted.push_back(k == per ? 1 : 0);
        }
        carry *= mag_end;
        trace.interruption_times.push_back((n + 1) * schedule.tau);
    }
    return trace;
}

EvolutionTrace uninterrupted_evolution(const CompositeResponse& system, double detuning,
                                       double t_max) {
    if (!(t_max > 0.0)) throw std::domain_error("uninterrupted_evolution: t_max must be > 0");
    const int steps = samples_for(system, detuning, t_max);
    const auto a = interval_amplitude(system, detuning, t_max, steps);
    EvolutionTrace trace;
    trace.times.resize(a.size());
    trace.population.resize(a.size());
    trace.amplitude.resize(a.size());
    trace.interrupted.assign(a.size(), 0);
    for (size_t i = 0; i < a.size(); ++i) {
        const double t = t_max * static_cast<double>(i) / steps;
        const double bg = std::exp(-system.gamma_b * t);
        trace.times[i] = t;
        trace.population[i] = bg * std::norm(a[i]);
        trace.amplitude[i] = std::sqrt(bg) * a[i];
    }
    return trace;
}

std::vector<DetunedRate> detuned_enhancement(const CompositeResponse& system,
                                             double detuning, std::span<const double> taus) {
    if (detuning == 0.0)
        throw std::domain_error("detuned_enhancement: detuning must be nonzero");
    std::vector<DetunedRate> out;
    out.reserve(taus.size());
    for (double tau : taus) {
        DetunedRate row;
        row.tau = tau;
        const auto schedule = MeasurementSchedule(tau, 12);
        const auto trace = interrupted_evolution(system, detuning, schedule);
        // Log-population at the interruption nodes is exactly linear in n.
        std::vector<double> xs, ys;
        for (size_t i = 0; i < trace.times.size(); ++i) {
            if (trace.interrupted[i]) {
                xs.push_back(trace.times[i]);
                ys.push_back(-std::log(std::max(trace.population[i], 1e-300)));
            }
        }
        row.kappa_eff = fit_line(xs, ys).slope;
        if (const auto* lor = dynamic_cast<const LorentzianMode*>(system.sharp.get())) {
            const auto st = lorentzian_short_time_amplitude(lor->coupling(),
                                                            lor->half_width(), detuning, tau);
            row.kappa_pred = 2.0 / tau * (1.0 - st.alpha.real()) + system.gamma_b;
            const std::complex<double> b(lor->half_width(), -detuning);
            const std::complex<double> disc =
                std::sqrt(b * b - 4.0 * lor->coupling() * lor->coupling());
            const double slow =
                std::max((0.5 * (-b + disc)).real(), (0.5 * (-b - disc)).real());
            row.kappa_uninterrupted = -2.0 * slow + system.gamma_b;
        } else {
            const auto kernel = MemoryKernel::from_response(system.sharp);
            row.kappa_pred =
                impulsive_rate_time_domain(kernel, detuning, tau) + system.gamma_b;
            const auto free_run = uninterrupted_evolution(system, detuning, 12.0 * tau);
            std::vector<double> fx(free_run.times.begin() + free_run.times.size() / 2,
                                   free_run.times.end());
            std::vector<double> fy;
            for (size_t i = free_run.times.size() / 2; i < free_run.times.size(); ++i)
                fy.push_back(-std::log(std::max(free_run.population[i], 1e-300)));
            row.kappa_uninterrupted = fit_line(fx, fy).slope;
        }
        out.push_back(row);
    }
    return out;
}

LinearFit fit_line(std::span<const double> x, std::span<const double> y) {
    if (x.size() != y.size() || x.size() < 2)
        throw std::invalid_argument("fit_line: need two equal-length samples");
    const double n = static_cast<double>(x.size());
    double sx = 0, sy = 0, sxx = 0, sxy = 0, syy = 0;
    for (size_t i = 0; i < x.size(); ++i) {
        sx += x[i];
        sy += y[i];
        sxx += x[i] * x[i];
        sxy += x[i] * y[i];
        syy += y[i] * y[i];
    }
    LinearFit fit;
    const double vxx = sxx - sx * sx / n;
    const double vxy = sxy - sx * sy / n;
    const double vyy = syy - sy * sy / n;
    fit.slope = vxy / vxx;
    fit.intercept = (sy - fit.slope * sx) / n;
    fit.r_squared = vyy > 0.0 ? (vxy * vxy) / (vxx * vyy) : 1.0;
    return fit;
}

void write_csv(const EvolutionTrace& trace, std::ostream& out) {
    out << "t_s,W,re_alpha,im_alpha,interrupted\n";
    char buf[200];
    for (size_t i = 0; i < trace.times.size(); ++i) {
        std::snprintf(buf, sizeof(buf), "%.11e,%.11e,%.11e,%.11e,%d\n", trace.times[i],
                      trace.population[i], trace.amplitude[i].real(),
                      trace.amplitude[i].imag(), static_cast<int>(trace.interrupted[i]));
        out << buf;
    }
}

}  // namespace zeno
