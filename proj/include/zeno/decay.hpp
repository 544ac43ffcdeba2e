#pragma once

#include <complex>
#include <string>
#include <vector>

#include "zeno/filters.hpp"
#include "zeno/quadrature.hpp"
#include "zeno/reservoirs.hpp"

namespace zeno {

enum class RateMethod { Quadrature, TimeDomain, ClosedForm };

struct RateResult {
    double kappa = 0.0;    // total effective decay rate, 1/s
    double kappa_s = 0.0;  // sharp-part contribution
    double gamma_b = 0.0;  // background contribution
    RateMethod method = RateMethod::Quadrature;
    double error_estimate = 0.0;
    std::vector<std::string> notes;
};

/// kappa_s = 2 pi int G(w) F(w - w_a) dw, with the domain split at the
/// spectrum and filter feature points. Requires w_a > 0.
RateResult universal_rate(const SpectralResponse& response, const DephasingFilter& filter,
                          double omega_a, double rel_tol = 1e-9);
RateResult universal_rate(const CompositeResponse& composite, const DephasingFilter& filter,
                          double omega_a, double rel_tol = 1e-9);

/// kappa_s = (2/tau) Re int_0^tau (tau - t) Phi(t) exp(i Delta t) dt.
double impulsive_rate_time_domain(const MemoryKernel& kernel, double detuning, double tau,
                                  double rel_tol = 1e-10);

struct ShortTimeAmplitude {
    std::complex<double> alpha{1.0, 0.0};
    bool within_validity = true;  // tau << (Gamma_s + |Delta|)^-1 and tau << 1/g_s
};

/// Second-order short-time excited amplitude for a Lorentzian line.
ShortTimeAmplitude lorentzian_short_time_amplitude(double coupling, double half_width,
                                                   double detuning, double tau);

struct HydrogenicRate {
    double kappa = 0.0;
    bool within_validity = true;  // flagged false when nu >~ omega_c
    bool series_path = false;     // evaluated by the local series near f^2 = 1
};

/// Closed-form overlap of the hydrogenic response with a Lorentzian filter
/// of HWHM nu, via f = (nu - i w_a)/w_c (principal log branch).
HydrogenicRate hydrogenic_lorentzian_rate(double alpha, double omega_c, double omega_a,
                                          double nu);

struct CrossCheck {
    double kappa_freq = 0.0;
    double kappa_time = 0.0;
    double discrepancy = 0.0;  // relative
};

/// Evaluates the interruption rate for the same setup along both routes:
/// the sinc^2 spectral overlap and the time-domain kernel integral.
CrossCheck sinc_vs_kernel_crosscheck(std::shared_ptr<const SpectralResponse> response,
                                     double omega_a, double tau, double rel_tol = 1e-9);

}  // namespace zeno
