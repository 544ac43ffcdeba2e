#pragma once

#include <complex>
#include <functional>
#include <span>
#include <stdexcept>
#include <vector>

namespace zeno {

/// Raised when an adaptive rule exhausts its interval budget without
/// meeting the requested tolerance.
class QuadratureError : public std::runtime_error {
public:
    QuadratureError(const std::string& what, double error_estimate)
        : std::runtime_error(what), error_estimate(error_estimate) {}
    double error_estimate;
};

struct QuadOptions {
    double rel_tol = 1e-10;
    double abs_tol = 0.0;
    int max_intervals = 20000;
    bool throw_on_failure = true;
};

struct QuadOutcome {
    double value = 0.0;
    double error_estimate = 0.0;
    int evaluations = 0;
    bool converged = true;
};

/// Adaptive Gauss-Kronrod (7-15) on [a, b].
QuadOutcome integrate(const std::function<double(double)>& f, double a, double b,
                      const QuadOptions& opt = {});

/// Same rule, but the domain is pre-split at the given sorted breakpoints.
/// Breakpoints outside (a, b) are ignored.
QuadOutcome integrate(const std::function<double(double)>& f, double a, double b,
                      std::span<const double> breakpoints, const QuadOptions& opt = {});

/// Integral over [a, inf) via the map w = a + s*x/(1-x); `scale` sets the
/// resolution of the mapped grid near a.
QuadOutcome integrate_upper_tail(const std::function<double(double)>& f, double a,
                                 double scale, const QuadOptions& opt = {});

struct ComplexQuadOutcome {
    std::complex<double> value{0.0, 0.0};
    double error_estimate = 0.0;
    int evaluations = 0;
    bool converged = true;
};

ComplexQuadOutcome integrate_complex(const std::function<std::complex<double>(double)>& f,
                                     double a, double b, const QuadOptions& opt = {});

/// Filon-type evaluation of the half-line Fourier integral
///   int g(w) exp(-i w t) dw over [a, b],
/// with g interpolated quadratically on each panel and the oscillation
/// integrated in closed form, so the panel count is set by the smoothness
/// of g rather than by t. Panels are laid out between the supplied sorted
/// breakpoints (which must bracket [a, b] implicitly via a and b being the
/// first/last entries) and refined globally until two consecutive
/// refinements agree to rel_tol.
std::complex<double> fourier_integral(const std::function<double(double)>& g,
                                      std::span<const double> breakpoints, double t,
                                      double rel_tol = 1e-9, int initial_per_segment = 16,
                                      int max_refinements = 8);

/// Same integral evaluated at many t values against one shared panel set;
/// the panel refinement is driven by probe values of t, then all requested
/// values reuse the converged panels.
std::vector<std::complex<double>> fourier_integral_batch(
    const std::function<double(double)>& g, std::span<const double> breakpoints,
    std::span<const double> ts, double rel_tol = 1e-9, int initial_per_segment = 16,
    int max_refinements = 8);

}  // namespace zeno
