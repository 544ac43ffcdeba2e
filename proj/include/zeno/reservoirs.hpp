#pragma once

#include <complex>
#include <functional>
#include <iosfwd>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace zeno {

/// Reservoir spectral response G(w) >= 0: the emission rate density into
/// the reservoir at angular frequency w. All frequencies are rad/s.
class SpectralResponse {
public:
    virtual ~SpectralResponse() = default;

    /// G(w). Throws std::domain_error for w < 0.
    double eval(double omega) const;

    /// Reference frequency (peak or cutoff) used as the rotating-frame
    /// origin of the correlation function.
    virtual double center() const = 0;

    /// Characteristic scale over which the response varies near its center.
    virtual double width() const = 0;

    /// Frequency above which the response is numerically negligible
    /// relative to its bulk (used to truncate semi-infinite integrals).
    virtual double support_max() const = 0;

    /// Sorted panel-split points for peak-aware quadrature.
    virtual std::vector<double> feature_points() const = 0;

    virtual std::optional<std::complex<double>> correlation_analytic(double t) const {
        (void)t;
        return std::nullopt;
    }
    virtual std::optional<double> total_weight_analytic() const { return std::nullopt; }

protected:
    virtual double eval_unchecked(double omega) const = 0;
};

/// High-Q cavity line: G(w) = g_s^2 Gamma_s / (pi [Gamma_s^2 + (w - w_s)^2]).
class LorentzianMode final : public SpectralResponse {
public:
    LorentzianMode(double coupling, double half_width, double line_center);

    double coupling() const { return g_s_; }
    double half_width() const { return gamma_s_; }
    double line_center() const { return omega_s_; }

    double center() const override { return omega_s_; }
    double width() const override { return gamma_s_; }
    double support_max() const override;
    std::vector<double> feature_points() const override;
    std::optional<std::complex<double>> correlation_analytic(double t) const override;
    std::optional<double> total_weight_analytic() const override { return g_s_ * g_s_; }

protected:
    double eval_unchecked(double omega) const override;

private:
    double g_s_, gamma_s_, omega_s_;
};

/// Free-space (hydrogenic) response: G(w) = alpha w / (1 + (w/w_c)^2)^4.
class HydrogenicResponse final : public SpectralResponse {
public:
    explicit HydrogenicResponse(double alpha, double cutoff = 1.0e19);

    double alpha() const { return alpha_; }
    double cutoff() const { return omega_c_; }

    /// The response peaks at w_c / sqrt(7).
    double peak_frequency() const;

    double center() const override { return peak_frequency(); }
    double width() const override { return peak_frequency(); }
    double support_max() const override { return 30.0 * omega_c_; }
    std::vector<double> feature_points() const override;
    std::optional<double> total_weight_analytic() const override {
        return alpha_ * omega_c_ * omega_c_ / 6.0;
    }

protected:
    double eval_unchecked(double omega) const override;

private:
    double alpha_, omega_c_;
};

/// Piecewise-linear response from (w, G) samples; zero outside the range.
class TabulatedResponse final : public SpectralResponse {
public:
    TabulatedResponse(std::vector<double> omegas, std::vector<double> values);

    /// Parses a two-column text stream: whitespace- or comma-separated
    /// (w, G) rows, `#` comments.
    static TabulatedResponse from_stream(std::istream& in);
    static TabulatedResponse from_file(const std::string& path);

    const std::vector<double>& omegas() const { return omegas_; }
    const std::vector<double>& values() const { return values_; }

    double center() const override { return peak_omega_; }
    double width() const override;
    double support_max() const override { return omegas_.back(); }
    std::vector<double> feature_points() const override { return omegas_; }

protected:
    double eval_unchecked(double omega) const override;

private:
    std::vector<double> omegas_, values_;
    double peak_omega_;
};

/// Sharp (nearly singular) part plus flat background: the background
/// continuum enters only through its on-resonance rate gamma_b = 2 pi G_b(w_a).
struct CompositeResponse {
    std::shared_ptr<const SpectralResponse> sharp;
    double gamma_b = 0.0;  // 1/s

    CompositeResponse(std::shared_ptr<const SpectralResponse> sharp_part, double background_rate);
};

struct FourierOptions {
    double rel_tol = 1e-9;
};

/// Reservoir correlation function Phi(t) = int G(w) exp(-i (w - w_s) t) dw
/// in the rotating frame of the reference frequency w_s.
class MemoryKernel {
public:
    /// Throws std::domain_error for t < 0.
    std::complex<double> operator()(double t) const;

    double reference_frequency() const { return omega_ref_; }
    /// Kernel decay scale (Gamma-like) and coupling scale sqrt(Phi(0)),
    /// used for solver step-size checks.
    double decay_scale() const { return decay_scale_; }
    double coupling_scale() const { return coupling_scale_; }
    /// Fastest phase-rotation rate present in Phi(t); bounds the panel
    /// width needed to integrate it over time.
    double oscillation_scale() const { return osc_scale_; }

    /// Phi at many times, sharing spectral panel work where possible.
    std::vector<std::complex<double>> eval_batch(std::span<const double> ts) const;

    static MemoryKernel from_response(std::shared_ptr<const SpectralResponse> response,
                                      const FourierOptions& opt = {});
    /// Phi(t) = g^2 exp(-Gamma t), the analytic kernel of a Lorentzian line.
    static MemoryKernel lorentzian(double coupling, double half_width,
                                   double line_center = 0.0);
    static MemoryKernel zero();

private:
    using BatchFn = std::function<std::vector<std::complex<double>>(std::span<const double>)>;

    MemoryKernel(std::function<std::complex<double>(double)> eval, double omega_ref,
                 double decay_scale, double coupling_scale, double osc_scale,
                 BatchFn batch = nullptr);

    std::function<std::complex<double>(double)> eval_;
    BatchFn batch_;
    double omega_ref_, decay_scale_, coupling_scale_, osc_scale_;
};

}  // namespace zeno
