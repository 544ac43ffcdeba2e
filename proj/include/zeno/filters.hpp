#pragma once

#include <limits>
#include <stdexcept>

namespace zeno {

/// Raised when inputs are outside the regime in which a formula holds
/// (as opposed to being outright invalid).
class ValidityError : public std::domain_error {
    using std::domain_error::domain_error;
};

/// Measurement-induced dephasing window F(delta), normalized to unit area,
/// centered on the atomic frequency (delta = w - w_a).
class DephasingFilter {
public:
    virtual ~DephasingFilter() = default;

    virtual double eval(double delta) const = 0;

    /// HWHM-like width of the window.
    virtual double width() const = 0;

    /// Far-field mean behaviour F(delta) ~ tail_coefficient()/delta^2.
    virtual double tail_coefficient() const = 0;

    /// Spacing of oscillation nodes, or +inf for smooth filters.
    virtual double oscillation_period() const {
        return std::numeric_limits<double>::infinity();
    }
};

/// Impulsive-interruption window: F(delta) = tau/(2 pi) sinc^2(delta tau / 2).
class SincSquaredFilter final : public DephasingFilter {
public:
    explicit SincSquaredFilter(double interval);

    double interval() const { return tau_; }

    double eval(double delta) const override;
    double width() const override;
    double tail_coefficient() const override;
    double oscillation_period() const override;

private:
    double tau_;
};

/// Noisy/CW dephasing window: F(delta) = nu / (pi (nu^2 + delta^2)).
class LorentzianFilter final : public DephasingFilter {
public:
    explicit LorentzianFilter(double hwhm);

    double hwhm() const { return nu_; }

    double eval(double delta) const override;
    double width() const override { return nu_; }
    double tail_coefficient() const override;

private:
    double nu_;
};

/// nu = <dw^2> tau_c for random Stark-shift dephasing.
double width_from_noise(double mean_square_shift, double correlation_time);

/// nu = 2 Omega^2 / gamma_u for CW dephasing; requires gamma_u > Omega.
double width_from_cw(double rabi_frequency, double auxiliary_decay_rate);

}  // namespace zeno
