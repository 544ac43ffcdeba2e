#include "zeno/filters.hpp"

#include <cmath>
#include <numbers>

namespace zeno {

SincSquaredFilter::SincSquaredFilter(double interval) : tau_(interval) {
    if (!(tau_ > 0.0)) throw std::domain_error("SincSquaredFilter: interval must be > 0");
}

double SincSquaredFilter::eval(double delta) const {
    const double x = 0.5 * delta * tau_;
    double s;
    if (std::abs(x) < 1e-4) {
        const double x2 = x * x;
        s = 1.0 - x2 / 3.0 + 2.0 * x2 * x2 / 45.0;  // sinc^2 series
    } else {
        const double sc = std::sin(x) / x;
        s = sc * sc;
    }
    return tau_ / (2.0 * std::numbers::pi) * s;
}

double SincSquaredFilter::width() const {
    // HWHM of sinc^2: sinc^2(x) = 1/2 at x = 1.39155737825...
    return 2.0 * 1.391557378259569 / tau_;
}

double SincSquaredFilter::tail_coefficient() const {
    // mean of sinc^2(x) over a period is 1/(2 x^2); F ~ 1/(pi tau delta^2)
    return 1.0 / (std::numbers::pi * tau_);
}

double SincSquaredFilter::oscillation_period() const {
    return 2.0 * std::numbers::pi / tau_;
}

LorentzianFilter::LorentzianFilter(double hwhm) : nu_(hwhm) {
    if (!(nu_ > 0.0)) throw std::domain_error("LorentzianFilter: width must be > 0");
}

double LorentzianFilter::eval(double delta) const {
    return nu_ / (std::numbers::pi * (nu_ * nu_ + delta * delta));
}

double LorentzianFilter::tail_coefficient() const { return nu_ / std::numbers::pi; }

double width_from_noise(double mean_square_shift, double correlation_time) {
    if (!(mean_square_shift > 0.0))
        throw std::domain_error("width_from_noise: mean_square_shift must be > 0");
    if (!(correlation_time > 0.0))
        throw std::domain_error("width_from_noise: correlation_time must be > 0");
    return mean_square_shift * correlation_time;
}

double width_from_cw(double rabi_frequency, double auxiliary_decay_rate) {
    if (!(rabi_frequency > 0.0))
        throw std::domain_error("width_from_cw: rabi_frequency must be > 0");
    if (!(auxiliary_decay_rate > 0.0))
        throw std::domain_error("width_from_cw: auxiliary_decay_rate must be > 0");
    if (auxiliary_decay_rate <= rabi_frequency)
        throw ValidityError("width_from_cw: requires gamma_u > Omega");
    return 2.0 * rabi_frequency * rabi_frequency / auxiliary_decay_rate;
}

}  // namespace zeno
