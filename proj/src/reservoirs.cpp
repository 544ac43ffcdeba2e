#include "zeno/reservoirs.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include "zeno/quadrature.hpp"

namespace zeno {

double SpectralResponse::eval(double omega) const {
    if (omega < 0.0) throw std::domain_error("spectral response: omega < 0");
    return eval_unchecked(omega);
}

// ---------------------------------------------------------------------------
// LorentzianMode

LorentzianMode::LorentzianMode(double coupling, double half_width, double line_center)
    : g_s_(coupling), gamma_s_(half_width), omega_s_(line_center) {
    if (!(g_s_ > 0.0)) throw std::domain_error("LorentzianMode: coupling must be > 0");
    if (!(gamma_s_ > 0.0)) throw std::domain_error("LorentzianMode: half_width must be > 0");
    if (!(omega_s_ > 0.0)) throw std::domain_error("LorentzianMode: line_center must be > 0");
}

double LorentzianMode::eval_unchecked(double omega) const {
    const double d = omega - omega_s_;
    return g_s_ * g_s_ * gamma_s_ / (std::numbers::pi * (gamma_s_ * gamma_s_ + d * d));
}

double LorentzianMode::support_max() const { return omega_s_ + 1e6 * gamma_s_; }

std::vector<double> LorentzianMode::feature_points() const {
    std::vector<double> pts;
    for (double k : {1.0, 10.0, 100.0, 1000.0}) {
        const double lo = omega_s_ - k * gamma_s_;
        if (lo > 0.0) pts.push_back(lo);
        pts.push_back(omega_s_ + k * gamma_s_);
    }
    pts.push_back(omega_s_);
    std::sort(pts.begin(), pts.end());
    return pts;
}

std::optional<std::complex<double>> LorentzianMode::correlation_analytic(double t) const {
    return std::complex<double>(g_s_ * g_s_ * std::exp(-gamma_s_ * t), 0.0);
}

// ---------------------------------------------------------------------------
// HydrogenicResponse

HydrogenicResponse::HydrogenicResponse(double alpha, double cutoff)
    : alpha_(alpha), omega_c_(cutoff) {
    if (alpha_ < 0.0) throw std::domain_error("HydrogenicResponse: alpha must be >= 0");
    if (!(omega_c_ > 0.0)) throw std::domain_error("HydrogenicResponse: cutoff must be > 0");
}

double HydrogenicResponse::eval_unchecked(double omega) const {
    const double x = omega / omega_c_;
    const double q = 1.0 + x * x;
    return alpha_ * omega / (q * q * q * q);
}

double HydrogenicResponse::peak_frequency() const { return omega_c_ / std::sqrt(7.0); }

std::vector<double> HydrogenicResponse::feature_points() const {
    std::vector<double> pts{peak_frequency()};
    for (double k : {1e-3, 1e-2, 1e-1, 1.0, 3.0, 10.0, 30.0}) pts.push_back(k * omega_c_);
    std::sort(pts.begin(), pts.end());
    return pts;
}

// ---------------------------------------------------------------------------
// TabulatedResponse

TabulatedResponse::TabulatedResponse(std::vector<double> omegas, std::vector<double> values)
    : omegas_(std::move(omegas)), values_(std::move(values)) {
    if (omegas_.size() != values_.size())
        throw std::invalid_argument("TabulatedResponse: column length mismatch");
    if (omegas_.size() < 2)
        throw std::invalid_argument("TabulatedResponse: need at least two samples");
    for (size_t i = 0; i + 1 < omegas_.size(); ++i)
        if (!(omegas_[i] < omegas_[i + 1]))
            throw std::invalid_argument("TabulatedResponse: omega must be strictly increasing");
    for (double v : values_)
        if (v < 0.0) throw std::invalid_argument("TabulatedResponse: negative response value");
    if (omegas_.front() < 0.0)
        throw std::invalid_argument("TabulatedResponse: negative omega sample");
    const auto it = std::max_element(values_.begin(), values_.end());
    peak_omega_ = omegas_[static_cast<size_t>(it - values_.begin())];
}

TabulatedResponse TabulatedResponse::from_stream(std::istream& in) {
    std::vector<double> w, g;
    std::string line;
    size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        std::replace(line.begin(), line.end(), ',', ' ');
        std::istringstream row(line);
        double a, b;
        if (!(row >> a)) continue;  // blank or comment-only line
        if (!(row >> b))
            throw std::invalid_argument("tabulated response: malformed row at line " +
                                        std::to_string(lineno));
        w.push_back(a);
        g.push_back(b);
    }
    return TabulatedResponse(std::move(w), std::move(g));
}

TabulatedResponse TabulatedResponse::from_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open tabulated response file: " + path);
    return from_stream(in);
}

double TabulatedResponse::eval_unchecked(double omega) const {
    if (omega < omegas_.front() || omega > omegas_.back()) return 0.0;
    const auto it = std::upper_bound(omegas_.begin(), omegas_.end(), omega);
    if (it == omegas_.begin()) return values_.front();
    const size_t i = static_cast<size_t>(it - omegas_.begin());
    if (i >= omegas_.size()) return values_.back();
    const double t = (omega - omegas_[i - 1]) / (omegas_[i] - omegas_[i - 1]);
    return values_[i - 1] + t * (values_[i] - values_[i - 1]);
}

double TabulatedResponse::width() const {
    // Half the span of the region holding values above half the peak.
    const double peak = *std::max_element(values_.begin(), values_.end());
    double lo = omegas_.back(), hi = omegas_.front();
    for (size_t i = 0; i < omegas_.size(); ++i) {
        if (values_[i] >= 0.5 * peak) {
            lo = std::min(lo, omegas_[i]);
            hi = std::max(hi, omegas_[i]);
        }
    }
    const double w = 0.5 * (hi - lo);
    return w > 0.0 ? w : 0.5 * (omegas_.back() - omegas_.front());
}

// ---------------------------------------------------------------------------
// CompositeResponse

CompositeResponse::CompositeResponse(std::shared_ptr<const SpectralResponse> sharp_part,
                                     double background_rate)
    : sharp(std::move(sharp_part)), gamma_b(background_rate) {
    if (!sharp) throw std::invalid_argument("CompositeResponse: sharp part required");
    if (gamma_b < 0.0) throw std::domain_error("CompositeResponse: gamma_b must be >= 0");
}

// ---------------------------------------------------------------------------
// MemoryKernel

MemoryKernel::MemoryKernel(std::function<std::complex<double>(double)> eval,
                           double omega_ref, double decay_scale, double coupling_scale,
                           double osc_scale, BatchFn batch)
    : eval_(std::move(eval)),
      batch_(std::move(batch)),
      omega_ref_(omega_ref),
      decay_scale_(decay_scale),
      coupling_scale_(coupling_scale),
      osc_scale_(osc_scale) {}

std::complex<double> MemoryKernel::operator()(double t) const {
    if (t < 0.0) throw std::domain_error("memory kernel: t < 0");
    return eval_(t);
}

std::vector<std::complex<double>> MemoryKernel::eval_batch(std::span<const double> ts) const {
    for (double t : ts)
        if (t < 0.0) throw std::domain_error("memory kernel: t < 0");
    if (batch_) return batch_(ts);
    std::vector<std::complex<double>> out;
    out.reserve(ts.size());
    for (double t : ts) out.push_back(eval_(t));
    return out;
}

MemoryKernel MemoryKernel::from_response(std::shared_ptr<const SpectralResponse> response,
                                         const FourierOptions& opt) {
    if (!response) throw std::invalid_argument("MemoryKernel: null response");
    const double omega_ref = response->center();
    if (auto probe = response->correlation_analytic(0.0)) {
        auto eval = [response](double t) { return *response->correlation_analytic(t); };
        const double g = std::sqrt(std::max(0.0, probe->real()));
        return MemoryKernel(std::move(eval), omega_ref, response->width(), g,
                            response->width());
    }
    auto pts = response->feature_points();
    pts.insert(pts.begin(), 0.0);
    pts.push_back(response->support_max());
    const double rel_tol = opt.rel_tol;
    auto g_of = [response](double w) { return response->eval(w); };
    auto eval = [g_of, pts, omega_ref, rel_tol](double t) {
        const std::complex<double> raw = fourier_integral(g_of, pts, t, rel_tol);
        return raw * std::polar(1.0, omega_ref * t);
    };
    auto batch = [g_of, pts, omega_ref, rel_tol](std::span<const double> ts) {
        auto vals = fourier_integral_batch(g_of, pts, ts, rel_tol);
        for (size_t i = 0; i < vals.size(); ++i)
            vals[i] *= std::polar(1.0, omega_ref * ts[i]);
        return vals;
    };
    double weight = response->total_weight_analytic().value_or(eval(0.0).real());
    // Kernel phase content is bounded by |w - w_s| over the effective support.
    const double osc = std::max(omega_ref, response->support_max() / 8.0);
    return MemoryKernel(std::move(eval), omega_ref, response->width(),
                        std::sqrt(std::max(0.0, weight)), osc, std::move(batch));
}

MemoryKernel MemoryKernel::lorentzian(double coupling, double half_width,
                                      double line_center) {
    if (!(coupling > 0.0) || !(half_width > 0.0))
        throw std::domain_error("MemoryKernel::lorentzian: parameters must be > 0");
    auto eval = [coupling, half_width](double t) {
        return std::complex<double>(coupling * coupling * std::exp(-half_width * t), 0.0);
    };
    return MemoryKernel(std::move(eval), line_center, half_width, coupling, half_width);
}

MemoryKernel MemoryKernel::zero() {
    return MemoryKernel([](double) { return std::complex<double>(0.0, 0.0); }, 0.0, 0.0,
                        0.0, 0.0);
}

}  // namespace zeno
