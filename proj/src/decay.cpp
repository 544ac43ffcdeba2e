#include "zeno/decay.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace zeno {
namespace {

constexpr double kPi = std::numbers::pi;

std::complex<double> cexpm1(std::complex<double> z) {
    if (std::abs(z) > 0.5) return std::exp(z) - 1.0;
    std::complex<double> term = z, sum = z;
    for (int k = 2; k < 24; ++k) {
        term *= z / static_cast<double>(k);
        sum += term;
        if (std::abs(term) < 1e-18 * std::abs(sum)) break;
    }
    return sum;
}

std::vector<double> filter_split_points(double omega_a, double w) {
    std::vector<double> pts{omega_a};
    for (double k : {1.0, 10.0, 100.0, 1000.0}) {
        pts.push_back(omega_a - k * w);
        pts.push_back(omega_a + k * w);
    }
    return pts;
}

double overlap_smooth(const SpectralResponse& G, const DephasingFilter& F, double omega_a,
                      double rel_tol, double& err) {
    auto f = [&](double w) { return G.eval(w) * F.eval(w - omega_a); };
    std::vector<double> pts = G.feature_points();
    auto fp = filter_split_points(omega_a, F.width());
    pts.insert(pts.end(), fp.begin(), fp.end());
    double hi = omega_a + 1000.0 * F.width();
    for (double p : pts) hi = std::max(hi, p);
    QuadOptions opt;
    opt.rel_tol = rel_tol;
    auto main = integrate(f, 0.0, hi, pts, opt);
    QuadOptions topt;
    topt.rel_tol = 0.5;
    topt.abs_tol = std::max(1e-300, 0.1 * rel_tol * std::abs(main.value));
    topt.throw_on_failure = false;
    auto tail = integrate_upper_tail(f, hi, hi, topt);
    err = main.error_estimate + tail.error_estimate;
    return main.value + tail.value;
}

// One outer flank of the sinc^2 overlap, via the split
//   F = (1 - cos(d tau)) / (pi tau d^2),
// with the smooth 1/d^2 part integrated adaptively and the cosine part by
// Filon panels (geometric spacing away from the atomic line).
double sinc_outer(const SpectralResponse& G, double omega_a, double tau, double lo,
                  double hi, double rel_tol, double& err) {
    if (hi <= lo) return 0.0;
    auto smooth = [&](double w) {
        const double d = w - omega_a;
        return G.eval(w) / (kPi * tau * d * d);
    };
    std::vector<double> pts = G.feature_points();
    std::erase_if(pts, [&](double p) { return p <= lo || p >= hi; });
    // Geometric refinement toward the near-region boundary.
    const double near_edge = std::min(std::abs(lo - omega_a), std::abs(hi - omega_a));
    for (double s = near_edge; s < hi - lo; s *= 2.0) {
        if (lo - omega_a > 0.0)
            pts.push_back(omega_a + s);
        else
            pts.push_back(omega_a - s);
    }
    std::erase_if(pts, [&](double p) { return p <= lo || p >= hi; });
    pts.push_back(lo);
    pts.push_back(hi);
    std::sort(pts.begin(), pts.end());
    QuadOptions opt;
    opt.rel_tol = rel_tol;
    auto sm = integrate(smooth, lo, hi, pts, opt);
    const std::complex<double> osc = fourier_integral(smooth, pts, tau, rel_tol);
    const double cospart = (std::polar(1.0, omega_a * tau) * osc).real();
    err += sm.error_estimate + rel_tol * std::abs(osc);
    return sm.value - cospart;
}

double overlap_sinc(const SpectralResponse& G, const SincSquaredFilter& F, double omega_a,
                    double rel_tol, double& err) {
    const double tau = F.interval();
    const double period = F.oscillation_period();
    const int lobes = 32;
    const double near_lo = std::max(0.0, omega_a - lobes * period);
    const double near_hi = omega_a + lobes * period;
    auto f = [&](double w) { return G.eval(w) * F.eval(w - omega_a); };
    std::vector<double> pts;
    for (int k = -lobes; k <= lobes; ++k) pts.push_back(omega_a + k * period);
    for (double p : G.feature_points())
        if (p > near_lo && p < near_hi) pts.push_back(p);
    QuadOptions opt;
    opt.rel_tol = rel_tol;
    auto near = integrate(f, near_lo, near_hi, pts, opt);
    err = near.error_estimate;

    double total = near.value;
    total += sinc_outer(G, omega_a, tau, 0.0, near_lo, rel_tol, err);
    const double far = std::max(G.support_max(), near_hi * 2.0);
    total += sinc_outer(G, omega_a, tau, near_hi, far, rel_tol, err);
    // Beyond the spectral support the averaged filter tail suffices.
    auto mean_tail = [&](double w) {
        const double d = w - omega_a;
        return G.eval(w) * F.tail_coefficient() / (d * d);
    };
    QuadOptions topt;
    topt.rel_tol = 0.5;
    topt.abs_tol = std::max(1e-300, 0.1 * rel_tol * std::abs(total));
    topt.throw_on_failure = false;
    auto tail = integrate_upper_tail(mean_tail, far, far, topt);
    total += tail.value;
    err += tail.error_estimate;
    return total;
}

}  // namespace

RateResult universal_rate(const SpectralResponse& response, const DephasingFilter& filter,
                          double omega_a, double rel_tol) {
    if (!(omega_a > 0.0)) throw std::domain_error("universal_rate: omega_a must be > 0");
    RateResult r;
    r.method = RateMethod::Quadrature;
    double err = 0.0;
    if (const auto* sinc = dynamic_cast<const SincSquaredFilter*>(&filter)) {
        r.kappa_s = 2.0 * kPi * overlap_sinc(response, *sinc, omega_a, rel_tol, err);
    } else {
        r.kappa_s = 2.0 * kPi * overlap_smooth(response, filter, omega_a, rel_tol, err);
    }
    r.error_estimate = 2.0 * kPi * err;
    r.gamma_b = 0.0;
    r.kappa = r.kappa_s;
    return r;
}

RateResult universal_rate(const CompositeResponse& composite, const DephasingFilter& filter,
                          double omega_a, double rel_tol) {
    RateResult r = universal_rate(*composite.sharp, filter, omega_a, rel_tol);
    r.gamma_b = composite.gamma_b;
    r.kappa = r.kappa_s + r.gamma_b;
    return r;
}

double impulsive_rate_time_domain(const MemoryKernel& kernel, double detuning, double tau,
                                  double rel_tol) {
    if (!(tau > 0.0))
        throw std::domain_error("impulsive_rate_time_domain: tau must be > 0");
    // Gauss-Kronrod 7-15 on uniform panels sized so each holds only a few
    // radians of phase; all kernel values fetched in one batch.
    static constexpr double kXgk[8] = {
        0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
        0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
        0.586087235467691130294144838258730, 0.405845151377397166906606412076961,
        0.207784955007898467600689403773245, 0.0};
    static constexpr double kWgk[8] = {
        0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
        0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
        0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
        0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
    static constexpr double kWg[4] = {
        0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
        0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

    const double phase_scale =
        std::abs(detuning) + kernel.oscillation_scale() + kernel.decay_scale();
    int n_panels = std::clamp(static_cast<int>(std::ceil(tau * phase_scale / 3.0)), 4, 60000);

    double prev = 0.0;
    for (int pass = 0;; ++pass) {
        const double h = tau / n_panels;
        std::vector<double> nodes;
        nodes.reserve(15 * n_panels);
        for (int p = 0; p < n_panels; ++p) {
            const double c = (p + 0.5) * h;
            for (int j = 0; j < 7; ++j) {
                nodes.push_back(c - 0.5 * h * kXgk[j]);
                nodes.push_back(c + 0.5 * h * kXgk[j]);
            }
            nodes.push_back(c);
        }
        const auto phi = kernel.eval_batch(nodes);
        std::complex<double> resk{0.0, 0.0}, resg{0.0, 0.0};
        size_t idx = 0;
        for (int p = 0; p < n_panels; ++p) {
            std::complex<double> pk{0.0, 0.0}, pg{0.0, 0.0};
            for (int j = 0; j < 7; ++j) {
                const double t1 = nodes[idx];
                const std::complex<double> f1 =
                    (tau - t1) * phi[idx] * std::polar(1.0, detuning * t1);
                ++idx;
                const double t2 = nodes[idx];
                const std::complex<double> f2 =
                    (tau - t2) * phi[idx] * std::polar(1.0, detuning * t2);
                ++idx;
                pk += kWgk[j] * (f1 + f2);
                if (j % 2 == 1) pg += kWg[j / 2] * (f1 + f2);
            }
            const double tc = nodes[idx];
            const std::complex<double> fc =
                (tau - tc) * phi[idx] * std::polar(1.0, detuning * tc);
            ++idx;
            pk += kWgk[7] * fc;
            pg += kWg[3] * fc;
            resk += pk * (0.5 * h);
            resg += pg * (0.5 * h);
        }
        const double value = (2.0 / tau) * resk.real();
        const double embed_err = (2.0 / tau) * std::abs(resk - resg);
        const double scale = std::max(std::abs(value), 1e-300);
        const bool stable = pass > 0 && std::abs(value - prev) <= rel_tol * scale;
        if ((embed_err <= rel_tol * scale && (pass > 0 || n_panels >= 8)) || stable ||
            n_panels >= 60000)
            return value;
        prev = value;
        n_panels *= 2;
    }
}

ShortTimeAmplitude lorentzian_short_time_amplitude(double coupling, double half_width,
                                                   double detuning, double tau) {
    if (tau < 0.0)
        throw std::domain_error("lorentzian_short_time_amplitude: tau must be >= 0");
    const std::complex<double> b(-half_width, detuning);  // iD - Gamma
    const std::complex<double> denom(half_width, -detuning);
    // bracket = tau + (exp(b tau) - 1)/denom = tau - (exp(b tau) - 1)/b,
    // summed as a series when b*tau is small to avoid cancellation.
    const std::complex<double> z = b * tau;
    std::complex<double> bracket;
    if (std::abs(z) < 0.5) {
        // bracket = -b tau^2 sum_{j>=0} z^j/(j+2)!
        std::complex<double> term{0.5, 0.0}, sum{0.5, 0.0};
        for (int j = 1; j < 24; ++j) {
            term *= z / static_cast<double>(j + 2);
            sum += term;
            if (std::abs(term) < 1e-18 * std::abs(sum)) break;
        }
        bracket = -b * tau * tau * sum;
    } else {
        bracket = tau - cexpm1(z) / b;
    }
    ShortTimeAmplitude out;
    out.alpha = 1.0 - coupling * coupling / denom * bracket;
    out.within_validity = tau * (half_width + std::abs(detuning)) <= 0.1 &&
                          tau * coupling <= 0.1;
    return out;
}

HydrogenicRate hydrogenic_lorentzian_rate(double alpha, double omega_c, double omega_a,
                                          double nu) {
    if (!(nu > 0.0) || !(omega_a > 0.0) || !(omega_c > 0.0))
        throw std::domain_error("hydrogenic_lorentzian_rate: parameters must be > 0");
    if (alpha < 0.0) throw std::domain_error("hydrogenic_lorentzian_rate: alpha >= 0");
    HydrogenicRate out;
    out.within_validity = nu < omega_c;
    if (alpha == 0.0) return out;
    const std::complex<double> f(nu / omega_c, -omega_a / omega_c);
    const std::complex<double> f2 = f * f;
    std::complex<double> bracket;
    if (std::abs(f2 - 1.0) < 1e-3) {
        // Local expansion in u = f - 1; the closed form has removable
        // cancellations at f^2 = 1.
        using C = std::complex<double>;
        static const C c[7] = {
            C(3.0 / 4.0, -15.0 * kPi / 128.0),  C(-9.0 / 20.0, 21.0 * kPi / 128.0),
            C(1.0 / 5.0, -21.0 * kPi / 128.0),  C(-1.0 / 35.0, 9.0 * kPi / 64.0),
            C(-1.0 / 14.0, -225.0 * kPi / 2048.0), C(5.0 / 42.0, 165.0 * kPi / 2048.0),
            C(-2.0 / 15.0, -231.0 * kPi / 4096.0)};
        const C u = f - 1.0;
        C up{1.0, 0.0};
        bracket = {0.0, 0.0};
        for (int k = 0; k < 7; ++k) {
            bracket += c[k] * up;
            up *= u;
        }
        out.series_path = true;
    } else {
        const std::complex<double> f4 = f2 * f2;
        const std::complex<double> fp1 = f + 1.0;
        const std::complex<double> fp14 = fp1 * fp1 * fp1 * fp1;
        const std::complex<double> d = f2 - 1.0;
        bracket = f * (2.0 * f4 - 7.0 * f2 + 11.0) / (2.0 * d * d * d) -
                  6.0 * f * std::log(f) / (d * d * d * d) -
                  std::complex<double>(0.0, 3.0 * kPi) * (f2 + 4.0 * f + 5.0) /
                      (16.0 * fp14);
    }
    out.kappa = alpha * omega_c / 3.0 * bracket.real();
    return out;
}

CrossCheck sinc_vs_kernel_crosscheck(std::shared_ptr<const SpectralResponse> response,
                                     double omega_a, double tau, double rel_tol) {
    if (!(tau > 0.0)) throw std::domain_error("sinc_vs_kernel_crosscheck: tau must be > 0");
    CrossCheck out;
    SincSquaredFilter filter(tau);
    out.kappa_freq = universal_rate(*response, filter, omega_a, rel_tol).kappa_s;
    const MemoryKernel kernel = MemoryKernel::from_response(response);
    const double detuning = omega_a - kernel.reference_frequency();
    out.kappa_time = impulsive_rate_time_domain(kernel, detuning, tau, rel_tol);
    const double scale =
        std::max({std::abs(out.kappa_freq), std::abs(out.kappa_time), 1e-300});
    out.discrepancy = std::abs(out.kappa_freq - out.kappa_time) / scale;
    return out;
}

}  // namespace zeno
