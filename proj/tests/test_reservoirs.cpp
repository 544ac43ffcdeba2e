#include "doctest.h"

#include <cmath>
#include <memory>
#include <numbers>
#include <random>
#include <sstream>

#include "zeno/quadrature.hpp"
#include "zeno/reservoirs.hpp"

using namespace zeno;
using std::numbers::pi;

TEST_CASE("Lorentzian mode peak and weight") {
    const double g = 4.5e6, gam = 6.3e6, ws = 1e10;
    LorentzianMode mode(g, gam, ws);
    CHECK(mode.eval(ws) == doctest::Approx(g * g / (pi * gam)).epsilon(1e-14));
    // Spectral weight over [0, inf): the full-line weight g^2 minus the
    // (small) part of the line shape below zero frequency.
    auto pts = mode.feature_points();
    auto r = integrate([&](double w) { return mode.eval(w); }, 0.0, ws + 1e5 * gam, pts,
                       {.rel_tol = 1e-10});
    auto tail = integrate_upper_tail([&](double w) { return mode.eval(w); },
                                     ws + 1e5 * gam, ws);
    const double half_line = g * g * (0.5 + std::atan(ws / gam) / pi);
    CHECK(r.value + tail.value == doctest::Approx(half_line).epsilon(1e-7));
    CHECK(*mode.total_weight_analytic() == doctest::Approx(g * g));
}

TEST_CASE("Lorentzian mode rejects bad parameters and negative omega") {
    CHECK_THROWS_AS(LorentzianMode(0.0, 1.0, 1.0), std::domain_error);
    CHECK_THROWS_AS(LorentzianMode(1.0, -1.0, 1.0), std::domain_error);
    CHECK_THROWS_AS(LorentzianMode(1.0, 1.0, 0.0), std::domain_error);
    LorentzianMode mode(1.0, 1.0, 10.0);
    CHECK_THROWS_AS(mode.eval(-0.1), std::domain_error);
}

TEST_CASE("hydrogenic response values") {
    const double wc = 1e19;
    HydrogenicResponse h(2.0, wc);
    CHECK(h.eval(0.0) == 0.0);
    CHECK(h.eval(wc) == doctest::Approx(2.0 * wc / 16.0).epsilon(1e-14));
    CHECK(h.eval(100.0 * wc) < h.eval(wc) * 1e-6);

    // Peak location: numeric scan oracle against the closed-form w_c/sqrt(7).
    double best_w = 0.0, best_v = -1.0;
    for (int i = 0; i <= 200000; ++i) {
        const double w = wc * i / 100000.0;
        const double v = h.eval(w);
        if (v > best_v) {
            best_v = v;
            best_w = w;
        }
    }
    CHECK(best_w == doctest::Approx(wc / std::sqrt(7.0)).epsilon(1e-4));
    CHECK(h.peak_frequency() == doctest::Approx(wc / std::sqrt(7.0)));
}

TEST_CASE("non-negativity over a dense grid") {
    LorentzianMode lor(2.0, 3.0, 50.0);
    HydrogenicResponse hyd(1.5, 80.0);
    TabulatedResponse tab({0.0, 1.0, 2.0, 5.0}, {0.0, 2.0, 1.0, 0.0});
    for (int i = 0; i <= 5000; ++i) {
        const double w = 200.0 * i / 5000.0;
        CHECK(lor.eval(w) >= 0.0);
        CHECK(hyd.eval(w) >= 0.0);
        CHECK(tab.eval(w) >= 0.0);
    }
}

TEST_CASE("frequency-scaling covariance of the Lorentzian response") {
    std::mt19937 rng(1234);
    std::uniform_real_distribution<double> u(0.5, 5.0);
    for (int trial = 0; trial < 50; ++trial) {
        const double g = u(rng), gam = u(rng), ws = 10.0 * u(rng), w = 10.0 * u(rng);
        const double s = u(rng);
        LorentzianMode base(g, gam, ws);
        LorentzianMode scaled(s * g, s * gam, s * ws);
        CHECK(scaled.eval(s * w) == doctest::Approx(s * base.eval(w)).epsilon(1e-12));
    }
}

TEST_CASE("tabulated response interpolation and range") {
    TabulatedResponse tab({1.0, 2.0, 4.0}, {0.0, 2.0, 0.0});
    CHECK(tab.eval(1.5) == doctest::Approx(1.0));
    CHECK(tab.eval(3.0) == doctest::Approx(1.0));
    CHECK(tab.eval(0.5) == 0.0);
    CHECK(tab.eval(9.0) == 0.0);
    CHECK(tab.center() == 2.0);
}

TEST_CASE("tabulated response input validation") {
    CHECK_THROWS_AS(TabulatedResponse({1.0, 1.0}, {0.0, 1.0}), std::invalid_argument);
    CHECK_THROWS_AS(TabulatedResponse({2.0, 1.0}, {0.0, 1.0}), std::invalid_argument);
    CHECK_THROWS_AS(TabulatedResponse({1.0, 2.0}, {-0.5, 1.0}), std::invalid_argument);
    CHECK_THROWS_AS(TabulatedResponse({1.0}, {1.0}), std::invalid_argument);
}

TEST_CASE("tabulated response parses two-column text") {
    std::istringstream in(
        "# reservoir samples\n"
        "1.0 0.5\n"
        "2.0, 1.5   # comma separated works too\n"
        "\n"
        "3.0\t0.25\n");
    auto tab = TabulatedResponse::from_stream(in);
    CHECK(tab.omegas().size() == 3);
    CHECK(tab.eval(2.0) == doctest::Approx(1.5));

    std::istringstream bad("1.0\n");
    CHECK_THROWS_AS(TabulatedResponse::from_stream(bad), std::invalid_argument);
}

TEST_CASE("Lorentzian kernel is analytic") {
    const double g = 3.0e6, gam = 5.0e6;
    auto mode = std::make_shared<LorentzianMode>(g, gam, 1e10);
    auto kernel = MemoryKernel::from_response(mode);
    CHECK(kernel(0.0).real() == doctest::Approx(g * g));
    CHECK(kernel(0.0).imag() == 0.0);
    CHECK(kernel(1.0 / gam).real() == doctest::Approx(g * g * std::exp(-1.0)));
    CHECK_THROWS_AS(kernel(-1e-9), std::domain_error);
}

TEST_CASE("kernel/spectrum consistency at t=0") {
    // Phi(0) must reproduce the spectral weight for numeric kernels too.
    auto hyd = std::make_shared<HydrogenicResponse>(1.0, 1e19);
    auto kernel = MemoryKernel::from_response(hyd);
    const double weight = *hyd->total_weight_analytic();
    CHECK(kernel(0.0).real() == doctest::Approx(weight).epsilon(1e-6));
    CHECK(std::abs(kernel(0.0).imag()) < 1e-6 * weight);

    TabulatedResponse tab({1.0, 2.0, 3.0}, {0.0, 4.0, 0.0});
    auto tkernel = MemoryKernel::from_response(std::make_shared<TabulatedResponse>(tab));
    CHECK(tkernel(0.0).real() == doctest::Approx(4.0).epsilon(1e-8));  // box weight
}

TEST_CASE("narrow tabulated box kernel stays near its weight at small t") {
    // Narrow box of weight W centered on the reference frequency: Phi(t) ~ W
    // for t well inside the inverse width (direct quadrature oracle below).
    const double ws = 100.0, half = 0.05, height = 10.0;
    TabulatedResponse box({ws - half, ws, ws + half}, {0.0, height, 0.0});
    const double W = height * half;  // triangle area
    auto kernel = MemoryKernel::from_response(std::make_shared<TabulatedResponse>(box));
    const double t = 1e-3 / half;
    const auto phi = kernel(t);
    CHECK(std::abs(phi - std::complex<double>(W, 0.0)) < 1e-3 * W);

    // Independent oracle: direct Riemann quadrature of the defining integral.
    std::complex<double> acc{0.0, 0.0};
    const int n = 20000;
    for (int i = 0; i < n; ++i) {
        const double w = (ws - half) + 2.0 * half * (i + 0.5) / n;
        acc += box.eval(w) * std::polar(1.0, -(w - ws) * t) * (2.0 * half / n);
    }
    CHECK(std::abs(phi - acc) < 1e-6 * W);
}

TEST_CASE("composite response validation") {
    auto mode = std::make_shared<LorentzianMode>(1.0, 1.0, 10.0);
    CHECK_THROWS_AS(CompositeResponse(nullptr, 0.5), std::invalid_argument);
    CHECK_THROWS_AS(CompositeResponse(mode, -1.0), std::domain_error);
    CompositeResponse ok(mode, 0.5);
    CHECK(ok.gamma_b == 0.5);
}
