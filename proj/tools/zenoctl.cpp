// zenoctl: decay-control calculator for a two-level emitter coupled to a
// structured reservoir. Subcommands compute interruption-modified decay
// rates, population traces, parameter sweeps, bound presets, and pulse
// schedule checks. All frequencies are rad/s, all times are seconds.

#include <atomic>
#include <cmath>
#include <complex>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <memory>
#include <mutex>
#include <numbers>
#include <sstream>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "zeno/decay.hpp"
#include "zeno/evolution.hpp"
#include "zeno/filters.hpp"
#include "zeno/quadrature.hpp"
#include "zeno/report.hpp"
#include "zeno/reservoirs.hpp"
#include "zeno/scenarios.hpp"

using json = nlohmann::ordered_json;
using namespace zeno;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitConfig = 2;
constexpr int kExitNumeric = 3;

/// Configuration problems: missing/malformed keys, impossible requests.
struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// ---------------------------------------------------------------------------
// Effective configuration: file keys overlaid by command-line flags.

/// Registers string-valued options on a subcommand and remembers which were
/// actually given, so flags can override file keys of the same name.
class KeyedOptions {
public:
    void add(CLI::App* cmd, const std::string& flag, const std::string& key,
             const std::string& desc) {
        auto [it, inserted] = values_.try_emplace(key);
        (void)inserted;
        opts_.emplace_back(key, cmd->add_option(flag, it->second, desc));
    }

    void overlay(ConfigMap& cfg) const {
        for (const auto& [key, opt] : opts_)
            if (opt->count() > 0) cfg[key] = values_.at(key);
    }

private:
    std::map<std::string, std::string> values_;
    std::vector<std::pair<std::string, CLI::Option*>> opts_;
};

ConfigMap load_config(const std::string& path) {
    if (path.empty()) return {};
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file: " + path);
    try {
        return parse_config(in);
    } catch (const std::invalid_argument& e) {
        throw ConfigError(std::string(e.what()) + " in " + path);
    }
}

double to_number(const std::string& key, const std::string& text) {
    size_t used = 0;
    double v = 0.0;
    try {
        v = std::stod(text, &used);
    } catch (const std::exception&) {
        throw ConfigError("key '" + key + "': not a number: " + text);
    }
    if (used != text.size())
        throw ConfigError("key '" + key + "': trailing characters in: " + text);
    return v;
}

double num(const ConfigMap& cfg, const std::string& key) {
    auto it = cfg.find(key);
    if (it == cfg.end()) throw ConfigError("missing required key: " + key);
    return to_number(key, it->second);
}

double num_or(const ConfigMap& cfg, const std::string& key, double fallback) {
    auto it = cfg.find(key);
    return it == cfg.end() ? fallback : to_number(key, it->second);
}

std::string str_or(const ConfigMap& cfg, const std::string& key,
                   const std::string& fallback) {
    auto it = cfg.find(key);
    return it == cfg.end() ? fallback : it->second;
}

void set_default(ConfigMap& cfg, const std::string& key, const std::string& value) {
    cfg.try_emplace(key, value);
}

std::string format_config_number(double v) { return format_number(v); }

// ---------------------------------------------------------------------------
// Preset binding: resolve a named scenario into ordinary config keys, so the
// echoed configuration fully determines every emitted number.

void bind_cavity(ConfigMap& cfg, const CavityGeometry& geom) {
    const CavityRates rates = cavity_params(geom);
    set_default(cfg, "reservoir", "lorentzian");
    set_default(cfg, "coupling", format_config_number(rates.coupling));
    set_default(cfg, "half_width", format_config_number(rates.half_width));
    set_default(cfg, "gamma_b", format_config_number(rates.background_rate));
}

void bind_preset(ConfigMap& cfg) {
    const auto it = cfg.find("preset");
    if (it == cfg.end()) return;
    const PresetPlan plan = preset(it->second);
    if (plan.kind == PresetPlan::Kind::CavityEvolution) {
        bind_cavity(cfg, plan.cavities.front());
        set_default(cfg, "detuning", format_config_number(plan.detuning));
        set_default(cfg, "tau", format_config_number(plan.taus.front()));
        set_default(cfg, "t_max", format_config_number(plan.t_max));
        set_default(cfg, "filter", "sinc");
    } else {
        set_default(cfg, "reservoir", "hydrogenic");
        set_default(cfg, "alpha", format_config_number(plan.alpha));
        set_default(cfg, "omega_c", format_config_number(plan.omega_c));
        set_default(cfg, "omega_a", format_config_number(plan.omega_a));
        set_default(cfg, "filter", "lorentzian");
        std::ostringstream axis;
        axis << plan.nu_min << ':' << plan.nu_max << ":log:" << plan.nu_points;
        set_default(cfg, "nu", axis.str());
    }
}

// ---------------------------------------------------------------------------
// Reservoir/system construction from config keys.

constexpr double kDefaultLineCenter = 1e15;  // rad/s, optical-scale carrier

struct BoundSystem {
    std::shared_ptr<const SpectralResponse> sharp;
    double gamma_b = 0.0;
    double omega_a = 0.0;
};

BoundSystem build_system(ConfigMap& cfg) {
    BoundSystem sys;
    const std::string kind = str_or(cfg, "reservoir", "lorentzian");
    set_default(cfg, "reservoir", kind);
    if (kind == "lorentzian") {
        set_default(cfg, "line_center", format_config_number(kDefaultLineCenter));
        const double center = num(cfg, "line_center");
        sys.sharp = std::make_shared<LorentzianMode>(num(cfg, "coupling"),
                                                     num(cfg, "half_width"), center);
        sys.omega_a = num_or(cfg, "omega_a", center + num_or(cfg, "detuning", 0.0));
    } else if (kind == "hydrogenic") {
        sys.sharp = std::make_shared<HydrogenicResponse>(num_or(cfg, "alpha", 1.0),
                                                         num_or(cfg, "omega_c", 1e19));
        sys.omega_a = num(cfg, "omega_a");
    } else if (kind == "tabulated") {
        const auto path = cfg.find("table");
        if (path == cfg.end()) throw ConfigError("tabulated reservoir needs key 'table'");
        try {
            sys.sharp = std::make_shared<TabulatedResponse>(
                TabulatedResponse::from_file(path->second));
        } catch (const std::invalid_argument& e) {
            throw ConfigError(std::string("table: ") + e.what());
        }
        sys.omega_a = num(cfg, "omega_a");
    } else {
        throw ConfigError("unknown reservoir: " + kind +
                          " (expected lorentzian | hydrogenic | tabulated)");
    }
    sys.gamma_b = num_or(cfg, "gamma_b", 0.0);
    if (sys.gamma_b < 0.0) throw ConfigError("gamma_b must be >= 0");
    if (!(sys.omega_a > 0.0)) throw ConfigError("omega_a must be > 0");
    return sys;
}

std::unique_ptr<DephasingFilter> build_filter(ConfigMap& cfg) {
    const std::string kind = str_or(cfg, "filter", "sinc");
    set_default(cfg, "filter", kind);
    try {
        if (kind == "sinc") return std::make_unique<SincSquaredFilter>(num(cfg, "tau"));
        if (kind == "lorentzian")
            return std::make_unique<LorentzianFilter>(num(cfg, "nu"));
    } catch (const std::domain_error& e) {
        throw ConfigError(e.what());
    }
    throw ConfigError("unknown filter: " + kind + " (expected sinc | lorentzian)");
}

// ---------------------------------------------------------------------------
// Output plumbing.

struct OutputPaths {
    std::string json_path;  // empty => stdout
    std::string csv_path;   // empty => skip
    std::string svg_path;   // empty => skip
};

void add_output_options(CLI::App* cmd, OutputPaths& out) {
    cmd->add_option("--json", out.json_path, "write the JSON result envelope here");
    cmd->add_option("--csv", out.csv_path, "write the data table here as CSV");
    cmd->add_option("--svg", out.svg_path, "write a line plot here as SVG");
}

std::ofstream open_out(const std::string& path) {
    std::ofstream f(path);
    if (!f) throw ConfigError("cannot write to: " + path);
    return f;
}

json envelope(const std::string& command, const ConfigMap& cfg) {
    json env;
    env["tool_version"] = kToolVersion;
    env["command"] = command;
    env["config"] = json::object();
    for (const auto& [k, v] : cfg) env["config"][k] = v;
    env["warnings"] = json::array();
    return env;
}

void emit_json(const json& env, const OutputPaths& out) {
    if (out.json_path.empty()) {
        std::cout << env.dump(2) << '\n';
    } else {
        auto f = open_out(out.json_path);
        f << env.dump(2) << '\n';
    }
}

void emit_csv(const Table& table, const OutputPaths& out) {
    if (out.csv_path.empty()) return;
    auto f = open_out(out.csv_path);
    write_csv(table, f);
}

void emit_svg(const std::vector<Series>& series, const PlotStyle& style,
              const OutputPaths& out) {
    if (out.svg_path.empty()) return;
    auto f = open_out(out.svg_path);
    write_svg(series, style, f);
}

// ---------------------------------------------------------------------------
// rate

int run_rate(ConfigMap cfg, const OutputPaths& out) {
    bind_preset(cfg);
    BoundSystem sys = build_system(cfg);
    auto filter = build_filter(cfg);
    const double rel_tol = num_or(cfg, "rel_tol", 1e-9);
    set_default(cfg, "rel_tol", format_config_number(rel_tol));

    CompositeResponse composite(sys.sharp, sys.gamma_b);
    const RateResult r = universal_rate(composite, *filter, sys.omega_a, rel_tol);

    json env = envelope("rate", cfg);
    env["results"]["kappa_per_s"] = r.kappa;
    env["results"]["kappa_s_per_s"] = r.kappa_s;
    env["results"]["gamma_b_per_s"] = r.gamma_b;
    env["results"]["method"] = "quadrature";
    env["error_estimates"]["kappa_per_s"] = r.error_estimate;

    // When the overlap also has a closed form, report it for traceability.
    if (const auto* hyd = dynamic_cast<const HydrogenicResponse*>(sys.sharp.get())) {
        if (const auto* lf = dynamic_cast<const LorentzianFilter*>(filter.get())) {
            const auto cf = hydrogenic_lorentzian_rate(hyd->alpha(), hyd->cutoff(),
                                                       sys.omega_a, lf->hwhm());
            env["results"]["kappa_s_closed_form_per_s"] = cf.kappa;
            env["results"]["closed_form_relative_difference"] =
                std::abs(cf.kappa - r.kappa_s) / std::max(std::abs(r.kappa_s), 1e-300);
            if (!cf.within_validity)
                env["warnings"].push_back(
                    "nu >= omega_c: dephasing width beyond the model's validity range");
        }
    }

    Table table;
    table.columns = {"omega_a_rad_per_s", "kappa_per_s", "kappa_s_per_s", "gamma_b_per_s"};
    table.rows = {{sys.omega_a, r.kappa, r.kappa_s, r.gamma_b}};
    emit_csv(table, out);
    emit_json(env, out);
    return kExitOk;
}

// ---------------------------------------------------------------------------
// evolve

struct Curve {
    std::string label;
    std::vector<double> t, w;
};

Curve background_curve(double gamma_b, double t_max, const std::string& label) {
    Curve c;
    c.label = label;
    const int n = 400;
    for (int i = 0; i <= n; ++i) {
        const double t = t_max * i / n;
        c.t.push_back(t);
        c.w.push_back(std::exp(-gamma_b * t));
    }
    return c;
}

Curve trace_curve(const EvolutionTrace& trace, const std::string& label) {
    Curve c;
    c.label = label;
    c.t = trace.times;
    c.w = trace.population;
    return c;
}

/// Effective decay rate from the interruption-node populations, restricted
/// to nodes at or after t_min.
double fitted_rate(const EvolutionTrace& trace, double t_min) {
    std::vector<double> xs, ys;
    for (size_t i = 0; i < trace.times.size(); ++i) {
        if (trace.interrupted[i] && trace.times[i] >= t_min) {
            xs.push_back(trace.times[i]);
            ys.push_back(-std::log(std::max(trace.population[i], 1e-300)));
        }
    }
    if (xs.size() < 2) throw ConfigError("not enough interruption nodes to fit a rate");
    return fit_line(xs, ys).slope;
}

int emit_curves(const std::string& command, ConfigMap& cfg, json& env,
                const std::vector<Curve>& curves, const OutputPaths& out) {
    Table table;
    table.columns = {"curve", "t_s", "W"};
    for (size_t c = 0; c < curves.size(); ++c)
        for (size_t i = 0; i < curves[c].t.size(); ++i)
            table.rows.push_back(
                {static_cast<double>(c + 1), curves[c].t[i], curves[c].w[i]});
    emit_csv(table, out);

    std::vector<Series> series;
    for (const auto& c : curves) series.push_back({c.label, c.t, c.w});
    PlotStyle style;
    style.title = command;
    style.x_label = "t (s)";
    style.y_label = "W";
    style.log_y = true;
    emit_svg(series, style, out);

    env["results"]["curves"] = json::array();
    for (size_t c = 0; c < curves.size(); ++c) {
        json jc;
        jc["index"] = c + 1;
        jc["label"] = curves[c].label;
        jc["points"] = curves[c].t.size();
        jc["final_W"] = curves[c].w.back();
        env["results"]["curves"].push_back(jc);
    }
    emit_json(env, out);
    return kExitOk;
}

int run_evolve_fig3(ConfigMap& cfg, const OutputPaths& out) {
    const PresetPlan plan = preset("fig3");
    const double tau = plan.taus.front();
    const auto lo = cavity_params(plan.cavities[0]);
    const auto hi = cavity_params(plan.cavities[1]);
    const double center = num_or(cfg, "line_center", kDefaultLineCenter);
    set_default(cfg, "line_center", format_config_number(center));

    CompositeResponse sys_lo(
        std::make_shared<LorentzianMode>(lo.coupling, lo.half_width, center),
        lo.background_rate);
    CompositeResponse sys_hi(
        std::make_shared<LorentzianMode>(hi.coupling, hi.half_width, center),
        hi.background_rate);
    const auto schedule = MeasurementSchedule::until(tau, plan.t_max);
    const auto interrupted = interrupted_evolution(sys_lo, 0.0, schedule);
    const auto free_lo = uninterrupted_evolution(sys_lo, 0.0, plan.t_max);
    const auto free_hi = uninterrupted_evolution(sys_hi, 0.0, plan.t_max);

    std::vector<Curve> curves;
    curves.push_back(background_curve(lo.background_rate, plan.t_max,
                                      "curve 1: background continuum"));
    curves.push_back(trace_curve(interrupted, "curve 2: interrupted, tau=3e-8 s"));
    curves.push_back(trace_curve(free_lo, "curve 3: uninterrupted, F=1e5"));
    curves.push_back(trace_curve(free_hi, "curve 4: uninterrupted, F=1e6"));

    json env = envelope("evolve", cfg);
    const double kappa_pred = lo.coupling * lo.coupling * tau + lo.background_rate;
    env["results"]["kappa_eff_per_s"] = fitted_rate(interrupted, 5e-7);
    env["results"]["kappa_pred_per_s"] = kappa_pred;
    return emit_curves("evolve: Lorentzian line on resonance", cfg, env, curves, out);
}

int run_evolve_fig4(ConfigMap& cfg, const OutputPaths& out) {
    const PresetPlan plan = preset("fig4");
    const auto hi = cavity_params(plan.cavities[0]);
    const double center = num_or(cfg, "line_center", kDefaultLineCenter);
    set_default(cfg, "line_center", format_config_number(center));
    CompositeResponse sys(
        std::make_shared<LorentzianMode>(hi.coupling, hi.half_width, center),
        hi.background_rate);
    const double tau3 = plan.taus[0];  // detuning * tau = 3 pi
    const double tau5 = plan.taus[1];  // detuning * tau = 5 pi

    const auto free_run = uninterrupted_evolution(sys, plan.detuning, plan.t_max);
    const auto inter5 = interrupted_evolution(
        sys, plan.detuning, MeasurementSchedule::until(tau5, plan.t_max));
    const auto inter3 = interrupted_evolution(
        sys, plan.detuning, MeasurementSchedule::until(tau3, plan.t_max));

    std::vector<Curve> curves;
    curves.push_back(background_curve(hi.background_rate, plan.t_max,
                                      "curve 1: background continuum"));
    curves.push_back(trace_curve(free_run, "curve 2: uninterrupted"));
    curves.push_back(trace_curve(inter5, "curve 3: interrupted, detuning*tau=5pi"));
    curves.push_back(trace_curve(inter3, "curve 4: interrupted, detuning*tau=3pi"));

    json env = envelope("evolve", cfg);
    const double taus[] = {tau3, tau5};
    const auto rows = detuned_enhancement(sys, plan.detuning, taus);
    env["results"]["rates"] = json::array();
    for (const auto& row : rows) {
        json jr;
        jr["tau_s"] = row.tau;
        jr["kappa_eff_per_s"] = row.kappa_eff;
        jr["kappa_pred_per_s"] = row.kappa_pred;
        jr["kappa_uninterrupted_per_s"] = row.kappa_uninterrupted;
        env["results"]["rates"].push_back(jr);
    }
    return emit_curves("evolve: detuned line", cfg, env, curves, out);
}

int run_evolve(ConfigMap cfg, const OutputPaths& out) {
    const std::string preset_name = str_or(cfg, "preset", "");
    if (preset_name == "fig3") return run_evolve_fig3(cfg, out);
    if (preset_name == "fig4") return run_evolve_fig4(cfg, out);
    if (preset_name == "antizeno")
        throw ConfigError("preset 'antizeno' is a rate sweep; use the sweep command");
    bind_preset(cfg);  // rejects unknown names

    BoundSystem sys = build_system(cfg);
    const double tau = num(cfg, "tau");
    const double t_max = num(cfg, "t_max");
    const double detuning = sys.omega_a - sys.sharp->center();
    CompositeResponse composite(sys.sharp, sys.gamma_b);

    std::vector<Curve> curves;
    try {
        const auto schedule = MeasurementSchedule::until(tau, t_max);
        const auto interrupted = interrupted_evolution(composite, detuning, schedule);
        const auto free_run = uninterrupted_evolution(composite, detuning, t_max);
        curves.push_back(background_curve(sys.gamma_b, t_max, "background"));
        curves.push_back(trace_curve(interrupted, "interrupted"));
        curves.push_back(trace_curve(free_run, "uninterrupted"));
        json env = envelope("evolve", cfg);
        env["results"]["kappa_eff_per_s"] = fitted_rate(interrupted, 0.0);
        return emit_curves("evolve", cfg, env, curves, out);
    } catch (const std::domain_error& e) {
        throw ConfigError(e.what());
    }
}

// ---------------------------------------------------------------------------
// sweep

int worker_count(const ConfigMap& cfg) {
    double n = num_or(cfg, "workers", 0.0);
    if (n == 0.0) {
        if (const char* env = std::getenv("ZENO_WORKERS")) n = to_number("workers", env);
    }
    if (n == 0.0) n = 1.0;
    if (n < 1.0 || n != std::floor(n)) throw ConfigError("workers must be a positive integer");
    return static_cast<int>(n);
}

int run_sweep(ConfigMap cfg, const OutputPaths& out) {
    bind_preset(cfg);
    // Exactly one of tau/nu must be an axis spec lo:hi:lin|log:count.
    const bool tau_axis = str_or(cfg, "tau", "").find(':') != std::string::npos;
    const bool nu_axis = str_or(cfg, "nu", "").find(':') != std::string::npos;
    if (tau_axis == nu_axis)
        throw ConfigError("sweep needs exactly one axis: tau or nu as lo:hi:lin|log:count");
    const std::string axis_key = tau_axis ? "tau" : "nu";
    std::vector<double> points;
    try {
        points = parse_axis(cfg.at(axis_key));
    } catch (const std::invalid_argument& e) {
        throw ConfigError(e.what());
    }
    set_default(cfg, "filter", tau_axis ? "sinc" : "lorentzian");
    if (str_or(cfg, "filter", "") != (tau_axis ? "sinc" : "lorentzian"))
        throw ConfigError("filter does not match the sweep axis (tau -> sinc, nu -> lorentzian)");

    BoundSystem sys = build_system(cfg);
    const double rel_tol = num_or(cfg, "rel_tol", 1e-9);
    set_default(cfg, "rel_tol", format_config_number(rel_tol));
    // Worker count affects scheduling only, never results, so it is kept
    // out of the echoed config to preserve byte-identical envelopes.
    const int workers = worker_count(cfg);
    cfg.erase("workers");
    const double omega_c_limit =
        dynamic_cast<const HydrogenicResponse*>(sys.sharp.get())
            ? dynamic_cast<const HydrogenicResponse*>(sys.sharp.get())->cutoff()
            : 0.0;

    struct Row {
        double kappa = 0.0, kappa_s = 0.0, err = 0.0;
        bool valid = true;
    };
    std::vector<Row> rows(points.size());
    std::atomic<size_t> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;
    auto work = [&] {
        for (size_t i = next.fetch_add(1); i < points.size(); i = next.fetch_add(1)) {
            try {
                std::unique_ptr<DephasingFilter> filter;
                if (tau_axis)
                    filter = std::make_unique<SincSquaredFilter>(points[i]);
                else
                    filter = std::make_unique<LorentzianFilter>(points[i]);
                const auto r = universal_rate(CompositeResponse(sys.sharp, sys.gamma_b),
                                              *filter, sys.omega_a, rel_tol);
                rows[i] = {r.kappa, r.kappa_s, r.error_estimate,
                           omega_c_limit == 0.0 || tau_axis || points[i] < omega_c_limit};
            } catch (...) {
                std::lock_guard<std::mutex> lock(failure_mutex);
                if (!failure) failure = std::current_exception();
                return;
            }
        }
    };
    std::vector<std::thread> pool;
    for (int wkr = 1; wkr < workers; ++wkr) pool.emplace_back(work);
    work();
    for (auto& th : pool) th.join();
    if (failure) std::rethrow_exception(failure);

    Table table;
    table.columns = {tau_axis ? "tau_s" : "nu_rad_per_s", "kappa_per_s", "kappa_s_per_s",
                     "gamma_b_per_s", "error_estimate_per_s", "within_validity"};
    for (size_t i = 0; i < points.size(); ++i)
        table.rows.push_back({points[i], rows[i].kappa, rows[i].kappa_s, sys.gamma_b,
                              rows[i].err, rows[i].valid ? 1.0 : 0.0});
    emit_csv(table, out);

    json env = envelope("sweep", cfg);
    env["results"]["axis"] = axis_key;
    env["results"]["points"] = points.size();
    env["results"]["rows"] = json::array();
    for (size_t i = 0; i < points.size(); ++i) {
        json jr;
        jr[table.columns[0]] = points[i];
        jr["kappa_per_s"] = rows[i].kappa;
        jr["kappa_s_per_s"] = rows[i].kappa_s;
        jr["within_validity"] = rows[i].valid;
        env["results"]["rows"].push_back(jr);
    }
    bool any_invalid = false;
    for (const auto& r : rows) any_invalid |= !r.valid;
    if (any_invalid)
        env["warnings"].push_back(
            "nu >= omega_c at some grid points: outside the model's validity range");

    std::vector<Series> series;
    Series s;
    s.label = "kappa";
    s.x = points;
    for (const auto& r : rows) s.y.push_back(r.kappa);
    series.push_back(std::move(s));
    PlotStyle style;
    style.title = "sweep";
    style.x_label = tau_axis ? "tau (s)" : "nu (rad/s)";
    style.y_label = "kappa (1/s)";
    style.log_x = true;
    style.log_y = true;
    emit_svg(series, style, out);
    emit_json(env, out);
    return kExitOk;
}

// ---------------------------------------------------------------------------
// preset

int run_preset(const std::string& name, bool list, const OutputPaths& out) {
    if (list) {
        json env;
        env["tool_version"] = kToolVersion;
        env["command"] = "preset";
        env["presets"] = {"fig3", "fig4", "antizeno"};
        emit_json(env, out);
        return kExitOk;
    }
    if (name.empty()) throw ConfigError("preset: give a name or --list");
    PresetPlan plan;
    try {
        plan = preset(name);
    } catch (const std::invalid_argument& e) {
        throw ConfigError(e.what());
    }
    json env;
    env["tool_version"] = kToolVersion;
    env["command"] = "preset";
    env["name"] = plan.name;
    if (plan.kind == PresetPlan::Kind::CavityEvolution) {
        env["kind"] = "cavity_evolution";
        env["cavities"] = json::array();
        for (const auto& geom : plan.cavities) {
            const auto rates = cavity_params(geom);
            json jc;
            jc["mirror_factor"] = geom.mirror_factor;
            jc["length_cm"] = geom.length_cm;
            jc["solid_angle_fraction"] = geom.solid_angle_fraction;
            jc["free_space_rate_per_s"] = geom.free_space_rate;
            jc["half_width_per_s"] = rates.half_width;
            jc["coupling_rad_per_s"] = rates.coupling;
            jc["background_rate_per_s"] = rates.background_rate;
            env["cavities"].push_back(jc);
        }
        env["detuning_rad_per_s"] = plan.detuning;
        env["taus_s"] = plan.taus;
        env["t_max_s"] = plan.t_max;
    } else {
        env["kind"] = "rate_sweep";
        env["alpha"] = plan.alpha;
        env["omega_c_rad_per_s"] = plan.omega_c;
        env["omega_a_rad_per_s"] = plan.omega_a;
        env["nu_min_rad_per_s"] = plan.nu_min;
        env["nu_max_rad_per_s"] = plan.nu_max;
        env["nu_points"] = plan.nu_points;
    }
    emit_json(env, out);
    return kExitOk;
}

// ---------------------------------------------------------------------------
// validate

int run_validate(ConfigMap cfg, const OutputPaths& out) {
    PulseSchedule s;
    s.tau = num(cfg, "tau");
    s.t_p = num(cfg, "t_p");
    s.omega_p = num(cfg, "omega_p");
    s.gamma_u = num(cfg, "gamma_u");
    ScheduleThresholds th;
    th.separation_factor = num_or(cfg, "separation_factor", th.separation_factor);
    th.pi_pulse_tolerance = num_or(cfg, "pi_pulse_tolerance", th.pi_pulse_tolerance);
    set_default(cfg, "separation_factor", format_config_number(th.separation_factor));
    set_default(cfg, "pi_pulse_tolerance", format_config_number(th.pi_pulse_tolerance));

    ScheduleReport r;
    try {
        r = validate_schedule(s, th);
    } catch (const std::domain_error& e) {
        throw ConfigError(e.what());
    }
    json env = envelope("validate", cfg);
    env["results"]["pulse_area_rad"] = r.pulse_area;
    env["results"]["interval_exceeds_pulse"] = r.interval_exceeds_pulse;
    env["results"]["pi_pulse"] = r.pi_pulse;
    env["results"]["pulse_within_lifetime"] = r.pulse_within_lifetime;
    env["results"]["interval_exceeds_lifetime"] = r.interval_exceeds_lifetime;
    env["results"]["all_pass"] = r.all_pass();
    if (!r.interval_exceeds_pulse)
        env["warnings"].push_back("interruption interval is not well above the pulse duration");
    if (!r.pi_pulse)
        env["warnings"].push_back("pulse area differs from pi beyond tolerance");
    if (!r.pulse_within_lifetime)
        env["warnings"].push_back("pulse is not short against the auxiliary lifetime");
    if (!r.interval_exceeds_lifetime)
        env["warnings"].push_back(
            "auxiliary state does not fully relax between interruptions");
    emit_json(env, out);
    return kExitOk;  // validity warnings do not change the exit code
}

// ---------------------------------------------------------------------------

void add_physics_options(CLI::App* cmd, KeyedOptions& keys) {
    keys.add(cmd, "--preset", "preset", "named scenario: fig3 | fig4 | antizeno");
    keys.add(cmd, "--reservoir", "reservoir", "lorentzian | hydrogenic | tabulated");
    keys.add(cmd, "--coupling", "coupling", "Lorentzian line coupling g (rad/s)");
    keys.add(cmd, "--half-width", "half_width", "Lorentzian line HWHM (1/s)");
    keys.add(cmd, "--line-center", "line_center", "Lorentzian line center (rad/s)");
    keys.add(cmd, "--alpha", "alpha", "hydrogenic response strength");
    keys.add(cmd, "--omega-c", "omega_c", "hydrogenic cutoff frequency (rad/s)");
    keys.add(cmd, "--table", "table", "two-column (omega, G) file for tabulated reservoirs");
    keys.add(cmd, "--gamma-b", "gamma_b", "background continuum rate (1/s)");
    keys.add(cmd, "--omega-a", "omega_a", "emitter transition frequency (rad/s)");
    keys.add(cmd, "--detuning", "detuning", "omega_a - line center (rad/s)");
    keys.add(cmd, "--filter", "filter", "dephasing window: sinc | lorentzian");
    keys.add(cmd, "--tau", "tau", "interruption interval (s); axis spec in sweeps");
    keys.add(cmd, "--nu", "nu", "dephasing width (rad/s); axis spec in sweeps");
    keys.add(cmd, "--t-max", "t_max", "evolution end time (s)");
    keys.add(cmd, "--rel-tol", "rel_tol", "relative tolerance for quadrature");
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"measurement-controlled decay calculator"};
    app.set_version_flag("--version", std::string("zenoctl ") + kToolVersion);
    app.require_subcommand(1);

    std::string config_path;
    OutputPaths out;

    auto* rate_cmd = app.add_subcommand("rate", "decay rate for one configuration");
    auto* evolve_cmd = app.add_subcommand("evolve", "population traces");
    auto* sweep_cmd = app.add_subcommand("sweep", "rate table over a parameter axis");
    auto* preset_cmd = app.add_subcommand("preset", "show a named scenario binding");
    auto* validate_cmd = app.add_subcommand("validate", "check a pulse schedule");

    KeyedOptions rate_keys, evolve_keys, sweep_keys, validate_keys;
    for (auto* cmd : {rate_cmd, evolve_cmd, sweep_cmd, preset_cmd, validate_cmd}) {
        cmd->add_option("--config", config_path, "key=value configuration file");
        add_output_options(cmd, out);
    }
    add_physics_options(rate_cmd, rate_keys);
    add_physics_options(evolve_cmd, evolve_keys);
    add_physics_options(sweep_cmd, sweep_keys);
    sweep_keys.add(sweep_cmd, "--workers", "workers",
                   "concurrent grid evaluations (default: ZENO_WORKERS or 1)");
    validate_keys.add(validate_cmd, "--tau", "tau", "interruption interval (s)");
    validate_keys.add(validate_cmd, "--t-p", "t_p", "pump pulse duration (s)");
    validate_keys.add(validate_cmd, "--omega-p", "omega_p", "pump Rabi frequency (rad/s)");
    validate_keys.add(validate_cmd, "--gamma-u", "gamma_u", "auxiliary decay rate (1/s)");
    validate_keys.add(validate_cmd, "--separation-factor", "separation_factor",
                      "reading of the much-greater-than conditions");
    validate_keys.add(validate_cmd, "--pi-pulse-tolerance", "pi_pulse_tolerance",
                      "allowed relative deviation of the pulse area from pi");

    std::string preset_name;
    bool preset_list = false;
    preset_cmd->add_option("name", preset_name, "preset name");
    preset_cmd->add_flag("--list", preset_list, "list available presets");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitConfig;
    }

    try {
        ConfigMap cfg = load_config(config_path);
        if (rate_cmd->parsed()) {
            rate_keys.overlay(cfg);
            return run_rate(std::move(cfg), out);
        }
        if (evolve_cmd->parsed()) {
            evolve_keys.overlay(cfg);
            return run_evolve(std::move(cfg), out);
        }
        if (sweep_cmd->parsed()) {
            sweep_keys.overlay(cfg);
            return run_sweep(std::move(cfg), out);
        }
        if (preset_cmd->parsed()) return run_preset(preset_name, preset_list, out);
        if (validate_cmd->parsed()) {
            validate_keys.overlay(cfg);
            return run_validate(std::move(cfg), out);
        }
        return kExitConfig;
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return kExitConfig;
    } catch (const std::invalid_argument& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return kExitConfig;
    } catch (const QuadratureError& e) {
        std::cerr << "numeric error: " << e.what()
                  << " (error estimate " << e.error_estimate << ")\n";
        return kExitNumeric;
    } catch (const StepTooCoarse& e) {
        std::cerr << "numeric error: " << e.what()
                  << " (suggested step " << e.suggested_step << ")\n";
        return kExitNumeric;
    } catch (const std::domain_error& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return kExitConfig;
    } catch (const std::exception& e) {
        std::cerr << "numeric error: " << e.what() << '\n';
        return kExitNumeric;
    }
}
