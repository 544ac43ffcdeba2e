// End-to-end checks of the zenoctl binary: exit codes, determinism of the
// emitted artifacts, config handling, and sweep output shape. The path to
// the binary under test arrives as argv[1].

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

namespace fs = std::filesystem;

namespace {

int g_failures = 0;

void expect(bool ok, const std::string& what) {
    if (!ok) {
        ++g_failures;
        std::cerr << "FAIL: " << what << '\n';
    }
}

std::string g_tool;
fs::path g_dir;

/// Runs the tool with the given arguments; returns the exit code.
int run(const std::string& args, const std::string& env = "") {
    const std::string cmd = env + (env.empty() ? "" : " ") + g_tool + " " + args +
                            " >" + (g_dir / "stdout.txt").string() + " 2>" +
                            (g_dir / "stderr.txt").string();
    const int status = std::system(cmd.c_str());
    if (status == -1) return -1;
    return WEXITSTATUS(status);
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream out;
    out << in.rdbuf();
    return out.str();
}

std::vector<std::vector<std::string>> read_csv(const fs::path& p) {
    std::vector<std::vector<std::string>> rows;
    std::ifstream in(p);
    std::string line;
    while (std::getline(in, line)) {
        std::vector<std::string> row;
        std::stringstream ss(line);
        std::string cell;
        while (std::getline(ss, cell, ',')) row.push_back(cell);
        rows.push_back(row);
    }
    return rows;
}

std::string at(const fs::path& p) { return (g_dir / p).string(); }

void test_exit_codes() {
    expect(run("rate --preset fig3 --tau 3e-8") == 0, "rate on a preset exits 0");
    expect(run("rate --reservoir lorentzian --coupling 1e6 --tau 1e-8") == 2,
           "missing required key exits 2");
    expect(run("rate --preset nosuch --tau 1e-8") == 2, "unknown preset exits 2");
    expect(run("rate --config " + at("absent.cfg")) == 2, "missing config file exits 2");
    expect(run("sweep --reservoir hydrogenic --omega-a 1e15 --nu 1e12:1e17:geom:50") == 2,
           "malformed axis spec exits 2");
    expect(run("sweep --reservoir hydrogenic --omega-a 1e15") == 2,
           "sweep without an axis exits 2");
    expect(run("rate --reservoir lorentzian --coupling 4.5e6 --half-width 6.3e6 "
               "--tau 3e-8 --rel-tol 1e-16") == 3,
           "unreachable tolerance exits 3");
    expect(run("validate --tau 1e-7 --t-p 1e-10 --omega-p 1e10 --gamma-u 1e9") == 0,
           "validity warnings keep exit code 0");
    expect(run("") == 2, "missing subcommand exits 2");
}

void test_determinism() {
    const std::string args =
        "evolve --preset fig3 --json {J} --csv {C} --svg {S}";
    auto bound = [&](const std::string& tag) {
        std::string a = args;
        a.replace(a.find("{J}"), 3, at("det_" + tag + ".json"));
        a.replace(a.find("{C}"), 3, at("det_" + tag + ".csv"));
        a.replace(a.find("{S}"), 3, at("det_" + tag + ".svg"));
        return a;
    };
    expect(run(bound("a")) == 0, "first evolve run exits 0");
    expect(run(bound("b")) == 0, "second evolve run exits 0");
    expect(slurp(g_dir / "det_a.json") == slurp(g_dir / "det_b.json"),
           "JSON bytes identical across runs");
    expect(slurp(g_dir / "det_a.csv") == slurp(g_dir / "det_b.csv"),
           "CSV bytes identical across runs");
    expect(slurp(g_dir / "det_a.svg") == slurp(g_dir / "det_b.svg"),
           "SVG bytes identical across runs");
    const std::string svg = slurp(g_dir / "det_a.svg");
    expect(svg.rfind("<svg", 0) == 0 || svg.find("<svg") != std::string::npos,
           "SVG artifact contains an svg element");
    expect(svg.find("curve 4") != std::string::npos, "SVG legend lists curve 4");

    const auto rows = read_csv(g_dir / "det_a.csv");
    expect(!rows.empty() && rows[0] == std::vector<std::string>{"curve", "t_s", "W"},
           "evolve CSV header");
    double max_curve = 0.0;
    for (size_t i = 1; i < rows.size(); ++i) max_curve = std::max(max_curve, std::stod(rows[i][0]));
    expect(max_curve == 4.0, "evolve CSV holds four curves");
}

void test_sweep() {
    const std::string common =
        "sweep --reservoir hydrogenic --omega-a 1e15 --nu 1e12:1e17:log:50";
    expect(run(common + " --json " + at("sw1.json") + " --csv " + at("sw1.csv")) == 0,
           "sweep exits 0");
    expect(run(common + " --json " + at("sw2.json") + " --csv " + at("sw2.csv"),
               "ZENO_WORKERS=3") == 0,
           "sweep with workers exits 0");
    expect(slurp(g_dir / "sw1.csv") == slurp(g_dir / "sw2.csv"),
           "sweep CSV independent of worker count");
    expect(slurp(g_dir / "sw1.json") == slurp(g_dir / "sw2.json"),
           "sweep JSON independent of worker count");

    const auto rows = read_csv(g_dir / "sw1.csv");
    expect(rows.size() == 51, "sweep CSV has header + 50 rows");
    expect(!rows.empty() && rows[0][0] == "nu_rad_per_s" && rows[0][1] == "kappa_per_s",
           "sweep CSV header names parameter and units");
    bool monotone = true;
    for (size_t i = 2; i < rows.size(); ++i)
        if (std::stod(rows[i][1]) <= std::stod(rows[i - 1][1])) monotone = false;
    expect(monotone, "sweep rate table is strictly increasing in nu");
}

void test_config_roundtrip() {
    {
        std::ofstream cfg(g_dir / "run.cfg");
        cfg << "# sweep setup\n"
            << "reservoir = hydrogenic\n"
            << "omega_a = 1e15\n"
            << "filter = lorentzian\n"
            << "nu = 1e14\n";
    }
    expect(run("rate --config " + at("run.cfg") + " --json " + at("cfg1.json")) == 0,
           "config file run exits 0");
    // Flag overrides the file value, and the echo shows the winner.
    expect(run("rate --config " + at("run.cfg") + " --nu 2e14 --json " +
               at("cfg2.json")) == 0,
           "flag override run exits 0");
    const std::string echo1 = slurp(g_dir / "cfg1.json");
    const std::string echo2 = slurp(g_dir / "cfg2.json");
    expect(echo1.find("\"nu\": \"1e14\"") != std::string::npos, "file value echoed");
    expect(echo2.find("\"nu\": \"2e14\"") != std::string::npos, "flag value wins");
    expect(echo1 != echo2, "different effective configs give different envelopes");
}

void test_preset_listing() {
    expect(run("preset --list") == 0, "preset --list exits 0");
    expect(slurp(g_dir / "stdout.txt").find("antizeno") != std::string::npos,
           "preset list names antizeno");
    expect(run("preset fig3") == 0, "preset fig3 exits 0");
    const std::string plan = slurp(g_dir / "stdout.txt");
    expect(plan.find("\"coupling_rad_per_s\"") != std::string::npos,
           "preset plan reports derived cavity rates");
}

}  // namespace

int main(int argc, char** argv) {
    if (argc < 2) {
        std::cerr << "usage: cli_tests <path-to-zenoctl>\n";
        return 1;
    }
    g_tool = argv[1];
    g_dir = fs::temp_directory_path() / "zenoctl_cli_tests";
    fs::remove_all(g_dir);
    fs::create_directories(g_dir);

    test_exit_codes();
    test_determinism();
    test_sweep();
    test_config_roundtrip();
    test_preset_listing();

    if (g_failures == 0) {
        std::cout << "cli_tests: all checks passed\n";
        return 0;
    }
    std::cerr << "cli_tests: " << g_failures << " check(s) failed\n";
    return 1;
}
