#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "wirenoise/wirenoise.hpp"

using namespace wirenoise;
using nlohmann::json;

namespace {

json input_json(const DesignInput& in) {
    return {{"sigma_m", in.rough.sigma()},
            {"xi_m", in.rough.xi()},
            {"alpha", in.rough.alpha()},
            {"thickness_m", in.x0.value},
            {"kappa_A_per_m1.5", in.kappa.value},
            {"v_max_T2", in.v_max.value},
            {"bias_z_T", in.bias_z.value},
            {"atom", {{"label", in.atom.label}, {"mass_kg", in.atom.mass.value}, {"mu_z_J_per_T", in.atom.mu_z.value}}}};
}

json result_json(const DesignResult& r) {
    return {{"d_min_m", r.d_min.value},
            {"i_max_A", r.i_max.value},
            {"b_grad_max_T_per_m", r.b_grad_max.value},
            {"f_max_Hz", r.f_max.value},
            {"ground_state_size_m", r.ground_state_size.value},
            {"roughness_temperature_K", r.roughness_temperature.value},
            {"smallxi_constant", r.smallxi_constant},
            {"applicable", r.applicable()},
            {"warnings", r.warnings}};
}

void print_result(const DesignResult& r) {
    std::printf("  d_min                  %10.4f um\n", r.d_min.value * 1e6);
    std::printf("  I_max                  %10.4f A\n", r.i_max.value);
    std::printf("  B'_max                 %10.4f T/cm\n", r.b_grad_max.value / 100.0);
    std::printf("  f_max                  %10.4f kHz\n", r.f_max.value / 1e3);
    std::printf("  ground-state size      %10.4f nm\n", r.ground_state_size.value * 1e9);
    std::printf("  roughness temperature  %10.4f nK\n", r.roughness_temperature.value * 1e9);
    std::printf("  small-xi constant      %10.6f\n", r.smallxi_constant);
    for (const auto& w : r.warnings) std::printf("  warning: %s\n", w.c_str());
}

void write_json(const json& j, const std::string& path) {
    if (path == "-") {
        std::cout << j.dump(2) << '\n';
        return;
    }
    std::ofstream os(path);
    if (!os) throw std::runtime_error("cannot write " + path);
    os << j.dump(2) << '\n';
}

int cmd_figure(int id, const std::vector<double>& extra, std::size_t points, std::uint64_t seed, const std::string& out) {
    figures::Options opt{extra, points, seed};
    const auto fig = figures::make_figure(id, opt);
    const auto manifest = figures::write_figure(fig, out);
    for (const auto& f : manifest["files"]) std::printf("%s/%s\n", out.c_str(), f["file"].get<std::string>().c_str());
    std::printf("%s/fig%d_manifest.json\n", out.c_str(), id);
    return 0;
}

int cmd_design(const std::string& path, bool strict, const std::string& json_out) {
    std::ifstream is(path);
    if (!is) throw std::runtime_error("cannot open " + path);
    const auto cfg = config::load_design_config(is);
    const double c = cfg.smallxi ? *cfg.smallxi : smallxi_constant(1.0);
    json report = {{"version", version}, {"config", path}, {"smallxi_constant", c}};
    bool warned = false;

    if (!cfg.sweep) {
        const auto r = design_limits(cfg.input, c);
        std::printf("design limits (%s)\n", path.c_str());
        print_result(r);
        report["input"] = input_json(cfg.input);
        report["result"] = result_json(r);
        warned = !r.applicable();
    } else {
        const auto& sw = *cfg.sweep;
        const auto values = sw.values();
        std::vector<DesignInput> inputs;
        for (double v : values) inputs.push_back(config::with_parameter(cfg.input, sw.parameter, v));
        const auto results = design_sweep(inputs, c);
        std::printf("%-14s %10s %10s %10s %10s %10s %10s  %s\n", (sw.parameter + " [SI]").c_str(), "d_min/um", "I_max/A",
                    "B'/(T/cm)", "f_max/kHz", "size/nm", "T/nK", "ok");
        json rows = json::array();
        for (std::size_t i = 0; i < results.size(); ++i) {
            const auto& r = results[i];
            std::printf("%-14.6g %10.4f %10.4f %10.4f %10.4f %10.4f %10.4f  %s\n", values[i], r.d_min.value * 1e6, r.i_max.value,
                        r.b_grad_max.value / 100.0, r.f_max.value / 1e3, r.ground_state_size.value * 1e9,
                        r.roughness_temperature.value * 1e9, r.applicable() ? "yes" : "no");
            rows.push_back({{"value", values[i]}, {"input", input_json(inputs[i])}, {"result", result_json(r)}});
            warned = warned || !r.applicable();
        }
        report["sweep"] = {{"parameter", sw.parameter}, {"rows", rows}};
    }
    if (!json_out.empty()) write_json(report, json_out);
    if (warned && strict) {
        std::fprintf(stderr, "applicability warning (--strict)\n");
        return 3;
    }
    return 0;
}

int cmd_validate(const std::string& suite, std::uint64_t seed, const std::string& json_out) {
    const auto checks = validation::run(suite, seed);
    json arr = json::array();
    int failed = 0;
    for (const auto& c : checks) {
        std::printf("%s [%s %s] %s\n       %s (%.2f s)\n", c.passed ? "PASS" : "FAIL", c.suite.c_str(), c.id.c_str(),
                    c.description.c_str(), c.measured.c_str(), c.seconds);
        if (!c.passed && c.known_unattainable) std::printf("       known unattainable: %s\n", c.note.c_str());
        failed += c.passed ? 0 : 1;
        arr.push_back({{"suite", c.suite}, {"id", c.id}, {"description", c.description}, {"passed", c.passed},
                       {"measured", c.measured}, {"seconds", c.seconds}, {"known_unattainable", c.known_unattainable},
                       {"note", c.note}});
    }
    std::printf("%zu checks, %d failed\n", checks.size(), failed);
    if (!json_out.empty()) write_json({{"version", version}, {"suite", suite}, {"seed", seed}, {"checks", arr}}, json_out);
    return failed == 0 ? 0 : 1;
}

int cmd_synth(const std::string& sigma, const std::string& xi, double alpha, std::size_t n, const std::string& dz,
              std::uint64_t seed, const std::string& out) {
    const EdgeRoughness rough(config::parse_positive("--sigma", sigma, config::Kind::length),
                              config::parse_positive("--xi", xi, config::Kind::length), alpha);
    const auto p = synthesize(rough, n, config::parse_positive("--dz", dz, config::Kind::length), seed);
    std::ostringstream os;
    os << "# wirenoise " << version << '\n';
    write_profile_csv(os, p);
    if (out == "-") {
        std::cout << os.str();
    } else {
        std::ofstream f(out, std::ios::binary);
        if (!f) throw std::runtime_error("cannot write " + out);
        f << os.str();
    }
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Edge-roughness trap noise: figure data, design limits, validation and profile synthesis.\n"
                 "Set WIRENOISE_THREADS to cap the worker count."};
    app.set_version_flag("--version", std::string(version));
    app.require_subcommand(1);

    int fig_id = 0;
    std::vector<double> fig_extra;
    std::size_t fig_points = 0;
    std::uint64_t fig_seed = 1;
    std::string fig_out = ".";
    auto* fig = app.add_subcommand("figure", "Write CSV curves and a JSON manifest for figure 2-7");
    fig->add_option("id", fig_id, "Figure id")->required()->check(CLI::Range(figures::first_id, figures::last_id));
    fig->add_option("--extra", fig_extra, "Extra value of the figure's varied parameter (repeatable)");
    fig->add_option("--points", fig_points, "Samples per curve (0: figure default)");
    fig->add_option("--seed", fig_seed, "Seed of the profile samples (figure 2)");
    fig->add_option("--out", fig_out, "Output directory");

    std::string cfg_path, design_json;
    bool strict = false;
    auto* des = app.add_subcommand("design", "Design limits from a config file");
    des->add_option("config", cfg_path, "Config file")->required();
    des->add_flag("--strict", strict, "Exit with status 3 if any result is outside the model's validity range");
    des->add_option("--json", design_json, "Also write a JSON report ('-' for stdout)");

    std::string suite = "all", validate_json;
    std::uint64_t validate_seed = 1000;
    auto* val = app.add_subcommand("validate", "Run a validation suite; nonzero exit on any failed check");
    val->add_option("suite", suite, "specfun, spectrum, transfer, variance, oracle or all")
        ->check(CLI::IsMember({"specfun", "spectrum", "transfer", "variance", "oracle", "all"}));
    val->add_option("--seed", validate_seed, "First seed of the oracle ensembles");
    val->add_option("--json", validate_json, "Also write a JSON report ('-' for stdout)");

    std::string sigma = "3 nm", xi = "20 nm", dz = "1 nm", synth_out = "-";
    double alpha = 0.5;
    std::size_t n = 4096;
    std::uint64_t synth_seed = 1;
    auto* syn = app.add_subcommand("synth", "Synthesize one edge profile as CSV");
    syn->add_option("--sigma", sigma, "rms amplitude, e.g. '3 nm'")->capture_default_str();
    syn->add_option("--xi", xi, "correlation length")->capture_default_str();
    syn->add_option("--alpha", alpha, "Hurst exponent in (0, 1]")->capture_default_str();
    syn->add_option("--n", n, "number of samples (power of two)")->capture_default_str();
    syn->add_option("--dz", dz, "sample spacing")->capture_default_str();
    syn->add_option("--seed", synth_seed, "RNG seed")->capture_default_str();
    syn->add_option("--out", synth_out, "output file ('-' for stdout)")->capture_default_str();

    CLI11_PARSE(app, argc, argv);

    try {
        if (*fig) return cmd_figure(fig_id, fig_extra, fig_points, fig_seed, fig_out);
        if (*des) return cmd_design(cfg_path, strict, design_json);
        if (*val) return cmd_validate(suite, validate_seed, validate_json);
        if (*syn) return cmd_synth(sigma, xi, alpha, n, dz, synth_seed, synth_out);
    } catch (const ParseError& e) {
        std::fprintf(stderr, "config error: %s\n", e.what());
        return 2;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    }
    return 0;
}
