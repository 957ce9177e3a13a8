#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "fatigue_pf/acceptance.hpp"
#include "fatigue_pf/commands.hpp"
#include "fatigue_pf/config.hpp"
#include "fatigue_pf/csv.hpp"
#include "fatigue_pf/errors.hpp"

namespace {

int load_config(const std::string& path, fpf::RunConfig& out)
{
    try {
        out = fpf::parse_config(path);
        return fpf::kExitOk;
    } catch (const fpf::ConfigError& e) {
        for (const auto& msg : e.errors())
            std::cerr << "error: " << msg << '\n';
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
    }
    return fpf::kExitValidation;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Phase-field damage and fatigue simulator"};
    app.require_subcommand(1);

    std::string config_path;
    auto* run = app.add_subcommand("run", "Integrate one configuration and write its trajectory CSV");
    run->add_option("config", config_path, "Configuration file")->required();

    std::string sweep_config, axis, values_text, sweep_out = "sweep.csv";
    double snapshot = 0.0;
    auto* sweep = app.add_subcommand("sweep", "Run one configuration over a list of parameter values");
    sweep->add_option("config", sweep_config, "Base configuration file")->required();
    sweep->add_option("--axis", axis, "rho, omega, amplitude, F0 or kappa")
        ->required()
        ->check(CLI::IsMember({"rho", "omega", "amplitude", "F0", "kappa"}));
    sweep->add_option("--values", values_text, "Comma-separated parameter values")->required();
    sweep->add_option("--snapshot", snapshot, "Time at which phi_max is compared")->required();
    sweep->add_option("--out", sweep_out, "Summary CSV path")->capture_default_str();

    double f0 = 1.0;
    std::string fatigue_text, landscape_dir = ".";
    int samples = 281;
    auto* landscape = app.add_subcommand("landscape", "Sample F0 G(phi) + fatigue F(phi) on [-0.2, 1.2]");
    landscape->add_option("--f0", f0, "Restoring coefficient F0")->required();
    landscape->add_option("--fatigue", fatigue_text, "Comma-separated fatigue values")->required();
    landscape->add_option("--samples", samples, "Points per curve")->capture_default_str();
    landscape->add_option("--out", landscape_dir, "Output directory")->capture_default_str();

    auto* check = app.add_subcommand("check", "Run the acceptance property suite");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? fpf::kExitOk : fpf::kExitValidation;
    }

    if (*run) {
        fpf::RunConfig cfg;
        if (const int rc = load_config(config_path, cfg); rc != fpf::kExitOk)
            return rc;
        return fpf::cmd_run(cfg, std::cerr);
    }

    if (*sweep) {
        fpf::SweepSpec spec;
        if (const int rc = load_config(sweep_config, spec.base); rc != fpf::kExitOk)
            return rc;
        try {
            spec.values = fpf::parse_number_list(values_text);
        } catch (const std::exception& e) {
            std::cerr << "error: --values: " << e.what() << '\n';
            return fpf::kExitValidation;
        }
        spec.axis = axis;
        spec.snapshot_time = snapshot;
        return fpf::cmd_sweep(spec, sweep_out, std::cerr);
    }

    if (*landscape) {
        std::vector<double> fatigues;
        try {
            fatigues = fpf::parse_number_list(fatigue_text);
        } catch (const std::exception& e) {
            std::cerr << "error: --fatigue: " << e.what() << '\n';
            return fpf::kExitValidation;
        }
        return fpf::cmd_landscape(f0, fatigues, samples, landscape_dir, std::cerr);
    }

    if (*check) {
        bool all = true;
        for (const auto& r : fpf::run_acceptance_suite()) {
            std::cout << fpf::format_result(r) << std::endl;
            all = all && r.passed;
        }
        return all ? fpf::kExitOk : fpf::kExitValidation;
    }
    return fpf::kExitOk;
}
