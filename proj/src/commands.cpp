#include "fatigue_pf/commands.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <ostream>
#include <thread>

#include "fatigue_pf/csv.hpp"
#include "fatigue_pf/energy.hpp"
#include "fatigue_pf/errors.hpp"

namespace fpf {

RunResult run_config(const RunConfig& config)
{
    return run(config.make_params(), config.make_grid(), config.load, config.make_controls(),
               config.make_initial_state(), config.make_options());
}

int cmd_run(const RunConfig& config, std::ostream& diag)
{
    RunResult result;
    try {
        result = run_config(config);
    } catch (const DivergenceError& e) {
        diag << "error: solver diverged: " << e.what() << '\n';
        return kExitDivergence;
    } catch (const SingularTemperature& e) {
        diag << "error: " << e.what() << '\n';
        return kExitDivergence;
    } catch (const std::exception& e) {
        diag << "error: " << e.what() << '\n';
        return kExitValidation;
    }

    std::ofstream out(config.outputs.trajectory_path);
    if (!out) {
        diag << "error: cannot write " << config.outputs.trajectory_path << '\n';
        return kExitValidation;
    }
    write_trajectory(out, result.trajectory);
    if (config.outputs.fields_path) {
        std::ofstream fields(*config.outputs.fields_path);
        if (!fields) {
            diag << "error: cannot write " << *config.outputs.fields_path << '\n';
            return kExitValidation;
        }
        write_fields(fields, result.fields, config.make_grid());
    }
    return kExitOk;
}

RunConfig apply_axis(const RunConfig& base, const std::string& axis, double value)
{
    RunConfig c = base;
    if (axis == "rho")
        c.material.rho = value;
    else if (axis == "omega")
        c.load.omega = value;
    else if (axis == "amplitude")
        c.load.amplitude = value;
    else if (axis == "F0")
        c.material.F0 = value;
    else if (axis == "kappa")
        c.material.kappa = value;
    else
        throw InvalidArgument("unknown sweep axis '" + axis + "'");
    const auto problems = c.check();
    if (!problems.empty())
        throw ConfigError(problems);
    c.resolve_dt();
    return c;
}

SweepRow summarize(const Trajectory& trajectory, double value, double snapshot_time)
{
    SweepRow row;
    row.value = value;
    const Sample* snap = &trajectory.front();
    for (const Sample& s : trajectory) {
        if (s.t <= snapshot_time)
            snap = &s;
    }
    row.phi_max = snap->phi_max;
    row.fatigue_probe = snap->fatigue_probe;

    constexpr double level = 0.9;
    for (std::size_t k = 0; k < trajectory.size(); ++k) {
        if (trajectory[k].phi_max >= level) {
            if (k == 0) {
                row.time_phi_reaches_0_9 = trajectory[0].t;
            } else {
                const Sample& a = trajectory[k - 1];
                const Sample& b = trajectory[k];
                const double w = (level - a.phi_max) / (b.phi_max - a.phi_max);
                row.time_phi_reaches_0_9 = a.t + w * (b.t - a.t);
            }
            break;
        }
    }
    return row;
}

std::vector<SweepRow> run_sweep(const SweepSpec& spec, unsigned workers)
{
    if (spec.values.empty())
        throw InvalidArgument("sweep needs at least one value");
    for (double v : spec.values) {
        if (!std::isfinite(v))
            throw InvalidArgument("sweep values must be finite");
    }
    if (!(spec.snapshot_time >= 0.0 && spec.snapshot_time <= spec.base.controls.t_end))
        throw InvalidArgument("snapshot time must lie in [0, t_end]");

    std::vector<SweepRow> rows(spec.values.size());
    std::atomic<std::size_t> next{0};
    const auto worker = [&] {
        for (std::size_t k = next++; k < rows.size(); k = next++) {
            const double value = spec.values[k];
            try {
                const RunConfig member = apply_axis(spec.base, spec.axis, value);
                rows[k] = summarize(run_config(member).trajectory, value, spec.snapshot_time);
            } catch (const std::exception& e) {
                rows[k].value = value;
                rows[k].ok = false;
                rows[k].error = e.what();
            }
        }
    };

    if (workers == 0)
        workers = std::max(1u, std::thread::hardware_concurrency());
    workers = std::min<unsigned>(workers, static_cast<unsigned>(rows.size()));
    std::vector<std::jthread> pool;
    for (unsigned w = 1; w < workers; ++w)
        pool.emplace_back(worker);
    worker();
    pool.clear();

    std::stable_sort(rows.begin(), rows.end(),
                     [](const SweepRow& a, const SweepRow& b) { return a.value < b.value; });
    return rows;
}

void write_sweep(std::ostream& out, const std::vector<SweepRow>& rows)
{
    out << "param_value,phi_max_at_snapshot,fatigue_probe_at_snapshot,time_phi_reaches_0.9\n";
    for (const SweepRow& r : rows) {
        if (!r.ok)
            continue;
        out << format_number(r.value) << ',' << format_number(r.phi_max) << ','
            << format_number(r.fatigue_probe) << ','
            << (r.time_phi_reaches_0_9 ? format_number(*r.time_phi_reaches_0_9) : std::string{})
            << '\n';
    }
}

int cmd_sweep(const SweepSpec& spec, const std::string& out_path, std::ostream& diag)
{
    std::vector<SweepRow> rows;
    try {
        rows = run_sweep(spec);
    } catch (const std::exception& e) {
        diag << "error: " << e.what() << '\n';
        return kExitValidation;
    }
    std::ofstream out(out_path);
    if (!out) {
        diag << "error: cannot write " << out_path << '\n';
        return kExitValidation;
    }
    write_sweep(out, rows);

    int status = kExitOk;
    for (const SweepRow& r : rows) {
        if (!r.ok) {
            diag << "error: " << spec.axis << " = " << format_number(r.value) << ": " << r.error << '\n';
            status = kExitDivergence;
        }
    }
    return status;
}

std::string landscape_file_name(std::size_t index)
{
    return "landscape_" + std::to_string(index) + ".csv";
}

int cmd_landscape(double F0, const std::vector<double>& fatigues, int samples,
                  const std::string& out_dir, std::ostream& diag)
{
    if (samples < 2) {
        diag << "error: samples must be >= 2\n";
        return kExitValidation;
    }
    if (!(std::isfinite(F0) && F0 >= 0.0)) {
        diag << "error: F0 must be >= 0\n";
        return kExitValidation;
    }
    const std::filesystem::path dir(out_dir);
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    for (std::size_t k = 0; k < fatigues.size(); ++k) {
        const auto path = dir / landscape_file_name(k);
        std::ofstream out(path);
        if (!out) {
            diag << "error: cannot write " << path.string() << '\n';
            return kExitValidation;
        }
        write_landscape(out, energy_landscape(F0, fatigues[k], samples));
    }
    return kExitOk;
}

} // namespace fpf
