#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "fatigue_pf/config.hpp"

namespace fpf {

enum ExitCode : int { kExitOk = 0, kExitValidation = 1, kExitDivergence = 2 };

/// Run the solver on a parsed configuration.
RunResult run_config(const RunConfig& config);

/// Writes the trajectory CSV (and field snapshots when configured). Errors go to `diag`.
int cmd_run(const RunConfig& config, std::ostream& diag);

struct SweepSpec {
    RunConfig base;
    std::string axis;  // rho, omega, amplitude, F0 or kappa
    std::vector<double> values;
    double snapshot_time = 0.0;
};

struct SweepRow {
    double value = 0.0;
    double phi_max = 0.0;        // at the last sample with t <= snapshot
    double fatigue_probe = 0.0;  // same sample
    std::optional<double> time_phi_reaches_0_9;
    bool ok = true;
    std::string error;
};

/// Copy of `base` with one axis overridden; dt is re-resolved when automatic.
RunConfig apply_axis(const RunConfig& base, const std::string& axis, double value);

/// Snapshot summary of one trajectory.
SweepRow summarize(const Trajectory& trajectory, double value, double snapshot_time);

/// Runs every member on a bounded worker pool. Rows come back sorted by value.
std::vector<SweepRow> run_sweep(const SweepSpec& spec, unsigned workers = 0);

void write_sweep(std::ostream& out, const std::vector<SweepRow>& rows);

int cmd_sweep(const SweepSpec& spec, const std::string& out_path, std::ostream& diag);

/// One two-column CSV per fatigue value, named landscape_<index>.csv, in out_dir.
int cmd_landscape(double F0, const std::vector<double>& fatigues, int samples,
                  const std::string& out_dir, std::ostream& diag);

std::string landscape_file_name(std::size_t index);

} // namespace fpf
