#include "fatigue_pf/config.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <numbers>
#include <set>
#include <sstream>

#include "fatigue_pf/csv.hpp"
#include "fatigue_pf/errors.hpp"

namespace fpf {

const char* to_string(PhaseScheme scheme)
{
    switch (scheme) {
    case PhaseScheme::explicit_euler:
        return "explicit";
    case PhaseScheme::semi_implicit:
        return "semi-implicit";
    case PhaseScheme::frozen:
        return "frozen";
    }
    return "?";
}

const char* to_string(LoadShape shape)
{
    switch (shape) {
    case LoadShape::uniform:
        return "uniform";
    case LoadShape::half_sine:
        return "half-sine";
    case LoadShape::gaussian:
        return "gaussian";
    }
    return "?";
}

namespace {

const std::map<std::string, std::set<std::string>>& known_keys()
{
    static const std::map<std::string, std::set<std::string>> keys = {
        {"grid", {"L", "n_cells"}},
        {"material", {"rho", "kappa", "F0", "a", "c", "k_q", "varkappa", "theta_ref"}},
        {"load", {"amplitude", "omega", "shape", "center", "width", "heat_supply"}},
        {"controls", {"dt", "t_end", "cfl_safety", "phase_scheme", "sample_every"}},
        {"initial", {"u0_kind", "u0_amplitude", "phi0_const", "theta0_const"}},
        {"outputs", {"trajectory_path", "fields_path", "probe_node"}},
    };
    return keys;
}

std::string trim(const std::string& s)
{
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos)
        return {};
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

struct Entry {
    std::string value;
    int line;
};

class Reader {
public:
    explicit Reader(std::map<std::string, Entry> entries) : entries_(std::move(entries)) {}

    std::vector<std::string> errors;

    bool has(const std::string& key) const { return entries_.count(key) != 0; }

    const std::string* raw(const std::string& key) const
    {
        auto it = entries_.find(key);
        return it == entries_.end() ? nullptr : &it->second.value;
    }

    void number(const std::string& key, double& out, bool required)
    {
        const std::string* v = raw(key);
        if (!v) {
            if (required)
                errors.push_back(key + ": missing required key");
            return;
        }
        if (!parse_number(*v, out))
            errors.push_back(key + ": cannot parse '" + *v + "' as a number");
    }

    void integer(const std::string& key, int& out, bool required)
    {
        const std::string* v = raw(key);
        if (!v) {
            if (required)
                errors.push_back(key + ": missing required key");
            return;
        }
        std::size_t pos = 0;
        try {
            const long value = std::stol(*v, &pos);
            if (pos != v->size())
                throw std::invalid_argument("trailing");
            out = static_cast<int>(value);
        } catch (const std::exception&) {
            errors.push_back(key + ": cannot parse '" + *v + "' as an integer");
        }
    }

private:
    std::map<std::string, Entry> entries_;
};

std::map<std::string, Entry> tokenize(const std::string& text, std::vector<std::string>& errors)
{
    std::map<std::string, Entry> entries;
    std::istringstream in(text);
    std::string line;
    std::string section;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto hash = line.find_first_of("#;");
        line = trim(hash == std::string::npos ? line : line.substr(0, hash));
        if (line.empty())
            continue;
        const std::string where = "line " + std::to_string(lineno);
        if (line.front() == '[') {
            if (line.back() != ']') {
                errors.push_back(where + ": malformed section header");
                continue;
            }
            section = trim(line.substr(1, line.size() - 2));
            if (!known_keys().count(section))
                errors.push_back(where + ": unknown section [" + section + "]");
            continue;
        }
        const auto eq = line.find('=');
        if (eq == std::string::npos) {
            errors.push_back(where + ": expected key = value");
            continue;
        }
        std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        std::string sec = section;
        if (const auto dot = key.find('.'); dot != std::string::npos) {
            sec = key.substr(0, dot);
            key = key.substr(dot + 1);
        }
        const std::string full = sec + "." + key;
        auto sit = known_keys().find(sec);
        if (sec.empty()) {
            errors.push_back(where + ": key '" + key + "' outside any section");
            continue;
        }
        if (sit == known_keys().end()) {
            if (section != sec)
                errors.push_back(where + ": unknown section '" + sec + "'");
            continue;
        }
        if (!sit->second.count(key)) {
            errors.push_back(full + ": unknown key (" + where + ")");
            continue;
        }
        if (entries.count(full)) {
            errors.push_back(full + ": duplicate key (" + where + ")");
            continue;
        }
        entries[full] = {value, lineno};
    }
    return entries;
}

} // namespace

Grid1D RunConfig::make_grid() const
{
    return Grid1D(grid.L, grid.n_cells);
}

MaterialParams RunConfig::make_params() const
{
    MaterialParams p =
        MaterialParams::uniform(make_grid(), material.rho, material.kappa, material.F0, material.a);
    p.thermal = material.thermal;
    return p;
}

StepControls RunConfig::make_controls() const
{
    return StepControls{controls.dt, controls.t_end, controls.cfl_safety, controls.phase_scheme,
                        controls.sample_every};
}

int RunConfig::probe() const
{
    return outputs.probe_node < 0 ? grid.n_cells / 2 : outputs.probe_node;
}

RunOptions RunConfig::make_options() const
{
    RunOptions o;
    o.thermal = thermal();
    o.probe_node = probe();
    o.record_fields = outputs.fields_path.has_value();
    return o;
}

FieldState RunConfig::make_initial_state() const
{
    const Grid1D g = make_grid();
    const int n = g.n_nodes();
    Field u(n, 0.0), v(n, 0.0), phi(n, initial.phi0_const);
    if (initial.u0_kind == InitialDisplacement::half_sine) {
        for (int i = 1; i < n - 1; ++i)
            u[i] = initial.u0_amplitude * std::sin(std::numbers::pi * g.node(i) / g.length());
    }
    if (thermal()) {
        const Field theta(n, initial.theta0_const.value_or(material.thermal->theta_ref));
        return initial_state(g, u, v, phi, std::span<const double>(theta));
    }
    return initial_state(g, u, v, phi);
}

void RunConfig::resolve_dt()
{
    if (controls.dt_auto)
        controls.dt = stable_dt(make_params(), make_grid(), controls.phase_scheme) * controls.cfl_safety;
}

std::vector<std::string> RunConfig::check() const
{
    std::vector<std::string> errs;
    if (!(std::isfinite(grid.L) && grid.L > 0.0))
        errs.emplace_back("grid.L: L must be > 0");
    if (grid.n_cells < 4)
        errs.emplace_back("grid.n_cells: n_cells must be >= 4");

    const std::pair<double, const char*> positive[] = {
        {material.rho, "rho"}, {material.kappa, "kappa"}, {material.a, "a"}};
    for (const auto& [v, name] : positive) {
        if (!(v > 0.0))
            errs.push_back(std::string("material.") + name + ": " + name + " must be > 0");
    }
    if (!(material.F0 >= 0.0))
        errs.emplace_back("material.F0: F0 must be >= 0");
    if (material.thermal) {
        const auto& th = *material.thermal;
        if (!(th.c > 0.0))
            errs.emplace_back("material.c: c must be > 0");
        if (!(th.k_q >= 0.0))
            errs.emplace_back("material.k_q: k_q must be >= 0");
        if (!(th.varkappa >= 0.0))
            errs.emplace_back("material.varkappa: varkappa must be >= 0");
        if (!(th.theta_ref > 0.0))
            errs.emplace_back("material.theta_ref: theta_ref must be > 0");
    }

    for (const auto& e : validate(load))
        errs.push_back("load." + e.substr(0, e.find(' ')) + ": " + e);

    if (!(controls.t_end >= 0.0))
        errs.emplace_back("controls.t_end: t_end must be >= 0");
    if (!controls.dt_auto && !(controls.dt > 0.0))
        errs.emplace_back("controls.dt: dt must be > 0 or auto");
    if (!(controls.cfl_safety > 0.0 && controls.cfl_safety <= 1.0))
        errs.emplace_back("controls.cfl_safety: cfl_safety must lie in (0, 1]");
    if (controls.sample_every < 1)
        errs.emplace_back("controls.sample_every: sample_every must be >= 1");

    if (!(initial.phi0_const >= 0.0 && initial.phi0_const <= 1.0))
        errs.emplace_back("initial.phi0_const: initial phase must lie in the admissible range [0, 1]");
    if (initial.theta0_const && !(*initial.theta0_const > 0.0))
        errs.emplace_back("initial.theta0_const: theta0 must be > 0");
    if (initial.theta0_const && !material.thermal)
        errs.emplace_back("initial.theta0_const: only allowed with thermal material constants");

    if (grid.n_cells >= 4 && (outputs.probe_node < -1 || outputs.probe_node > grid.n_cells))
        errs.emplace_back("outputs.probe_node: probe node outside the grid");
    if (outputs.trajectory_path.empty())
        errs.emplace_back("outputs.trajectory_path: path must not be empty");

    if (errs.empty() && !controls.dt_auto) {
        const double limit =
            stable_dt(make_params(), make_grid(), controls.phase_scheme) * controls.cfl_safety;
        if (controls.dt > limit * (1.0 + 1e-12))
            errs.push_back("controls.dt: dt exceeds the stability limit " + format_number(limit));
    }
    return errs;
}

RunConfig parse_config_text(const std::string& text)
{
    std::vector<std::string> errors;
    Reader r(tokenize(text, errors));
    RunConfig cfg;

    r.number("grid.L", cfg.grid.L, true);
    r.integer("grid.n_cells", cfg.grid.n_cells, true);

    r.number("material.rho", cfg.material.rho, true);
    r.number("material.kappa", cfg.material.kappa, true);
    r.number("material.F0", cfg.material.F0, true);
    r.number("material.a", cfg.material.a, true);
    const bool any_thermal = r.has("material.c") || r.has("material.k_q") ||
                             r.has("material.varkappa") || r.has("material.theta_ref");
    if (any_thermal) {
        ThermalParams th;
        r.number("material.c", th.c, true);
        r.number("material.k_q", th.k_q, false);
        r.number("material.varkappa", th.varkappa, false);
        r.number("material.theta_ref", th.theta_ref, false);
        cfg.material.thermal = th;
    }

    r.number("load.amplitude", cfg.load.amplitude, true);
    r.number("load.omega", cfg.load.omega, true);
    if (const std::string* s = r.raw("load.shape")) {
        if (*s == "uniform")
            cfg.load.shape = LoadShape::uniform;
        else if (*s == "half-sine")
            cfg.load.shape = LoadShape::half_sine;
        else if (*s == "gaussian")
            cfg.load.shape = LoadShape::gaussian;
        else
            r.errors.push_back("load.shape: expected uniform, half-sine or gaussian, got '" + *s + "'");
    }
    r.number("load.center", cfg.load.center, false);
    r.number("load.width", cfg.load.width, false);
    r.number("load.heat_supply", cfg.load.heat_supply, false);

    if (const std::string* s = r.raw("controls.dt"); s && *s != "auto") {
        cfg.controls.dt_auto = false;
        r.number("controls.dt", cfg.controls.dt, true);
    }
    r.number("controls.t_end", cfg.controls.t_end, true);
    r.number("controls.cfl_safety", cfg.controls.cfl_safety, false);
    if (const std::string* s = r.raw("controls.phase_scheme")) {
        if (*s == "explicit")
            cfg.controls.phase_scheme = PhaseScheme::explicit_euler;
        else if (*s == "semi-implicit")
            cfg.controls.phase_scheme = PhaseScheme::semi_implicit;
        else if (*s == "frozen")
            cfg.controls.phase_scheme = PhaseScheme::frozen;
        else
            r.errors.push_back("controls.phase_scheme: expected explicit, semi-implicit or frozen, got '" +
                               *s + "'");
    }
    r.integer("controls.sample_every", cfg.controls.sample_every, false);

    if (const std::string* s = r.raw("initial.u0_kind")) {
        if (*s == "zero")
            cfg.initial.u0_kind = InitialDisplacement::zero;
        else if (*s == "half-sine")
            cfg.initial.u0_kind = InitialDisplacement::half_sine;
        else
            r.errors.push_back("initial.u0_kind: expected zero or half-sine, got '" + *s + "'");
    }
    r.number("initial.u0_amplitude", cfg.initial.u0_amplitude, false);
    r.number("initial.phi0_const", cfg.initial.phi0_const, false);
    if (r.has("initial.theta0_const")) {
        double th = 0.0;
        r.number("initial.theta0_const", th, true);
        cfg.initial.theta0_const = th;
    }

    if (const std::string* s = r.raw("outputs.trajectory_path"))
        cfg.outputs.trajectory_path = *s;
    if (const std::string* s = r.raw("outputs.fields_path"); s && *s != "none")
        cfg.outputs.fields_path = *s;
    r.integer("outputs.probe_node", cfg.outputs.probe_node, false);

    errors.insert(errors.end(), r.errors.begin(), r.errors.end());
    if (errors.empty()) {
        errors = cfg.check();
    }
    if (!errors.empty())
        throw ConfigError(errors);
    cfg.resolve_dt();
    return cfg;
}

RunConfig parse_config(const std::string& path)
{
    std::ifstream in(path);
    if (!in)
        throw ConfigError({path + ": cannot open configuration file"});
    std::stringstream buf;
    buf << in.rdbuf();
    return parse_config_text(buf.str());
}

std::string format_config(const RunConfig& c)
{
    std::ostringstream out;
    const auto num = [](double x) { return format_number(x); };
    out << "[grid]\n"
        << "L = " << num(c.grid.L) << "\n"
        << "n_cells = " << c.grid.n_cells << "\n\n";
    out << "[material]\n"
        << "rho = " << num(c.material.rho) << "\n"
        << "kappa = " << num(c.material.kappa) << "\n"
        << "F0 = " << num(c.material.F0) << "\n"
        << "a = " << num(c.material.a) << "\n";
    if (c.material.thermal) {
        const auto& th = *c.material.thermal;
        out << "c = " << num(th.c) << "\n"
            << "k_q = " << num(th.k_q) << "\n"
            << "varkappa = " << num(th.varkappa) << "\n"
            << "theta_ref = " << num(th.theta_ref) << "\n";
    }
    out << "\n[load]\n"
        << "amplitude = " << num(c.load.amplitude) << "\n"
        << "omega = " << num(c.load.omega) << "\n"
        << "shape = " << to_string(c.load.shape) << "\n"
        << "center = " << num(c.load.center) << "\n"
        << "width = " << num(c.load.width) << "\n"
        << "heat_supply = " << num(c.load.heat_supply) << "\n\n";
    out << "[controls]\n"
        << "dt = " << (c.controls.dt_auto ? std::string("auto") : num(c.controls.dt)) << "\n"
        << "t_end = " << num(c.controls.t_end) << "\n"
        << "cfl_safety = " << num(c.controls.cfl_safety) << "\n"
        << "phase_scheme = " << to_string(c.controls.phase_scheme) << "\n"
        << "sample_every = " << c.controls.sample_every << "\n\n";
    out << "[initial]\n"
        << "u0_kind = " << (c.initial.u0_kind == InitialDisplacement::zero ? "zero" : "half-sine") << "\n"
        << "u0_amplitude = " << num(c.initial.u0_amplitude) << "\n"
        << "phi0_const = " << num(c.initial.phi0_const) << "\n";
    if (c.initial.theta0_const)
        out << "theta0_const = " << num(*c.initial.theta0_const) << "\n";
    out << "\n[outputs]\n"
        << "trajectory_path = " << c.outputs.trajectory_path << "\n"
        << "fields_path = " << c.outputs.fields_path.value_or("none") << "\n"
        << "probe_node = " << c.outputs.probe_node << "\n";
    return out.str();
}

} // namespace fpf
