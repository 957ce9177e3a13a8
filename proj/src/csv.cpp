#include "fatigue_pf/csv.hpp"

#include <array>
#include <charconv>
#include <cmath>
#include <ostream>

#include "fatigue_pf/errors.hpp"

namespace fpf {

std::string format_number(double x)
{
    std::array<char, 64> buf{};
    const auto [end, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), x);
    if (ec != std::errc{})
        throw InvalidArgument("format_number: conversion failed");
    return std::string(buf.data(), end);
}

bool parse_number(const std::string& text, double& out)
{
    const char* first = text.data();
    const char* last = first + text.size();
    if (first != last && *first == '+')
        ++first;
    double value = 0.0;
    const auto [ptr, ec] = std::from_chars(first, last, value);
    if (ec != std::errc{} || ptr != last || !std::isfinite(value))
        return false;
    out = value;
    return true;
}

std::vector<double> parse_number_list(const std::string& text)
{
    std::vector<double> values;
    std::size_t start = 0;
    while (start <= text.size()) {
        const std::size_t comma = text.find(',', start);
        const std::size_t stop = comma == std::string::npos ? text.size() : comma;
        std::string item = text.substr(start, stop - start);
        const auto b = item.find_first_not_of(" \t");
        const auto e = item.find_last_not_of(" \t");
        item = b == std::string::npos ? std::string{} : item.substr(b, e - b + 1);
        double v = 0.0;
        if (!parse_number(item, v))
            throw InvalidArgument("not a number: '" + item + "'");
        values.push_back(v);
        if (comma == std::string::npos)
            break;
        start = comma + 1;
    }
    return values;
}

void write_trajectory(std::ostream& out, const Trajectory& trajectory)
{
    out << "t,phi_max,phi_min,phi_probe,fatigue_probe,kinetic_energy,free_energy,psi_F,P_m,P_s,"
           "dissipation_residual\n";
    for (const Sample& s : trajectory) {
        const double row[] = {s.t,     s.phi_max, s.phi_min,         s.phi_probe,
                              s.fatigue_probe, s.kinetic_energy, s.free_energy, s.psi_F,
                              s.P_m,   s.P_s,     s.dissipation_residual};
        for (std::size_t c = 0; c < std::size(row); ++c)
            out << (c ? "," : "") << format_number(row[c]);
        out << '\n';
    }
}

void write_fields(std::ostream& out, std::span<const FieldState> snapshots, const Grid1D& grid)
{
    const bool thermal = !snapshots.empty() && snapshots.front().has_theta();
    out << "t,x,u,v,phi,fatigue,hist_H" << (thermal ? ",theta" : "") << '\n';
    for (const FieldState& s : snapshots) {
        for (int i = 0; i < grid.n_nodes(); ++i) {
            out << format_number(s.t) << ',' << format_number(grid.node(i)) << ','
                << format_number(s.u[i]) << ',' << format_number(s.v[i]) << ','
                << format_number(s.phi[i]) << ',' << format_number(s.fatigue[i]) << ','
                << format_number(s.hist_H[i]);
            if (thermal)
                out << ',' << format_number(s.theta[i]);
            out << '\n';
        }
    }
}

void write_landscape(std::ostream& out, std::span<const LandscapePoint> curve)
{
    out << "phi,energy_density\n";
    for (const auto& p : curve)
        out << format_number(p.phi) << ',' << format_number(p.energy_density) << '\n';
}

} // namespace fpf
