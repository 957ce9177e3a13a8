#include "fatigue_pf/potentials.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "fatigue_pf/errors.hpp"

namespace fpf {

namespace {

void require_finite(double phi, const char* op)
{
    if (!std::isfinite(phi))
        throw InvalidArgument(std::string(op) + ": phase value must be finite");
}

} // namespace

double clamp_phase(double phi)
{
    require_finite(phi, "clamp_phase");
    return std::clamp(phi, 0.0, 1.0);
}

double potential_F(double phi)
{
    return -clamp_phase(phi);
}

double potential_G(double phi)
{
    require_finite(phi, "potential_G");
    if (phi < 0.0)
        return 0.0;
    if (phi > 1.0)
        return 5.0 / 6.0;
    return phi * phi - phi * phi * phi / 6.0;
}

double dF(double phi)
{
    require_finite(phi, "dF");
    return (phi >= 0.0 && phi <= 1.0) ? -1.0 : 0.0;
}

double dG(double phi)
{
    require_finite(phi, "dG");
    return (phi >= 0.0 && phi <= 1.0) ? 2.0 * phi - 0.5 * phi * phi : 0.0;
}

double degradation(double phi)
{
    const double w = 1.0 - clamp_phase(phi);
    return w * w;
}

} // namespace fpf
