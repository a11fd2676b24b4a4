#pragma once
#include <optional>
#include <vector>

namespace ym {

// Radial sample u(r_i) on a strictly increasing positive grid. Grids are
// built log-spaced in r (uniform in t = ln r) so the cylinder change of
// variables is a relabeling, not an interpolation.
struct RadialProfile {
    std::vector<double> r;
    std::vector<double> u;
    std::optional<double> origin_value; // limit of u at r -> 0 when known
};

// Throws DomainError unless r is strictly increasing and positive, u has the
// same length, and every value is finite.
void validate(const RadialProfile& p);

double to_cylinder(double r);   // t = ln r; r <= 0 is a domain error
double from_cylinder(double t); // r = e^t

// Cylinder view of the grid: t_i = ln r_i.
std::vector<double> t_grid(const RadialProfile& p);

// Spacing h of a uniform grid; DomainError if spacing varies by more than
// 1e-12 relative. All profile grids in this project are uniform in t.
double uniform_spacing(const std::vector<double>& t);

// Profile from uniform cylinder samples v(t_i), r_i = e^{t_i}.
RadialProfile profile_from_cylinder(const std::vector<double>& t,
                                    const std::vector<double>& v,
                                    std::optional<double> origin_value = {});

// Inversion r -> 1/r: grid 1/r_i re-sorted increasing, values reversed.
// On the cylinder this is t -> -t. Applying twice restores the values
// bitwise; radii go through 1/(1/r), exact to 1 ulp. The origin value and
// the limit at infinity trade places under inversion, so origin_value is
// dropped (we do not know the far-field limit of a sampled profile).
RadialProfile kelvin(const RadialProfile& p);

} // namespace ym
