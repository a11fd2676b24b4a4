#include "ym/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "ym/errors.hpp"

namespace ym {

void validate(const RadialProfile& p) {
    if (p.r.size() != p.u.size())
        throw DomainError("profile: r and u lengths differ");
    if (p.r.empty())
        throw DomainError("profile: empty grid");
    for (std::size_t i = 0; i < p.r.size(); ++i) {
        if (!(p.r[i] > 0.0) || !std::isfinite(p.r[i]))
            throw DomainError("profile: radii must be positive and finite");
        if (i > 0 && !(p.r[i] > p.r[i - 1]))
            throw DomainError("profile: radii must be strictly increasing");
        if (!std::isfinite(p.u[i]))
            throw DomainError("profile: values must be finite");
    }
    if (p.origin_value && !std::isfinite(*p.origin_value))
        throw DomainError("profile: origin value must be finite");
}

double to_cylinder(double r) {
    if (!(r > 0.0))
        throw DomainError("to_cylinder: r must be > 0");
    return std::log(r);
}

double from_cylinder(double t) { return std::exp(t); }

std::vector<double> t_grid(const RadialProfile& p) {
    std::vector<double> t(p.r.size());
    for (std::size_t i = 0; i < p.r.size(); ++i) t[i] = to_cylinder(p.r[i]);
    return t;
}

double uniform_spacing(const std::vector<double>& t) {
    if (t.size() < 2)
        throw DomainError("uniform_spacing: need at least 2 points");
    const double h = (t.back() - t.front()) / static_cast<double>(t.size() - 1);
    if (!(h > 0.0))
        throw DomainError("uniform_spacing: grid must be increasing");
    const double tol = 1e-12 * std::max(1.0, std::abs(h));
    for (std::size_t i = 1; i < t.size(); ++i) {
        if (std::abs((t[i] - t[i - 1]) - h) > tol)
            throw DomainError("uniform_spacing: grid is not uniform");
    }
    return h;
}

RadialProfile profile_from_cylinder(const std::vector<double>& t,
                                    const std::vector<double>& v,
                                    std::optional<double> origin_value) {
    if (t.size() != v.size())
        throw DomainError("profile_from_cylinder: t and v lengths differ");
    RadialProfile p;
    p.r.resize(t.size());
    for (std::size_t i = 0; i < t.size(); ++i) p.r[i] = from_cylinder(t[i]);
    p.u = v;
    p.origin_value = origin_value;
    validate(p);
    return p;
}

RadialProfile kelvin(const RadialProfile& p) {
    validate(p);
    const std::size_t n = p.r.size();
    RadialProfile q;
    q.r.resize(n);
    q.u.resize(n);
    // 1/r reverses the order; reversing the arrays keeps the grid increasing.
    for (std::size_t i = 0; i < n; ++i) {
        q.r[i] = 1.0 / p.r[n - 1 - i];
        q.u[i] = p.u[n - 1 - i];
    }
    validate(q);
    return q;
}

} // namespace ym
