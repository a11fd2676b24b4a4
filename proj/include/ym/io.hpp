#pragma once

#include <optional>
#include <string>
#include <vector>

#include "ym/classify.hpp"
#include "ym/closedform.hpp"
#include "ym/cylinder.hpp"
#include "ym/geometry.hpp"
#include "ym/orbit.hpp"

namespace ym {

// Doubles in CSV are written with 17 significant digits; JSON numbers use
// the shortest representation that round-trips exactly. Either way,
// parse(format(x)) == x bit for bit.
std::string fmt17(double x);

std::string read_text_file(const std::string& path);  // throws IoError
void write_text_file(const std::string& path, const std::string& content);

// Radial profiles: CSV header "r,u"; JSON object
// {"r": [...], "u": [...], "origin_value": null | number}.
std::string profile_csv(const RadialProfile&);
RadialProfile profile_from_csv(const std::string& text);
std::string profile_json(const RadialProfile&);
RadialProfile profile_from_json(const std::string& text);

// Header "t,v": samples along the cylinder axis.
std::string cylinder_samples_csv(const std::vector<double>& t,
                                 const std::vector<double>& v);

std::string energy_json(const EnergyValue&);

// Header "t,v,vt,c" plus a JSON event log
// {"events": [{"t","kind","v","vt","direction"}...],
//  "escaped", "drift", "drift_tolerance", "tol"}.
std::string orbit_csv(const Orbit&);
std::string orbit_events_json(const Orbit&);

struct PeriodRow {
    double m_amplitude = 0.0;
    double period_quadrature = 0.0;
    double period_agm = 0.0;
    std::optional<double> period_ode;
    double err = 0.0;  // |quadrature - agm|
};
// Header "M,T_quad,T_agm,T_ode,err"; T_ode column empty when absent.
std::string period_csv(const std::vector<PeriodRow>&);

// {"class", "c", and the class-specific fields among
//  "M","T","phase","a","sign","reason"; "origin" is -1|0|1 or
//  "discontinuous"}.
std::string classification_json(const Classification&);

// Header "t,theta,v", row-major.
std::string field_csv(const CylinderField&);
// Rebuilds grid geometry from the coordinates; boundary conditions are
// set to Dirichlet at the stored boundary rows (the writer does not
// record BC kinds).
CylinderField field_from_csv(const std::string& text);

std::string relax_report_json(const RelaxReport&);

}  // namespace ym
