#include "ym/io.hpp"

#include <cerrno>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "json.hpp"
#include "ym/errors.hpp"

namespace ym {

namespace {

using ordered_json = nlohmann::ordered_json;

double parse_num(const std::string& s) {
    errno = 0;
    char* end = nullptr;
    const double x = std::strtod(s.c_str(), &end);
    if (end == s.c_str() || *end != '\0') {
        throw IoError("malformed number: \"" + s + "\"");
    }
    return x;
}

std::vector<std::string> split_fields(const std::string& line) {
    std::vector<std::string> out;
    std::string cur;
    for (char ch : line) {
        if (ch == ',') {
            out.push_back(cur);
            cur.clear();
        } else {
            cur.push_back(ch);
        }
    }
    out.push_back(cur);
    return out;
}

// Lines of the CSV body, header checked and removed, CR stripped, blanks
// skipped.
std::vector<std::string> csv_body(const std::string& text,
                                  const std::string& header) {
    std::vector<std::string> lines;
    std::istringstream in(text);
    std::string line;
    bool saw_header = false;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        if (!saw_header) {
            if (line != header) {
                throw IoError("expected header \"" + header + "\", got \"" + line +
                              "\"");
            }
            saw_header = true;
            continue;
        }
        lines.push_back(line);
    }
    if (!saw_header) throw IoError("empty file, expected header \"" + header + "\"");
    return lines;
}

ordered_json parse_json(const std::string& text) {
    try {
        return ordered_json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw IoError(std::string("json: ") + e.what());
    }
}

const char* kind_name(EventKind k) {
    switch (k) {
        case EventKind::vt_zero:
            return "vt_zero";
        case EventKind::v_zero:
            return "v_zero";
        case EventKind::escape:
            return "escape";
    }
    return "unknown";
}

}  // namespace

std::string fmt17(double x) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", x);
    return buf;
}

std::string read_text_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open for reading: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    if (in.bad()) throw IoError("read failed: " + path);
    return ss.str();
}

void write_text_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot open for writing: " + path);
    out << content;
    out.flush();
    if (!out) throw IoError("write failed: " + path);
}

std::string profile_csv(const RadialProfile& p) {
    std::string out = "r,u\n";
    for (std::size_t i = 0; i < p.r.size(); ++i) {
        out += fmt17(p.r[i]);
        out += ',';
        out += fmt17(p.u[i]);
        out += '\n';
    }
    return out;
}

RadialProfile profile_from_csv(const std::string& text) {
    RadialProfile p;
    for (const std::string& line : csv_body(text, "r,u")) {
        const std::vector<std::string> f = split_fields(line);
        if (f.size() != 2) throw IoError("expected 2 columns: \"" + line + "\"");
        p.r.push_back(parse_num(f[0]));
        p.u.push_back(parse_num(f[1]));
    }
    validate(p);
    return p;
}

std::string profile_json(const RadialProfile& p) {
    ordered_json j;
    j["r"] = p.r;
    j["u"] = p.u;
    if (p.origin_value) {
        j["origin_value"] = *p.origin_value;
    } else {
        j["origin_value"] = nullptr;
    }
    return j.dump();
}

RadialProfile profile_from_json(const std::string& text) {
    const ordered_json j = parse_json(text);
    RadialProfile p;
    try {
        p.r = j.at("r").get<std::vector<double>>();
        p.u = j.at("u").get<std::vector<double>>();
        if (j.contains("origin_value") && !j.at("origin_value").is_null()) {
            p.origin_value = j.at("origin_value").get<double>();
        }
    } catch (const nlohmann::json::exception& e) {
        throw IoError(std::string("json: ") + e.what());
    }
    validate(p);
    return p;
}

std::string cylinder_samples_csv(const std::vector<double>& t,
                                 const std::vector<double>& v) {
    if (t.size() != v.size()) throw DomainError("t/v length mismatch");
    std::string out = "t,v\n";
    for (std::size_t i = 0; i < t.size(); ++i) {
        out += fmt17(t[i]);
        out += ',';
        out += fmt17(v[i]);
        out += '\n';
    }
    return out;
}

std::string energy_json(const EnergyValue& e) {
    ordered_json j;
    j["value"] = e.value;
    j["finite"] = e.finite;
    j["window"] = {e.window[0], e.window[1]};
    return j.dump();
}

std::string orbit_csv(const Orbit& orb) {
    std::string out = "t,v,vt,c\n";
    for (std::size_t i = 0; i < orb.t.size(); ++i) {
        out += fmt17(orb.t[i]);
        out += ',';
        out += fmt17(orb.y[i].v);
        out += ',';
        out += fmt17(orb.y[i].vt);
        out += ',';
        out += fmt17(orb.c[i]);
        out += '\n';
    }
    return out;
}

std::string orbit_events_json(const Orbit& orb) {
    ordered_json events = ordered_json::array();
    for (const OrbitEvent& ev : orb.events) {
        ordered_json e;
        e["t"] = ev.t;
        e["kind"] = kind_name(ev.kind);
        e["v"] = ev.state.v;
        e["vt"] = ev.state.vt;
        e["direction"] = ev.direction;
        events.push_back(e);
    }
    ordered_json j;
    j["events"] = events;
    j["escaped"] = orb.escaped;
    j["drift"] = orb.drift;
    j["drift_tolerance"] = orb.drift_tolerance;
    j["tol"] = orb.tol;
    return j.dump();
}

std::string period_csv(const std::vector<PeriodRow>& rows) {
    std::string out = "M,T_quad,T_agm,T_ode,err\n";
    for (const PeriodRow& row : rows) {
        out += fmt17(row.m_amplitude);
        out += ',';
        out += fmt17(row.period_quadrature);
        out += ',';
        out += fmt17(row.period_agm);
        out += ',';
        if (row.period_ode) out += fmt17(*row.period_ode);
        out += ',';
        out += fmt17(row.err);
        out += '\n';
    }
    return out;
}

std::string classification_json(const Classification& cls) {
    ordered_json j;
    if (cls.is<TrivialZero>()) {
        j["class"] = "trivial_zero";
    } else if (cls.is<EquilibriumState>()) {
        j["class"] = "equilibrium";
        j["sign"] = cls.as<EquilibriumState>().sign;
    } else if (cls.is<SolitonParams>()) {
        const SolitonParams& s = cls.as<SolitonParams>();
        j["class"] = "soliton";
        j["a"] = s.a;
        j["sign"] = s.sign;
    } else if (cls.is<PeriodicOrbit>()) {
        const PeriodicOrbit& p = cls.as<PeriodicOrbit>();
        j["class"] = "periodic";
        j["M"] = p.amplitude;
        j["T"] = p.period;
        j["phase"] = p.phase;
    } else {
        const UnboundedBranch& u = cls.as<UnboundedBranch>();
        j["class"] = "unbounded";
        switch (u.reason) {
            case UnboundedBranch::Reason::c_above_zero:
                j["reason"] = "c_above_zero";
                break;
            case UnboundedBranch::Reason::c_below_minus_one:
                j["reason"] = "c_below_minus_one";
                break;
            case UnboundedBranch::Reason::outer_band:
                j["reason"] = "outer_band";
                break;
        }
    }
    j["c"] = cls.c;
    switch (origin_value(cls)) {
        case OriginValue::minus_one:
            j["origin"] = -1;
            break;
        case OriginValue::zero:
            j["origin"] = 0;
            break;
        case OriginValue::plus_one:
            j["origin"] = 1;
            break;
        case OriginValue::discontinuous:
            j["origin"] = "discontinuous";
            break;
    }
    return j.dump();
}

std::string field_csv(const CylinderField& f) {
    std::string out = "t,theta,v\n";
    for (int i = 0; i < f.n_t; ++i) {
        const std::string ts = fmt17(f.t(i));
        for (int j = 0; j < f.n_theta; ++j) {
            out += ts;
            out += ',';
            out += fmt17(f.theta(j));
            out += ',';
            out += fmt17(f.at(i, j));
            out += '\n';
        }
    }
    return out;
}

CylinderField field_from_csv(const std::string& text) {
    const std::vector<std::string> lines = csv_body(text, "t,theta,v");
    if (lines.empty()) throw IoError("field file has no rows");
    std::vector<double> t, v;
    t.reserve(lines.size());
    v.reserve(lines.size());
    for (const std::string& line : lines) {
        const std::vector<std::string> f = split_fields(line);
        if (f.size() != 3) throw IoError("expected 3 columns: \"" + line + "\"");
        t.push_back(parse_num(f[0]));
        v.push_back(parse_num(f[2]));
    }
    std::size_t n_theta = 1;
    while (n_theta < t.size() && t[n_theta] == t[0]) ++n_theta;
    if (t.size() % n_theta != 0) {
        throw IoError("field rows do not form a rectangular grid");
    }
    CylinderField f;
    f.n_theta = static_cast<int>(n_theta);
    f.n_t = static_cast<int>(t.size() / n_theta);
    f.t_min = t.front();
    f.t_max = t.back();
    f.v = std::move(v);
    f.bc_left = BoundaryCondition::dirichlet(f.v.front());
    f.bc_right = BoundaryCondition::dirichlet(f.v.back());
    validate(f);
    return f;
}

std::string relax_report_json(const RelaxReport& r) {
    ordered_json j;
    j["steps"] = r.steps;
    j["final_residual"] = r.final_residual;
    j["anisotropy"] = r.anisotropy;
    j["converged"] = r.converged;
    j["max_abs_v"] = r.max_abs_v;
    j["backend"] = backend_name(r.backend);
    j["dt"] = r.dt;
    return j.dump();
}

}  // namespace ym
