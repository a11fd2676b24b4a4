#include "ym/cli.hpp"

#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <limits>
#include <optional>
#include <utility>

#include "CLI11.hpp"
#include "json.hpp"
#include "ym/checks.hpp"
#include "ym/classify.hpp"
#include "ym/closedform.hpp"
#include "ym/cylinder.hpp"
#include "ym/errors.hpp"
#include "ym/geometry.hpp"
#include "ym/io.hpp"
#include "ym/orbit.hpp"
#include "ym/period.hpp"

namespace ym {

namespace {

namespace fs = std::filesystem;
using ordered_json = nlohmann::ordered_json;
using Params = std::vector<std::pair<std::string, std::string>>;

struct Common {
    std::string out = ".";
    bool quiet = false;
};

void add_common(CLI::App* sub, Common& c) {
    sub->add_option("--out", c.out, "output directory (created if missing)");
    sub->add_flag("--quiet", c.quiet, "suppress progress lines");
}

std::string write_output(const Common& c, const std::string& name,
                         const std::string& content) {
    std::error_code ec;
    fs::create_directories(c.out, ec);
    if (ec) throw IoError("cannot create output directory: " + c.out);
    const std::string path = (fs::path(c.out) / name).string();
    write_text_file(path, content);
    if (!c.quiet) std::cout << "wrote " << path << "\n";
    return path;
}

// Reproducibility record: the resolved inputs and the files they produced.
void write_manifest(const Common& c, const std::string& subcommand,
                    const Params& params, std::optional<long long> seed,
                    const std::vector<std::string>& outputs) {
    ordered_json j;
    j["subcommand"] = subcommand;
    ordered_json pj = ordered_json::object();
    for (const auto& [k, v] : params) pj[k] = v;
    j["parameters"] = pj;
    if (seed) {
        j["seed"] = *seed;
    } else {
        j["seed"] = nullptr;
    }
    j["output_paths"] = outputs;
    write_output(c, "manifest.json", j.dump(2) + "\n");
}

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::string cur;
    for (char ch : s) {
        if (ch == sep) {
            out.push_back(cur);
            cur.clear();
        } else {
            cur.push_back(ch);
        }
    }
    out.push_back(cur);
    return out;
}

double parse_value(const std::string& s, const std::string& what) {
    char* end = nullptr;
    const double x = std::strtod(s.c_str(), &end);
    if (end == s.c_str() || *end != '\0') {
        throw DomainError("malformed " + what + ": \"" + s + "\"");
    }
    return x;
}

RadialProfile load_profile(const std::string& path) {
    const std::string text = read_text_file(path);
    if (path.size() >= 5 && path.substr(path.size() - 5) == ".json") {
        return profile_from_json(text);
    }
    return profile_from_csv(text);
}

void check_sign(int sign) {
    if (sign != 1 && sign != -1) throw DomainError("--sign must be +1 or -1");
}

// --- subcommand handlers ---------------------------------------------------

struct SolitonArgs {
    Common common;
    double a = 1.0;
    int sign = +1;
    double t_min = -8.0, t_max = 8.0;
    int n = 321;
    bool radial = false;
};

int run_soliton(const SolitonArgs& a) {
    check_sign(a.sign);
    const RadialProfile p =
        soliton_profile({a.a, a.sign}, a.t_min, a.t_max, a.n);
    std::string content;
    if (a.radial) {
        content = profile_csv(p);
    } else {
        std::vector<double> t(p.u.size());
        const double h = (a.t_max - a.t_min) / (a.n - 1);
        for (int i = 0; i < a.n; ++i) t[i] = a.t_min + i * h;
        content = cylinder_samples_csv(t, p.u);
    }
    const std::string path = write_output(a.common, "soliton.csv", content);
    write_manifest(a.common, "soliton",
                   {{"a", fmt17(a.a)},
                    {"sign", std::to_string(a.sign)},
                    {"t_min", fmt17(a.t_min)},
                    {"t_max", fmt17(a.t_max)},
                    {"n", std::to_string(a.n)},
                    {"radial", a.radial ? "true" : "false"}},
                   std::nullopt, {path});
    return 0;
}

struct EnergyArgs {
    Common common;
    double a = 1.0;
    int sign = +1;
    double t_min = -8.0, t_max = 8.0;
    int n = 20001;
    std::string profile_path;
    std::vector<double> window;  // empty = whole line
};

int run_energy(const EnergyArgs& a) {
    RadialProfile p;
    Params params;
    if (!a.profile_path.empty()) {
        p = load_profile(a.profile_path);
        params.emplace_back("profile", a.profile_path);
    } else {
        check_sign(a.sign);
        p = soliton_profile({a.a, a.sign}, a.t_min, a.t_max, a.n);
        params = {{"a", fmt17(a.a)},
                  {"sign", std::to_string(a.sign)},
                  {"t_min", fmt17(a.t_min)},
                  {"t_max", fmt17(a.t_max)},
                  {"n", std::to_string(a.n)}};
    }
    EnergyValue ev;
    if (a.window.empty()) {
        ev = energy_whole_line(p);
        params.emplace_back("window", "whole-line");
    } else {
        ev = energy(p, a.window[0], a.window[1]);
        params.emplace_back("window",
                            fmt17(a.window[0]) + ":" + fmt17(a.window[1]));
    }
    const std::string json = energy_json(ev);
    std::cout << json << "\n";
    const std::string path = write_output(a.common, "energy.json", json + "\n");
    write_manifest(a.common, "energy", params, std::nullopt, {path});
    return 0;
}

struct OrbitArgs {
    Common common;
    double v0 = 0.0, vt0 = 0.0;
    double t0 = -8.0, t1 = 8.0;
    double tol = 1e-10;
    bool project = false;
};

int run_orbit(const OrbitArgs& a) {
    IntegrateOptions io;
    io.tol = a.tol;
    io.project_first_integral = a.project;
    const Orbit orb = integrate({a.v0, a.vt0}, {a.t0, a.t1}, io);
    const std::string csv_path = write_output(a.common, "orbit.csv", orbit_csv(orb));
    const std::string ev_path =
        write_output(a.common, "orbit_events.json", orbit_events_json(orb) + "\n");
    write_manifest(a.common, "orbit",
                   {{"v0", fmt17(a.v0)},
                    {"vt0", fmt17(a.vt0)},
                    {"t0", fmt17(a.t0)},
                    {"t1", fmt17(a.t1)},
                    {"tol", fmt17(a.tol)},
                    {"project", a.project ? "true" : "false"}},
                   std::nullopt, {csv_path, ev_path});
    if (!a.common.quiet) {
        std::cout << "samples " << orb.t.size() << ", events " << orb.events.size()
                  << ", first-integral drift " << fmt17(orb.drift) << "\n";
    }
    if (orb.escaped) {
        std::cerr << "integration stopped early: |v| crossed the escape "
                     "threshold (see orbit_events.json)\n";
        return 2;
    }
    return 0;
}

struct PeriodArgs {
    Common common;
    double m = std::numeric_limits<double>::quiet_NaN();
    std::string m_grid;
    bool with_ode = false;
};

int run_period(const PeriodArgs& a) {
    std::vector<double> ms;
    if (!std::isnan(a.m) && !a.m_grid.empty()) {
        throw DomainError("give either --m or --m-grid, not both");
    }
    if (!std::isnan(a.m)) {
        ms.push_back(a.m);
    } else if (!a.m_grid.empty()) {
        const std::vector<std::string> f = split(a.m_grid, ':');
        if (f.size() != 3) throw DomainError("--m-grid wants a:b:step");
        const double lo = parse_value(f[0], "--m-grid start");
        const double hi = parse_value(f[1], "--m-grid end");
        const double step = parse_value(f[2], "--m-grid step");
        if (!(step > 0.0) || hi < lo) throw DomainError("empty --m-grid range");
        for (int k = 0;; ++k) {
            const double m = lo + k * step;
            if (m > hi + 1e-12 * std::max(1.0, std::abs(hi))) break;
            ms.push_back(m);
        }
    } else {
        throw DomainError("period needs --m or --m-grid");
    }

    std::vector<PeriodRow> rows;
    rows.reserve(ms.size());
    for (double m : ms) {
        PeriodRow row;
        row.m_amplitude = m;
        row.period_quadrature = period_integral(m).period;
        row.period_agm = period_agm(m).period;
        row.err = std::abs(row.period_quadrature - row.period_agm);
        if (a.with_ode) {
            IntegrateOptions io;
            io.tol = 1e-10;
            const Orbit orb = integrate(
                {m, 0.0}, {0.0, std::max(40.0, 2.7 * row.period_quadrature)}, io);
            const std::optional<double> t = detect_period(orb);
            if (!t) throw NumericError("no period detected for M = " + fmt17(m));
            row.period_ode = *t;
        }
        rows.push_back(row);
    }
    const std::string path = write_output(a.common, "period.csv", period_csv(rows));
    Params params;
    if (!std::isnan(a.m)) params.emplace_back("m", fmt17(a.m));
    if (!a.m_grid.empty()) params.emplace_back("m_grid", a.m_grid);
    params.emplace_back("ode", a.with_ode ? "true" : "false");
    write_manifest(a.common, "period", params, std::nullopt, {path});
    return 0;
}

struct ClassifyArgs {
    Common common;
    std::optional<double> v0, vt0;
    std::string profile_path;
};

int run_classify(const ClassifyArgs& a) {
    const bool have_point = a.v0.has_value() || a.vt0.has_value();
    if (have_point == !a.profile_path.empty()) {
        throw DomainError("classify wants either --v0/--vt0 or --profile");
    }
    Classification cls;
    Params params;
    if (have_point) {
        if (!a.v0 || !a.vt0) throw DomainError("--v0 and --vt0 go together");
        cls = classify_initial({*a.v0, *a.vt0});
        params = {{"v0", fmt17(*a.v0)}, {"vt0", fmt17(*a.vt0)}};
    } else {
        cls = classify_profile(load_profile(a.profile_path));
        params = {{"profile", a.profile_path}};
    }
    const std::string json = classification_json(cls);
    std::cout << json << "\n";
    const std::string path = write_output(a.common, "classify.json", json + "\n");
    write_manifest(a.common, "classify", params, std::nullopt, {path});
    return 0;
}

struct RelaxArgs {
    Common common;
    std::string init = "zero";
    double t_min = -8.0, t_max = 8.0;
    int n_t = 129, n_theta = 32;
    double tol = 1e-8;
    long max_steps = 1000000;
    double dt_factor = 0.2;
    int check_every = 64;
    std::string bc = "dirichlet";
    std::string backend = "auto";
    long long seed = 0;
};

int run_relax(const RelaxArgs& a) {
    const std::vector<std::string> f = split(a.init, ':');
    CylinderField init;
    std::optional<long long> seed;
    if (f[0] == "zero" && f.size() == 1) {
        init = field_zero(a.t_min, a.t_max, a.n_t, a.n_theta);
    } else if (f[0] == "soliton" && f.size() == 2) {
        init = field_soliton({parse_value(f[1], "soliton scale"), +1}, a.t_min,
                             a.t_max, a.n_t, a.n_theta);
    } else if (f[0] == "perturbed-soliton" && f.size() == 3) {
        init = field_perturbed_soliton({parse_value(f[1], "soliton scale"), +1},
                                       parse_value(f[2], "perturbation amplitude"),
                                       a.t_min, a.t_max, a.n_t, a.n_theta);
    } else if (f[0] == "random" && (f.size() == 2 || f.size() == 3)) {
        seed = f.size() == 3
                   ? static_cast<long long>(parse_value(f[2], "seed"))
                   : a.seed;
        init = field_random(parse_value(f[1], "amplitude"),
                            static_cast<std::uint64_t>(*seed), a.t_min, a.t_max,
                            a.n_t, a.n_theta);
    } else {
        throw DomainError(
            "bad --init; use zero | soliton:a | perturbed-soliton:a:amp | "
            "random:amp:seed");
    }
    if (a.bc == "neumann") {
        init.bc_left = BoundaryCondition::neumann();
        init.bc_right = BoundaryCondition::neumann();
    } else if (a.bc != "dirichlet") {
        throw DomainError("--bc must be dirichlet or neumann");
    }

    RelaxOptions ro;
    ro.tol = a.tol;
    ro.max_steps = a.max_steps;
    ro.dt_factor = a.dt_factor;
    ro.check_every = a.check_every;
    ro.backend = backend_from_name(a.backend);

    auto [field, report] = relax(init, ro);
    const std::string field_path =
        write_output(a.common, "relax_field.csv", field_csv(field));
    const std::string report_path = write_output(
        a.common, "relax_report.json", relax_report_json(report) + "\n");
    write_manifest(a.common, "relax",
                   {{"init", a.init},
                    {"t_min", fmt17(a.t_min)},
                    {"t_max", fmt17(a.t_max)},
                    {"nt", std::to_string(a.n_t)},
                    {"ntheta", std::to_string(a.n_theta)},
                    {"tol", fmt17(a.tol)},
                    {"max_steps", std::to_string(a.max_steps)},
                    {"dt_factor", fmt17(a.dt_factor)},
                    {"check_every", std::to_string(a.check_every)},
                    {"bc", a.bc},
                    {"backend", backend_name(report.backend)}},
                   seed, {field_path, report_path});
    if (!a.common.quiet) {
        std::cout << "steps " << report.steps << ", residual "
                  << fmt17(report.final_residual) << ", converged "
                  << (report.converged ? "yes" : "no") << "\n";
    }
    if (!report.converged) {
        std::cerr << "relaxation did not reach tol " << fmt17(a.tol) << " within "
                  << a.max_steps << " steps\n";
        return 2;
    }
    return 0;
}

struct CheckArgs {
    bool all = false;
    bool list = false;
    std::string only;
    double orbit_tol = 1e-10;
};

int run_check(const CheckArgs& a) {
    if (a.list) {
        for (const std::string& n : check_names()) std::cout << n << "\n";
        return 0;
    }
    CheckOptions opts;
    opts.orbit_tol = a.orbit_tol;
    const char* fast = std::getenv("YM_CHECK_FAST");
    opts.fast = fast != nullptr && std::string(fast) == "1";
    const std::vector<CheckResult> results = run_checks(a.only, opts);
    if (results.empty()) {
        std::cerr << "no checks match \"" << a.only << "\"\n";
        return 1;
    }
    bool ok = true;
    for (const CheckResult& r : results) {
        char line[64];
        std::snprintf(line, sizeof(line), "(%.2fs)", r.seconds);
        std::cout << (r.pass ? "[PASS] " : "[FAIL] ") << r.name << " " << line
                  << (r.detail.empty() ? "" : ": " + r.detail) << "\n";
        ok = ok && r.pass;
    }
    std::cout << (ok ? "all checks passed" : "CHECKS FAILED") << "\n";
    return ok ? 0 : 2;
}

}  // namespace

int run(const std::vector<std::string>& args) {
    CLI::App app{
        "Stationary states of the symmetric Yang-Mills reduction: explicit "
        "families, phase-plane classification, periods, and cylinder "
        "relaxation"};
    app.require_subcommand(1);

    SolitonArgs sol;
    CLI::App* s_sol = app.add_subcommand("soliton", "sample the explicit family");
    add_common(s_sol, sol.common);
    s_sol->add_option("--a", sol.a, "scale parameter (> 0)");
    s_sol->add_option("--sign", sol.sign, "orientation, +1 or -1");
    s_sol->add_option("--t-min", sol.t_min, "window start, t = ln r");
    s_sol->add_option("--t-max", sol.t_max, "window end");
    s_sol->add_option("--n", sol.n, "sample count");
    s_sol->add_flag("--radial", sol.radial, "emit r,u instead of t,v");

    EnergyArgs en;
    CLI::App* s_en = app.add_subcommand("energy", "cylinder energy of a profile");
    add_common(s_en, en.common);
    s_en->add_option("--a", en.a, "soliton scale");
    s_en->add_option("--sign", en.sign, "soliton orientation");
    s_en->add_option("--t-min", en.t_min, "sampling window start");
    s_en->add_option("--t-max", en.t_max, "sampling window end");
    s_en->add_option("--n", en.n, "sample count");
    s_en->add_option("--profile", en.profile_path,
                     "read the profile from a CSV/JSON file instead");
    s_en->add_option("--window", en.window,
                     "integrate over [t0, t1] instead of the whole grid")
        ->expected(2);

    OrbitArgs orb;
    CLI::App* s_orb = app.add_subcommand("orbit", "integrate the reduced dynamics");
    add_common(s_orb, orb.common);
    s_orb->add_option("--v0", orb.v0, "initial value")->required();
    s_orb->add_option("--vt0", orb.vt0, "initial slope")->required();
    s_orb->add_option("--t0", orb.t0, "span start (must be <= 0)");
    s_orb->add_option("--t1", orb.t1, "span end (must be >= 0)");
    s_orb->add_option("--tol", orb.tol, "integration tolerance");
    s_orb->add_flag("--project", orb.project,
                    "re-solve the slope from the conserved quantity after "
                    "each step");

    PeriodArgs per;
    CLI::App* s_per = app.add_subcommand("period", "periods of bounded orbits");
    add_common(s_per, per.common);
    s_per->add_option("--m", per.m, "single amplitude in (0, 1)");
    s_per->add_option("--m-grid", per.m_grid, "amplitude grid a:b:step");
    s_per->add_flag("--ode", per.with_ode,
                    "add the integrated-orbit period column");

    ClassifyArgs cla;
    CLI::App* s_cla = app.add_subcommand("classify", "name the state a point or profile is on");
    add_common(s_cla, cla.common);
    double cla_v0 = 0.0, cla_vt0 = 0.0;
    CLI::Option* o_v0 = s_cla->add_option("--v0", cla_v0, "value at t = 0");
    CLI::Option* o_vt0 = s_cla->add_option("--vt0", cla_vt0, "slope at t = 0");
    s_cla->add_option("--profile", cla.profile_path, "CSV/JSON profile file");

    RelaxArgs rel;
    CLI::App* s_rel = app.add_subcommand("relax", "gradient-flow relaxation on the cylinder");
    add_common(s_rel, rel.common);
    s_rel->add_option("--init", rel.init,
                      "zero | soliton:a | perturbed-soliton:a:amp | "
                      "random:amp:seed");
    s_rel->add_option("--t-min", rel.t_min, "window start");
    s_rel->add_option("--t-max", rel.t_max, "window end");
    s_rel->add_option("--nt", rel.n_t, "rows (axis samples)");
    s_rel->add_option("--ntheta", rel.n_theta, "columns (angle samples)");
    s_rel->add_option("--tol", rel.tol, "residual target");
    s_rel->add_option("--max-steps", rel.max_steps, "step budget");
    s_rel->add_option("--dt-factor", rel.dt_factor,
                      "dt = dt_factor * min(h_t^2, h_theta^2), at most 0.25");
    s_rel->add_option("--check-every", rel.check_every, "residual test cadence");
    s_rel->add_option("--bc", rel.bc, "dirichlet | neumann (both ends)");
    s_rel->add_option("--backend", rel.backend, "auto | scalar | avx2 | neon");
    s_rel->add_option("--seed", rel.seed, "seed when --init random:amp omits one");

    CheckArgs chk;
    CLI::App* s_chk = app.add_subcommand("check", "run the verification suite");
    s_chk->add_flag("--all", chk.all, "run every check (the default)");
    s_chk->add_option("--only", chk.only, "run checks whose name contains this");
    s_chk->add_flag("--list", chk.list, "list check names and exit");
    s_chk->add_option("--orbit-tol", chk.orbit_tol,
                      "integrator tolerance for the conservation check "
                      "(loosen to watch it fail)");

    std::vector<const char*> argv;
    argv.reserve(args.size() + 1);
    argv.push_back("ym");
    for (const std::string& a : args) argv.push_back(a.c_str());

    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : 64;
    }

    try {
        if (*s_sol) return run_soliton(sol);
        if (*s_en) return run_energy(en);
        if (*s_orb) return run_orbit(orb);
        if (*s_per) return run_period(per);
        if (*s_cla) {
            if (o_v0->count() > 0) cla.v0 = cla_v0;
            if (o_vt0->count() > 0) cla.vt0 = cla_vt0;
            return run_classify(cla);
        }
        if (*s_rel) return run_relax(rel);
        if (*s_chk) return run_check(chk);
    } catch (const DomainError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const IoError& e) {
        std::cerr << "i/o error: " << e.what() << "\n";
        return 3;
    } catch (const NumericError& e) {
        std::cerr << "numerical failure: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "numerical failure: " << e.what() << "\n";
        return 2;
    }
    return 64;
}

}  // namespace ym
