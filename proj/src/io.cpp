#include "hwm/io.hpp"

#include <cstdio>
#include <cstring>
#include <fstream>

#include "hwm/errors.hpp"

namespace hwm {

cx parse_complex(const json& j, const std::string& where) {
    if (j.is_number())
        return cx(j.get<double>(), 0.0);
    if (j.is_array() && j.size() == 2 && j[0].is_number() && j[1].is_number())
        return cx(j[0].get<double>(), j[1].get<double>());
    throw ConfigError(where + ": expected a number or [re, im] pair");
}

json complex_to_json(cx z) { return json::array({z.real(), z.imag()}); }

json vec3_to_json(const ComplexVec3& v) {
    return json::array(
        {complex_to_json(v.x1), complex_to_json(v.x2), complex_to_json(v.x3)});
}

ComplexVec3 parse_vec3(const json& j, const std::string& where) {
    if (!j.is_array() || j.size() != 3)
        throw ConfigError(where + ": expected a 3-component array");
    return {parse_complex(j[0], where + "[0]"), parse_complex(j[1], where + "[1]"),
            parse_complex(j[2], where + "[2]")};
}

namespace {

std::array<double, 3> parse_real3(const json& j, const std::string& where) {
    if (!j.is_array() || j.size() != 3)
        throw ConfigError(where + ": expected a real 3-vector");
    std::array<double, 3> out{};
    for (int i = 0; i < 3; ++i) {
        if (!j[i].is_number())
            throw ConfigError(where + ": components must be real numbers");
        out[i] = j[i].get<double>();
    }
    return out;
}

std::vector<cx> parse_complex_list(const json& j, const std::string& where) {
    if (!j.is_array())
        throw ConfigError(where + ": expected an array");
    std::vector<cx> out;
    for (std::size_t i = 0; i < j.size(); ++i)
        out.push_back(parse_complex(j[i], where + "[" + std::to_string(i) + "]"));
    return out;
}

KernelKind parse_kernel(const json& j) {
    if (!j.contains("kernel"))
        return KernelKind::rational();
    const json& k = j.at("kernel");
    std::string variant = k.value("variant", std::string("rational"));
    if (variant == "rational")
        return KernelKind::rational();
    if (variant == "trigonometric") {
        if (!k.contains("L") || !k["L"].is_number())
            throw ConfigError("kernel: trigonometric variant needs a period L");
        return KernelKind::trigonometric(k["L"].get<double>());
    }
    throw ConfigError("kernel.variant: expected 'rational' or 'trigonometric'");
}

} // namespace

json to_json(const ConstraintReport& rep) {
    return json{{"null_residuals", rep.null_residuals},
                {"orthogonality_residuals", rep.orthogonality_residuals},
                {"scalar_residual", rep.scalar_residual},
                {"max_residual", rep.max_residual},
                {"admissible", rep.max_residual <= kTolAdmissible}};
}

json to_json(const SpinPoleData& data) {
    json upper = json::array();
    for (const auto& ps : data.upper)
        upper.push_back(
            {{"pole", complex_to_json(ps.pole)}, {"spin", vec3_to_json(ps.spin)}});
    json lower = json::array();
    for (const auto& ps : data.lower)
        lower.push_back(
            {{"pole", complex_to_json(ps.pole)}, {"spin", vec3_to_json(ps.spin)}});
    return json{{"m0", vec3_to_json(data.m0)},
                {"upper", upper},
                {"lower", lower},
                {"mode", data.mode == AnsatzMode::RealReduced ? "real_reduced"
                                                              : "general_complex"},
                {"rho2", complex_to_json(data.rho2)}};
}

SpinPoleData spin_pole_from_json(const json& j) {
    SpinPoleData d;
    d.m0 = parse_vec3(j.at("m0"), "m0");
    auto read_family = [&](const char* key, std::vector<PoleSpin>& out) {
        if (!j.contains(key))
            return;
        const json& fam = j.at(key);
        if (!fam.is_array())
            throw ConfigError(std::string(key) + ": expected an array");
        for (std::size_t i = 0; i < fam.size(); ++i) {
            std::string where = std::string(key) + "[" + std::to_string(i) + "]";
            out.push_back({parse_complex(fam[i].at("pole"), where + ".pole"),
                           parse_vec3(fam[i].at("spin"), where + ".spin")});
        }
    };
    read_family("upper", d.upper);
    std::string mode = j.value("mode", std::string("real_reduced"));
    if (mode == "real_reduced") {
        d.mode = AnsatzMode::RealReduced;
        d.mirror_lower();
    } else if (mode == "general_complex") {
        d.mode = AnsatzMode::GeneralComplex;
        read_family("lower", d.lower);
        if (j.contains("rho2"))
            d.rho2 = parse_complex(j["rho2"], "rho2");
    } else {
        throw ConfigError("mode: expected 'real_reduced' or 'general_complex'");
    }
    for (const auto& ps : d.upper)
        if (ps.pole.imag() <= 0)
            throw ConfigError("upper: poles must have Im > 0");
    for (const auto& ps : d.lower)
        if (ps.pole.imag() >= 0)
            throw ConfigError("lower: poles must have Im < 0");
    return d;
}

namespace {

Scenario parse_scenario_impl(const json& j) {
    Scenario sc;
    sc.kernel = parse_kernel(j);

    if (!j.contains("source") || !j["source"].is_object())
        throw ConfigError("source: required object");
    const json& src = j["source"];
    std::string type = src.value("type", std::string(""));
    if (type == "iterative") {
        sc.source = Scenario::SourceType::Iterative;
        sc.spec.kind = sc.kernel;
        sc.spec.poles = parse_complex_list(src.at("poles"), "source.poles");
        if (!src.contains("axes") || !src["axes"].is_array() ||
            src["axes"].size() != sc.spec.poles.size())
            throw ConfigError("source.axes: one unit axis per pole required");
        for (std::size_t i = 0; i < src["axes"].size(); ++i)
            sc.spec.axes.push_back(parse_real3(
                src["axes"][i], "source.axes[" + std::to_string(i) + "]"));
        if (src.contains("vacuum_direction"))
            sc.spec.vacuum_direction =
                parse_real3(src["vacuum_direction"], "source.vacuum_direction");
        sc.iteration.tol = src.value("tol", sc.iteration.tol);
        sc.iteration.max_iter = src.value("max_iter", sc.iteration.max_iter);
    } else if (type == "traveling_wave") {
        sc.source = Scenario::SourceType::TravelingWave;
        sc.tw_poles = parse_complex_list(src.at("poles"), "source.poles");
        if (!src.contains("theta") || !src["theta"].is_number())
            throw ConfigError("source.theta: required number");
        sc.tw_theta = src["theta"].get<double>();
        sc.tw_chirality = src.value("chirality", +1);
        if (sc.tw_chirality != 1 && sc.tw_chirality != -1)
            throw ConfigError("source.chirality: expected +1 or -1");
    } else if (type == "catalog") {
        sc.source = Scenario::SourceType::Catalog;
        if (!src.contains("id") || !src["id"].is_string())
            throw ConfigError("source.id: required string");
        sc.catalog_id = catalog_id_from_string(src["id"].get<std::string>());
    } else if (type == "explicit") {
        sc.source = Scenario::SourceType::Explicit;
        sc.explicit_data = spin_pole_from_json(src.at("data"));
    } else {
        throw ConfigError("source.type: expected one of 'iterative', "
                          "'traveling_wave', 'catalog', 'explicit'");
    }

    if (j.contains("evolve")) {
        const json& ev = j["evolve"];
        std::string mode = ev.value("mode", std::string("first"));
        if (mode == "first")
            sc.evolve.mode = EvolveMode::FirstOrder;
        else if (mode == "second")
            sc.evolve.mode = EvolveMode::SecondOrder;
        else
            throw ConfigError("evolve.mode: expected 'first' or 'second'");
        sc.evolve.t0 = ev.value("t0", sc.evolve.t0);
        sc.evolve.t1 = ev.value("t1", sc.evolve.t1);
        sc.evolve.sample_count = ev.value("sample_count", sc.evolve.sample_count);
        sc.evolve.rel_tol = ev.value("tol", sc.evolve.rel_tol);
        sc.evolve.abs_tol = sc.evolve.rel_tol;
        if (sc.evolve.sample_count < 1)
            throw ConfigError("evolve.sample_count: must be >= 1");
    }

    if (j.contains("output")) {
        const json& out = j["output"];
        if (sc.kernel.periodic()) {
            sc.grid_min = -0.5 * sc.kernel.L;
            sc.grid_max = 0.5 * sc.kernel.L;
        }
        sc.grid_min = out.value("grid_min", sc.grid_min);
        sc.grid_max = out.value("grid_max", sc.grid_max);
        sc.grid_points = out.value("grid_points", sc.grid_points);
        if (sc.grid_points < 1 || !(sc.grid_max > sc.grid_min))
            throw ConfigError("output: need grid_max > grid_min, grid_points >= 1");
        if (out.contains("field_times")) {
            if (!out["field_times"].is_array())
                throw ConfigError("output.field_times: expected an array");
            for (const auto& t : out["field_times"]) {
                if (!t.is_number())
                    throw ConfigError("output.field_times: numbers only");
                sc.field_times.push_back(t.get<double>());
            }
        }
        sc.write_field_csv = out.value("write_field_csv", sc.write_field_csv);
    } else if (sc.kernel.periodic()) {
        sc.grid_min = -0.5 * sc.kernel.L;
        sc.grid_max = 0.5 * sc.kernel.L;
    }
    return sc;
}

} // namespace

Scenario parse_scenario(const json& j) {
    try {
        return parse_scenario_impl(j);
    } catch (const json::exception& e) {
        throw ConfigError(std::string("config: ") + e.what());
    }
}

Scenario load_scenario(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in)
        throw IOError("cannot open config file: " + path.string());
    json j;
    try {
        j = json::parse(in);
    } catch (const json::parse_error& e) {
        throw ConfigError(std::string("JSON parse error: ") + e.what());
    }
    return parse_scenario(j);
}

SourceResult build_source(const Scenario& sc) {
    SourceResult out;
    out.report = json::object();
    switch (sc.source) {
    case Scenario::SourceType::Iterative: {
        IterationResult res = solve_iterative(sc.spec, sc.iteration);
        out.data = res.data;
        out.report["iterations"] = res.iterations;
        out.report["iterations_to_one_digit"] = res.iterations_to_one_digit;
        out.report["final_change"] = res.final_change;
        out.report["separation_warning"] = res.separation_warning;
        break;
    }
    case Scenario::SourceType::TravelingWave: {
        TravelingWave tw = traveling_wave(sc.tw_poles, sc.tw_theta, sc.tw_chirality);
        out.data = tw.data;
        out.report["velocity"] = tw.velocity;
        break;
    }
    case Scenario::SourceType::Catalog:
        out.data = exact_catalog(sc.catalog_id);
        break;
    case Scenario::SourceType::Explicit:
        out.data = sc.explicit_data;
        break;
    }
    return out;
}

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

namespace {

void write_field_csv_at(const SpinPoleData& state, const KernelKind& kind,
                        const Scenario& sc, const std::filesystem::path& path) {
    std::ofstream out(path);
    if (!out)
        throw IOError("cannot write " + path.string());
    out << "x,m1,m2,m3,eps\n";
    double span = sc.grid_max - sc.grid_min;
    for (int i = 0; i < sc.grid_points; ++i) {
        double x = sc.grid_min + span * static_cast<double>(i) /
                                     static_cast<double>(sc.grid_points);
        ComplexVec3 m = eval_m(state, kind, x);
        double eps = energy_density(state, kind, x);
        out << format_double(x) << ',' << format_double(m.x1.real()) << ','
            << format_double(m.x2.real()) << ',' << format_double(m.x3.real())
            << ',' << format_double(eps) << '\n';
    }
}

} // namespace

void export_series(const Trajectory& traj, const KernelKind& kind,
                   const Scenario& sc, const std::filesystem::path& out_dir,
                   json run_report) {
    if (traj.times.empty())
        throw IOError("empty trajectory");
    std::filesystem::create_directories(out_dir);

    {
        std::ofstream out(out_dir / "poles.csv");
        if (!out)
            throw IOError("cannot write poles.csv");
        out << "t";
        std::size_t np = traj.states.front().n_poles();
        for (std::size_t j = 0; j < np; ++j)
            out << ",re_a" << j << ",im_a" << j;
        out << ",min_im_upper,min_dist_lower,constraint_max,norm_probe_max\n";
        for (std::size_t k = 0; k < traj.times.size(); ++k) {
            out << format_double(traj.times[k]);
            const SpinPoleData& st = traj.states[k];
            for (std::size_t j = 0; j < np; ++j) {
                cx a = st.pole_spin(j).pole;
                out << ',' << format_double(a.real()) << ','
                    << format_double(a.imag());
            }
            const TrajectoryMonitor& mon = traj.monitors[k];
            out << ',' << format_double(mon.min_im_upper) << ','
                << format_double(mon.min_dist_lower) << ','
                << format_double(mon.constraint_max) << ','
                << format_double(mon.norm_probe_max) << '\n';
        }
    }

    if (sc.write_field_csv) {
        std::vector<double> wanted = sc.field_times;
        if (wanted.empty())
            wanted = {traj.times.front(), traj.times.back()};
        for (double tw : wanted) {
            std::size_t best = 0;
            for (std::size_t k = 1; k < traj.times.size(); ++k)
                if (std::abs(traj.times[k] - tw) <
                    std::abs(traj.times[best] - tw))
                    best = k;
            char name[64];
            std::snprintf(name, sizeof name, "field_t%+.6f.csv",
                          traj.times[best]);
            write_field_csv_at(traj.states[best], kind, sc, out_dir / name);
        }
    }

    json rep = std::move(run_report);
    rep["samples"] = traj.times.size();
    rep["t_first"] = traj.times.front();
    rep["t_last"] = traj.times.back();
    switch (traj.status) {
    case TrajectoryStatus::Ok: rep["status"] = "ok"; break;
    case TrajectoryStatus::PoleCrossing:
        rep["status"] = "pole_crossing";
        rep["failure_time"] = traj.failure_time;
        break;
    case TrajectoryStatus::StepTooSmall:
        rep["status"] = "step_too_small";
        rep["failure_time"] = traj.failure_time;
        break;
    }
    double cmax = 0, nmax = 0;
    for (const auto& mon : traj.monitors) {
        cmax = std::max(cmax, mon.constraint_max);
        nmax = std::max(nmax, mon.norm_probe_max);
    }
    rep["max_constraint_residual"] = cmax;
    rep["max_norm_probe"] = nmax;
    rep["initial_state"] = to_json(traj.states.front());
    rep["final_state"] = to_json(traj.states.back());
    std::ofstream out(out_dir / "report.json");
    if (!out)
        throw IOError("cannot write report.json");
    out << rep.dump(2) << '\n';
}

void write_grid_csv(const GridField& g, const std::filesystem::path& path) {
    std::ofstream out(path);
    if (!out)
        throw IOError("cannot write " + path.string());
    out << "x,m1,m2,m3\n";
    for (std::size_t k = 0; k < g.n; ++k) {
        const ComplexVec3& m = g.samples[k];
        out << format_double(g.x_at(k)) << ',' << format_double(m.x1.real())
            << ',' << format_double(m.x2.real()) << ','
            << format_double(m.x3.real()) << '\n';
    }
}

void write_grid_binary(const GridField& g, const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw IOError("cannot write " + path.string());
    for (std::size_t k = 0; k < g.n; ++k) {
        double row[3] = {g.samples[k].x1.real(), g.samples[k].x2.real(),
                         g.samples[k].x3.real()};
        out.write(reinterpret_cast<const char*>(row), sizeof row);
    }
}

} // namespace hwm
