#include <algorithm>
#include <cstdint>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <mutex>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>

#include "hwm/dynamics.hpp"
#include "hwm/io.hpp"
#include "hwm/oracle_pde.hpp"

namespace fs = std::filesystem;
using namespace hwm;

namespace {

struct CommonArgs {
    std::string config;
    std::string out = "out";
    std::uint64_t seed = 1;
    std::string mode;
    double tol = -1.0;
    int grid = 0;
};

void add_common(CLI::App* cmd, CommonArgs& args, bool config_required = true) {
    auto* c = cmd->add_option("--config", args.config, "scenario JSON file");
    if (config_required)
        c->required();
    cmd->add_option("--out", args.out, "output directory");
    cmd->add_option("--seed", args.seed, "random seed");
    cmd->add_option("--mode", args.mode, "integrator: first|second")
        ->check(CLI::IsMember({"first", "second"}));
    cmd->add_option("--tol", args.tol, "tolerance override");
    cmd->add_option("--grid", args.grid, "grid point count override");
}

Scenario load_with_overrides(const CommonArgs& args) {
    Scenario sc = load_scenario(args.config);
    if (args.mode == "first")
        sc.evolve.mode = EvolveMode::FirstOrder;
    else if (args.mode == "second")
        sc.evolve.mode = EvolveMode::SecondOrder;
    if (args.tol > 0) {
        sc.evolve.rel_tol = sc.evolve.abs_tol = args.tol;
        sc.iteration.tol = args.tol;
    }
    if (args.grid > 0)
        sc.grid_points = args.grid;
    return sc;
}

void write_json(const fs::path& path, const json& j) {
    fs::create_directories(path.parent_path().empty() ? "." : path.parent_path());
    std::ofstream out(path);
    if (!out)
        throw IOError("cannot write " + path.string());
    out << j.dump(2) << '\n';
}

int num_threads() {
    if (const char* env = std::getenv("HWM_NUM_THREADS")) {
        int n = std::atoi(env);
        if (n > 0)
            return n;
    }
    unsigned hw = std::thread::hardware_concurrency();
    return hw ? static_cast<int>(hw) : 1;
}

int cmd_init(const CommonArgs& args) {
    Scenario sc = load_with_overrides(args);
    SourceResult src = build_source(sc);
    json rep = src.report;
    rep["data"] = to_json(src.data);
    rep["constraints"] = to_json(constraint_residuals(src.data, sc.kernel));
    write_json(fs::path(args.out) / "init.json", rep);
    std::cout << rep.dump(2) << '\n';
    return 0;
}

int cmd_validate(const CommonArgs& args) {
    Scenario sc = load_with_overrides(args);
    SourceResult src = build_source(sc);
    ConstraintReport rep = constraint_residuals(src.data, sc.kernel);
    json j = to_json(rep);
    write_json(fs::path(args.out) / "validate.json", j);
    std::cout << j.dump(2) << '\n';
    return rep.max_residual <= kTolAdmissible ? 0 : 1;
}

int cmd_evolve(const CommonArgs& args) {
    Scenario sc = load_with_overrides(args);
    SourceResult src = build_source(sc);
    json report = src.report;
    report["constraints_initial"] =
        to_json(constraint_residuals(src.data, sc.kernel));
    Trajectory traj = evolve(src.data, sc.kernel, sc.evolve);
    export_series(traj, sc.kernel, sc, args.out, report);
    std::cout << "wrote " << args.out << " (" << traj.times.size()
              << " samples, status "
              << (traj.status == TrajectoryStatus::Ok ? "ok" : "failed") << ")\n";
    return traj.status == TrajectoryStatus::Ok ? 0 : 1;
}

int cmd_field(const CommonArgs& args) {
    Scenario sc = load_with_overrides(args);
    SourceResult src = build_source(sc);
    fs::create_directories(args.out);
    fs::path path = fs::path(args.out) / "field.csv";
    std::ofstream out(path);
    if (!out)
        throw IOError("cannot write " + path.string());
    out << "x,m1,m2,m3,eps\n";
    double span = sc.grid_max - sc.grid_min;
    for (int i = 0; i < sc.grid_points; ++i) {
        double x = sc.grid_min + span * static_cast<double>(i) /
                                     static_cast<double>(sc.grid_points);
        ComplexVec3 m = eval_m(src.data, sc.kernel, x);
        double eps = energy_density(src.data, sc.kernel, x);
        out << format_double(x) << ',' << format_double(m.x1.real()) << ','
            << format_double(m.x2.real()) << ',' << format_double(m.x3.real())
            << ',' << format_double(eps) << '\n';
    }
    std::cout << "wrote " << path.string() << '\n';
    return 0;
}

int cmd_energy(const CommonArgs& args) {
    Scenario sc = load_with_overrides(args);
    SourceResult src = build_source(sc);
    double e = total_energy(src.data, sc.kernel);
    json j{{"total_energy", e}};
    write_json(fs::path(args.out) / "energy.json", j);
    std::cout << j.dump(2) << '\n';
    return 0;
}

int cmd_oracle(const CommonArgs& args) {
    Scenario sc = load_with_overrides(args);
    if (!sc.kernel.periodic())
        throw ConfigError("oracle: requires a trigonometric (periodic) kernel");
    SourceResult src = build_source(sc);
    std::size_t n = args.grid > 0 ? static_cast<std::size_t>(args.grid) : 1024;
    GridField g0 = GridField::sample(src.data, sc.kernel, sc.kernel.L, n);
    PdeOptions opts;
    opts.t0 = sc.evolve.t0;
    opts.t1 = sc.evolve.t1;
    opts.sample_count = sc.evolve.sample_count;
    PdeResult res = evolve_pde(g0, opts);
    fs::create_directories(args.out);
    write_grid_csv(res.fields.back(), fs::path(args.out) / "oracle_final.csv");
    json j{{"max_norm_drift", res.max_norm_drift},
           {"t_last", res.times.back()},
           {"grid_points", n}};
    write_json(fs::path(args.out) / "oracle.json", j);
    std::cout << j.dump(2) << '\n';
    return 0;
}

int cmd_compare(const CommonArgs& args) {
    Scenario sc = load_with_overrides(args);
    if (!sc.kernel.periodic())
        throw ConfigError("compare: requires a trigonometric (periodic) kernel");
    SourceResult src = build_source(sc);
    std::size_t n = args.grid > 0 ? static_cast<std::size_t>(args.grid) : 1024;

    Trajectory traj = evolve(src.data, sc.kernel, sc.evolve);
    if (traj.status != TrajectoryStatus::Ok)
        throw Instability("ansatz evolution failed before t1");
    GridField exact =
        GridField::sample(traj.states.back(), sc.kernel, sc.kernel.L, n);

    GridField g0 = GridField::sample(src.data, sc.kernel, sc.kernel.L, n);
    PdeOptions opts;
    opts.t0 = sc.evolve.t0;
    opts.t1 = sc.evolve.t1;
    PdeResult res = evolve_pde(g0, opts);

    FieldDistance d = compare_fields(exact, res.fields.back());
    json j{{"linf", d.linf},
           {"l2", d.l2},
           {"max_norm_drift", res.max_norm_drift},
           {"t", traj.times.back()},
           {"grid_points", n}};
    write_json(fs::path(args.out) / "compare.json", j);
    std::cout << j.dump(2) << '\n';
    return 0;
}

int cmd_stats(const CommonArgs& args, int runs, int nmin, int nmax,
              double separation) {
    struct RunStat {
        bool converged = false;
        int iterations = 0;
        int iterations_to_one_digit = 0;
        int n = 0;
    };
    std::vector<RunStat> stats(runs);
    std::vector<std::thread> workers;
    std::mutex next_mutex;
    int next = 0;
    int threads = std::min(num_threads(), runs);
    for (int w = 0; w < threads; ++w) {
        workers.emplace_back([&] {
            for (;;) {
                int idx;
                {
                    std::lock_guard<std::mutex> lock(next_mutex);
                    if (next >= runs)
                        return;
                    idx = next++;
                }
                RunStat& st = stats[idx];
                st.n = nmin + idx % (nmax - nmin + 1);
                SolitonSpec spec = random_scenario(
                    st.n, args.seed + static_cast<std::uint64_t>(idx), separation);
                IterationOptions opts;
                opts.tol = args.tol > 0 ? args.tol : 1e-10;
                opts.max_iter = 150;
                try {
                    IterationResult res = solve_iterative(spec, opts);
                    st.converged = true;
                    st.iterations = res.iterations;
                    st.iterations_to_one_digit = res.iterations_to_one_digit;
                } catch (const NoConvergence&) {
                    st.iterations = opts.max_iter;
                }
            }
        });
    }
    for (auto& t : workers)
        t.join();

    int converged = 0;
    std::vector<int> one_digit;
    json per_run = json::array();
    for (const RunStat& st : stats) {
        converged += st.converged ? 1 : 0;
        if (st.converged)
            one_digit.push_back(st.iterations_to_one_digit);
        per_run.push_back({{"n", st.n},
                           {"converged", st.converged},
                           {"iterations", st.iterations},
                           {"iterations_to_one_digit",
                            st.iterations_to_one_digit}});
    }
    double median_one_digit = 0;
    if (!one_digit.empty()) {
        std::sort(one_digit.begin(), one_digit.end());
        median_one_digit = one_digit.size() % 2
                               ? one_digit[one_digit.size() / 2]
                               : 0.5 * (one_digit[one_digit.size() / 2 - 1] +
                                        one_digit[one_digit.size() / 2]);
    }
    json j{{"runs", runs},
           {"converged", converged},
           {"fraction", static_cast<double>(converged) / runs},
           {"median_iterations_to_one_digit", median_one_digit},
           {"seed", args.seed},
           {"per_run", per_run}};
    write_json(fs::path(args.out) / "stats.json", j);
    json summary = j;
    summary.erase("per_run");
    std::cout << summary.dump(2) << '\n';
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"spin-pole soliton solver for the half-wave maps equation"};
    app.require_subcommand(1);

    CommonArgs args;
    int stats_runs = 100, stats_nmin = 2, stats_nmax = 5;
    double stats_sep = 1.0;

    auto* c_init = app.add_subcommand("init", "build and report initial data");
    add_common(c_init, args);
    auto* c_evolve = app.add_subcommand("evolve", "evolve and export a scenario");
    add_common(c_evolve, args);
    auto* c_validate =
        app.add_subcommand("validate", "check admissibility constraints");
    add_common(c_validate, args);
    auto* c_field = app.add_subcommand("field", "sample m(x) and energy density");
    add_common(c_field, args);
    auto* c_energy = app.add_subcommand("energy", "total energy of initial data");
    add_common(c_energy, args);
    auto* c_oracle =
        app.add_subcommand("oracle", "run the pseudospectral PDE solver");
    add_common(c_oracle, args);
    auto* c_compare =
        app.add_subcommand("compare", "ansatz evolution vs PDE solver");
    add_common(c_compare, args);
    auto* c_stats =
        app.add_subcommand("stats", "fixed-point solver convergence statistics");
    add_common(c_stats, args, /*config_required=*/false);
    c_stats->add_option("--runs", stats_runs, "number of random scenarios");
    c_stats->add_option("--nmin", stats_nmin, "minimum soliton count");
    c_stats->add_option("--nmax", stats_nmax, "maximum soliton count");
    c_stats->add_option("--separation", stats_sep, "minimum pole separation");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (c_init->parsed())
            return cmd_init(args);
        if (c_evolve->parsed())
            return cmd_evolve(args);
        if (c_validate->parsed())
            return cmd_validate(args);
        if (c_field->parsed())
            return cmd_field(args);
        if (c_energy->parsed())
            return cmd_energy(args);
        if (c_oracle->parsed())
            return cmd_oracle(args);
        if (c_compare->parsed())
            return cmd_compare(args);
        if (c_stats->parsed())
            return cmd_stats(args, stats_runs, stats_nmin, stats_nmax, stats_sep);
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return 2;
    } catch (const IOError& e) {
        std::cerr << "io error: " << e.what() << '\n';
        return 2;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
