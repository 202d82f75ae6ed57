#include "hwm/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace hwm {

namespace {

// No nullity check inside the RHS: trial stages of the integrator probe
// states off the constraint surface, and the projection formula stays
// well-defined there. Drift is tracked by the trajectory monitors instead.
constexpr double kRhsNullTol = std::numeric_limits<double>::infinity();

std::size_t state_size(const SpinPoleData& d, EvolveMode mode) {
    std::size_t np = d.mode == AnsatzMode::RealReduced ? d.n_upper()
                                                       : d.n_poles();
    std::size_t n = 4 * np;
    if (mode == EvolveMode::SecondOrder) n += np;
    return n;
}

// Packs the evolving families (upper only in RealReduced mode).
void pack(const SpinPoleData& d, EvolveMode mode,
          const std::vector<cx>* velocities, OdeState& y) {
    y.clear();
    auto push_family = [&](const std::vector<PoleSpin>& fam) {
        for (const auto& p : fam) y.push_back(p.pole);
        for (const auto& p : fam) {
            y.push_back(p.spin.x1);
            y.push_back(p.spin.x2);
            y.push_back(p.spin.x3);
        }
    };
    push_family(d.upper);
    if (d.mode == AnsatzMode::GeneralComplex) push_family(d.lower);
    if (mode == EvolveMode::SecondOrder) {
        std::size_t np = d.mode == AnsatzMode::RealReduced ? d.n_upper()
                                                           : d.n_poles();
        for (std::size_t j = 0; j < np; ++j)
            y.push_back(velocities ? (*velocities)[j] : cx(0));
    }
}

void unpack(const OdeState& y, SpinPoleData& d, EvolveMode mode,
            std::vector<cx>* velocities) {
    std::size_t pos = 0;
    auto pull_family = [&](std::vector<PoleSpin>& fam) {
        for (auto& p : fam) p.pole = y[pos++];
        for (auto& p : fam) {
            p.spin.x1 = y[pos++];
            p.spin.x2 = y[pos++];
            p.spin.x3 = y[pos++];
        }
    };
    pull_family(d.upper);
    if (d.mode == AnsatzMode::GeneralComplex)
        pull_family(d.lower);
    else
        d.mirror_lower();
    if (mode == EvolveMode::SecondOrder && velocities) {
        velocities->clear();
        while (pos < y.size()) velocities->push_back(y[pos++]);
    }
}

std::vector<double> probe_points(const KernelKind& kind) {
    double scale = kind.periodic() ? kind.L : 20.0;
    return {-0.43 * scale, -0.17 * scale, 0.05 * scale, 0.29 * scale,
            0.41 * scale};
}

TrajectoryMonitor make_monitor(const SpinPoleData& d, const KernelKind& kind) {
    TrajectoryMonitor mon{};
    mon.min_im_upper = std::numeric_limits<double>::infinity();
    mon.min_dist_lower = std::numeric_limits<double>::infinity();
    for (const auto& p : d.upper)
        mon.min_im_upper = std::min(mon.min_im_upper, p.pole.imag());
    for (const auto& p : d.lower)
        mon.min_dist_lower = std::min(mon.min_dist_lower, -p.pole.imag());
    mon.constraint_max = constraint_residuals(d, kind).max_residual;
    mon.norm_probe_max = 0.0;
    for (double x : probe_points(kind))
        mon.norm_probe_max = std::max(
            mon.norm_probe_max, std::abs(norm_residual(d, kind, cx(x, 0))));
    return mon;
}

std::vector<ComplexVec3> combined_spin_dot(const SpinPoleData& d,
                                           const KernelKind& kind) {
    std::size_t n = d.n_poles();
    std::vector<ComplexVec3> sdot(n);
    for (std::size_t j = 0; j < n; ++j) {
        const auto& pj = d.pole_spin(j);
        for (std::size_t k = 0; k < n; ++k) {
            if (k == j) continue;
            double w = 1.0 + d.sign(j) * d.sign(k);
            if (w == 0.0) continue;
            const auto& pk = d.pole_spin(k);
            sdot[j] -= (w * v_pot(kind, pj.pole - pk.pole)) *
                       cross(pj.spin, pk.spin);
        }
    }
    return sdot;
}

} // namespace

FirstOrderRhs rhs_first_order(const SpinPoleData& state,
                              const KernelKind& kind) {
    FirstOrderRhs out;
    out.spin_dot = combined_spin_dot(state, kind);
    out.pole_dot.reserve(state.n_poles());
    for (std::size_t j = 0; j < state.n_poles(); ++j) {
        const auto& pj = state.pole_spin(j);
        cx ss = dot(pj.spin.conj(), pj.spin);
        if (std::abs(ss) < 1e-14)
            throw DegenerateSpin("spin with vanishing s.s* in pole equation");
        out.pole_dot.push_back(
            -state.sign(j) *
            parallel_project(pj.spin, b_vector(state, kind, j), kRhsNullTol,
                             /*check_orth=*/false));
    }
    return out;
}

SecondOrderRhs rhs_second_order(const SpinPoleData& state,
                                const KernelKind& kind) {
    SecondOrderRhs out;
    out.spin_dot = combined_spin_dot(state, kind);
    std::size_t n = state.n_poles();
    out.pole_ddot.assign(n, cx(0));
    for (std::size_t j = 0; j < n; ++j) {
        const auto& pj = state.pole_spin(j);
        for (std::size_t k = 0; k < n; ++k) {
            if (k == j) continue;
            double w = 1.0 + state.sign(j) * state.sign(k);
            if (w == 0.0) continue;
            const auto& pk = state.pole_spin(k);
            out.pole_ddot[j] -= w * dot(pj.spin, pk.spin) *
                                v_pot_prime(kind, pj.pole - pk.pole);
        }
    }
    return out;
}

Trajectory evolve(const SpinPoleData& data, const KernelKind& kind,
                  const EvolveOptions& opts) {
    auto rep = constraint_residuals(data, kind);
    if (rep.max_residual > opts.tol_admissible)
        throw NotAdmissible("initial data violates the constraints");
    if (opts.sample_count < 1)
        throw ConfigError("sample_count must be positive");

    const std::size_t n_evolving =
        data.mode == AnsatzMode::RealReduced ? data.n_upper() : data.n_poles();

    Trajectory traj;
    std::vector<double> samples(opts.sample_count);
    for (int i = 0; i < opts.sample_count; ++i)
        samples[i] = opts.sample_count == 1
                         ? opts.t0
                         : opts.t0 + (opts.t1 - opts.t0) * i /
                                         (opts.sample_count - 1);

    SpinPoleData scratch = data;
    std::vector<cx> vel0;
    if (opts.mode == EvolveMode::SecondOrder) {
        std::vector<cx> all = initial_velocities(data, kind,
                                                 opts.tol_admissible);
        vel0.assign(all.begin(), all.begin() + n_evolving);
    }

    OdeState y0;
    pack(data, opts.mode, &vel0, y0);

    auto rhs = [&](double, const OdeState& y) -> OdeState {
        SpinPoleData s = data;
        std::vector<cx> vel;
        unpack(y, s, opts.mode, &vel);
        OdeState dy(y.size());
        std::size_t pos = 0;
        if (opts.mode == EvolveMode::FirstOrder) {
            auto d = rhs_first_order(s, kind);
            for (std::size_t j = 0; j < n_evolving; ++j)
                dy[pos++] = d.pole_dot[j];
            for (std::size_t j = 0; j < n_evolving; ++j) {
                dy[pos++] = d.spin_dot[j].x1;
                dy[pos++] = d.spin_dot[j].x2;
                dy[pos++] = d.spin_dot[j].x3;
            }
        } else {
            auto d = rhs_second_order(s, kind);
            for (std::size_t j = 0; j < n_evolving; ++j)
                dy[pos++] = vel[j];
            for (std::size_t j = 0; j < n_evolving; ++j) {
                dy[pos++] = d.spin_dot[j].x1;
                dy[pos++] = d.spin_dot[j].x2;
                dy[pos++] = d.spin_dot[j].x3;
            }
            for (std::size_t j = 0; j < n_evolving; ++j)
                dy[pos++] = d.pole_ddot[j];
        }
        return dy;
    };

    auto on_sample = [&](double t, const OdeState& y) -> bool {
        SpinPoleData s = data;
        std::vector<cx> vel;
        unpack(y, s, opts.mode, &vel);
        traj.times.push_back(t);
        traj.monitors.push_back(make_monitor(s, kind));
        if (opts.mode == EvolveMode::FirstOrder) {
            auto d = rhs_first_order(s, kind);
            traj.velocities.push_back(std::move(d.pole_dot));
        } else {
            if (s.mode == AnsatzMode::RealReduced) {
                std::vector<cx> both = vel;
                for (cx v : vel) both.push_back(std::conj(v));
                traj.velocities.push_back(std::move(both));
            } else {
                traj.velocities.push_back(vel);
            }
        }
        traj.states.push_back(std::move(s));
        return true;
    };

    auto on_step = [&](double t, const OdeState& y) -> bool {
        SpinPoleData s = data;
        unpack(y, s, opts.mode, nullptr);
        for (const auto& p : s.upper)
            if (p.pole.imag() <= opts.pole_floor) {
                traj.status = TrajectoryStatus::PoleCrossing;
                traj.failure_time = t;
                return false;
            }
        for (const auto& p : s.lower)
            if (-p.pole.imag() <= opts.pole_floor) {
                traj.status = TrajectoryStatus::PoleCrossing;
                traj.failure_time = t;
                return false;
            }
        return true;
    };

    OdeOptions oopts;
    oopts.rel_tol = opts.rel_tol;
    oopts.abs_tol = opts.abs_tol;
    try {
        integrate_dopri5(rhs, std::move(y0), opts.t0, samples, oopts,
                         on_sample, on_step);
    } catch (const StepFailure& f) {
        traj.status = TrajectoryStatus::StepTooSmall;
        traj.failure_time = f.time;
    }
    return traj;
}

BacklundDeviation backlund_crosscheck(const SpinPoleData& data,
                                      const KernelKind& kind, double t0,
                                      double t1, double tol,
                                      int sample_count) {
    EvolveOptions opts;
    opts.rel_tol = opts.abs_tol = tol;
    opts.t0 = t0;
    opts.t1 = t1;
    opts.sample_count = sample_count;

    opts.mode = EvolveMode::FirstOrder;
    Trajectory first = evolve(data, kind, opts);
    opts.mode = EvolveMode::SecondOrder;
    Trajectory second = evolve(data, kind, opts);
    if (first.status != TrajectoryStatus::Ok ||
        second.status != TrajectoryStatus::Ok)
        throw Error("backlund_crosscheck: a trajectory aborted early");

    BacklundDeviation dev{0.0, 0.0};
    for (std::size_t i = 0; i < first.states.size(); ++i) {
        const auto& sa = first.states[i];
        const auto& sb = second.states[i];
        for (std::size_t j = 0; j < sa.n_poles(); ++j) {
            dev.max_pole_deviation =
                std::max(dev.max_pole_deviation,
                         std::abs(sa.pole_spin(j).pole - sb.pole_spin(j).pole));
            dev.max_spin_deviation = std::max(
                dev.max_spin_deviation,
                (sa.pole_spin(j).spin - sb.pole_spin(j).spin).max_abs());
        }
    }
    return dev;
}

} // namespace hwm
