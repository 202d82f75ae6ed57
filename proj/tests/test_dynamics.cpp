#include <doctest.h>

#include <cmath>
#include <numbers>

#include "hwm/dynamics.hpp"
#include "hwm/init.hpp"

using namespace hwm;

namespace {

SpinPoleData admissible_two_soliton() {
    return SpinPoleData::real_reduced(
        ComplexVec3::from_real(0, 0, -1),
        {{cx(0, 1), ComplexVec3(cx(0, -4.0 / 3), cx(4.0 / 3), 0.0)},
         {cx(0, 2), ComplexVec3(cx(0, 10.0 / 3), cx(-8.0 / 3), -2.0)}});
}

} // namespace

TEST_CASE("traveling wave evolves rigidly") {
    auto tw = traveling_wave({cx(-1, 1), cx(2, 0.7)}, std::numbers::pi / 6);
    REQUIRE(tw.velocity == doctest::Approx(-0.5));
    auto kind = KernelKind::rational();

    auto rhs = rhs_first_order(tw.data, kind);
    for (cx v : rhs.pole_dot) CHECK(std::abs(v - tw.velocity) < 1e-12);
    for (const auto& sd : rhs.spin_dot) CHECK(sd.max_abs() < 1e-12);

    EvolveOptions opts;
    opts.t1 = 4.0;
    opts.sample_count = 5;
    auto traj = evolve(tw.data, kind, opts);
    REQUIRE(traj.status == TrajectoryStatus::Ok);
    REQUIRE(traj.times.size() == 5);
    const auto& last = traj.states.back();
    for (std::size_t j = 0; j < 2; ++j) {
        cx want = tw.data.upper[j].pole + tw.velocity * 4.0;
        CHECK(std::abs(last.upper[j].pole - want) < 1e-9);
        CHECK((last.upper[j].spin - tw.data.upper[j].spin).max_abs() < 1e-9);
    }
    // the field rides along unchanged: m(x, t) = m(x - v t, 0)
    for (double x : {-3.0, 0.25, 1.5}) {
        ComplexVec3 a = eval_m(last, kind, x);
        ComplexVec3 b = eval_m(tw.data, kind, x - tw.velocity * 4.0);
        CHECK((a - b).max_abs() < 1e-9);
    }
}

TEST_CASE("stationary soliton does not move") {
    auto tw = traveling_wave({cx(0, 1)}, 0.0);
    EvolveOptions opts;
    opts.t1 = 3.0;
    opts.sample_count = 4;
    auto traj = evolve(tw.data, KernelKind::rational(), opts);
    REQUIRE(traj.status == TrajectoryStatus::Ok);
    CHECK(std::abs(traj.states.back().upper[0].pole - cx(0, 1)) < 1e-10);
}

TEST_CASE("two-soliton trajectory keeps constraints and norm") {
    auto data = admissible_two_soliton();
    auto kind = KernelKind::rational();
    EvolveOptions opts;
    opts.t1 = 5.0;
    opts.sample_count = 11;
    auto traj = evolve(data, kind, opts);
    REQUIRE(traj.status == TrajectoryStatus::Ok);
    REQUIRE(traj.monitors.size() == 11);
    for (const auto& mon : traj.monitors) {
        CHECK(mon.constraint_max < 1e-8);
        CHECK(mon.norm_probe_max < 1e-8);
        CHECK(mon.min_im_upper > 0.0);
        CHECK(mon.min_dist_lower > 0.0);
    }
    CHECK(traj.velocities.size() == 11);
    CHECK(traj.velocities.front().size() == data.n_poles());
    CHECK(traj.times.front() == doctest::Approx(0.0));
    CHECK(traj.times.back() == doctest::Approx(5.0));
}

TEST_CASE("second-order formulation tracks the first-order one") {
    auto data = admissible_two_soliton();
    auto dev =
        backlund_crosscheck(data, KernelKind::rational(), 0.0, 3.0, 1e-11, 7);
    CHECK(dev.max_pole_deviation < 1e-7);
    CHECK(dev.max_spin_deviation < 1e-7);
}

TEST_CASE("second-order rhs matches the time derivative of velocities") {
    auto data = admissible_two_soliton();
    auto kind = KernelKind::rational();
    auto acc = rhs_second_order(data, kind);
    REQUIRE(acc.pole_ddot.size() == data.n_poles());

    // finite-difference d(velocity)/dt along the first-order flow
    EvolveOptions opts;
    const double h = 1e-5;
    opts.t1 = h;
    opts.sample_count = 2;
    opts.rel_tol = opts.abs_tol = 1e-12;
    auto traj = evolve(data, kind, opts);
    for (std::size_t i = 0; i < data.n_poles(); ++i) {
        cx fd = (traj.velocities.back()[i] - traj.velocities.front()[i]) / h;
        CHECK(std::abs(fd - acc.pole_ddot[i]) < 1e-3);
    }
}

TEST_CASE("evolution is reversible") {
    auto data = admissible_two_soliton();
    auto kind = KernelKind::rational();
    EvolveOptions fwd;
    fwd.t1 = 2.0;
    fwd.sample_count = 2;
    auto traj = evolve(data, kind, fwd);
    REQUIRE(traj.status == TrajectoryStatus::Ok);

    EvolveOptions bwd;
    bwd.t0 = 2.0;
    bwd.t1 = 0.0;
    bwd.sample_count = 2;
    auto back = evolve(traj.states.back(), kind, bwd);
    REQUIRE(back.status == TrajectoryStatus::Ok);
    for (std::size_t j = 0; j < 2; ++j) {
        CHECK(std::abs(back.states.back().upper[j].pole -
                       data.upper[j].pole) < 1e-8);
        CHECK((back.states.back().upper[j].spin - data.upper[j].spin)
                  .max_abs() < 1e-8);
    }
}

TEST_CASE("inadmissible data is rejected") {
    auto data = admissible_two_soliton();
    data.upper[0].spin = 2.0 * data.upper[0].spin; // breaks orthogonality
    data.mirror_lower();
    EvolveOptions opts;
    CHECK_THROWS_AS(evolve(data, KernelKind::rational(), opts), NotAdmissible);
    opts.sample_count = 0;
    CHECK_THROWS_AS(evolve(admissible_two_soliton(), KernelKind::rational(),
                           opts),
                    ConfigError);
}

TEST_CASE("periodic two-soliton evolves within the strip") {
    SolitonSpec spec;
    spec.kind = KernelKind::trigonometric(20.0);
    spec.poles = {cx(-2.0, 1.0), cx(2.5, 0.8)};
    spec.axes = {{0.2, -0.4, 0.8944271909999159}, {0.6, 0.64, -0.48}};
    spec.vacuum_direction = {0, 0, 1};
    auto init = solve_iterative(spec);
    EvolveOptions opts;
    opts.t1 = 1.0;
    opts.sample_count = 3;
    auto traj = evolve(init.data, spec.kind, opts);
    REQUIRE(traj.status == TrajectoryStatus::Ok);
    for (const auto& mon : traj.monitors) {
        CHECK(mon.constraint_max < 1e-8);
        CHECK(mon.norm_probe_max < 1e-8);
    }
}
