#include <doctest.h>

#include <cmath>
#include <numbers>

#include "hwm/init.hpp"

using namespace hwm;

TEST_CASE("one-soliton fixed point, rational") {
    SolitonSpec spec;
    spec.kind = KernelKind::rational();
    spec.poles = {cx(0, 1)};
    spec.axes = {{0, 0, 1}};
    spec.vacuum_direction = {1, 0, 0};
    auto r = solve_iterative(spec);
    CHECK(r.iterations <= 2);
    REQUIRE(r.data.n_upper() == 1);
    // unique solution up to U(1): |s| = 1, axis e3, vacuum e1
    auto nd = null_decompose(r.data.upper[0].spin);
    CHECK(nd.s == doctest::Approx(1.0));
    CHECK((nd.axis() - ComplexVec3::from_real(0, 0, 1)).max_abs() < 1e-12);
    CHECK((r.data.m0 - ComplexVec3::from_real(1, 0, 0)).max_abs() < 1e-12);
    CHECK(constraint_residuals(r.data, spec.kind).max_residual < 1e-12);
}

TEST_CASE("trigonometric base step and vacuum scale") {
    // L=pi, a=i: alpha(2i) = -i coth(2), base |s'| = tanh(2)/2, and with
    // spins along a frame with |n1.n0| = 1 the scalar constraint forces
    // m = cosh(2)
    SolitonSpec spec;
    spec.kind = KernelKind::trigonometric(std::numbers::pi);
    spec.poles = {cx(0, 1)};
    spec.axes = {{0, 0, 1}};
    spec.vacuum_direction = {1, 0, 0};
    auto r = solve_iterative(spec);
    CHECK(r.data.m0.norm() == doctest::Approx(std::cosh(2.0)).epsilon(1e-10));
    auto nd = null_decompose(r.data.upper[0].spin);
    CHECK(nd.s == doctest::Approx(std::cosh(2.0) * std::tanh(2.0) / 2.0)
                      .epsilon(1e-10));
    CHECK(constraint_residuals(r.data, spec.kind).max_residual < 1e-10);
}

TEST_CASE("iteration output is a fixed point and recovers axes") {
    SolitonSpec spec;
    spec.kind = KernelKind::rational();
    spec.poles = {cx(-1.0, 1.0), cx(1.5, 0.8)};
    spec.axes = {{0.2, -0.4, 0.8944271909999159}, {0.6, 0.64, -0.48}};
    spec.vacuum_direction = {0, 0, 1};
    auto r = solve_iterative(spec);
    CHECK(constraint_residuals(r.data, spec.kind).max_residual < 1e-10);
    for (std::size_t j = 0; j < 2; ++j) {
        auto nd = null_decompose(r.data.upper[j].spin);
        ComplexVec3 want = ComplexVec3::from_real(
            spec.axes[j][0], spec.axes[j][1], spec.axes[j][2]);
        CHECK((nd.axis() - want).max_abs() < 1e-8);
    }
    // restarting from the solved configuration stays put
    auto r2 = solve_iterative(spec);
    for (std::size_t j = 0; j < 2; ++j)
        CHECK((r2.data.upper[j].spin - r.data.upper[j].spin).max_abs() < 1e-9);
}

TEST_CASE("solver reproduces a known exact two-soliton") {
    SpinPoleData exact = SpinPoleData::real_reduced(
        ComplexVec3::from_real(0, 0, -1),
        {{cx(0, 1), ComplexVec3(cx(0, -4.0 / 3), cx(4.0 / 3), 0.0)},
         {cx(0, 2), ComplexVec3(cx(0, 10.0 / 3), cx(-8.0 / 3), -2.0)}});
    SolitonSpec spec;
    spec.kind = KernelKind::rational();
    spec.vacuum_direction = {0, 0, -1};
    for (const auto& ps : exact.upper) {
        spec.poles.push_back(ps.pole);
        auto ax = null_decompose(ps.spin).axis();
        spec.axes.push_back({ax.x1.real(), ax.x2.real(), ax.x3.real()});
    }
    auto r = solve_iterative(spec);
    for (std::size_t j = 0; j < 2; ++j)
        CHECK((r.data.upper[j].spin - exact.upper[j].spin).max_abs() < 1e-8);
}

TEST_CASE("pole collisions and bad input are rejected") {
    SolitonSpec spec;
    spec.kind = KernelKind::rational();
    spec.poles = {cx(0, 1), cx(0, 1)};
    spec.axes = {{0, 0, 1}, {0, 0, 1}};
    CHECK_THROWS_AS(solve_iterative(spec), PoleCollision);
    spec.poles = {cx(0, 1), cx(0, -1)};
    CHECK_THROWS_AS(solve_iterative(spec), ConfigError);
}

TEST_CASE("blaschke residues") {
    auto r1 = blaschke_residues({cx(0, 1)});
    REQUIRE(r1.size() == 1);
    CHECK(std::abs(r1[0] - cx(0, -2)) < 1e-14);

    auto r2 = blaschke_residues({cx(0, 1), cx(0, 2)});
    CHECK(std::abs(r2[0] - cx(0, 6)) < 1e-13);  // (-2i)(-3i)/(i) = 6i
    CHECK(std::abs(r2[1] - cx(0, -12)) < 1e-13);

    // defining property 1 + sum_k B_k/(a_j - a_k*) = 0 for random poles
    std::vector<cx> poles = {cx(-1.3, 0.8), cx(0.4, 1.7), cx(2.2, 0.6)};
    auto rs = blaschke_residues(poles);
    for (cx a : poles) {
        cx sum = 1.0;
        for (std::size_t k = 0; k < poles.size(); ++k)
            sum += rs[k] / (a - std::conj(poles[k]));
        CHECK(std::abs(sum) < 1e-12);
    }
    CHECK_THROWS_AS(blaschke_residues({cx(0, 1), cx(0, 1)}), PoleCollision);
}

TEST_CASE("traveling wave construction") {
    auto tw = traveling_wave({cx(0, 1)}, 0.0, +1);
    CHECK((tw.data.m0 - ComplexVec3::from_real(1, 0, 0)).max_abs() < 1e-15);
    CHECK((tw.data.upper[0].spin - ComplexVec3(1.0, cx(0, -1), 0.0)).max_abs() <
          1e-14);
    CHECK(tw.velocity == doctest::Approx(0.0));
    CHECK(constraint_residuals(tw.data, KernelKind::rational()).max_residual <
          1e-12);

    // multi-pole case stays admissible
    auto tw3 =
        traveling_wave({cx(0, 1), cx(1.5, 0.7), cx(-2, 1.2)},
                       std::numbers::pi / 6, -1);
    CHECK(tw3.velocity == doctest::Approx(0.5));
    CHECK(constraint_residuals(tw3.data, KernelKind::rational()).max_residual <
          1e-12);

    // theta = pi/2: all spins vanish, m is the vacuum
    auto twv = traveling_wave({cx(0, 1)}, std::numbers::pi / 2);
    CHECK(twv.data.upper[0].spin.max_abs() < 1e-15);
}

TEST_CASE("random_scenario is deterministic and separated") {
    auto a = random_scenario(5, 99, 1.0);
    auto b = random_scenario(5, 99, 1.0);
    REQUIRE(a.poles.size() == 5);
    for (std::size_t j = 0; j < 5; ++j) {
        CHECK(a.poles[j] == b.poles[j]);
        CHECK(a.axes[j] == b.axes[j]);
        CHECK(a.poles[j].imag() >= 0.5);
        CHECK(a.poles[j].imag() <= 2.0);
        CHECK(std::abs(a.poles[j].real()) <= 5.0);
    }
    for (std::size_t j = 0; j < 5; ++j)
        for (std::size_t k = j + 1; k < 5; ++k) {
            double rj = a.poles[j].real() / a.poles[j].imag();
            double rk = a.poles[k].real() / a.poles[k].imag();
            CHECK(std::abs(rj - rk) > 1.0);
        }
    CHECK(random_scenario(1, 7, 1.0).poles.size() == 1);
    auto c = random_scenario(5, 100, 1.0);
    CHECK(c.poles[0] != a.poles[0]);
}
