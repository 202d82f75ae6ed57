#include <doctest.h>

#include <cmath>
#include <numbers>

#include "hwm/field.hpp"

using namespace hwm;

namespace {

// stationary one-soliton: m = ((x^2-1)/(x^2+1), 2x/(x^2+1), 0)
SpinPoleData one_soliton() {
    return SpinPoleData::real_reduced(
        ComplexVec3::from_real(1, 0, 0),
        {{cx(0, 1), ComplexVec3(1.0, cx(0, -1), 0.0)}});
}

} // namespace

TEST_CASE("vacuum field") {
    SpinPoleData d;
    d.m0 = ComplexVec3::from_real(0, 0, 1);
    auto k = KernelKind::rational();
    for (double x : {-3.0, 0.1, 7.0}) {
        CHECK((eval_m(d, k, x) - d.m0).max_abs() == doctest::Approx(0.0));
        CHECK(eval_hilbert_mx(d, k, x).max_abs() == doctest::Approx(0.0));
        CHECK(energy_density(d, k, x) == doctest::Approx(0.0));
    }
}

TEST_CASE("stationary one-soliton closed form") {
    auto d = one_soliton();
    auto k = KernelKind::rational();
    CHECK((eval_m(d, k, 0.0) - ComplexVec3::from_real(-1, 0, 0)).max_abs() <
          1e-15);
    CHECK((eval_m(d, k, 1.0) - ComplexVec3::from_real(0, 1, 0)).max_abs() <
          1e-15);
    for (double x : {-2.0, -0.3, 0.9, 4.0}) {
        double den = x * x + 1.0;
        ComplexVec3 expect =
            ComplexVec3::from_real((x * x - 1.0) / den, 2.0 * x / den, 0.0);
        CHECK((eval_m(d, k, x) - expect).max_abs() < 1e-14);
        CHECK(std::abs(norm_residual(d, k, x)) < 1e-14);
    }
    CHECK_THROWS_AS(eval_m(d, k, cx(0, 1)), Singular);
}

TEST_CASE("closed-form Hilbert transform and energy density") {
    auto d = one_soliton();
    auto k = KernelKind::rational();
    // at x=0: -s V(-i) - s* V(i) = s + s* = (2,0,0)
    CHECK((eval_hilbert_mx(d, k, 0.0) - ComplexVec3::from_real(2, 0, 0))
              .max_abs() < 1e-15);
    CHECK(energy_density(d, k, 0.0) == doctest::Approx(2.0));
    // eps = 2/(1+x^2) for this soliton
    for (double x : {-1.5, 0.4, 2.0})
        CHECK(energy_density(d, k, x) ==
              doctest::Approx(2.0 / (1.0 + x * x)).epsilon(1e-12));
}

TEST_CASE("exact total energy, rational pair sum") {
    auto d = one_soliton();
    auto k = KernelKind::rational();
    CHECK(total_energy(d, k) ==
          doctest::Approx(2.0 * std::numbers::pi).epsilon(1e-12));
}

TEST_CASE("trigonometric total energy matches direct quadrature") {
    double L = 8.0;
    auto k = KernelKind::trigonometric(L);
    // single periodic soliton with spins along a null direction
    SpinPoleData d = SpinPoleData::real_reduced(
        ComplexVec3::from_real(1, 0, 0),
        {{cx(0.5, 0.9), cx(0.2, 0) * ComplexVec3(1.0, cx(0, -1), 0.0)}});
    double e = total_energy(d, k, 2048);
    // crude trapezoid with many more points
    std::size_t n = 1 << 15;
    double acc = 0.0;
    for (std::size_t i = 0; i < n; ++i)
        acc += energy_density(d, k, -0.5 * L + L * double(i) / double(n));
    acc *= L / double(n);
    CHECK(e == doctest::Approx(acc).epsilon(1e-10));
}

TEST_CASE("real-reduced field is real on the real axis") {
    auto d = one_soliton();
    auto k = KernelKind::rational();
    for (double x : {-2.2, 0.7, 3.1}) {
        auto m = eval_m(d, k, x);
        CHECK(m.imag_part().max_abs() < 1e-15);
    }
}

TEST_CASE("general-complex mode keeps independent families") {
    SpinPoleData d;
    d.mode = AnsatzMode::GeneralComplex;
    d.m0 = ComplexVec3::from_real(1, 0, 0);
    d.upper = {{cx(0, 1), ComplexVec3(1.0, cx(0, -1), 0.0)}};
    d.lower = {{cx(0.5, -2), ComplexVec3(cx(0.3, 0.1), cx(0, -0.3), 0.1)}};
    d.rho2 = cx(0.9, 0.2);
    auto k = KernelKind::rational();
    auto m = eval_m(d, k, 0.0);
    ComplexVec3 expect = d.m0 +
                         cx(0, 1) * alpha(k, cx(0) - d.upper[0].pole) *
                             d.upper[0].spin -
                         cx(0, 1) * alpha(k, cx(0) - d.lower[0].pole) *
                             d.lower[0].spin;
    CHECK((m - expect).max_abs() < 1e-15);
}
