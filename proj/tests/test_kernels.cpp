#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "hwm/kernels.hpp"

using namespace hwm;

namespace {
constexpr double pi = std::numbers::pi;

cx random_z(std::mt19937_64& rng) {
    std::uniform_real_distribution<double> u(-2.0, 2.0);
    cx z(u(rng), u(rng));
    if (std::abs(z) < 0.2) z += cx(0.5, 0.5);
    return z;
}
} // namespace

TEST_CASE("rational kernel values") {
    auto k = KernelKind::rational();
    CHECK(alpha(k, 2.0) == cx(0.5));
    CHECK(v_pot(k, 2.0) == cx(0.25));
    CHECK(v_pot_prime(k, 2.0) == cx(-0.25));
    CHECK_THROWS_AS(alpha(k, cx(0)), Singular);
}

TEST_CASE("trigonometric kernel values") {
    auto k = KernelKind::trigonometric(pi);
    CHECK(k.kappa == doctest::Approx(1.0));
    CHECK(alpha(k, pi / 4).real() == doctest::Approx(1.0));
    // cot(iy) = -i coth(y)
    cx a2i = alpha(k, cx(0, 2));
    CHECK(a2i.real() == doctest::Approx(0.0));
    CHECK(a2i.imag() == doctest::Approx(-1.0 / std::tanh(2.0)));
    CHECK(v_pot(k, pi / 2).real() == doctest::Approx(1.0));
    CHECK(std::abs(v_pot_prime(k, pi / 2)) < 1e-15);
    CHECK_THROWS_AS(alpha(k, cx(pi)), Singular); // on the period lattice
    CHECK_THROWS_AS(KernelKind::trigonometric(-1.0), ConfigError);
}

TEST_CASE("functional identities") {
    std::mt19937_64 rng(23);
    auto kr = KernelKind::rational();
    auto kt = KernelKind::trigonometric(3.0);
    for (int i = 0; i < 40; ++i) {
        cx z = random_z(rng);
        for (const auto& k : {kr, kt}) {
            cx a = alpha(k, z);
            cx kap2 = k.kappa * k.kappa;
            CHECK(std::abs(v_pot(k, z) - (a * a + kap2)) <
                  1e-12 * (1.0 + std::abs(v_pot(k, z))));
            CHECK(std::abs(v_pot_prime(k, z) + 2.0 * a * v_pot(k, z)) <
                  1e-12 * (1.0 + std::abs(v_pot_prime(k, z))));
            // oddness / evenness
            CHECK(std::abs(alpha(k, -z) + a) < 1e-12 * (1.0 + std::abs(a)));
            CHECK(std::abs(v_pot(k, -z) - v_pot(k, z)) <
                  1e-12 * (1.0 + std::abs(v_pot(k, z))));
        }
    }
}

TEST_CASE("addition and derivative identities") {
    std::mt19937_64 rng(29);
    auto kr = KernelKind::rational();
    auto kt = KernelKind::trigonometric(5.0);
    for (int i = 0; i < 40; ++i) {
        cx x = random_z(rng), a = random_z(rng), b = random_z(rng);
        if (std::abs(a - b) < 0.2) b += cx(0.7, 0.3);
        for (const auto& k : {kr, kt}) {
            cx axa = alpha(k, x - a), axb = alpha(k, x - b),
               aab = alpha(k, a - b);
            cx kap2 = k.kappa * k.kappa;
            cx add = axa * axb - aab * (axa - axb) + kap2;
            double scale = 1.0 + std::abs(axa * axb);
            CHECK(std::abs(add) < 1e-11 * scale);
            // alpha' = -V
            cx der = axa * (-v_pot(k, x - b)) + aab * (-v_pot(k, x - b)) -
                     (-v_pot(k, a - b)) * (axa - axb);
            CHECK(std::abs(der) < 1e-10 * (1.0 + std::abs(axa * v_pot(k, x - b))));
        }
    }
}

TEST_CASE("rational limit of the trigonometric kernel") {
    auto kr = KernelKind::rational();
    auto kt = KernelKind::trigonometric(1e6);
    std::mt19937_64 rng(31);
    for (int i = 0; i < 20; ++i) {
        cx z = random_z(rng);
        CHECK(std::abs(alpha(kt, z) - alpha(kr, z)) < 1e-8);
        CHECK(std::abs(v_pot(kt, z) - v_pot(kr, z)) < 1e-8);
    }
}

TEST_CASE("stable cot deep in the half-plane") {
    auto k = KernelKind::trigonometric(2.0);
    // kappa cot(kappa z) -> -i kappa as Im z -> +infinity
    cx deep = alpha(k, cx(0.3, 500.0));
    CHECK(std::isfinite(deep.real()));
    CHECK(std::abs(deep - cx(0, -k.kappa)) < 1e-14);
    cx deep_down = alpha(k, cx(-0.7, -500.0));
    CHECK(std::abs(deep_down - cx(0, k.kappa)) < 1e-14);
    // periodicity after reduction with a huge real part
    CHECK(std::abs(alpha(k, cx(1e8 * 2.0 + 0.37, 0.2)) -
                   alpha(k, cx(0.37, 0.2))) < 1e-6);
}
