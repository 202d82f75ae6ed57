#ifndef HWM_KERNELS_HPP
#define HWM_KERNELS_HPP

#include <complex>

#include "hwm/cvec.hpp"
#include "hwm/errors.hpp"

namespace hwm {

// Rational (real line) vs trigonometric (period L) Calogero-Moser kernels.
struct KernelKind {
    enum class Variant { Rational, Trigonometric };

    Variant variant = Variant::Rational;
    double L = 0.0;     // period, Trigonometric only
    double kappa = 0.0; // 0 or pi/L

    static KernelKind rational() { return {}; }
    static KernelKind trigonometric(double L);

    bool periodic() const { return variant == Variant::Trigonometric; }
};

inline constexpr double kSingTol = 1e-12;

// alpha(z) = 1/z or kappa cot(kappa z); odd, simple pole on the lattice.
cx alpha(const KernelKind& kind, cx z);

// V(z) = alpha(z)^2 + kappa^2 (= 1/z^2 or kappa^2/sin^2(kappa z)); even.
cx v_pot(const KernelKind& kind, cx z);

// V'(z) = -2 alpha(z) V(z); odd.
cx v_pot_prime(const KernelKind& kind, cx z);

} // namespace hwm

#endif
