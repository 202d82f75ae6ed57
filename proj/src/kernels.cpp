#include "hwm/kernels.hpp"

#include <cmath>
#include <numbers>

namespace hwm {

KernelKind KernelKind::trigonometric(double L) {
    if (!(L > 0.0)) throw ConfigError("trigonometric kernel requires L > 0");
    KernelKind k;
    k.variant = Variant::Trigonometric;
    k.L = L;
    k.kappa = std::numbers::pi / L;
    return k;
}

namespace {

// cot(w) for w reduced mod pi, stable for large |Im w|.
cx stable_cot(cx w) {
    // cot is pi-periodic; pull Re w into [-pi/2, pi/2].
    double shift = std::round(w.real() / std::numbers::pi);
    w -= cx(shift * std::numbers::pi, 0.0);
    if (std::abs(w.imag()) < 20.0) {
        return std::cos(w) / std::sin(w);
    }
    // cot(w) = +-i (q+1)/(q-1) with q = exp(+-2iw), |q| < 1.
    if (w.imag() > 0.0) {
        cx q = std::exp(cx(0, 2) * w);
        return cx(0, 1) * (q + 1.0) / (q - 1.0);
    }
    cx q = std::exp(cx(0, -2) * w);
    return cx(0, -1) * (q + 1.0) / (q - 1.0);
}

void check_regular(const KernelKind& kind, cx z) {
    if (kind.periodic()) {
        double shift = std::round(z.real() / kind.L);
        cx r = z - cx(shift * kind.L, 0.0);
        if (std::abs(r) < kSingTol * kind.L)
            throw Singular("kernel argument on the singular lattice");
    } else {
        if (std::abs(z) < kSingTol)
            throw Singular("kernel argument at the origin");
    }
}

} // namespace

cx alpha(const KernelKind& kind, cx z) {
    check_regular(kind, z);
    if (!kind.periodic()) return 1.0 / z;
    return kind.kappa * stable_cot(kind.kappa * z);
}

cx v_pot(const KernelKind& kind, cx z) {
    cx a = alpha(kind, z);
    return a * a + kind.kappa * kind.kappa;
}

cx v_pot_prime(const KernelKind& kind, cx z) {
    cx a = alpha(kind, z);
    return -2.0 * a * (a * a + kind.kappa * kind.kappa);
}

} // namespace hwm
