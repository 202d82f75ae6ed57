#include "hwm/field.hpp"

#include <cmath>
#include <numbers>

namespace hwm {

ComplexVec3 eval_m(const SpinPoleData& data, const KernelKind& kind, cx x) {
    ComplexVec3 m = data.m0;
    const cx i(0, 1);
    for (const auto& [a, s] : data.upper) m += i * alpha(kind, x - a) * s;
    for (const auto& [b, t] : data.lower) m -= i * alpha(kind, x - b) * t;
    return m;
}

ComplexVec3 eval_hilbert_mx(const SpinPoleData& data, const KernelKind& kind,
                            cx x) {
    ComplexVec3 h;
    for (const auto& [a, s] : data.upper) h -= v_pot(kind, x - a) * s;
    for (const auto& [b, t] : data.lower) h -= v_pot(kind, x - b) * t;
    return h;
}

cx norm_residual(const SpinPoleData& data, const KernelKind& kind, cx x) {
    ComplexVec3 m = eval_m(data, kind, x);
    return dot(m, m) - data.rho2;
}

double energy_density(const SpinPoleData& data, const KernelKind& kind,
                      double x) {
    cx eps = -dot(eval_m(data, kind, x), eval_hilbert_mx(data, kind, x));
    if (data.mode == AnsatzMode::RealReduced &&
        std::abs(eps.imag()) > 1e-8 * (1.0 + std::abs(eps)))
        throw NonRealEnergy("energy density has a nonzero imaginary part");
    return eps.real();
}

double total_energy(const SpinPoleData& data, const KernelKind& kind,
                    std::size_t quad_points) {
    if (!kind.periodic()) {
        // E = -4 pi sum_{j,k} (s_j . t_k) / (a_j - b_k)^2, from residue
        // calculus on the cross terms of -m.Hm_x (same-family terms and the
        // vacuum term integrate to zero on the line).
        cx e = 0.0;
        for (const auto& [a, s] : data.upper)
            for (const auto& [b, t] : data.lower) {
                cx d = a - b;
                e += dot(s, t) / (d * d);
            }
        return (-4.0 * std::numbers::pi * e).real();
    }
    // Uniform-grid quadrature; eps is smooth and periodic, so the
    // trapezoid rule converges spectrally.
    double sum = 0.0;
    double h = kind.L / static_cast<double>(quad_points);
    for (std::size_t k = 0; k < quad_points; ++k) {
        double x = -0.5 * kind.L + static_cast<double>(k) * h;
        sum += energy_density(data, kind, x);
    }
    return sum * h;
}

} // namespace hwm
