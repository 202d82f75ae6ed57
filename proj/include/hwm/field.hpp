#ifndef HWM_FIELD_HPP
#define HWM_FIELD_HPP

#include <cstddef>
#include <vector>

#include "hwm/cvec.hpp"
#include "hwm/kernels.hpp"

namespace hwm {

struct PoleSpin {
    cx pole;
    ComplexVec3 spin;
};

enum class AnsatzMode { RealReduced, GeneralComplex };

// Full ansatz parameter set: m(x) = m0 + i sum_j s_j a(x-a_j) - i sum_k t_k a(x-b_k).
// RealReduced keeps the lower family mirrored: b_j = a_j*, t_j = s_j*.
struct SpinPoleData {
    ComplexVec3 m0;
    std::vector<PoleSpin> upper; // Im pole > 0
    std::vector<PoleSpin> lower; // Im pole < 0
    AnsatzMode mode = AnsatzMode::RealReduced;
    cx rho2 = 1.0;

    static SpinPoleData real_reduced(const ComplexVec3& m0,
                                     std::vector<PoleSpin> up) {
        SpinPoleData d;
        d.m0 = m0;
        d.upper = std::move(up);
        d.mirror_lower();
        return d;
    }

    // Rebuild the lower family from the upper one (RealReduced invariant).
    void mirror_lower() {
        lower.resize(upper.size());
        for (std::size_t j = 0; j < upper.size(); ++j)
            lower[j] = {std::conj(upper[j].pole), upper[j].spin.conj()};
    }

    std::size_t n_upper() const { return upper.size(); }
    std::size_t n_lower() const { return lower.size(); }
    std::size_t n_poles() const { return upper.size() + lower.size(); }

    // Combined-family access with the sign bookkeeping r_j: indices
    // [0, N) are upper (r = +1), [N, N+M) are lower (r = -1).
    const PoleSpin& pole_spin(std::size_t idx) const {
        return idx < upper.size() ? upper[idx] : lower[idx - upper.size()];
    }
    double sign(std::size_t idx) const {
        return idx < upper.size() ? 1.0 : -1.0;
    }
};

ComplexVec3 eval_m(const SpinPoleData& data, const KernelKind& kind, cx x);

// Closed form of H m_x: -sum_j s_j V(x-a_j) - sum_k t_k V(x-b_k).
ComplexVec3 eval_hilbert_mx(const SpinPoleData& data, const KernelKind& kind,
                            cx x);

// m(x).m(x) - rho^2
cx norm_residual(const SpinPoleData& data, const KernelKind& kind, cx x);

// Energy density eps = -m . Hm_x at real x. In RealReduced mode a
// non-vanishing imaginary part signals corrupted data and throws.
double energy_density(const SpinPoleData& data, const KernelKind& kind,
                      double x);

// Total energy integral of eps. Exact pair-sum for the rational kernel,
// spectral-grid quadrature (quad_points) for the trigonometric one.
double total_energy(const SpinPoleData& data, const KernelKind& kind,
                    std::size_t quad_points = 1024);

} // namespace hwm

#endif
