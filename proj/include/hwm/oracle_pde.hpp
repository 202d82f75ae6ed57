#ifndef HWM_ORACLE_PDE_HPP
#define HWM_ORACLE_PDE_HPP

#include <cstddef>
#include <vector>

#include "hwm/field.hpp"

namespace hwm {

// Uniform periodic grid of ComplexVec3 samples at x_k = -L/2 + k L/n.
struct GridField {
    double L = 0.0;
    std::size_t n = 0;
    std::vector<ComplexVec3> samples;

    static GridField zeros(double L, std::size_t n);
    // Samples an ansatz on the grid.
    static GridField sample(const SpinPoleData& data, const KernelKind& kind,
                            double L, std::size_t n);

    double x_at(std::size_t k) const {
        return -0.5 * L + static_cast<double>(k) * L / static_cast<double>(n);
    }
};

// Fourier-multiplier Hilbert transform, i sgn(k) per mode (sgn(0) = 0).
std::vector<cx> discrete_hilbert(const std::vector<cx>& f);
GridField discrete_hilbert(const GridField& f);

// Spectral x-derivative.
GridField spectral_derivative(const GridField& f);

// m -> m x H m_x with spectral H and d/dx (optional 2/3-rule dealiasing).
GridField hwm_rhs(const GridField& m, bool dealias = false);

struct PdeOptions {
    double t0 = 0.0;
    double t1 = 1.0;
    double dt = 1e-3;
    int sample_count = 2;
    bool dealias = false;
};

// Fixed-step RK4; the norm is not re-imposed, only monitored.
struct PdeResult {
    std::vector<double> times;
    std::vector<GridField> fields;
    double max_norm_drift = 0.0; // max | |m|^2 - 1 | seen over the run
};
PdeResult evolve_pde(const GridField& m0, const PdeOptions& opts);

struct FieldDistance {
    double linf;
    double l2;
};
FieldDistance compare_fields(const GridField& a, const GridField& b);

} // namespace hwm

#endif
