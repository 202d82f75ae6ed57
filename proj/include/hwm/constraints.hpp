#ifndef HWM_CONSTRAINTS_HPP
#define HWM_CONSTRAINTS_HPP

#include <cstddef>
#include <vector>

#include "hwm/field.hpp"

namespace hwm {

struct ConstraintReport {
    std::vector<double> null_residuals;          // |s_j.s_j|, then |t_k.t_k|
    std::vector<double> orthogonality_residuals; // |s_j.b_j|, then |t_k.b_k|
    double scalar_residual = 0.0; // |m0^2 + kappa^2 (sum s - sum t)^2 - rho^2|
    double max_residual = 0.0;
};

inline constexpr double kTolAdmissible = 1e-8;

// The bracketed vector of the pole equations for the combined-family index:
// b_j = i m0 - sum_{k != j} r_k s_k alpha(a_j - a_k).
ComplexVec3 b_vector(const SpinPoleData& data, const KernelKind& kind,
                     std::size_t index);

ConstraintReport constraint_residuals(const SpinPoleData& data,
                                      const KernelKind& kind);

// Initial pole velocities, combined-family order (a_j first, then b_k).
std::vector<cx> initial_velocities(const SpinPoleData& data,
                                   const KernelKind& kind,
                                   double tol_admissible = kTolAdmissible);

} // namespace hwm

#endif
