#include "hwm/constraints.hpp"

#include <cmath>

namespace hwm {

namespace {

void check_pole_separation(const SpinPoleData& data, const KernelKind& kind) {
    double scale = kind.periodic() ? kSingTol * kind.L : kSingTol;
    std::size_t n = data.n_poles();
    for (std::size_t j = 0; j < n; ++j)
        for (std::size_t k = j + 1; k < n; ++k)
            if (std::abs(data.pole_spin(j).pole - data.pole_spin(k).pole) <
                scale)
                throw PoleCollision("coincident poles");
}

} // namespace

ComplexVec3 b_vector(const SpinPoleData& data, const KernelKind& kind,
                     std::size_t index) {
    check_pole_separation(data, kind);
    cx aj = data.pole_spin(index).pole;
    ComplexVec3 b = cx(0, 1) * data.m0;
    for (std::size_t k = 0; k < data.n_poles(); ++k) {
        if (k == index) continue;
        const auto& pk = data.pole_spin(k);
        b -= (data.sign(k) * alpha(kind, aj - pk.pole)) * pk.spin;
    }
    return b;
}

ConstraintReport constraint_residuals(const SpinPoleData& data,
                                      const KernelKind& kind) {
    check_pole_separation(data, kind);
    ConstraintReport rep;
    std::size_t n = data.n_poles();
    rep.null_residuals.reserve(n);
    rep.orthogonality_residuals.reserve(n);
    for (std::size_t j = 0; j < n; ++j) {
        const auto& pj = data.pole_spin(j);
        rep.null_residuals.push_back(std::abs(dot(pj.spin, pj.spin)));
        rep.orthogonality_residuals.push_back(
            std::abs(dot(pj.spin, b_vector(data, kind, j))));
    }
    ComplexVec3 diff;
    for (const auto& p : data.upper) diff += p.spin;
    for (const auto& p : data.lower) diff -= p.spin;
    cx k2(kind.kappa * kind.kappa, 0);
    rep.scalar_residual =
        std::abs(dot(data.m0, data.m0) + k2 * dot(diff, diff) - data.rho2);
    rep.max_residual = rep.scalar_residual;
    for (double r : rep.null_residuals)
        rep.max_residual = std::max(rep.max_residual, r);
    for (double r : rep.orthogonality_residuals)
        rep.max_residual = std::max(rep.max_residual, r);
    return rep;
}

std::vector<cx> initial_velocities(const SpinPoleData& data,
                                   const KernelKind& kind,
                                   double tol_admissible) {
    auto rep = constraint_residuals(data, kind);
    if (rep.max_residual > tol_admissible)
        throw NotAdmissible("constraint residuals exceed tolerance");
    std::vector<cx> vel;
    vel.reserve(data.n_poles());
    for (std::size_t j = 0; j < data.n_poles(); ++j) {
        const auto& pj = data.pole_spin(j);
        cx ss = dot(pj.spin.conj(), pj.spin);
        if (std::abs(ss) < 1e-14)
            throw DegenerateSpin("spin with vanishing s.s*");
        // a_j' s_j = -r_j s_j x b_j, reduced via the parallel projection.
        // Admissibility was already checked above in absolute terms, so the
        // relative nullity check inside the projection is relaxed.
        vel.push_back(-data.sign(j) *
                      parallel_project(pj.spin, b_vector(data, kind, j),
                                       1e-6, /*check_orth=*/false));
    }
    return vel;
}

} // namespace hwm
