#ifndef HWM_INIT_HPP
#define HWM_INIT_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "hwm/constraints.hpp"
#include "hwm/field.hpp"

namespace hwm {

// Geometric parameterization of an N-soliton: poles plus rotation axes.
struct SolitonSpec {
    KernelKind kind;
    std::vector<cx> poles;                      // Im a_j > 0
    std::vector<std::array<double, 3>> axes;    // unit n_j
    std::array<double, 3> vacuum_direction{0, 0, 1}; // unit n0
};

struct IterationOptions {
    double tol = 1e-10;
    int max_iter = 500;
    double separation_warning_threshold = 1.0;
};

struct IterationResult {
    SpinPoleData data;
    int iterations = 0;
    int iterations_to_one_digit = 0; // first step with sup-change < 1e-1
    double final_change = 0.0;
    bool separation_warning = false;
};

// Orthonormal frame (n1, n2) with n1 x n2 = axis and n2 . n0 = 0.
struct SpinFrame {
    ComplexVec3 n1, n2;
};
SpinFrame frame_for_axis(const std::array<double, 3>& axis,
                         const std::array<double, 3>& n0);

// Fixed-point iteration for the admissibility constraints; RealReduced output.
IterationResult solve_iterative(const SolitonSpec& spec,
                                const IterationOptions& opts = {});

// Residues B_k of the Blaschke product at the conjugate poles, so that
// B(z) = 1 + sum_k B_k/(z - a_k*).
std::vector<cx> blaschke_residues(const std::vector<cx>& poles);

// Traveling wave with vacuum cos(theta) e1 + sin(theta) e3 and spins along
// e1 -/+ i e2; chirality +1 picks the top sign. Velocity is -/+ sin(theta).
struct TravelingWave {
    SpinPoleData data;
    double velocity;
};
TravelingWave traveling_wave(const std::vector<cx>& poles, double theta,
                             int chirality = +1);

enum class CatalogId { OneSoliton, TwoSoliton, ThreeSoliton };

// Printed reference initial data; returned verbatim and unvalidated.
SpinPoleData exact_catalog(CatalogId id);
CatalogId catalog_id_from_string(const std::string& name);

// Deterministic random spec: axes and vacuum uniform on S^2, poles with
// Re in [-5,5], Im in [0.5,2], resampled until pairwise
// |Re a_j/Im a_j - Re a_k/Im a_k| > min_separation.
SolitonSpec random_scenario(int n, std::uint64_t seed, double min_separation,
                            const KernelKind& kind = KernelKind::rational());

} // namespace hwm

#endif
