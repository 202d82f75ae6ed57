#ifndef HWM_DYNAMICS_HPP
#define HWM_DYNAMICS_HPP

#include <cstddef>
#include <vector>

#include "hwm/constraints.hpp"
#include "hwm/field.hpp"
#include "hwm/ode.hpp"

namespace hwm {

enum class EvolveMode { FirstOrder, SecondOrder };

struct EvolveOptions {
    EvolveMode mode = EvolveMode::FirstOrder;
    double rel_tol = 1e-10;
    double abs_tol = 1e-10;
    double t0 = 0.0;
    double t1 = 10.0;
    int sample_count = 101;
    double pole_floor = 1e-6;
    double tol_admissible = kTolAdmissible;
};

enum class TrajectoryStatus { Ok, PoleCrossing, StepTooSmall };

struct TrajectoryMonitor {
    double min_im_upper;      // min over j of Im a_j
    double min_dist_lower;    // min over k of -Im b_k
    double constraint_max;    // constraint_residuals max at this sample
    double norm_probe_max;    // max |m^2 - rho^2| over probe points
};

struct Trajectory {
    std::vector<double> times;
    std::vector<SpinPoleData> states;
    std::vector<std::vector<cx>> velocities; // per time, combined order
    std::vector<TrajectoryMonitor> monitors;
    TrajectoryStatus status = TrajectoryStatus::Ok;
    double failure_time = 0.0; // estimated crossing / failure time
};

// Per-family time derivatives of the first-order spin-pole system.
struct FirstOrderRhs {
    std::vector<cx> pole_dot;          // combined order
    std::vector<ComplexVec3> spin_dot; // combined order
};
FirstOrderRhs rhs_first_order(const SpinPoleData& state,
                              const KernelKind& kind);

// Spin derivatives plus pole accelerations of the spin CM system.
struct SecondOrderRhs {
    std::vector<cx> pole_ddot;
    std::vector<ComplexVec3> spin_dot;
};
SecondOrderRhs rhs_second_order(const SpinPoleData& state,
                                const KernelKind& kind);

Trajectory evolve(const SpinPoleData& data, const KernelKind& kind,
                  const EvolveOptions& opts);

struct BacklundDeviation {
    double max_pole_deviation;
    double max_spin_deviation;
};

// First-order vs second-order evolution from identical initial data.
BacklundDeviation backlund_crosscheck(const SpinPoleData& data,
                                      const KernelKind& kind, double t0,
                                      double t1, double tol = 1e-10,
                                      int sample_count = 51);

} // namespace hwm

#endif
