#ifndef HWM_ODE_HPP
#define HWM_ODE_HPP

#include <complex>
#include <functional>
#include <vector>

#include "hwm/errors.hpp"

namespace hwm {

struct StepFailure : Error {
    StepFailure(const std::string& msg, double t) : Error(msg), time(t) {}
    double time;
};

using OdeState = std::vector<std::complex<double>>;
using OdeRhs = std::function<OdeState(double, const OdeState&)>;

// Called after every accepted step; return false to stop the integration.
using OdeObserver = std::function<bool(double, const OdeState&)>;

struct OdeOptions {
    double rel_tol = 1e-10;
    double abs_tol = 1e-10;
    double initial_step = 1e-3;
    double max_step = 1.0;
};

// Dormand-Prince 5(4) with PI step-size control over a complex state vector.
// Integrates from t0 and stops exactly at each of the strictly monotone
// sample times, invoking on_sample there. Supports t decreasing.
void integrate_dopri5(const OdeRhs& rhs, OdeState y, double t0,
                      const std::vector<double>& sample_times,
                      const OdeOptions& opts,
                      const std::function<bool(double, const OdeState&)>& on_sample,
                      const OdeObserver& on_step = nullptr);

} // namespace hwm

#endif
