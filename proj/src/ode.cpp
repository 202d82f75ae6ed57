#include "hwm/ode.hpp"

#include <algorithm>
#include <cmath>

namespace hwm {

namespace {

// Dormand-Prince 5(4) tableau.
constexpr double a21 = 1.0 / 5;
constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187,
                 a53 = 64448.0 / 6561, a54 = -212.0 / 729;
constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33,
                 a63 = 46732.0 / 5247, a64 = 49.0 / 176,
                 a65 = -5103.0 / 18656;
constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192,
                 b5 = -2187.0 / 6784, b6 = 11.0 / 84;
constexpr double e1 = b1 - 5179.0 / 57600, e3 = b3 - 7571.0 / 16695,
                 e4 = b4 - 393.0 / 640, e5 = b5 + 92097.0 / 339200,
                 e6 = b6 - 187.0 / 2100, e7 = -1.0 / 40;

OdeState axpy(const OdeState& y, double h,
              std::initializer_list<std::pair<double, const OdeState*>> terms) {
    OdeState out = y;
    for (auto& [c, k] : terms) {
        double ch = c * h;
        for (std::size_t i = 0; i < out.size(); ++i) out[i] += ch * (*k)[i];
    }
    return out;
}

} // namespace

void integrate_dopri5(const OdeRhs& rhs, OdeState y, double t0,
                      const std::vector<double>& sample_times,
                      const OdeOptions& opts,
                      const std::function<bool(double, const OdeState&)>& on_sample,
                      const OdeObserver& on_step) {
    if (sample_times.empty()) return;
    const double dir = sample_times.back() >= t0 ? 1.0 : -1.0;
    const std::size_t n = y.size();

    double t = t0;
    std::size_t next = 0;
    // Emit samples at (or before) the start time.
    while (next < sample_times.size() &&
           dir * (sample_times[next] - t) <= 1e-14 * (1.0 + std::abs(t))) {
        if (!on_sample(sample_times[next], y)) return;
        ++next;
    }
    if (next >= sample_times.size()) return;

    OdeState k1 = rhs(t, y);
    double h = dir * std::min(opts.initial_step, opts.max_step);
    double err_prev = 1.0;

    while (true) {
        double remaining = sample_times[next] - t;
        bool hits_sample = std::abs(h) >= std::abs(remaining);
        double hs = hits_sample ? remaining : h;

        OdeState k2 = rhs(t + hs * a21, axpy(y, hs, {{a21, &k1}}));
        OdeState k3 = rhs(t + hs * 0.3, axpy(y, hs, {{a31, &k1}, {a32, &k2}}));
        OdeState k4 = rhs(t + hs * 0.8,
                          axpy(y, hs, {{a41, &k1}, {a42, &k2}, {a43, &k3}}));
        OdeState k5 = rhs(t + hs * (8.0 / 9),
                          axpy(y, hs,
                               {{a51, &k1}, {a52, &k2}, {a53, &k3}, {a54, &k4}}));
        OdeState ytmp = axpy(
            y, hs, {{a61, &k1}, {a62, &k2}, {a63, &k3}, {a64, &k4}, {a65, &k5}});
        OdeState k6 = rhs(t + hs, ytmp);
        OdeState ynew = axpy(
            y, hs, {{b1, &k1}, {b3, &k3}, {b4, &k4}, {b5, &k5}, {b6, &k6}});
        OdeState k7 = rhs(t + hs, ynew);

        double err = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            std::complex<double> e =
                hs * (e1 * k1[i] + e3 * k3[i] + e4 * k4[i] + e5 * k5[i] +
                      e6 * k6[i] + e7 * k7[i]);
            double sc = opts.abs_tol +
                        opts.rel_tol * std::max(std::abs(y[i]), std::abs(ynew[i]));
            double q = std::abs(e) / sc;
            err += q * q;
        }
        err = std::sqrt(err / static_cast<double>(n));

        if (err <= 1.0 || std::abs(hs) <= 1e-14 * (1.0 + std::abs(t))) {
            t += hs;
            y = std::move(ynew);
            k1 = std::move(k7); // FSAL
            if (on_step && !on_step(t, y)) return;
            if (hits_sample) {
                if (!on_sample(sample_times[next], y)) return;
                ++next;
                if (next >= sample_times.size()) return;
            }
            // PI controller.
            double fac = 0.9 * std::pow(std::max(err, 1e-10), -0.7 / 5.0) *
                         std::pow(err_prev, 0.4 / 5.0);
            err_prev = std::max(err, 1e-10);
            h = dir * std::min(std::abs(h) * std::clamp(fac, 0.2, 5.0),
                               opts.max_step);
        } else {
            double fac = std::clamp(0.9 * std::pow(err, -0.2), 0.1, 1.0);
            h *= fac;
            if (std::abs(h) < 1e-15 * (1.0 + std::abs(t)))
                throw StepFailure("step size underflow", t);
        }
    }
}

} // namespace hwm
