#include "hwm/oracle_pde.hpp"

#include <fftw3.h>

#include <cmath>
#include <mutex>
#include <numbers>

namespace hwm {

namespace {

bool power_of_two(std::size_t n) { return n >= 8 && (n & (n - 1)) == 0; }

void check_grid(std::size_t n) {
    if (!power_of_two(n))
        throw ConfigError("grid size must be a power of two, >= 8");
}

// Serializes plan creation/execution with new arrays; FFTW planning is not
// thread-safe.
std::mutex fft_mutex;

void fft_inplace(std::vector<cx>& data, int sign) {
    std::lock_guard<std::mutex> lock(fft_mutex);
    auto* buf = reinterpret_cast<fftw_complex*>(data.data());
    fftw_plan plan = fftw_plan_dft_1d(static_cast<int>(data.size()), buf, buf,
                                      sign, FFTW_ESTIMATE);
    fftw_execute(plan);
    fftw_destroy_plan(plan);
}

// Applies a diagonal Fourier multiplier g(k) with integer frequencies
// k in (-n/2, n/2]; the caller decides what happens at Nyquist.
template <typename Mult>
std::vector<cx> apply_multiplier(const std::vector<cx>& f, Mult g) {
    std::vector<cx> hat = f;
    fft_inplace(hat, FFTW_FORWARD);
    const std::size_t n = hat.size();
    for (std::size_t j = 0; j < n; ++j) {
        long k = static_cast<long>(j);
        if (j > n / 2) k -= static_cast<long>(n);
        hat[j] *= g(k, j == n / 2);
    }
    fft_inplace(hat, FFTW_BACKWARD);
    double scale = 1.0 / static_cast<double>(n);
    for (auto& v : hat) v *= scale;
    return hat;
}

} // namespace

GridField GridField::zeros(double L, std::size_t n) {
    check_grid(n);
    if (!(L > 0)) throw ConfigError("grid period must be positive");
    GridField g;
    g.L = L;
    g.n = n;
    g.samples.assign(n, ComplexVec3{});
    return g;
}

GridField GridField::sample(const SpinPoleData& data, const KernelKind& kind,
                            double L, std::size_t n) {
    GridField g = zeros(L, n);
    for (std::size_t k = 0; k < n; ++k)
        g.samples[k] = eval_m(data, kind, cx(g.x_at(k), 0));
    return g;
}

std::vector<cx> discrete_hilbert(const std::vector<cx>& f) {
    check_grid(f.size());
    return apply_multiplier(f, [](long k, bool nyquist) -> cx {
        if (nyquist || k == 0) return 0.0;
        return cx(0, k > 0 ? 1.0 : -1.0);
    });
}

namespace {

// Channel-wise lift of a scalar transform to vector fields.
template <typename Op>
GridField per_channel(const GridField& f, Op op) {
    GridField out = f;
    std::vector<cx> ch(f.n);
    for (int c = 0; c < 3; ++c) {
        for (std::size_t k = 0; k < f.n; ++k) {
            const ComplexVec3& v = f.samples[k];
            ch[k] = c == 0 ? v.x1 : (c == 1 ? v.x2 : v.x3);
        }
        std::vector<cx> res = op(ch);
        for (std::size_t k = 0; k < f.n; ++k) {
            ComplexVec3& v = out.samples[k];
            (c == 0 ? v.x1 : (c == 1 ? v.x2 : v.x3)) = res[k];
        }
    }
    return out;
}

std::vector<cx> hilbert_dx(const std::vector<cx>& f, double L, bool dealias) {
    // H then d/dx combine into the multiplier -(2 pi / L)|k|.
    std::size_t n = f.size();
    return apply_multiplier(f, [&](long k, bool nyquist) -> cx {
        if (nyquist) return 0.0;
        if (dealias && 3 * std::labs(k) > static_cast<long>(n)) return 0.0;
        return -(2.0 * std::numbers::pi / L) * static_cast<double>(std::labs(k));
    });
}

} // namespace

GridField discrete_hilbert(const GridField& f) {
    return per_channel(f, [](const std::vector<cx>& ch) {
        return discrete_hilbert(ch);
    });
}

GridField spectral_derivative(const GridField& f) {
    double L = f.L;
    return per_channel(f, [L](const std::vector<cx>& ch) {
        return apply_multiplier(ch, [&](long k, bool nyquist) -> cx {
            if (nyquist) return 0.0;
            return cx(0, 2.0 * std::numbers::pi / L * static_cast<double>(k));
        });
    });
}

GridField hwm_rhs(const GridField& m, bool dealias) {
    check_grid(m.n);
    GridField hmx = per_channel(m, [&](const std::vector<cx>& ch) {
        return hilbert_dx(ch, m.L, dealias);
    });
    GridField out = m;
    for (std::size_t k = 0; k < m.n; ++k)
        out.samples[k] = cross(m.samples[k], hmx.samples[k]);
    return out;
}

PdeResult evolve_pde(const GridField& m0, const PdeOptions& opts) {
    check_grid(m0.n);
    if (!(opts.dt > 0)) throw ConfigError("dt must be positive");
    for (const auto& v : m0.samples)
        if (std::abs(dot(v, v) - 1.0) > 1e-8)
            throw NotAdmissible("initial grid field is not unit-norm");

    PdeResult res;
    const double span = opts.t1 - opts.t0;
    const double dir = span >= 0 ? 1.0 : -1.0;
    const long steps = std::lround(std::abs(span) / opts.dt);
    const double dt = dir * (steps > 0 ? std::abs(span) / steps : opts.dt);

    std::vector<double> samples(std::max(opts.sample_count, 1));
    for (std::size_t i = 0; i < samples.size(); ++i)
        samples[i] = samples.size() == 1
                         ? opts.t0
                         : opts.t0 + span * i / (samples.size() - 1);

    auto axpy = [&](const GridField& y, double c, const GridField& k) {
        GridField out = y;
        for (std::size_t i = 0; i < y.n; ++i)
            out.samples[i] += cx(c, 0) * k.samples[i];
        return out;
    };

    GridField m = m0;
    std::size_t next = 0;
    auto take_samples = [&](double t) {
        while (next < samples.size() &&
               dir * (samples[next] - t) <= 1e-9 * (1.0 + std::abs(t))) {
            res.times.push_back(samples[next]);
            res.fields.push_back(m);
            ++next;
        }
    };
    take_samples(opts.t0);
    for (long step = 0; step < steps; ++step) {
        GridField k1 = hwm_rhs(m, opts.dealias);
        GridField k2 = hwm_rhs(axpy(m, 0.5 * dt, k1), opts.dealias);
        GridField k3 = hwm_rhs(axpy(m, 0.5 * dt, k2), opts.dealias);
        GridField k4 = hwm_rhs(axpy(m, dt, k3), opts.dealias);
        for (std::size_t i = 0; i < m.n; ++i)
            m.samples[i] += cx(dt / 6.0, 0) *
                            (k1.samples[i] + 2.0 * k2.samples[i] +
                             2.0 * k3.samples[i] + k4.samples[i]);
        double drift = 0.0;
        for (const auto& v : m.samples)
            drift = std::max(drift, std::abs(dot(v, v) - 1.0));
        res.max_norm_drift = std::max(res.max_norm_drift, drift);
        if (drift > 0.1)
            throw Instability("grid field left the unit sphere");
        take_samples(opts.t0 + dt * (step + 1));
    }
    return res;
}

FieldDistance compare_fields(const GridField& a, const GridField& b) {
    if (a.n != b.n || a.L != b.L)
        throw GridMismatch("fields live on different grids");
    FieldDistance d{0.0, 0.0};
    for (std::size_t k = 0; k < a.n; ++k) {
        ComplexVec3 diff = a.samples[k] - b.samples[k];
        d.linf = std::max(d.linf, diff.max_abs());
        double e = diff.norm();
        d.l2 += e * e;
    }
    d.l2 = std::sqrt(d.l2 / static_cast<double>(a.n));
    return d;
}

} // namespace hwm
