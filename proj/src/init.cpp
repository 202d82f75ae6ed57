#include "hwm/init.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <random>

namespace hwm {

namespace {

ComplexVec3 real_vec(const std::array<double, 3>& v) {
    return ComplexVec3::from_real(v[0], v[1], v[2]);
}

ComplexVec3 normalized_real(const ComplexVec3& v) {
    double n = v.norm();
    if (n < 1e-14) throw ZeroVector("cannot normalize zero vector");
    return cx(1.0 / n, 0) * v;
}

void require_upper_distinct(const std::vector<cx>& poles) {
    for (std::size_t j = 0; j < poles.size(); ++j) {
        if (!(poles[j].imag() > 0.0))
            throw ConfigError("pole not in the upper half-plane");
        for (std::size_t k = j + 1; k < poles.size(); ++k)
            if (std::abs(poles[j] - poles[k]) < kSingTol)
                throw PoleCollision("coincident poles");
    }
}

bool poorly_separated(const std::vector<cx>& poles, double threshold) {
    for (std::size_t j = 0; j < poles.size(); ++j)
        for (std::size_t k = j + 1; k < poles.size(); ++k) {
            double rj = poles[j].real() / poles[j].imag();
            double rk = poles[k].real() / poles[k].imag();
            if (std::abs(rj - rk) <= threshold) return true;
        }
    return false;
}

} // namespace

SpinFrame frame_for_axis(const std::array<double, 3>& axis,
                         const std::array<double, 3>& n0) {
    ComplexVec3 n = real_vec(axis);
    ComplexVec3 v0 = real_vec(n0);
    ComplexVec3 c = cross(v0, n);
    ComplexVec3 n2;
    if (c.norm() > 1e-10) {
        n2 = normalized_real(c);
    } else {
        // axis parallel to the vacuum: any unit vector orthogonal to n0 works
        ComplexVec3 e1 = ComplexVec3::from_real(1, 0, 0);
        ComplexVec3 e2 = ComplexVec3::from_real(0, 1, 0);
        ComplexVec3 alt = cross(v0, e1);
        n2 = normalized_real(alt.norm() > 1e-10 ? alt : cross(v0, e2));
    }
    return {cross(n2, n), n2};
}

IterationResult solve_iterative(const SolitonSpec& spec,
                                const IterationOptions& opts) {
    const std::size_t n = spec.poles.size();
    if (n == 0 || spec.axes.size() != n)
        throw ConfigError("solve_iterative: poles and axes must match");
    require_upper_distinct(spec.poles);

    IterationResult res;
    res.separation_warning =
        poorly_separated(spec.poles, opts.separation_warning_threshold);

    std::vector<SpinFrame> frames;
    frames.reserve(n);
    for (const auto& axis : spec.axes)
        frames.push_back(frame_for_axis(axis, spec.vacuum_direction));

    const ComplexVec3 n0 = real_vec(spec.vacuum_direction);
    const KernelKind& kind = spec.kind;
    const bool trig = kind.periodic();
    const cx two_i(0, 2);

    // Base step ignoring soliton interactions.
    std::vector<cx> s(n);
    std::vector<cx> self_alpha(n);
    for (std::size_t j = 0; j < n; ++j)
        self_alpha[j] =
            alpha(kind, spec.poles[j] - std::conj(spec.poles[j]));
    std::vector<double> s_base(n);
    for (std::size_t j = 0; j < n; ++j)
        s_base[j] = (dot(frames[j].n1, n0) / (two_i * self_alpha[j])).real();
    double m = 1.0;
    if (trig) {
        double q = 0.0;
        for (std::size_t j = 0; j < n; ++j)
            for (std::size_t k = 0; k < n; ++k)
                q += s_base[j] * s_base[k] *
                     dot(frames[j].n2, frames[k].n2).real();
        double bracket = 1.0 - 4.0 * kind.kappa * kind.kappa * q;
        if (!(bracket > 0.0))
            throw NoConvergence("base step has no real vacuum scale", bracket);
        m = 1.0 / std::sqrt(bracket);
    }
    for (std::size_t j = 0; j < n; ++j) s[j] = m * s_base[j];

    auto spin_of = [&](std::size_t j, cx sj) {
        return sj * (frames[j].n1 + cx(0, 1) * frames[j].n2);
    };

    // m is determined pointwise by the spins (m = 1 in the rational case),
    // so the unknowns are the N complex scalars s_j.
    auto m_of = [&](const std::vector<cx>& u) {
        if (!trig) return 1.0;
        ComplexVec3 im_sum;
        for (std::size_t j = 0; j < n; ++j)
            im_sum += spin_of(j, u[j]).imag_part();
        double q =
            1.0 + 4.0 * kind.kappa * kind.kappa * dot(im_sum, im_sum).real();
        return std::sqrt(q);
    };
    auto apply = [&](const std::vector<cx>& u) {
        ComplexVec3 m0 = cx(m_of(u), 0) * n0;
        std::vector<cx> out(n);
        for (std::size_t j = 0; j < n; ++j) {
            ComplexVec3 mj = m0;
            for (std::size_t k = 0; k < n; ++k) {
                if (k == j) continue;
                ComplexVec3 spin_k = spin_of(k, u[k]);
                mj += cx(0, 1) * alpha(kind, spec.poles[j] - spec.poles[k]) *
                      spin_k;
                mj -= cx(0, 1) *
                      alpha(kind, spec.poles[j] - std::conj(spec.poles[k])) *
                      spin_k.conj();
            }
            out[j] = dot(frames[j].n1 - cx(0, 1) * frames[j].n2, mj.conj()) /
                     (two_i * self_alpha[j]);
        }
        return out;
    };
    auto finish = [&](const std::vector<cx>& u, double change) -> bool {
        std::vector<PoleSpin> up(n);
        for (std::size_t j = 0; j < n; ++j)
            up[j] = {spec.poles[j], spin_of(j, u[j])};
        SpinPoleData data =
            SpinPoleData::real_reduced(cx(m_of(u), 0) * n0, std::move(up));
        auto rep = constraint_residuals(data, kind);
        if (rep.max_residual > opts.tol) return false;
        res.data = std::move(data);
        res.final_change = change;
        return true;
    };

    res.iterations_to_one_digit = opts.max_iter;
    double change = 0.0;
    bool one_digit = false;
    auto note_change = [&](double c) {
        change = c;
        if (!one_digit && c < 1e-1) {
            res.iterations_to_one_digit = res.iterations;
            one_digit = true;
        }
    };

    // Phase 1: plain fixed-point sweeps. For well-separated poles this is
    // all that is needed; for strongly coupled ones the map can repel, so a
    // stall or blow-up hands the best iterate over to a Newton finish.
    const int bare_limit = std::min(40, opts.max_iter);
    std::vector<cx> best = s;
    double best_change = std::numeric_limits<double>::infinity();
    for (int it = 1; it <= bare_limit; ++it) {
        std::vector<cx> s_new = apply(s);
        double c = 0.0;
        for (std::size_t j = 0; j < n; ++j)
            c = std::max(c, std::abs(s_new[j] - s[j]));
        res.iterations = it;
        note_change(c);
        if (c < best_change) {
            best_change = c;
            best = s;
        }
        s = std::move(s_new);
        if (change < opts.tol) {
            if (finish(s, change)) return res;
        }
        if (!(change < 1e3)) {
            s = best;
            break;
        }
    }

    // Phase 2: damped Newton on F(u) = u - G(u) with a finite-difference
    // Jacobian; the fixed points are identical to those of phase 1.
    const std::size_t dim = 2 * n;
    auto residual = [&](const std::vector<cx>& u) {
        std::vector<cx> gu = apply(u);
        std::vector<double> out(dim);
        for (std::size_t j = 0; j < n; ++j) {
            cx d = u[j] - gu[j];
            out[2 * j] = d.real();
            out[2 * j + 1] = d.imag();
        }
        return out;
    };
    auto sup = [](const std::vector<double>& v) {
        double mx = 0.0;
        for (double x : v) mx = std::max(mx, std::abs(x));
        return mx;
    };
    std::vector<double> F = residual(s);
    while (res.iterations < opts.max_iter) {
        ++res.iterations;
        note_change(sup(F));
        if (change < opts.tol && finish(s, change)) return res;

        std::vector<std::vector<double>> J(dim, std::vector<double>(dim));
        const double h = 1e-7;
        for (std::size_t c = 0; c < dim; ++c) {
            std::vector<cx> u = s;
            u[c / 2] += (c % 2 == 0) ? cx(h, 0) : cx(0, h);
            std::vector<double> Fp = residual(u);
            for (std::size_t r = 0; r < dim; ++r) J[r][c] = (Fp[r] - F[r]) / h;
        }
        std::vector<double> rhs = F;
        bool singular = false;
        for (std::size_t c = 0; c < dim && !singular; ++c) {
            std::size_t p = c;
            for (std::size_t r = c + 1; r < dim; ++r)
                if (std::abs(J[r][c]) > std::abs(J[p][c])) p = r;
            if (std::abs(J[p][c]) < 1e-14) {
                singular = true;
                break;
            }
            std::swap(J[p], J[c]);
            std::swap(rhs[p], rhs[c]);
            for (std::size_t r = c + 1; r < dim; ++r) {
                double f = J[r][c] / J[c][c];
                for (std::size_t cc = c; cc < dim; ++cc)
                    J[r][cc] -= f * J[c][cc];
                rhs[r] -= f * rhs[c];
            }
        }
        bool accepted = false;
        if (!singular) {
            std::vector<double> d(dim);
            for (std::size_t ri = dim; ri-- > 0;) {
                double acc = rhs[ri];
                for (std::size_t cc = ri + 1; cc < dim; ++cc)
                    acc -= J[ri][cc] * d[cc];
                d[ri] = acc / J[ri][ri];
            }
            double fn = sup(F);
            double lam = 1.0;
            for (int ls = 0; ls < 8; ++ls, lam *= 0.5) {
                std::vector<cx> u = s;
                for (std::size_t j = 0; j < n; ++j)
                    u[j] -= lam * cx(d[2 * j], d[2 * j + 1]);
                std::vector<double> Fn = residual(u);
                if (sup(Fn) < (1.0 - 0.25 * lam) * fn) {
                    s = std::move(u);
                    F = std::move(Fn);
                    accepted = true;
                    break;
                }
            }
        }
        if (!accepted) {
            // fall back to one damped fixed-point sweep
            std::vector<cx> gs = apply(s);
            for (std::size_t j = 0; j < n; ++j) s[j] = 0.5 * (s[j] + gs[j]);
            F = residual(s);
        }
    }
    throw NoConvergence("constraint iteration did not stabilize", change);
}

std::vector<cx> blaschke_residues(const std::vector<cx>& poles) {
    require_upper_distinct(poles);
    const std::size_t n = poles.size();
    std::vector<cx> residues(n);
    for (std::size_t k = 0; k < n; ++k) {
        cx ak_c = std::conj(poles[k]);
        cx b = ak_c - poles[k];
        for (std::size_t j = 0; j < n; ++j) {
            if (j == k) continue;
            b *= (ak_c - poles[j]) / (ak_c - std::conj(poles[j]));
        }
        residues[k] = b;
    }
    // Defining property B(a_j) = 0, i.e. 1 + sum_k B_k/(a_j - a_k*) = 0.
    for (std::size_t j = 0; j < n; ++j) {
        cx sum = 1.0;
        for (std::size_t k = 0; k < n; ++k)
            sum += residues[k] / (poles[j] - std::conj(poles[k]));
        if (std::abs(sum) > 1e-9)
            throw Error("blaschke residues fail the defining property");
    }
    return residues;
}

TravelingWave traveling_wave(const std::vector<cx>& poles, double theta,
                             int chirality) {
    if (chirality != 1 && chirality != -1)
        throw ConfigError("chirality must be +1 or -1");
    auto residues = blaschke_residues(poles);
    double c = std::cos(theta);
    double sgn = static_cast<double>(chirality);
    ComplexVec3 dir(1.0, cx(0, -sgn), 0.0); // e1 -/+ i e2
    std::vector<PoleSpin> up(poles.size());
    for (std::size_t k = 0; k < poles.size(); ++k) {
        // 2i s_k* = -B_k cos(theta)
        cx sk = std::conj(cx(0, 0.5) * residues[k] * c);
        up[k] = {poles[k], sk * dir};
    }
    SpinPoleData data = SpinPoleData::real_reduced(
        ComplexVec3::from_real(c, 0, std::sin(theta)), std::move(up));
    return {std::move(data), -sgn * std::sin(theta)};
}

SpinPoleData exact_catalog(CatalogId id) {
    const cx i(0, 1);
    switch (id) {
        case CatalogId::OneSoliton: {
            double r3 = std::sqrt(3.0);
            return SpinPoleData::real_reduced(
                ComplexVec3::from_real(-r3 / 2, 0, 0.5),
                {{i, ComplexVec3(r3 / 2, -r3 / 2 * i, 0.0)}});
        }
        case CatalogId::TwoSoliton:
            return SpinPoleData::real_reduced(
                ComplexVec3::from_real(0, 0, -1),
                {{i, ComplexVec3(4.0 * i / 3.0, -4.0 / 3.0, 0.0)},
                 {2.0 * i,
                  ComplexVec3(-10.0 * i / 3.0, 8.0 / 3.0, 2.0)}});
        case CatalogId::ThreeSoliton: {
            cx e14 = std::polar(1.0, std::numbers::pi / 4);
            cx e34 = std::polar(1.0, 3 * std::numbers::pi / 4);
            cx e54 = std::polar(1.0, 5 * std::numbers::pi / 4);
            return SpinPoleData::real_reduced(
                ComplexVec3::from_real(0, 0, -1),
                {{i, ComplexVec3(-1.0, i, 0.0)},
                 {e14, 0.5 * ComplexVec3(e34, cx(-1, -1), e34)},
                 {e34, 0.5 * ComplexVec3(e54, cx(1, -1), e54)}});
        }
    }
    throw ConfigError("unknown catalog id");
}

CatalogId catalog_id_from_string(const std::string& name) {
    if (name == "one_soliton") return CatalogId::OneSoliton;
    if (name == "two_soliton") return CatalogId::TwoSoliton;
    if (name == "three_soliton") return CatalogId::ThreeSoliton;
    throw ConfigError("unknown catalog id: " + name);
}

SolitonSpec random_scenario(int n, std::uint64_t seed, double min_separation,
                            const KernelKind& kind) {
    if (n < 1) throw ConfigError("random_scenario: N >= 1 required");
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> u01(0.0, 1.0);
    auto unit_sphere = [&]() -> std::array<double, 3> {
        double z = 2.0 * u01(rng) - 1.0;
        double phi = 2.0 * std::numbers::pi * u01(rng);
        double r = std::sqrt(std::max(0.0, 1.0 - z * z));
        return {r * std::cos(phi), r * std::sin(phi), z};
    };

    SolitonSpec spec;
    spec.kind = kind;
    spec.vacuum_direction = unit_sphere();
    spec.axes.reserve(n);
    for (int j = 0; j < n; ++j) spec.axes.push_back(unit_sphere());

    int rejections = 0;
    while (static_cast<int>(spec.poles.size()) < n) {
        double re = -5.0 + 10.0 * u01(rng);
        double im = 0.5 + 1.5 * u01(rng);
        bool ok = true;
        for (const cx& a : spec.poles)
            if (std::abs(a.real() / a.imag() - re / im) <= min_separation) {
                ok = false;
                break;
            }
        if (ok) {
            spec.poles.emplace_back(re, im);
        } else if (++rejections >= 10000) {
            throw SamplingExhausted("could not separate poles");
        }
    }
    return spec;
}

} // namespace hwm
