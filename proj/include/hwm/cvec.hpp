#ifndef HWM_CVEC_HPP
#define HWM_CVEC_HPP

#include <array>
#include <cmath>
#include <complex>

#include "hwm/errors.hpp"

namespace hwm {

using cx = std::complex<double>;

// Complex three-vector with the bilinear (unconjugated) dot product used
// throughout the spin-pole formalism.
struct ComplexVec3 {
    cx x1{}, x2{}, x3{};

    ComplexVec3() = default;
    ComplexVec3(cx a, cx b, cx c) : x1(a), x2(b), x3(c) {}

    static ComplexVec3 from_real(double a, double b, double c) {
        return {cx(a, 0), cx(b, 0), cx(c, 0)};
    }

    ComplexVec3 operator+(const ComplexVec3& o) const {
        return {x1 + o.x1, x2 + o.x2, x3 + o.x3};
    }
    ComplexVec3 operator-(const ComplexVec3& o) const {
        return {x1 - o.x1, x2 - o.x2, x3 - o.x3};
    }
    ComplexVec3 operator-() const { return {-x1, -x2, -x3}; }
    ComplexVec3& operator+=(const ComplexVec3& o) {
        x1 += o.x1;
        x2 += o.x2;
        x3 += o.x3;
        return *this;
    }
    ComplexVec3& operator-=(const ComplexVec3& o) {
        x1 -= o.x1;
        x2 -= o.x2;
        x3 -= o.x3;
        return *this;
    }

    friend ComplexVec3 operator*(cx c, const ComplexVec3& v) {
        return {c * v.x1, c * v.x2, c * v.x3};
    }
    friend ComplexVec3 operator*(const ComplexVec3& v, cx c) { return c * v; }

    ComplexVec3 conj() const {
        return {std::conj(x1), std::conj(x2), std::conj(x3)};
    }
    std::array<double, 3> real() const {
        return {x1.real(), x2.real(), x3.real()};
    }
    std::array<double, 3> imag() const {
        return {x1.imag(), x2.imag(), x3.imag()};
    }
    ComplexVec3 real_part() const {
        return {cx(x1.real(), 0), cx(x2.real(), 0), cx(x3.real(), 0)};
    }
    ComplexVec3 imag_part() const {
        return {cx(x1.imag(), 0), cx(x2.imag(), 0), cx(x3.imag(), 0)};
    }

    // Hermitian norm, sqrt(sum |x_a|^2).
    double norm() const {
        return std::sqrt(std::norm(x1) + std::norm(x2) + std::norm(x3));
    }
    double max_abs() const {
        return std::max({std::abs(x1), std::abs(x2), std::abs(x3)});
    }
};

// Bilinear dot product, no conjugation.
inline cx dot(const ComplexVec3& u, const ComplexVec3& v) {
    return u.x1 * v.x1 + u.x2 * v.x2 + u.x3 * v.x3;
}

inline ComplexVec3 cross(const ComplexVec3& u, const ComplexVec3& v) {
    return {u.x2 * v.x3 - u.x3 * v.x2, u.x3 * v.x1 - u.x1 * v.x3,
            u.x1 * v.x2 - u.x2 * v.x1};
}

inline constexpr double kNullTol = 1e-10;

inline bool is_null(const ComplexVec3& v, double tol = kNullTol) {
    double h = v.norm();
    return std::abs(dot(v, v)) <= tol * h * h;
}

// Decomposition v = s (n1 + i n2) of a null vector, canonical with s real
// positive, n1, n2 real orthonormal.
struct NullDecomposition {
    double s;
    ComplexVec3 n1; // real unit vector
    ComplexVec3 n2; // real unit vector

    ComplexVec3 axis() const { return cross(n1, n2); }
};

inline NullDecomposition null_decompose(const ComplexVec3& v,
                                        double tol = kNullTol) {
    double h = v.norm();
    if (h == 0.0) throw ZeroVector("null_decompose: zero vector");
    if (std::abs(dot(v, v)) > tol * h * h)
        throw NotNull("null_decompose: v.v != 0");
    ComplexVec3 re = v.real_part();
    ComplexVec3 im = v.imag_part();
    double s = re.norm();
    if (s == 0.0) throw ZeroVector("null_decompose: zero vector");
    return {s, (cx(1.0 / s, 0)) * re, (cx(1.0 / s, 0)) * im};
}

// Coefficients of v in the basis (s, s*, s* x s) attached to a null vector s.
struct BasisCoefficients {
    cx v1, v2, v3;
};

inline BasisCoefficients basis_expand(const ComplexVec3& v,
                                      const ComplexVec3& s,
                                      double tol = kNullTol) {
    double h = s.norm();
    if (h == 0.0) throw ZeroVector("basis_expand: s = 0");
    if (std::abs(dot(s, s)) > tol * h * h)
        throw NotNull("basis_expand: s.s != 0");
    ComplexVec3 sc = s.conj();
    cx scs = dot(sc, s); // = 2|s|^2, real positive
    return {dot(sc, v) / scs, dot(s, v) / scs,
            dot(cross(s, sc), v) / (scs * scs)};
}

// For null s and v orthogonal to s, s x v = lambda s; returns lambda.
inline cx parallel_project(const ComplexVec3& s, const ComplexVec3& v,
                           double tol = kNullTol, bool check_orth = true) {
    double hs = s.norm();
    if (hs == 0.0) throw ZeroVector("parallel_project: s = 0");
    if (std::abs(dot(s, s)) > tol * hs * hs)
        throw NotNull("parallel_project: s.s != 0");
    if (check_orth) {
        double hv = v.norm();
        if (std::abs(dot(s, v)) > tol * (1.0 + hs * hv))
            throw NotOrthogonal("parallel_project: s.v != 0");
    }
    ComplexVec3 sc = s.conj();
    return dot(cross(sc, s), v) / dot(sc, s);
}

} // namespace hwm

#endif
