#pragma once

#include <array>
#include <cmath>

namespace exoflex {

// Vector in Euclidean 4-space. Points of the unit 3-sphere are unit Vec4s.
struct Vec4 {
    std::array<double, 4> c{};

    double& operator[](int i) { return c[i]; }
    double operator[](int i) const { return c[i]; }

    Vec4 operator+(const Vec4& o) const {
        return {{c[0] + o.c[0], c[1] + o.c[1], c[2] + o.c[2], c[3] + o.c[3]}};
    }
    Vec4 operator-(const Vec4& o) const {
        return {{c[0] - o.c[0], c[1] - o.c[1], c[2] - o.c[2], c[3] - o.c[3]}};
    }
    Vec4 operator*(double s) const { return {{c[0] * s, c[1] * s, c[2] * s, c[3] * s}}; }
    Vec4 operator-() const { return {{-c[0], -c[1], -c[2], -c[3]}}; }
};

inline double dot(const Vec4& a, const Vec4& b) {
    return a[0] * b[0] + a[1] * b[1] + a[2] * b[2] + a[3] * b[3];
}

inline double norm(const Vec4& a) { return std::sqrt(dot(a, a)); }

inline Vec4 normalized(const Vec4& a) {
    double n = norm(a);
    return a * (1.0 / n);
}

double det4(const Vec4& a, const Vec4& b, const Vec4& c, const Vec4& d);

// Generalized cross product: <cross4(a,b,c), d> == det4(d,a,b,c) for all d.
// In particular cross4(a,b,c) is orthogonal to a, b, c and
// det4(cross4(a,b,c),a,b,c) == |cross4(a,b,c)|^2 > 0 whenever a,b,c are independent.
Vec4 cross4(const Vec4& a, const Vec4& b, const Vec4& c);

// Solves M x = rhs for the 4x4 matrix with columns m0..m3 by Gaussian elimination
// with partial pivoting. Returns false if the matrix is numerically singular.
bool solve4(const Vec4& m0, const Vec4& m1, const Vec4& m2, const Vec4& m3,
            const Vec4& rhs, Vec4& x);

}  // namespace exoflex
