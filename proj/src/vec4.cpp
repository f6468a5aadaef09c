#include "exoflex/vec4.hpp"

#include <algorithm>

namespace exoflex {

namespace {

inline double det3(double a00, double a01, double a02,
                   double a10, double a11, double a12,
                   double a20, double a21, double a22) {
    return a00 * (a11 * a22 - a12 * a21) - a01 * (a10 * a22 - a12 * a20) +
           a02 * (a10 * a21 - a11 * a20);
}

}  // namespace

double det4(const Vec4& a, const Vec4& b, const Vec4& c, const Vec4& d) {
    // Cofactor expansion along the first column; entries are O(1) here so this is stable enough.
    double r = 0.0;
    for (int i = 0; i < 4; ++i) {
        int j0 = (i + 1) % 4, j1 = (i + 2) % 4, j2 = (i + 3) % 4;
        if (j0 > j1) std::swap(j0, j1);
        if (j1 > j2) std::swap(j1, j2);
        if (j0 > j1) std::swap(j0, j1);
        double minor = det3(b[j0], c[j0], d[j0],
                            b[j1], c[j1], d[j1],
                            b[j2], c[j2], d[j2]);
        r += ((i % 2 == 0) ? 1.0 : -1.0) * a[i] * minor;
    }
    return r;
}

Vec4 cross4(const Vec4& a, const Vec4& b, const Vec4& c) {
    Vec4 r;
    for (int i = 0; i < 4; ++i) {
        Vec4 e{};
        e[i] = 1.0;
        r[i] = det4(e, a, b, c);
    }
    return r;
}

bool solve4(const Vec4& m0, const Vec4& m1, const Vec4& m2, const Vec4& m3,
            const Vec4& rhs, Vec4& x) {
    double a[4][5];
    const Vec4* cols[4] = {&m0, &m1, &m2, &m3};
    for (int r = 0; r < 4; ++r) {
        for (int c = 0; c < 4; ++c) a[r][c] = (*cols[c])[r];
        a[r][4] = rhs[r];
    }
    for (int k = 0; k < 4; ++k) {
        int piv = k;
        for (int r = k + 1; r < 4; ++r)
            if (std::abs(a[r][k]) > std::abs(a[piv][k])) piv = r;
        if (std::abs(a[piv][k]) < 1e-300) return false;
        if (piv != k)
            for (int c = k; c < 5; ++c) std::swap(a[piv][c], a[k][c]);
        for (int r = k + 1; r < 4; ++r) {
            double f = a[r][k] / a[k][k];
            for (int c = k; c < 5; ++c) a[r][c] -= f * a[k][c];
        }
    }
    for (int r = 3; r >= 0; --r) {
        double s = a[r][4];
        for (int c = r + 1; c < 4; ++c) s -= a[r][c] * x[c];
        x[r] = s / a[r][r];
    }
    return true;
}

}  // namespace exoflex
