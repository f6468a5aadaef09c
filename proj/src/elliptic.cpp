#include "exoflex/elliptic.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

#include "exoflex/vec4.hpp"

namespace exoflex {

double elliptic_K(double k) {
    if (!(k >= 0.0 && k < 1.0)) throw std::domain_error("elliptic modulus must lie in [0,1)");
    double a = 1.0, b = std::sqrt((1.0 - k) * (1.0 + k));
    while (std::abs(a - b) > std::numeric_limits<double>::epsilon() * a) {
        const double am = (a + b) / 2.0;
        b = std::sqrt(a * b);
        a = am;
    }
    return kPi / (2.0 * a);
}

EllipticModulus make_modulus(double k) {
    EllipticModulus m;
    m.k = k;
    m.k_prime = std::sqrt((1.0 - k) * (1.0 + k));
    m.K = elliptic_K(k);
    return m;
}

JacobiValues jacobi(double u, double k) {
    if (!(k >= 0.0 && k < 1.0)) throw std::domain_error("elliptic modulus must lie in [0,1)");
    // Bulirsch's sncndn on the complementary parameter mc = 1 - k^2. The
    // forward AGM pass stops at sqrt(eps); the backward pass squares the
    // accuracy.
    const double tol = std::sqrt(std::numeric_limits<double>::epsilon());
    double mc = (1.0 - k) * (1.0 + k);
    double m[16], n[16];
    double a = 1.0, c = 1.0;
    int l = 0;
    for (int i = 0; i < 16; ++i) {
        l = i;
        m[i] = a;
        n[i] = mc = std::sqrt(mc);
        c = (a + mc) / 2.0;
        if (std::abs(a - mc) <= tol * a) break;
        mc *= a;
        a = c;
    }
    double x = u * c;
    double sn = std::sin(x), cn = std::cos(x), dn = 1.0;
    if (sn != 0.0) {
        double t = cn / sn;
        c *= t;
        for (int i = l; i >= 0; --i) {
            const double b = m[i];
            t *= c;
            c *= dn;
            dn = (n[i] + t) / (b + t);
            t = c / b;
        }
        const double amp = 1.0 / std::sqrt(c * c + 1.0);
        sn = (sn < 0.0) ? -amp : amp;
        cn = c * sn;
    }
    return {sn, cn, dn};
}

const char* kind_name(Kind k) {
    switch (k) {
        case Kind::first: return "First";
        case Kind::second: return "Second";
        default: return "Third";
    }
}

namespace {

std::array<VertexId, 3> face_pair_vertices(int face) {
    if (face < 0 || face > 7) throw std::invalid_argument("face index out of range");
    return {(face & 1) ? vb1 : va1, (face & 2) ? vb2 : va2, (face & 4) ? vb3 : va3};
}

}  // namespace

std::vector<std::array<ProjectiveTangent, 3>> face_tangent_series(const ExoticParams& p,
                                                                  int face, Component c,
                                                                  int n) {
    const auto u = face_pair_vertices(face);
    const int slot[3] = {edge_index(u[1], u[2]), edge_index(u[2], u[0]),
                         edge_index(u[0], u[1])};
    const auto all = tangents_along(trace_component(p, c, n));
    std::vector<std::array<ProjectiveTangent, 3>> series;
    series.reserve(all.size());
    for (const auto& node : all)
        series.push_back({node[slot[0]], node[slot[1]], node[slot[2]]});
    return series;
}

KindEvidence classify_kind(const ExoticParams& p, int face, int n, double degenerate_sin) {
    const auto series = face_tangent_series(p, face, Component::plus, n);
    KindEvidence ev;
    double min_sin[2] = {2.0, 2.0};
    for (const auto& t : series)
        for (int j = 0; j < 2; ++j)
            min_sin[j] = std::min(min_sin[j], 2.0 * std::abs(t[j].X * t[j].Y));
    bool deg[2];
    for (int j = 0; j < 2; ++j) {
        if (min_sin[j] >= degenerate_sin && min_sin[j] < 1e-4)
            throw std::runtime_error("ambiguous dihedral degeneracy: min |sin phi| = " +
                                     std::to_string(min_sin[j]));
        deg[j] = min_sin[j] < degenerate_sin;
    }
    ev.t1_degenerate = deg[0];
    ev.t2_degenerate = deg[1];
    ev.min_sin_t1 = min_sin[0];
    ev.min_sin_t2 = min_sin[1];
    ev.kind = (deg[0] && deg[1]) ? Kind::third
              : (deg[0] || deg[1]) ? Kind::second
                                   : Kind::first;
    return ev;
}

StructuralFit structural_fit(const std::vector<std::array<ProjectiveTangent, 3>>& series) {
    if (series.size() < 4) throw std::invalid_argument("series too short to fit");

    // Canonical slot: prefer the tangent bounded away from 0 and infinity.
    // Slots 1 and 2 may swap roles in the amplitude forms; the third kind has
    // no bounded slot and keeps slot 1.
    double sin_min[2] = {2.0, 2.0};
    for (const auto& t : series)
        for (int s = 0; s < 2; ++s)
            sin_min[s] = std::min(sin_min[s], 2.0 * std::abs(t[s].X * t[s].Y));
    const int slot = (sin_min[0] < 1e-4 && sin_min[1] >= 1e-4) ? 1 : 0;

    StructuralFit best;
    best.slot = slot;
    best.residual = std::numeric_limits<double>::infinity();
    for (int i3 = 0; i3 < 2; ++i3) {
        for (int i1 = 0; i1 < 2; ++i1) {
            double saa = 0, sab = 0, sbb = 0, sal = 0, sbl = 0;
            for (const auto& t : series) {
                const double x1 = i1 ? t[slot].Y : t[slot].X;
                const double y1 = i1 ? t[slot].X : t[slot].Y;
                const double x3 = i3 ? t[2].Y : t[2].X, y3 = i3 ? t[2].X : t[2].Y;
                const double lhs = x3 * x1 * y1, ca = x1 * x1 * y3, cb = y1 * y1 * y3;
                saa += ca * ca;
                sab += ca * cb;
                sbb += cb * cb;
                sal += ca * lhs;
                sbl += cb * lhs;
            }
            const double det = saa * sbb - sab * sab;
            if (std::abs(det) < 1e-300) continue;
            const double a = (sal * sbb - sbl * sab) / det;
            const double b = (saa * sbl - sab * sal) / det;
            double worst = 0.0;
            for (const auto& t : series) {
                const double x1 = i1 ? t[slot].Y : t[slot].X;
                const double y1 = i1 ? t[slot].X : t[slot].Y;
                const double x3 = i3 ? t[2].Y : t[2].X, y3 = i3 ? t[2].X : t[2].Y;
                worst = std::max(std::abs(x3 * x1 * y1 - a * x1 * x1 * y3 - b * y1 * y1 * y3),
                                 worst);
            }
            if (worst < best.residual) {
                best.a = a;
                best.b = b;
                best.residual = worst;
                best.inverted_t1 = i1 != 0;
                best.inverted_t3 = i3 != 0;
            }
        }
    }
    const double prod = best.a * best.b;
    best.sign_ab = (prod > 0.0) ? 1 : (prod < 0.0) ? -1 : 0;

    double tmin = std::numeric_limits<double>::infinity(), tmax = 0.0;
    for (const auto& t : series) {
        const double mag = t[slot].X / std::abs(t[slot].Y);
        tmin = std::min(tmin, mag);
        tmax = std::max(tmax, mag);
    }
    best.k_prime_estimate = (sin_min[slot] < 1e-4)
                                ? std::numeric_limits<double>::quiet_NaN()
                                : tmin / tmax;
    return best;
}

}  // namespace exoflex
