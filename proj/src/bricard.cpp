#include "exoflex/bricard.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace exoflex {

double face_angle_cos(const Octahedron& o, VertexId x, VertexId v, VertexId y) {
    const double cvx = dot(o.at(v), o.at(x));
    const double cvy = dot(o.at(v), o.at(y));
    const double cxy = dot(o.at(x), o.at(y));
    const double den2 = (1.0 - cvx * cvx) * (1.0 - cvy * cvy);
    if (den2 < 1e-28) throw std::domain_error("face angle at a degenerate corner");
    return (cxy - cvx * cvy) / std::sqrt(den2);
}

LinkQuad vertex_link(const Octahedron& o, VertexId v) {
    LinkQuad l;
    l.cycle = link_cycle(v);
    for (int i = 0; i < 4; ++i) {
        l.side[i] = clamped_acos(face_angle_cos(o, l.cycle[i], v, l.cycle[(i + 1) % 4]));
        l.angle[i] = oriented_dihedral_angle(o, v, l.cycle[i]);
        l.angle_t[i] = half_angle_tangent(l.angle[i]);
    }
    return l;
}

double BiquadCoeffs::max_abs() const {
    return std::max({std::abs(A), std::abs(B), std::abs(C), std::abs(D), std::abs(E)});
}

BiquadCoeffs biquad_coeffs(double alpha, double beta, double gamma, double delta) {
    BiquadCoeffs c;
    const double cg = std::cos(gamma);
    c.A = cg - std::cos(alpha + beta + delta);
    c.B = cg - std::cos(alpha + beta - delta);
    c.C = -2.0 * std::sin(beta) * std::sin(delta);
    c.D = cg - std::cos(alpha - beta + delta);
    c.E = cg - std::cos(alpha - beta - delta);
    return c;
}

double biquad_residual(const BiquadCoeffs& c, const ProjectiveTangent& t1,
                       const ProjectiveTangent& t2) {
    const double X1 = t1.X, Y1 = t1.Y, X2 = t2.X, Y2 = t2.Y;
    const double r = c.A * X1 * X1 * X2 * X2 + c.B * X1 * X1 * Y2 * Y2 +
                     2.0 * c.C * X1 * Y1 * X2 * Y2 + c.D * Y1 * Y1 * X2 * X2 +
                     c.E * Y1 * Y1 * Y2 * Y2;
    const double scale = c.max_abs();
    if (scale < 1e-300) return 0.0;
    return r / scale;
}

std::array<double, 24> biquad_residuals(const Octahedron& o) {
    std::array<double, 24> res;
    for (int v = 0; v < 6; ++v) {
        const LinkQuad l = vertex_link(o, static_cast<VertexId>(v));
        for (int r = 0; r < 4; ++r) {
            const BiquadCoeffs c =
                biquad_coeffs(l.side[r], l.side[(r + 1) % 4], l.side[(r + 2) % 4],
                              l.side[(r + 3) % 4]);
            // The t1 slot belongs to the far end of the first side: with
            // coefficients built from sides starting at cycle position r, the
            // relation vanishes on (angle at r+1, angle at r), not the reverse.
            res[4 * v + r] = biquad_residual(c, l.angle_t[(r + 1) % 4], l.angle_t[r]);
        }
    }
    return res;
}

const char* quad_shape_name(QuadShape s) {
    switch (s) {
        case QuadShape::Isogram: return "Isogram";
        case QuadShape::Antiisogram: return "Antiisogram";
        case QuadShape::Deltoid: return "Deltoid";
        case QuadShape::Antideltoid: return "Antideltoid";
        case QuadShape::Generic: return "Generic";
    }
    return "Generic";
}

QuadClass classify_quad(const std::array<double, 4>& s, double tol) {
    auto eq = [&](double x, double y) { return std::abs(x - y) <= tol; };
    auto co = [&](double x, double y) { return std::abs(x + y - kPi) <= tol; };
    const double a = s[0], b = s[1], g = s[2], d = s[3];
    if (eq(a, g) && eq(b, d)) return {QuadShape::Isogram, 0};
    if (co(a, g) && co(b, d)) return {QuadShape::Antiisogram, 0};
    if (eq(d, a) && eq(b, g)) return {QuadShape::Deltoid, 0};
    if (eq(a, b) && eq(g, d)) return {QuadShape::Deltoid, 1};
    if (co(a, d) && co(b, g)) return {QuadShape::Antideltoid, 0};
    if (co(a, b) && co(g, d)) return {QuadShape::Antideltoid, 1};
    return {QuadShape::Generic, 0};
}

namespace {

// Determines the sign nu in x_i = nu * y_i across the witness pairs; returns
// 0 and records a failure if no single sign fits within tol.
int fit_sign(const std::vector<std::pair<double, double>>& pairs, double tol,
             const std::string& what, std::vector<std::string>& failures) {
    int best = 0;
    double wmax = 0.0;
    for (const auto& [x, y] : pairs)
        if (std::abs(y) > wmax) {
            wmax = std::abs(y);
            best = (x * y > 0.0) ? 1 : -1;
        }
    if (best == 0) {
        failures.push_back(what + ": all witness pairs vanish");
        return 0;
    }
    for (const auto& [x, y] : pairs)
        if (std::abs(x - best * y) > tol) {
            failures.push_back(what + ": witness relation broken");
            return 0;
        }
    return best;
}

}  // namespace

WitnessReport exotic_face_check(const ExoticParams& p, int samples, double tol) {
    WitnessReport rep;
    // Relaxed admission: allow |p1| = |p2| and |q1| = |q2| through so the
    // degeneration is detected geometrically, but reject unbuildable input.
    if (!(p.p2 * p.p2 + p.q2 * p.q2 < 1.0) || std::abs(p.p1) > std::abs(p.p2) ||
        std::abs(p.q1) > std::abs(p.q2)) {
        rep.failures.push_back("params outside the constructible family");
        return rep;
    }
    const auto [tmin, tmax] = theta_bounds(p);
    int nu1 = 2, nu2 = 2;  // 2 = not yet seen
    for (int i = 0; i < samples; ++i) {
        FlexState s;
        s.theta = tmin + (tmax - tmin) * (i + 1.0) / (samples + 1.0);
        s.delta1 = 1;
        s.delta2 = (i & 1) ? -1 : 1;
        s.eps2 = (i & 2) ? -1 : 1;
        s.eps1 = (i & 4) ? -1 : 1;
        const Octahedron o = build(p, s, /*checked=*/false);

        const QuadClass ca2 = classify_quad(vertex_link(o, va2).side, tol);
        if (ca2.shape != QuadShape::Deltoid)
            rep.failures.push_back(std::string("link of a2 classified ") +
                                   quad_shape_name(ca2.shape) + ", expected Deltoid");
        const QuadClass ca1 = classify_quad(vertex_link(o, va1).side, tol);
        if (ca1.shape != QuadShape::Antideltoid)
            rep.failures.push_back(std::string("link of a1 classified ") +
                                   quad_shape_name(ca1.shape) + ", expected Antideltoid");

        const EdgeLengths el = edge_lengths(o);
        const int n1 = fit_sign(
            {{face_angle_cos(o, va2, va1, va3), face_angle_cos(o, va2, va1, vb3)},
             {face_angle_cos(o, vb2, va1, va3), face_angle_cos(o, vb2, va1, vb3)},
             {std::cos(el(va2, va3)), std::cos(el(va2, vb3))},
             {std::cos(el(vb2, va3)), std::cos(el(vb2, vb3))}},
            tol, "nu1", rep.failures);
        const int n2 = fit_sign(
            {{face_angle_cos(o, va1, va2, va3), face_angle_cos(o, va1, va2, vb3)},
             {face_angle_cos(o, vb1, va2, va3), face_angle_cos(o, vb1, va2, vb3)},
             {std::cos(el(va1, va3)), std::cos(el(va1, vb3))},
             {std::cos(el(vb1, va3)), std::cos(el(vb1, vb3))}},
            tol, "nu2", rep.failures);
        if (nu1 == 2) nu1 = n1;
        if (nu2 == 2) nu2 = n2;
        if (n1 != nu1 || n2 != nu2) rep.failures.push_back("nu signs vary across states");
        ++rep.states_checked;
        if (rep.failures.size() > 32) break;  // enough evidence
    }
    rep.nu1 = (nu1 == 2) ? 0 : nu1;
    rep.nu2 = (nu2 == 2) ? 0 : nu2;
    if (rep.nu1 != -1) rep.failures.push_back("nu1 != -1");
    if (rep.nu2 != +1) rep.failures.push_back("nu2 != +1");
    rep.pass = rep.failures.empty();
    return rep;
}

}  // namespace exoflex
