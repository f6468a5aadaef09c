#include "exoflex/configspace.hpp"

#include <cmath>
#include <stdexcept>

namespace exoflex {

double y_of_state(const ExoticParams& p, const FlexState& s) {
    const double c2 = std::cos(s.theta) * std::cos(s.theta);
    const double r = clamped_sqrt(1.0 - p.p1 * p.p1 / c2) * clamped_sqrt(1.0 - p.p2 * p.p2 / c2);
    return p.p1 * p.p2 / c2 + s.delta1 * s.delta2 * r;
}

std::pair<double, double> y_bounds(const ExoticParams& p) {
    const double w = 1.0 - p.q2 * p.q2;
    const double r = std::sqrt((w - p.p1 * p.p1) * (w - p.p2 * p.p2));
    return {(p.p1 * p.p2 - r) / w, (p.p1 * p.p2 + r) / w};
}

double hyperbola_residual(const ExoticParams& p, double x, double y) {
    return y * y - 2.0 * p.p1 * p.p2 * x * y + (p.p1 * p.p1 + p.p2 * p.p2) * x - 1.0;
}

DiagonalCosines diagonals(const Octahedron& o) {
    return {dot(o.at(va1), o.at(vb1)), dot(o.at(va2), o.at(vb2)), dot(o.at(va3), o.at(vb3))};
}

RecoveredState recover_state(const ExoticParams& p, const DiagonalCosines& d, double tol) {
    const auto [tmin, tmax] = theta_bounds(p);
    if (std::abs(d.y3) > 1.0 + tol)
        throw std::invalid_argument("diagonal y3 is not a cosine");
    RecoveredState r;
    r.state.theta = 0.5 * clamped_acos(d.y3, tol);
    if (r.state.theta < tmin - tol || r.state.theta > tmax + tol)
        throw std::invalid_argument("diagonal y3 outside the flexion range");
    r.state.delta1 = 1;
    r.state.eps1 = 1;
    r.delta2_immaterial = tmax - r.state.theta <= tol;
    r.eps2_immaterial = r.state.theta - tmin <= tol;

    const double c2 = std::cos(r.state.theta) * std::cos(r.state.theta);
    const double s2 = 1.0 - c2;
    r.state.delta2 = (d.y1 >= p.p1 * p.p2 / c2) ? 1 : -1;
    r.state.eps2 = (d.y2 >= p.q1 * p.q2 / s2) ? 1 : -1;

    // The input must actually come from a state. Compare in the squared
    // domain: the square-root form is infinitely sensitive to theta at the
    // flexion endpoints, where the radicand crosses zero.
    const double m1 = d.y1 - p.p1 * p.p2 / c2;
    const double m2 = d.y2 - p.q1 * p.q2 / s2;
    const double rr1 = (1.0 - p.p1 * p.p1 / c2) * (1.0 - p.p2 * p.p2 / c2);
    const double rr2 = (1.0 - p.q1 * p.q1 / s2) * (1.0 - p.q2 * p.q2 / s2);
    if (std::abs(m1 * m1 - rr1) > tol || std::abs(m2 * m2 - rr2) > tol)
        throw std::invalid_argument("diagonals inconsistent with the family");
    return r;
}

ComponentTrace trace_component(const ExoticParams& p, Component c, int n) {
    if (n < 8 || n % 4 != 0) throw std::invalid_argument("node count must be >= 8 and divisible by 4");
    ValidationReport v = validate_params(p);
    if (!v.ok) throw std::invalid_argument("invalid params");
    const auto [tmin, tmax] = theta_bounds(p);
    ComponentTrace t;
    t.params = p;
    t.component = c;
    t.nodes.resize(static_cast<size_t>(n));
    const int quarter = n / 4, half = n / 2;
    Octahedron prev;
    for (int k = 0; k < n; ++k) {
        TraceNode& node = t.nodes[static_cast<size_t>(k)];
        // Fold k into [0, n/4] so the four nodes sharing a theta value get
        // bitwise-identical doubles.
        const int j = k % half;
        const int jj = j <= half - j ? j : half - j;
        const double u = std::sin(2.0 * kPi * jj / n);
        node.state.theta = tmin + (tmax - tmin) * u * u;
        node.state.delta1 = 1;
        node.state.delta2 = (k < quarter || k >= 3 * quarter) ? 1 : -1;
        node.state.eps1 = (c == Component::plus) ? 1 : -1;
        node.state.eps2 = (k < half) ? 1 : -1;
        node.delta2_immaterial = (k == quarter || k == 3 * quarter);
        node.eps2_immaterial = (k == 0 || k == half);
        const Octahedron o = build(p, node.state);
        if (k == 0) {
            node.arc = 0.0;
        } else {
            double step2 = 0.0;
            for (int w = 0; w < 6; ++w) {
                const Vec4 diff = o.vertex[w] - prev.vertex[w];
                step2 += dot(diff, diff);
            }
            node.arc = t.nodes[static_cast<size_t>(k - 1)].arc + std::sqrt(step2);
        }
        prev = o;
    }
    return t;
}

std::vector<std::array<ProjectiveTangent, 12>> tangents_along(const ComponentTrace& t) {
    std::vector<std::array<ProjectiveTangent, 12>> out(t.nodes.size());
    const auto& e = edges();
    for (size_t k = 0; k < t.nodes.size(); ++k) {
        const Octahedron o = build(t.params, t.nodes[k].state);
        for (int i = 0; i < 12; ++i)
            out[k][i] = half_angle_tangent(oriented_dihedral_angle(o, e[i].u, e[i].v));
    }
    return out;
}

}  // namespace exoflex
