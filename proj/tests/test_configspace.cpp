#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <map>
#include <random>
#include <stdexcept>

#include "exoflex/configspace.hpp"
#include "exoflex/octa.hpp"
#include "exoflex/sphere.hpp"

using namespace exoflex;

namespace {

const ExoticParams kRef{0.1, 0.6, 0.2, 0.5};
const ExoticParams kAlt{-0.15, 0.55, 0.1, 0.45};
const ExoticParams kWide{0.05, 0.7, -0.25, 0.6};

double direct_y(const ExoticParams& p, const FlexState& s) {
    const double c2 = std::cos(s.theta) * std::cos(s.theta);
    return p.p1 * p.p2 / c2 +
           s.delta1 * s.delta2 *
               std::sqrt((1.0 - p.p1 * p.p1 / c2) * (1.0 - p.p2 * p.p2 / c2));
}

}  // namespace

TEST_CASE("y_of_state: frozen value and closed-form recomputation") {
    FlexState s;
    s.theta = 0.7;
    CHECK(y_of_state(kRef, s) == doctest::Approx(0.71740321409181906).epsilon(1e-14));
    for (const ExoticParams& p : {kRef, kAlt, kWide}) {
        const auto [tmin, tmax] = theta_bounds(p);
        for (double frac : {0.2, 0.5, 0.8})
            for (int d1 : {1, -1})
                for (int d2 : {1, -1}) {
                    FlexState st;
                    st.theta = tmin + frac * (tmax - tmin);
                    st.delta1 = d1;
                    st.delta2 = d2;
                    CHECK(y_of_state(p, st) ==
                          doctest::Approx(direct_y(p, st)).epsilon(1e-13));
                }
    }
}

TEST_CASE("y equals the inner product of the built diagonal") {
    FlexState s;
    s.theta = 0.7;
    s.delta2 = -1;
    const Octahedron o = build(kRef, s);
    CHECK(y_of_state(kRef, s) ==
          doctest::Approx(dot(o.at(va1), o.at(vb1))).epsilon(1e-13));
}

TEST_CASE("y_bounds: frozen values, formula, attainment at theta_min") {
    const auto [ymin, ymax] = y_bounds(kRef);
    CHECK(ymin == doctest::Approx(-0.6362867209900422).epsilon(1e-13));
    CHECK(ymax == doctest::Approx(0.7962867209900422).epsilon(1e-13));
    for (const ExoticParams& p : {kRef, kAlt, kWide}) {
        const auto [lo, hi] = y_bounds(p);
        const double s2 = 1.0 - p.q2 * p.q2;
        const double root = std::sqrt((s2 - p.p1 * p.p1) * (s2 - p.p2 * p.p2));
        CHECK(lo == doctest::Approx((p.p1 * p.p2 - root) / s2).epsilon(1e-13));
        CHECK(hi == doctest::Approx((p.p1 * p.p2 + root) / s2).epsilon(1e-13));
        // Both extremes are reached at theta_min, by the sign of delta1*delta2.
        const auto [tmin, tmax] = theta_bounds(p);
        FlexState plus, minus;
        plus.theta = minus.theta = tmin;
        minus.delta2 = -1;
        CHECK(y_of_state(p, plus) == doctest::Approx(hi).epsilon(1e-12));
        CHECK(y_of_state(p, minus) == doctest::Approx(lo).epsilon(1e-12));
        // Interior values stay strictly inside.
        FlexState mid;
        mid.theta = (tmin + tmax) / 2;
        const double ym = y_of_state(p, mid);
        CHECK(ym > lo);
        CHECK(ym < hi);
    }
}

TEST_CASE("hyperbola_residual vanishes along the curve and only there") {
    for (const ExoticParams& p : {kRef, kAlt, kWide}) {
        const auto [tmin, tmax] = theta_bounds(p);
        for (double frac : {0.1, 0.5, 0.9})
            for (int d2 : {1, -1}) {
                FlexState s;
                s.theta = tmin + frac * (tmax - tmin);
                s.delta2 = d2;
                const double x = 1.0 / (std::cos(s.theta) * std::cos(s.theta));
                const double y = y_of_state(p, s);
                CHECK(std::abs(hyperbola_residual(p, x, y)) < 1e-12);
                CHECK(std::abs(hyperbola_residual(p, x, y + 0.1)) > 1e-3);
                // Recompute the quadric directly.
                const double direct = y * y - 2.0 * p.p1 * p.p2 * x * y +
                                      (p.p1 * p.p1 + p.p2 * p.p2) * x - 1.0;
                CHECK(hyperbola_residual(p, x, y) == doctest::Approx(direct).epsilon(1e-15));
            }
    }
}

TEST_CASE("diagonals reads the three inner products") {
    FlexState s;
    s.theta = 0.68;
    s.eps2 = -1;
    const Octahedron o = build(kRef, s);
    const DiagonalCosines d = diagonals(o);
    CHECK(d.y1 == dot(o.at(va1), o.at(vb1)));
    CHECK(d.y2 == dot(o.at(va2), o.at(vb2)));
    CHECK(d.y3 == dot(o.at(va3), o.at(vb3)));
}

TEST_CASE("recover_state inverts diagonals at random interior states") {
    std::mt19937_64 gen(7);
    for (const ExoticParams& p : {kRef, kAlt, kWide}) {
        const auto [tmin, tmax] = theta_bounds(p);
        std::uniform_real_distribution<double> u(0.05, 0.95);
        for (int i = 0; i < 70; ++i) {
            FlexState s;
            s.theta = tmin + (tmax - tmin) * u(gen);
            s.delta2 = (gen() & 1) ? 1 : -1;
            s.eps2 = (gen() & 1) ? 1 : -1;
            const RecoveredState rec = recover_state(p, diagonals(build(p, s)));
            CHECK(std::abs(rec.state.theta - s.theta) < 1e-10);
            CHECK(rec.state.delta1 == 1);
            CHECK(rec.state.eps1 == 1);
            CHECK(rec.state.delta2 == s.delta2);
            CHECK(rec.state.eps2 == s.eps2);
            CHECK_FALSE(rec.delta2_immaterial);
            CHECK_FALSE(rec.eps2_immaterial);
        }
    }
}

TEST_CASE("recover_state flags the signs the diagonals cannot see") {
    for (const ExoticParams& p : {kRef, kAlt, kWide}) {
        const auto [tmin, tmax] = theta_bounds(p);
        FlexState lo;
        lo.theta = tmin;  // eps2 multiplies a vanishing coordinate here
        const RecoveredState rl = recover_state(p, diagonals(build(p, lo)));
        CHECK(std::abs(rl.state.theta - tmin) < 1e-10);
        CHECK(rl.eps2_immaterial);
        CHECK_FALSE(rl.delta2_immaterial);
        FlexState hi;
        hi.theta = tmax;  // delta2 multiplies a vanishing coordinate here
        const RecoveredState rh = recover_state(p, diagonals(build(p, hi)));
        CHECK(std::abs(rh.state.theta - tmax) < 1e-10);
        CHECK(rh.delta2_immaterial);
        CHECK_FALSE(rh.eps2_immaterial);
    }
}

TEST_CASE("recover_state rejects diagonals no state reproduces") {
    FlexState s;
    s.theta = 0.7;
    DiagonalCosines d = diagonals(build(kRef, s));
    d.y3 = 0.9;  // inconsistent with y1, y2
    CHECK_THROWS_AS(recover_state(kRef, d), std::invalid_argument);
    DiagonalCosines far = diagonals(build(kRef, s));
    far.y1 = 0.99;  // beyond the reachable band
    CHECK_THROWS_AS(recover_state(kRef, far), std::invalid_argument);
    DiagonalCosines off = diagonals(build(kRef, s));
    off.y3 = 1.5;  // not a cosine
    CHECK_THROWS_AS(recover_state(kRef, off), std::invalid_argument);
}

TEST_CASE("trace_component validates its arguments") {
    CHECK_THROWS_AS(trace_component(kRef, Component::plus, 4), std::invalid_argument);
    CHECK_THROWS_AS(trace_component(kRef, Component::plus, 10), std::invalid_argument);
    CHECK_THROWS_AS(trace_component(kRef, Component::plus, 0), std::invalid_argument);
    CHECK_THROWS_AS(trace_component({0.7, 0.6, 0.2, 0.5}, Component::plus, 16),
                    std::invalid_argument);
    CHECK_NOTHROW(trace_component(kRef, Component::plus, 8));
}

TEST_CASE("trace_component: loop structure, quadrants, junction flags") {
    const int n = 32;
    for (Component c : {Component::plus, Component::minus}) {
        const ComponentTrace tr = trace_component(kRef, c, n);
        REQUIRE(static_cast<int>(tr.nodes.size()) == n);
        CHECK(tr.component == c);
        const auto [tmin, tmax] = theta_bounds(kRef);
        const int eps1 = (c == Component::plus) ? 1 : -1;
        for (int k = 0; k < n; ++k) {
            const FlexState& s = tr.nodes[k].state;
            CHECK(s.delta1 == 1);
            CHECK(s.eps1 == eps1);
            CHECK(s.theta >= tmin);
            CHECK(s.theta <= tmax);
            // Quadrant order (+,+), (-,+), (-,-), (+,-) by quarter.
            const int want_d2 = (k < n / 4 || k >= 3 * n / 4) ? 1 : -1;
            const int want_e2 = (k < n / 2) ? 1 : -1;
            CHECK(s.delta2 == want_d2);
            CHECK(s.eps2 == want_e2);
            CHECK(tr.nodes[k].delta2_immaterial == (k == n / 4 || k == 3 * n / 4));
            CHECK(tr.nodes[k].eps2_immaterial == (k == 0 || k == n / 2));
        }
        // Junction thetas sit exactly on the bounds.
        CHECK(tr.nodes[0].state.theta == tmin);
        CHECK(tr.nodes[n / 4].state.theta == tmax);
        CHECK(tr.nodes[n / 2].state.theta == tmin);
        CHECK(tr.nodes[3 * n / 4].state.theta == tmax);
        // Theta is strictly monotone within each quarter leg.
        for (int k = 0; k + 1 <= n / 4 - 1; ++k)
            CHECK(tr.nodes[k].state.theta < tr.nodes[k + 1].state.theta);
        for (int k = n / 4; k + 1 <= n / 2 - 1; ++k)
            CHECK(tr.nodes[k].state.theta > tr.nodes[k + 1].state.theta);
        // Nodes cluster toward the endpoints: the first step is the smallest.
        const double first = tr.nodes[1].state.theta - tr.nodes[0].state.theta;
        const double mid = tr.nodes[n / 8 + 1].state.theta - tr.nodes[n / 8].state.theta;
        CHECK(first < mid);
    }
}

TEST_CASE("trace_component: each interior theta occurs at exactly four nodes") {
    const int n = 64;
    const ComponentTrace tr = trace_component(kRef, Component::plus, n);
    std::map<double, int> count;
    for (const auto& node : tr.nodes) ++count[node.state.theta];
    const auto [tmin, tmax] = theta_bounds(kRef);
    for (const auto& [theta, c] : count) {
        if (theta == tmin || theta == tmax)
            CHECK(c == 2);  // two junction visits
        else
            CHECK(c == 4);  // bitwise-identical on all four legs
    }
}

TEST_CASE("trace arc length accumulates the 24-coordinate chord") {
    const ComponentTrace tr = trace_component(kRef, Component::plus, 16);
    CHECK(tr.nodes[0].arc == 0.0);
    for (size_t k = 1; k < tr.nodes.size(); ++k) {
        CHECK(tr.nodes[k].arc > tr.nodes[k - 1].arc);
        const Octahedron a = build(kRef, tr.nodes[k - 1].state);
        const Octahedron b = build(kRef, tr.nodes[k].state);
        double sq = 0.0;
        for (int v = 0; v < 6; ++v) {
            const Vec4 d = a.vertex[v] - b.vertex[v];
            sq += dot(d, d);
        }
        CHECK(tr.nodes[k].arc - tr.nodes[k - 1].arc ==
              doctest::Approx(std::sqrt(sq)).epsilon(1e-12));
    }
}

TEST_CASE("trace states rebuild into octahedra with constant edge lengths") {
    for (const ExoticParams& p : {kAlt, kWide}) {
        const ComponentTrace tr = trace_component(p, Component::minus, 16);
        const EdgeLengths ref = edge_lengths(build(p, tr.nodes[0].state));
        for (const auto& node : tr.nodes) {
            const EdgeLengths el = edge_lengths(build(p, node.state));
            for (int e = 0; e < 12; ++e)
                CHECK(el.len[e] == doctest::Approx(ref.len[e]).epsilon(1e-12));
        }
    }
}

TEST_CASE("tangents_along matches per-edge dihedral tangents") {
    const ComponentTrace tr = trace_component(kRef, Component::plus, 8);
    const auto tangents = tangents_along(tr);
    REQUIRE(tangents.size() == tr.nodes.size());
    for (size_t k : {size_t{0}, size_t{3}, size_t{6}}) {
        const Octahedron o = build(kRef, tr.nodes[k].state);
        for (int e : {0, 4, 11}) {
            const ProjectiveTangent want =
                half_angle_tangent(oriented_dihedral_angle(o, edges()[e].u, edges()[e].v));
            CHECK(tangents[k][e].X == doctest::Approx(want.X).epsilon(1e-12));
            CHECK(tangents[k][e].Y == doctest::Approx(want.Y).epsilon(1e-12));
        }
    }
}
