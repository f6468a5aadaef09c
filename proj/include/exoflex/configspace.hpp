#pragma once

#include <array>
#include <utility>
#include <vector>

#include "exoflex/octa.hpp"
#include "exoflex/sphere.hpp"

namespace exoflex {

struct DiagonalCosines {
    double y1 = 0, y2 = 0, y3 = 0;  // <a1,b1>, <a2,b2>, <a3,b3>
};

// Cosine of the a1 b1 diagonal as a function of the state:
// p1 p2/cos^2 t + delta1 delta2 sqrt((1 - p1^2/cos^2 t)(1 - p2^2/cos^2 t)).
double y_of_state(const ExoticParams& p, const FlexState& s);

// Extreme values of y over a component,
// (p1 p2 -+ sqrt((1-q2^2-p1^2)(1-q2^2-p2^2))) / (1-q2^2),
// both attained at theta = theta_min (with opposite delta1*delta2).
std::pair<double, double> y_bounds(const ExoticParams& p);

// Residual of y^2 - 2 p1 p2 x y + (p1^2 + p2^2) x - 1, the curve traced by
// (x, y) = (1/cos^2 theta, y_of_state).
double hyperbola_residual(const ExoticParams& p, double x, double y);

DiagonalCosines diagonals(const Octahedron& o);

// Inverse of diagonals() on built octahedra under the gauge
// delta1 = eps1 = +1 (the freedom left by reflecting the x2 or x4 axis,
// which the diagonals cannot see). The flags mark the signs the diagonals
// genuinely do not determine: delta2 at theta_max, eps2 at theta_min.
struct RecoveredState {
    FlexState state;
    bool delta2_immaterial = false;
    bool eps2_immaterial = false;
};

// Throws std::invalid_argument when no state of the family reproduces d.
RecoveredState recover_state(const ExoticParams& p, const DiagonalCosines& d,
                             double tol = 1e-9);

enum class Component { plus, minus };  // plus: delta1 * eps1 = +1

struct TraceNode {
    FlexState state;
    double arc = 0.0;  // cumulative chordal length of the 24-coordinate embedding
    bool delta2_immaterial = false;  // node sits at theta_max
    bool eps2_immaterial = false;    // node sits at theta_min
};

struct ComponentTrace {
    ExoticParams params;
    Component component = Component::plus;
    std::vector<TraceNode> nodes;  // closed loop; wraps from back() to front()
};

// Closed loop of n states (n divisible by 4, n >= 8): four theta-monotone
// legs between theta_min and theta_max with endpoint-clustered nodes,
// visiting the (delta2, eps2) quadrants in the order (+,+), (-,+), (-,-),
// (+,-). delta1 = +1 throughout, eps1 fixed by the component. delta2 flips
// at the theta_max junctions and eps2 at the theta_min junctions, exactly
// where the flipped sign multiplies a vanishing coordinate. Junction nodes
// carry the outgoing leg's signs. Each interior theta value occurs at
// exactly four nodes, as the same double.
ComponentTrace trace_component(const ExoticParams& p, Component c, int n);

// Half-angle tangents of the 12 oriented dihedral angles at every node,
// indexed like edges().
std::vector<std::array<ProjectiveTangent, 12>> tangents_along(const ComponentTrace& t);

}  // namespace exoflex
