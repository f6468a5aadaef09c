#pragma once

#include <array>
#include <vector>

#include "exoflex/configspace.hpp"
#include "exoflex/octa.hpp"
#include "exoflex/sphere.hpp"

namespace exoflex {

// r_j = (1 - q_j^2)^(-1/2); r_j p_1 and r_j p_2 are the side cosines of the
// fixed legs of the triangle behind A_j. j is 1 or 2.
double diagonal_scale(int j, const ExoticParams& p);

// A_j(y): area of the spherical triangle with side cosines r_j p_1, r_j p_2
// and y. Positive on (y_min, y_max); A_2 vanishes at both ends, A_1 does not.
double diagonal_triangle_area(int j, const ExoticParams& p, double y);

// Oriented volume of build(p, s) in closed form,
//   V = -(delta1 sgn(p2) pi / 2) (eps1 A_1(y) - eps2 A_2(y)),
// where y = <a1,b1> is the first diagonal cosine of the state.
VolumeClass closed_form_volume(const ExoticParams& p, const FlexState& s);

// Oriented volume by sampling: sum over the eight oriented faces of the
// signed tetrahedron volume with a common apex. The apex is drawn from the
// seed and re-drawn until it is uniformly non-coplanar with every face, so
// the estimate is an ordinary sum of eight tetrahedron oracles.
// vol.lifted is the raw sum; reduce modulo 2 pi^2 to compare.
OracleEstimate decomposition_volume(const Octahedron& o, const OracleOptions& opts = {});

// Oriented volume by sampling the four-tetrahedron split along the diagonal
// a1 b1:
//   V_or(b1,a1,a2,a3) - V_or(b1,a1,a2,b3) - V_or(b1,a1,b2,a3) + V_or(b1,a1,b2,b3).
OracleEstimate diagonal_decomposition_volume(const Octahedron& o, const OracleOptions& opts = {});

// Exact polynomial data behind dA_j/dy:
//   A_j'(y) = (r_j(p1+p2) - y - 1) / ((y+1) sqrt(F_j(y))),
//   F_j(y)  = -y^2 + 2 r_j^2 p1 p2 y - r_j^2 (p1^2+p2^2) + 1,
//   Q(y)    = (r1(p1+p2)-y-1)^2 F_2(y) - (r2(p1+p2)-y-1)^2 F_1(y),
// so (A_1')^2 - (A_2')^2 = Q / ((y+1)^2 F_1 F_2). Q has degree 3: c[4] = 0.
struct DerivativePoly {
    double r1 = 0.0, r2 = 0.0;
    double side_sum = 0.0;             // p1 + p2
    std::array<double, 3> f1{}, f2{};  // F_j coefficients, index = power of y
    std::array<double, 5> c{};         // Q coefficients, index = power of y

    double F(int j, double y) const;
    double Q(double y) const;
    double dA(int j, double y) const;
};

DerivativePoly derivative_poly(const ExoticParams& p);

// Closed-form volume along a traced component, lifted to a continuous real
// function of the node index: each node takes the representative of its
// volume class shifted by the multiple of 2 pi^2 nearest the previous node.
// closing_lifted continues the lift from the last node back to node 0; for
// these families it returns to lifted[0] exactly (zero monodromy).
struct VolumeProfile {
    ExoticParams params;
    Component component = Component::plus;
    std::vector<TraceNode> nodes;
    std::vector<double> y;      // first diagonal cosine per node
    std::vector<double> area1;  // A_1(y)
    std::vector<double> area2;  // A_2(y)
    std::vector<double> lifted;
    double closing_lifted = 0.0;
    double vmin = 0.0, vmax = 0.0, spread = 0.0;  // over lifted
};

VolumeProfile volume_profile(const ExoticParams& p, Component c, int n);

// closing_lifted - lifted[0]; an integer multiple of 2 pi^2 by construction.
double loop_increment(const VolumeProfile& prof);

// Volume profile of the antipode variant `mask` over the base family's
// traced component: each base state is mapped through normalize_variant and
// the closed form of the normalized family is taken with its orientation
// sign. nodes holds the base trace; y, area1, area2 refer to the normalized
// family's own diagonal.
VolumeProfile variant_volume_profile(const ExoticParams& p, AntipodeMask mask,
                                     Component c, int n);

// Differential identity dV = (sign/2) sum_e len_e dphi_e along the traced
// component, checked with centered differences in the node index and the
// dihedral angles unwrapped to continuous branches. The loop closes through
// the wrap-around nodes. The global sign is a fixed convention constant;
// both are tried and the one with the smaller violation is reported.
struct SchlafliCheck {
    int sign = 1;
    double residual = 0.0;  // largest absolute violation at that sign
};

SchlafliCheck schlafli_check(const ExoticParams& p, Component c, int n);

struct MaskSweepEntry {
    double spread = 0.0;  // the smaller of the two component spreads
    double vmin = 0.0, vmax = 0.0;  // lifted range of that component
    bool nonconstant = false;       // both components exceed the threshold
};

struct BellowsReport {
    ExoticParams params;
    int samples = 0;
    double spread_threshold = 0.0;
    std::array<MaskSweepEntry, 64> entries{};  // indexed by antipode mask
    bool counterexample_confirmed = false;     // every mask is nonconstant
};

// Sweeps all 64 antipode masks of the family over both components.
BellowsReport bellows_sweep(const ExoticParams& p, int n, double spread_threshold = 1e-6);

}  // namespace exoflex
