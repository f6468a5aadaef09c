#pragma once

#include <array>
#include <string>
#include <vector>

#include "exoflex/octa.hpp"
#include "exoflex/sphere.hpp"

namespace exoflex {

// Link of a vertex: the spherical quadrilateral cut out on the unit tangent
// sphere at v. Its sides are the face angles at v in cycle order; its angles
// are the oriented dihedral angles at the four edges through v.
struct LinkQuad {
    std::array<VertexId, 4> cycle;             // link_cycle(v)
    std::array<double, 4> side;                // side[i] = angle cycle[i] - v - cycle[i+1]
    std::array<double, 4> angle;               // dihedral at edge (v, cycle[i])
    std::array<ProjectiveTangent, 4> angle_t;  // half-angle tangents of angle[i]
};

// Cosine of the face angle at v between the edges to x and y, by the
// spherical law of cosines. The three points must be pairwise non-antipodal.
double face_angle_cos(const Octahedron& o, VertexId x, VertexId v, VertexId y);

LinkQuad vertex_link(const Octahedron& o, VertexId v);

// Coefficients of A t1^2 t2^2 + B t1^2 + 2 C t1 t2 + D t2^2 + E = 0, the
// relation coupling consecutive angles of a spherical quadrilateral with
// sides (alpha, beta, gamma, delta) in cyclic order: t1, t2 are the
// half-angle tangents at the two ends of side alpha, t1 at the end shared
// with beta and t2 at the end shared with delta.
struct BiquadCoeffs {
    double A = 0, B = 0, C = 0, D = 0, E = 0;

    double max_abs() const;
};

BiquadCoeffs biquad_coeffs(double alpha, double beta, double gamma, double delta);

// Residual of the projectivized relation
//   A X1^2 X2^2 + B X1^2 Y2^2 + 2 C X1 Y1 X2 Y2 + D Y1^2 X2^2 + E Y1^2 Y2^2
// normalized by the largest |coefficient|. Well defined at angle 0 and pi.
double biquad_residual(const BiquadCoeffs& c, const ProjectiveTangent& t1,
                       const ProjectiveTangent& t2);

// The 24 residuals of one octahedron, one per (vertex, cycle rotation):
// entry 4*v + r feeds the sides starting at cycle position r, the tangent at
// position r+1 in the t1 slot and the one at position r in the t2 slot.
// Vanishes identically on realized octahedra; the returned values are
// numerical noise.
std::array<double, 24> biquad_residuals(const Octahedron& o);

enum class QuadShape { Isogram, Antiisogram, Deltoid, Antideltoid, Generic };

const char* quad_shape_name(QuadShape s);

struct QuadClass {
    QuadShape shape = QuadShape::Generic;
    // For Deltoid/Antideltoid: 0 pairs sides as (delta,alpha)(beta,gamma),
    // 1 as (alpha,beta)(gamma,delta). 0 otherwise.
    int pairing = 0;
};

// Classification by side equalities within tol, ties resolved in the order
// Isogram, Antiisogram, Deltoid, Antideltoid (pairing 0 before 1), Generic.
QuadClass classify_quad(const std::array<double, 4>& sides, double tol = 1e-9);

// Structure witnesses for the exotic family, verified over sampled states:
// the link of a2 is a Deltoid, the link of a1 is an Antideltoid, and the
// reflection coefficients nu1, nu2 relating the a3 and b3 sides come out
// (-1, +1). Families with |q1| = |q2| or |p1| = |p2| degenerate to Isogram
// or Antiisogram links and fail.
struct WitnessReport {
    bool pass = false;
    int nu1 = 0, nu2 = 0;  // 0 when indeterminate
    int states_checked = 0;
    std::vector<std::string> failures;
};

WitnessReport exotic_face_check(const ExoticParams& p, int samples, double tol = 1e-9);

}  // namespace exoflex
