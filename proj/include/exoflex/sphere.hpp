#pragma once

#include <cstdint>
#include <utility>

#include "exoflex/vec4.hpp"

namespace exoflex {

inline constexpr double kPi = 3.14159265358979323846;
// Volume of the unit 3-sphere; oriented volumes are classes modulo this.
inline constexpr double kSphereVolume = 2.0 * kPi * kPi;

// Clamps x into [-1,1] if it overshoots by at most `band`; throws
// std::domain_error beyond that. Curve endpoints sit exactly on branch
// points of the square roots, so small overshoots are expected there.
double clamped_acos(double x, double band = 1e-9);

// Clamps x into [0,inf) if it undershoots by at most `band`; throws beyond.
double clamped_sqrt(double x, double band = 1e-9);

// Spherical distance arccos<u,v>, in [0, pi]. Both arguments must be unit.
double dist(const Vec4& u, const Vec4& v);

// Area of the spherical triangle whose side-length cosines are c1, c2, c3:
// the sum of the three angles recovered by the law of cosines, minus pi.
// Throws std::domain_error if a side has length 0 or pi (denominator underflow).
double triangle_area(double c1, double c2, double c3);

// Spherical triangle whose base is a quarter circle: given the two base
// angles alpha and beta, returns cos of the side opposite alpha (the leg
// through the beta vertex).
double right_triangle_side(double alpha, double beta);

// A real volume together with its canonical representative modulo 2*pi^2.
struct VolumeClass {
    double lifted = 0.0;
    double representative = 0.0;  // in [0, 2*pi^2)
};

VolumeClass make_volume_class(double lifted);

// Distance between two volume classes in the circle R / (2*pi^2)Z.
double volume_class_distance(double a, double b);

// Oriented dihedral angle in [0, 2*pi) at the edge uv shared by the faces
// uv w1 and uv w2 of an oriented surface. Face i is passed as its third
// vertex w[i] together with the positively oriented vertex triple tri[i]
// (the face's boundary orientation induced by the surface orientation).
// The convention: exterior normals m_i fix a positive rotation sense around
// the edge, and the angle is measured from the inward face tangent n_1 to n_2
// in that sense. The result is independent of the evaluation point on the
// edge and of which adjacent face is labeled 1.
// `edge_param` in (0,1) selects the evaluation point normalize((1-s)u + s v).
double oriented_dihedral_angle(const Vec4& u, const Vec4& v,
                               const std::array<Vec4, 2>& w,
                               const std::array<std::array<Vec4, 3>, 2>& tri,
                               double edge_param = 0.5);

// Half-angle tangent of an angle phi in [0, 2*pi) as a projective pair
// (X : Y) = (sin(phi/2) : cos(phi/2)), normalized to X^2 + Y^2 = 1, X >= 0.
struct ProjectiveTangent {
    double X = 0.0;
    double Y = 1.0;
};

ProjectiveTangent half_angle_tangent(double phi);

// SplitMix64 finalizer; used to derive independent sub-stream seeds from a
// single user seed.
std::uint64_t splitmix64(std::uint64_t x);

// Options for the sampling oracle.
struct OracleOptions {
    std::uint64_t seed = 42;
    std::int64_t samples = 10'000'000;
    bool low_discrepancy = false;  // Kronecker sequence instead of pseudorandom points
    int threads = 0;               // 0 = hardware concurrency
};

struct OracleEstimate {
    VolumeClass vol;
    double stderr_est = 0.0;
};

// Signed volume of the spherical tetrahedron with vertices c1..c4: the
// fraction of directions lying in the cone {sum l_i c_i : l_i >= 0} times
// 2*pi^2, multiplied by sgn det(c1,c2,c3,c4). A numerically dependent
// quadruple returns 0 with a zero error bar. The point stream is partitioned
// into fixed blocks keyed by (seed, block index), so parallel and serial
// runs produce bit-identical counts.
OracleEstimate tetra_volume_oriented(const Vec4& c1, const Vec4& c2, const Vec4& c3,
                                     const Vec4& c4, const OracleOptions& opts = {});

}  // namespace exoflex
