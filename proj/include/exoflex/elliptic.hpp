#pragma once

#include <vector>

#include "exoflex/configspace.hpp"
#include "exoflex/octa.hpp"
#include "exoflex/sphere.hpp"

namespace exoflex {

// Complete elliptic integral of the first kind, K = pi / (2 AGM(1, k')).
// Requires 0 <= k < 1.
double elliptic_K(double k);

struct EllipticModulus {
    double k = 0.0;
    double k_prime = 1.0;
    double K = kPi / 2.0;  // quarter period
};

EllipticModulus make_modulus(double k);

struct JacobiValues {
    double sn = 0.0;
    double cn = 1.0;
    double dn = 1.0;
};

// Jacobi elliptic functions for real u and 0 <= k < 1, by the descending
// Landen (Bulirsch) recurrence. dn stays in [k', 1]; cn/sn sweeps all of
// R together with infinity over a real period.
JacobiValues jacobi(double u, double k);

enum class Kind { first, second, third };

const char* kind_name(Kind k);

// A face u1 u2 u3 (u_i from pair i) names its dihedral tangents by the
// opposite vertex: t1 at edge u2u3, t2 at u3u1, t3 at u1u2.
struct KindEvidence {
    Kind kind = Kind::first;
    bool t1_degenerate = false;  // edge u2u3 reaches a zero or straight dihedral
    bool t2_degenerate = false;  // edge u3u1 likewise
    double min_sin_t1 = 0.0;     // min |sin phi| over the traced component
    double min_sin_t2 = 0.0;
};

// Kind of the family with respect to a face: t1 degenerates iff the
// tetrahedron a1 b1 u2 u3 flattens somewhere along the flex (only possible
// when u2 = b2, at theta_min), t2 iff a2 b2 u1 u3 flattens (u1 = b1, at
// theta_max). Neither -> first, exactly one -> second, both -> third.
// A minimum of |sin phi| inside [degenerate_sin, 1e-4) is ambiguous and
// throws std::runtime_error.
KindEvidence classify_kind(const ExoticParams& p, int face, int n = 64,
                           double degenerate_sin = 1e-7);

// Half-angle tangents (t1, t2, t3) of a face at every node of a traced
// component.
std::vector<std::array<ProjectiveTangent, 3>> face_tangent_series(
    const ExoticParams& p, int face, Component c = Component::plus, int n = 64);

// Least-squares fit of the two-term amplitude relation t3 = a t1 + b / t1
// carried by every kind (with the minus sign absorbed into b), over the
// four variants {t3, 1/t3} x {t1, 1/t1}. The canonical t1 is the slot that
// stays bounded away from 0 and infinity; when slot 1 degenerates and slot 2
// does not, the indices 1 and 2 swap roles (an allowed relabeling of the
// amplitude forms). Rows are the pole-free projective form
// X3 X1 Y1 = a X1^2 Y3 + b Y1^2 Y3; residual is the largest absolute row
// violation of the winning variant.
struct StructuralFit {
    double a = 0.0, b = 0.0;
    double residual = 0.0;
    // Index into the tangent triple actually fitted as t1: 0, or 1 after the
    // role swap.
    int slot = 0;
    bool inverted_t1 = false;
    bool inverted_t3 = false;
    int sign_ab = 0;
    // min|t1| / max|t1| over the fitted slot; equals k' when that slot is
    // dn-type (both extremes are attained along a component). NaN when every
    // candidate slot degenerates.
    double k_prime_estimate = 0.0;
};

StructuralFit structural_fit(const std::vector<std::array<ProjectiveTangent, 3>>& series);

}  // namespace exoflex
