#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "exoflex/sphere.hpp"
#include "exoflex/vec4.hpp"

namespace exoflex {

// Vertex labels. {a_i, b_i} are the three diagonal pairs: no edge joins them.
enum VertexId : int { va1 = 0, va2 = 1, va3 = 2, vb1 = 3, vb2 = 4, vb3 = 5 };

constexpr VertexId partner(VertexId v) { return static_cast<VertexId>((v + 3) % 6); }
constexpr int pair_index(VertexId v) { return v % 3; }
constexpr bool is_b(VertexId v) { return v >= 3; }

const char* vertex_name(VertexId v);
VertexId vertex_from_name(const std::string& name);  // throws std::invalid_argument

struct Edge {
    VertexId u, v;  // u < v in the static table; never a diagonal pair
};

// The 12 edges, ordered by (u, v) lexicographically.
const std::array<Edge, 12>& edges();
int edge_index(VertexId u, VertexId v);  // throws std::invalid_argument on a diagonal

// Faces are indexed 0..7: bit i of the index picks b over a in pair i, so the
// face contains u_i = (face >> i) & 1 ? b_i : a_i. The returned triple is the
// positively oriented boundary order: (u1,u2,u3) when the number of b's is
// even, (u1,u3,u2) when odd. This is the unique consistent orientation of the
// octahedral surface with face a1a2a3 positively ordered as written.
std::array<VertexId, 3> face_vertices(int face);

// Unoriented members in pair order, e.g. "b1a2a3".
std::string face_name(int face);
int face_from_name(const std::string& name);  // throws std::invalid_argument

// The two faces adjacent to edge (u,v): third vertex a_k first, b_k second.
std::array<int, 2> faces_at_edge(VertexId u, VertexId v);

// Link cycle of v: the four neighbors (a_j, a_k, b_j, b_k), j < k, the pairs
// other than v's own. Consecutive cycle members span a face with v; opposite
// ones are diagonal pairs.
std::array<VertexId, 4> link_cycle(VertexId v);

// Edge-length cosines defining the exotic family: p_i = <u, a3> for
// u = a1,b1,a2,b2 respectively. Canonical convention: |p1|<|p2|, |q1|<|q2|.
struct ExoticParams {
    double p1 = 0.0, p2 = 0.0, q1 = 0.0, q2 = 0.0;
};

// One position on the configuration curve: the flexion parameter theta and
// the four branch signs of the square roots.
struct FlexState {
    double theta = 0.0;
    int delta1 = 1, delta2 = 1, eps1 = 1, eps2 = 1;
};

struct Octahedron {
    std::array<Vec4, 6> vertex;  // indexed by VertexId

    const Vec4& at(VertexId v) const { return vertex[static_cast<int>(v)]; }
};

struct EdgeLengths {
    std::array<double, 12> len{};  // indexed like edges()

    double operator()(VertexId u, VertexId v) const { return len[edge_index(u, v)]; }
};

// Bit v set means vertex v is replaced by its antipode. Values 0..63.
using AntipodeMask = unsigned;

constexpr bool mask_contains(AntipodeMask m, VertexId v) { return (m >> v) & 1u; }
std::string mask_name(AntipodeMask m);  // "{}", "{a1,b3}", ...
AntipodeMask mask_from_name(const std::string& name);  // throws std::invalid_argument

struct ValidationReport {
    bool ok = true;
    std::vector<std::string> violations;
};

// Checks the family constraints: |p1|<|p2|, |q1|<|q2|, p2^2+q2^2<1, and all
// four cosines in (-1,1). Returns the failed inequalities by name.
ValidationReport validate_params(const ExoticParams& p);

// (arcsin|q2|, arccos|p2|); the flexion range of theta. Nonempty for valid params.
std::pair<double, double> theta_bounds(const ExoticParams& p);

// Vertex positions of the family member at state s:
//   a1 = (p1/cos t, delta1*sqrt(1-p1^2/cos^2 t), 0, 0)   b1 likewise with (p2, delta2)
//   a2 = (0, 0, q1/sin t, eps1*sqrt(1-q1^2/sin^2 t))     b2 likewise with (q2, eps2)
//   a3 = (cos t, 0, sin t, 0)                            b3 = (cos t, 0, -sin t, 0)
// With `checked` (the default) the params must validate and theta must lie in
// bounds (within the clamp band); throws std::invalid_argument otherwise.
Octahedron build(const ExoticParams& p, const FlexState& s, bool checked = true);

EdgeLengths edge_lengths(const Octahedron& o);

// Negates the masked vertices. Combinatorics and labels are unchanged.
Octahedron antipode_variant(const Octahedron& o, AntipodeMask m);

// Oriented dihedral angle of o at edge (u,v), using the face orientations
// of face_vertices. In [0, 2*pi).
double oriented_dihedral_angle(const Octahedron& o, VertexId u, VertexId v);

// Description of an antipode variant as a member of the exotic family again:
// a rotation of S^3 carries antipode_variant(build(p,s), mask) onto
// build(params, map_state(s)) vertex by vertex under `relabel`. `orientation`
// is the induced sign on oriented volume: the anchor face a1a2a3 keeps its
// orientation under the relabeling exactly when the 1 and 2 pairs keep their
// roles (swapped_roles == false).
struct VariantMap {
    ExoticParams params;
    bool swapped_roles = false;        // pairs 1 and 2 exchange roles (a3 or b3 masked)
    int orientation = 1;               // +1 or -1
    std::array<int, 4> sign_flip{1, 1, 1, 1};  // per output sign slot, see map_state
    std::array<VertexId, 6> relabel{};         // variant label -> family label

    // Maps a state of the base family to the corresponding state of `params`:
    // unswapped (theta, f0*d1, f1*d2, f2*e1, f3*e2),
    // swapped   (pi/2 - theta, f0*e1, f1*e2, f2*d1, f3*d2).
    FlexState map_state(const FlexState& s) const;
};

VariantMap normalize_variant(const ExoticParams& p, AntipodeMask m);

}  // namespace exoflex
