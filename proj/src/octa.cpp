#include "exoflex/octa.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace exoflex {

namespace {

const char* const kVertexNames[6] = {"a1", "a2", "a3", "b1", "b2", "b3"};

}  // namespace

const char* vertex_name(VertexId v) { return kVertexNames[static_cast<int>(v)]; }

VertexId vertex_from_name(const std::string& name) {
    for (int v = 0; v < 6; ++v)
        if (name == kVertexNames[v]) return static_cast<VertexId>(v);
    throw std::invalid_argument("unknown vertex name: " + name);
}

const std::array<Edge, 12>& edges() {
    static const std::array<Edge, 12> table = [] {
        std::array<Edge, 12> e{};
        int n = 0;
        for (int u = 0; u < 6; ++u)
            for (int v = u + 1; v < 6; ++v)
                if (pair_index(static_cast<VertexId>(u)) != pair_index(static_cast<VertexId>(v)))
                    e[n++] = {static_cast<VertexId>(u), static_cast<VertexId>(v)};
        return e;
    }();
    return table;
}

int edge_index(VertexId u, VertexId v) {
    if (u > v) std::swap(u, v);
    const auto& e = edges();
    for (int i = 0; i < 12; ++i)
        if (e[i].u == u && e[i].v == v) return i;
    throw std::invalid_argument(std::string("not an edge: ") + vertex_name(u) + vertex_name(v));
}

std::array<VertexId, 3> face_vertices(int face) {
    std::array<VertexId, 3> u;
    for (int i = 0; i < 3; ++i)
        u[i] = static_cast<VertexId>(((face >> i) & 1) ? i + 3 : i);
    if (std::popcount(static_cast<unsigned>(face)) % 2 == 1) std::swap(u[1], u[2]);
    return u;
}

std::string face_name(int face) {
    std::string s;
    for (int i = 0; i < 3; ++i)
        s += kVertexNames[((face >> i) & 1) ? i + 3 : i];
    return s;
}

int face_from_name(const std::string& name) {
    if (name.size() != 6) throw std::invalid_argument("bad face name: " + name);
    int face = 0;
    for (int i = 0; i < 3; ++i) {
        VertexId v = vertex_from_name(name.substr(2 * static_cast<size_t>(i), 2));
        if (pair_index(v) != i) throw std::invalid_argument("bad face name: " + name);
        if (is_b(v)) face |= 1 << i;
    }
    return face;
}

std::array<int, 2> faces_at_edge(VertexId u, VertexId v) {
    const int pu = pair_index(u), pv = pair_index(v);
    if (pu == pv) throw std::invalid_argument("diagonal pair has no adjacent faces");
    const int base = (is_b(u) << pu) | (is_b(v) << pv);
    const int k = 3 - pu - pv;
    return {base, base | (1 << k)};
}

std::array<VertexId, 4> link_cycle(VertexId v) {
    const int i = pair_index(v);
    const int j = (i == 0) ? 1 : 0;
    const int k = (i == 2) ? 1 : 2;
    return {static_cast<VertexId>(j), static_cast<VertexId>(k),
            static_cast<VertexId>(j + 3), static_cast<VertexId>(k + 3)};
}

std::string mask_name(AntipodeMask m) {
    std::string s = "{";
    for (int v = 0; v < 6; ++v)
        if (mask_contains(m, static_cast<VertexId>(v))) {
            if (s.size() > 1) s += ',';
            s += kVertexNames[v];
        }
    return s + "}";
}

AntipodeMask mask_from_name(const std::string& name) {
    if (name.size() < 2 || name.front() != '{' || name.back() != '}')
        throw std::invalid_argument("bad mask: " + name);
    AntipodeMask m = 0;
    std::stringstream ss(name.substr(1, name.size() - 2));
    std::string item;
    while (std::getline(ss, item, ','))
        if (!item.empty()) m |= 1u << vertex_from_name(item);
    return m;
}

ValidationReport validate_params(const ExoticParams& p) {
    ValidationReport r;
    auto fail = [&](const std::string& msg) {
        r.ok = false;
        r.violations.push_back(msg);
    };
    for (auto [v, n] : {std::pair{p.p1, "p1"}, {p.p2, "p2"}, {p.q1, "q1"}, {p.q2, "q2"}})
        if (!(std::abs(v) < 1.0)) fail(std::string("|") + n + "|<1");
    if (!(std::abs(p.p1) < std::abs(p.p2))) fail("|p1|<|p2|");
    if (!(std::abs(p.q1) < std::abs(p.q2))) fail("|q1|<|q2|");
    if (!(p.p2 * p.p2 + p.q2 * p.q2 < 1.0)) fail("p2^2+q2^2<1");
    return r;
}

std::pair<double, double> theta_bounds(const ExoticParams& p) {
    return {std::asin(std::abs(p.q2)), std::acos(std::abs(p.p2))};
}

Octahedron build(const ExoticParams& p, const FlexState& s, bool checked) {
    constexpr double band = 1e-9;
    if (checked) {
        ValidationReport r = validate_params(p);
        if (!r.ok) {
            std::string msg = "invalid params:";
            for (const auto& v : r.violations) msg += " " + v;
            throw std::invalid_argument(msg);
        }
        auto [tmin, tmax] = theta_bounds(p);
        if (s.theta < tmin - band || s.theta > tmax + band)
            throw std::invalid_argument("theta outside flexion bounds");
    }
    const double ct = std::cos(s.theta), st = std::sin(s.theta);
    auto circle1 = [&](double pp, int sgn) {
        const double x = pp / ct;
        return Vec4{{x, sgn * clamped_sqrt(1.0 - x * x, band), 0.0, 0.0}};
    };
    auto circle2 = [&](double qq, int sgn) {
        const double x = qq / st;
        return Vec4{{0.0, 0.0, x, sgn * clamped_sqrt(1.0 - x * x, band)}};
    };
    Octahedron o;
    o.vertex[va1] = circle1(p.p1, s.delta1);
    o.vertex[vb1] = circle1(p.p2, s.delta2);
    o.vertex[va2] = circle2(p.q1, s.eps1);
    o.vertex[vb2] = circle2(p.q2, s.eps2);
    o.vertex[va3] = {{ct, 0.0, st, 0.0}};
    o.vertex[vb3] = {{ct, 0.0, -st, 0.0}};
    return o;
}

EdgeLengths edge_lengths(const Octahedron& o) {
    EdgeLengths l;
    const auto& e = edges();
    for (int i = 0; i < 12; ++i) l.len[i] = dist(o.at(e[i].u), o.at(e[i].v));
    return l;
}

Octahedron antipode_variant(const Octahedron& o, AntipodeMask m) {
    Octahedron r = o;
    for (int v = 0; v < 6; ++v)
        if (mask_contains(m, static_cast<VertexId>(v))) r.vertex[v] = -r.vertex[v];
    return r;
}

double oriented_dihedral_angle(const Octahedron& o, VertexId u, VertexId v) {
    const auto f = faces_at_edge(u, v);
    const int k = 3 - pair_index(u) - pair_index(v);
    std::array<Vec4, 2> w = {o.at(static_cast<VertexId>(k)), o.at(static_cast<VertexId>(k + 3))};
    std::array<std::array<Vec4, 3>, 2> tri;
    for (int i = 0; i < 2; ++i) {
        const auto fv = face_vertices(f[i]);
        tri[i] = {o.at(fv[0]), o.at(fv[1]), o.at(fv[2])};
    }
    return oriented_dihedral_angle(o.at(u), o.at(v), w, tri);
}

FlexState VariantMap::map_state(const FlexState& s) const {
    FlexState r;
    if (!swapped_roles) {
        r.theta = s.theta;
        r.delta1 = sign_flip[0] * s.delta1;
        r.delta2 = sign_flip[1] * s.delta2;
        r.eps1 = sign_flip[2] * s.eps1;
        r.eps2 = sign_flip[3] * s.eps2;
    } else {
        r.theta = 0.5 * kPi - s.theta;
        r.delta1 = sign_flip[0] * s.eps1;
        r.delta2 = sign_flip[1] * s.eps2;
        r.eps1 = sign_flip[2] * s.delta1;
        r.eps2 = sign_flip[3] * s.delta2;
    }
    return r;
}

VariantMap normalize_variant(const ExoticParams& p, AntipodeMask m) {
    const double f0 = mask_contains(m, va1) ? -1.0 : 1.0;
    const double f1 = mask_contains(m, vb1) ? -1.0 : 1.0;
    const double f2 = mask_contains(m, va2) ? -1.0 : 1.0;
    const double f3 = mask_contains(m, vb2) ? -1.0 : 1.0;
    const bool ma3 = mask_contains(m, va3), mb3 = mask_contains(m, vb3);
    // Masking a3 negates all four cosines p_i = <u_i, a3> on top of the other
    // rules; masking exactly one of a3, b3 swaps the roles of the 1 and 2
    // pairs (theta -> pi/2 - theta) and reverses the anchor-face orientation.
    const double g = ma3 ? -1.0 : 1.0;
    VariantMap vm;
    if (ma3 == mb3) {
        vm.params = {g * f0 * p.p1, g * f1 * p.p2, g * f2 * p.q1, g * f3 * p.q2};
        vm.swapped_roles = false;
        vm.orientation = 1;
        vm.sign_flip = {static_cast<int>(f0), static_cast<int>(f1),
                        static_cast<int>(f2), static_cast<int>(f3)};
        vm.relabel = {va1, va2, va3, vb1, vb2, vb3};
    } else {
        vm.params = {g * f2 * p.q1, g * f3 * p.q2, g * f0 * p.p1, g * f1 * p.p2};
        vm.swapped_roles = true;
        vm.orientation = -1;
        vm.sign_flip = {static_cast<int>(f2), static_cast<int>(f3),
                        static_cast<int>(f0), static_cast<int>(f1)};
        vm.relabel = {va2, va1, va3, vb2, vb1, vb3};
    }
    return vm;
}

}  // namespace exoflex
