#include "exoflex/volume.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>

namespace exoflex {

double diagonal_scale(int j, const ExoticParams& p) {
    if (j != 1 && j != 2) throw std::invalid_argument("diagonal index must be 1 or 2");
    const double q = (j == 1) ? p.q1 : p.q2;
    return 1.0 / std::sqrt(1.0 - q * q);
}

double diagonal_triangle_area(int j, const ExoticParams& p, double y) {
    const double r = diagonal_scale(j, p);
    return triangle_area(r * p.p1, r * p.p2, y);
}

VolumeClass closed_form_volume(const ExoticParams& p, const FlexState& s) {
    const double y = y_of_state(p, s);
    const double a1 = diagonal_triangle_area(1, p, y);
    const double a2 = diagonal_triangle_area(2, p, y);
    const double sgn_p2 = (p.p2 > 0.0) ? 1.0 : -1.0;
    const double v = -(s.delta1 * sgn_p2 * kPi / 2.0) * (s.eps1 * a1 - s.eps2 * a2);
    return make_volume_class(v);
}

namespace {

// Unit 4-vector from a deterministic gaussian stream; same generator idiom as
// the oracle blocks so apex choice is platform-stable.
Vec4 seeded_direction(std::mt19937_64& gen) {
    Vec4 x;
    for (int h = 0; h < 2; ++h) {
        const double u1 = (static_cast<double>(gen() >> 11) + 1.0) * (1.0 / 9007199254740992.0);
        const double u2 = (static_cast<double>(gen() >> 11) + 1.0) * (1.0 / 9007199254740992.0);
        const double r = std::sqrt(-2.0 * std::log(u1));
        x[2 * h] = r * std::cos(2.0 * kPi * u2);
        x[2 * h + 1] = r * std::sin(2.0 * kPi * u2);
    }
    return normalized(x);
}

}  // namespace

OracleEstimate decomposition_volume(const Octahedron& o, const OracleOptions& opts) {
    std::array<std::array<Vec4, 3>, 8> tri;
    for (int f = 0; f < 8; ++f) {
        const auto fv = face_vertices(f);
        tri[f] = {o.at(fv[0]), o.at(fv[1]), o.at(fv[2])};
    }

    // Apex clearly off every face plane keeps all eight tetrahedra
    // non-degenerate.
    std::mt19937_64 gen(splitmix64(opts.seed ^ 0xA5EEDAB1E0C7A3E5ull));
    Vec4 apex;
    bool found = false;
    for (int attempt = 0; attempt < 32 && !found; ++attempt) {
        apex = seeded_direction(gen);
        double worst = 1.0;
        for (const auto& t : tri)
            worst = std::min(worst, std::abs(det4(apex, t[0], t[1], t[2])));
        found = worst > 1e-3;
    }
    if (!found) throw std::runtime_error("no apex clear of all face planes");

    double sum = 0.0, var = 0.0;
    for (int f = 0; f < 8; ++f) {
        OracleOptions per = opts;
        per.seed = splitmix64(opts.seed + 1000003ull * static_cast<std::uint64_t>(f + 1));
        const OracleEstimate est =
            tetra_volume_oriented(apex, tri[f][0], tri[f][1], tri[f][2], per);
        sum += est.vol.lifted;
        var += est.stderr_est * est.stderr_est;
    }
    return {make_volume_class(sum), std::sqrt(var)};
}

OracleEstimate diagonal_decomposition_volume(const Octahedron& o, const OracleOptions& opts) {
    const Vec4 &a1 = o.at(va1), &a2 = o.at(va2), &a3 = o.at(va3);
    const Vec4 &b1 = o.at(vb1), &b2 = o.at(vb2), &b3 = o.at(vb3);
    const std::array<std::array<Vec4, 4>, 4> tetra = {{
        {b1, a1, a2, a3},
        {b1, a1, a2, b3},
        {b1, a1, b2, a3},
        {b1, a1, b2, b3},
    }};
    const double coeff[4] = {1.0, -1.0, -1.0, 1.0};

    double sum = 0.0, var = 0.0;
    for (int t = 0; t < 4; ++t) {
        OracleOptions per = opts;
        per.seed = splitmix64(opts.seed + 2000003ull * static_cast<std::uint64_t>(t + 1));
        const OracleEstimate est =
            tetra_volume_oriented(tetra[t][0], tetra[t][1], tetra[t][2], tetra[t][3], per);
        sum += coeff[t] * est.vol.lifted;
        var += est.stderr_est * est.stderr_est;
    }
    return {make_volume_class(sum), std::sqrt(var)};
}

double DerivativePoly::F(int j, double y) const {
    const auto& f = (j == 1) ? f1 : f2;
    return (f[2] * y + f[1]) * y + f[0];
}

double DerivativePoly::Q(double y) const {
    return (((c[4] * y + c[3]) * y + c[2]) * y + c[1]) * y + c[0];
}

double DerivativePoly::dA(int j, double y) const {
    const double r = (j == 1) ? r1 : r2;
    return (r * side_sum - y - 1.0) / ((y + 1.0) * std::sqrt(F(j, y)));
}

DerivativePoly derivative_poly(const ExoticParams& p) {
    DerivativePoly d;
    d.r1 = diagonal_scale(1, p);
    d.r2 = diagonal_scale(2, p);
    d.side_sum = p.p1 + p.p2;
    const double ss = p.p1 * p.p1 + p.p2 * p.p2;
    const double pp = p.p1 * p.p2;
    d.f1 = {1.0 - d.r1 * d.r1 * ss, 2.0 * d.r1 * d.r1 * pp, -1.0};
    d.f2 = {1.0 - d.r2 * d.r2 * ss, 2.0 * d.r2 * d.r2 * pp, -1.0};

    // (r_j(p1+p2) - y - 1)^2 = y^2 + 2(1 - s_j) y + (1 - s_j)^2, s_j = r_j(p1+p2).
    const double s1 = d.r1 * d.side_sum, s2 = d.r2 * d.side_sum;
    const std::array<double, 3> g1 = {(1.0 - s1) * (1.0 - s1), 2.0 * (1.0 - s1), 1.0};
    const std::array<double, 3> g2 = {(1.0 - s2) * (1.0 - s2), 2.0 * (1.0 - s2), 1.0};
    d.c = {};
    for (int i = 0; i < 3; ++i)
        for (int k = 0; k < 3; ++k) d.c[i + k] += g1[i] * d.f2[k] - g2[i] * d.f1[k];
    return d;
}

VolumeProfile volume_profile(const ExoticParams& p, Component c, int n) {
    const ComponentTrace trace = trace_component(p, c, n);
    VolumeProfile prof;
    prof.params = p;
    prof.component = c;
    prof.nodes = trace.nodes;
    prof.y.reserve(n);
    prof.area1.reserve(n);
    prof.area2.reserve(n);
    prof.lifted.reserve(n);
    for (int k = 0; k < n; ++k) {
        const FlexState& s = trace.nodes[k].state;
        const double y = y_of_state(p, s);
        prof.y.push_back(y);
        prof.area1.push_back(diagonal_triangle_area(1, p, y));
        prof.area2.push_back(diagonal_triangle_area(2, p, y));
        const double rep = closed_form_volume(p, s).representative;
        if (k == 0) {
            prof.lifted.push_back(rep);
        } else {
            const double prev = prof.lifted.back();
            prof.lifted.push_back(rep + kSphereVolume * std::round((prev - rep) / kSphereVolume));
        }
    }
    prof.closing_lifted =
        prof.lifted[0] +
        kSphereVolume * std::round((prof.lifted.back() - prof.lifted[0]) / kSphereVolume);
    const auto [mn, mx] = std::minmax_element(prof.lifted.begin(), prof.lifted.end());
    prof.vmin = *mn;
    prof.vmax = *mx;
    prof.spread = prof.vmax - prof.vmin;
    return prof;
}

double loop_increment(const VolumeProfile& prof) {
    return prof.closing_lifted - prof.lifted[0];
}

VolumeProfile variant_volume_profile(const ExoticParams& p, AntipodeMask mask,
                                     Component c, int n) {
    const VariantMap vm = normalize_variant(p, mask);
    const ComponentTrace trace = trace_component(p, c, n);
    VolumeProfile prof;
    prof.params = vm.params;
    prof.component = c;
    prof.nodes = trace.nodes;
    prof.y.reserve(n);
    prof.area1.reserve(n);
    prof.area2.reserve(n);
    prof.lifted.reserve(n);
    for (int k = 0; k < n; ++k) {
        const FlexState s = vm.map_state(trace.nodes[k].state);
        const double y = y_of_state(vm.params, s);
        prof.y.push_back(y);
        prof.area1.push_back(diagonal_triangle_area(1, vm.params, y));
        prof.area2.push_back(diagonal_triangle_area(2, vm.params, y));
        const double rep =
            make_volume_class(vm.orientation * closed_form_volume(vm.params, s).lifted)
                .representative;
        if (k == 0) {
            prof.lifted.push_back(rep);
        } else {
            const double prev = prof.lifted.back();
            prof.lifted.push_back(rep + kSphereVolume * std::round((prev - rep) / kSphereVolume));
        }
    }
    prof.closing_lifted =
        prof.lifted[0] +
        kSphereVolume * std::round((prof.lifted.back() - prof.lifted[0]) / kSphereVolume);
    const auto [mn, mx] = std::minmax_element(prof.lifted.begin(), prof.lifted.end());
    prof.vmin = *mn;
    prof.vmax = *mx;
    prof.spread = prof.vmax - prof.vmin;
    return prof;
}

SchlafliCheck schlafli_check(const ExoticParams& p, Component c, int n) {
    const VolumeProfile prof = volume_profile(p, c, n);
    std::vector<Octahedron> octs;
    octs.reserve(n);
    for (const TraceNode& node : prof.nodes) octs.push_back(build(p, node.state));
    const EdgeLengths len = edge_lengths(octs[0]);
    const auto es = edges();

    // Continuous dihedral branches along the loop, plus the wrap-around value.
    std::vector<std::array<double, 12>> phi(n + 1);
    for (int k = 0; k <= n; ++k) {
        const Octahedron& o = octs[k % n];
        for (int e = 0; e < 12; ++e) {
            const double raw = oriented_dihedral_angle(o, es[e].u, es[e].v);
            if (k == 0) {
                phi[k][e] = raw;
            } else {
                const double prev = phi[k - 1][e];
                phi[k][e] = raw + 2.0 * kPi * std::round((prev - raw) / (2.0 * kPi));
            }
        }
    }

    const double vol_loop = prof.closing_lifted - prof.lifted[0];
    auto lifted_at = [&](int k) {
        if (k < 0) return prof.lifted[k + n] - vol_loop;
        if (k >= n) return prof.lifted[k - n] + vol_loop;
        return prof.lifted[k];
    };
    auto phi_at = [&](int k, int e) {
        const double loop = phi[n][e] - phi[0][e];
        if (k < 0) return phi[k + n][e] - loop;
        if (k >= n) return phi[k - n][e] + loop;
        return phi[k][e];
    };

    double worst[2] = {0.0, 0.0};  // signs +1, -1
    for (int k = 0; k < n; ++k) {
        const double dv = (lifted_at(k + 1) - lifted_at(k - 1)) / 2.0;
        double rhs = 0.0;
        for (int e = 0; e < 12; ++e)
            rhs += len(es[e].u, es[e].v) * (phi_at(k + 1, e) - phi_at(k - 1, e)) / 2.0;
        rhs *= 0.5;
        worst[0] = std::max(worst[0], std::abs(dv - rhs));
        worst[1] = std::max(worst[1], std::abs(dv + rhs));
    }
    return (worst[0] <= worst[1]) ? SchlafliCheck{1, worst[0]} : SchlafliCheck{-1, worst[1]};
}

BellowsReport bellows_sweep(const ExoticParams& p, int n, double spread_threshold) {
    BellowsReport rep;
    rep.params = p;
    rep.samples = n;
    rep.spread_threshold = spread_threshold;
    rep.counterexample_confirmed = true;
    for (AntipodeMask m = 0; m < 64; ++m) {
        const VolumeProfile plus = variant_volume_profile(p, m, Component::plus, n);
        const VolumeProfile minus = variant_volume_profile(p, m, Component::minus, n);
        const VolumeProfile& worst = (plus.spread <= minus.spread) ? plus : minus;
        MaskSweepEntry e;
        e.spread = worst.spread;
        e.vmin = worst.vmin;
        e.vmax = worst.vmax;
        e.nonconstant = plus.spread > spread_threshold && minus.spread > spread_threshold;
        rep.entries[m] = e;
        if (!e.nonconstant) rep.counterexample_confirmed = false;
    }
    return rep;
}

}  // namespace exoflex
