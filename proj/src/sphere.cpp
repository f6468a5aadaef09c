#include "exoflex/sphere.hpp"

#include <cmath>
#include <random>
#include <stdexcept>
#include <thread>
#include <vector>

namespace exoflex {

double clamped_acos(double x, double band) {
    if (x > 1.0) {
        if (x > 1.0 + band) throw std::domain_error("acos argument exceeds 1 beyond tolerance");
        x = 1.0;
    } else if (x < -1.0) {
        if (x < -1.0 - band) throw std::domain_error("acos argument below -1 beyond tolerance");
        x = -1.0;
    }
    return std::acos(x);
}

double clamped_sqrt(double x, double band) {
    if (x < 0.0) {
        if (x < -band) throw std::domain_error("sqrt argument negative beyond tolerance");
        x = 0.0;
    }
    return std::sqrt(x);
}

double dist(const Vec4& u, const Vec4& v) { return clamped_acos(dot(u, v)); }

double triangle_area(double c1, double c2, double c3) {
    const double s1 = (1.0 - c2 * c2) * (1.0 - c3 * c3);
    const double s2 = (1.0 - c3 * c3) * (1.0 - c1 * c1);
    const double s3 = (1.0 - c1 * c1) * (1.0 - c2 * c2);
    if (s1 < 1e-28 || s2 < 1e-28 || s3 < 1e-28)
        throw std::domain_error("triangle side of length 0 or pi");
    return clamped_acos((c1 - c2 * c3) / std::sqrt(s1)) +
           clamped_acos((c2 - c3 * c1) / std::sqrt(s2)) +
           clamped_acos((c3 - c1 * c2) / std::sqrt(s3)) - kPi;
}

double right_triangle_side(double alpha, double beta) {
    const double ca = std::cos(alpha), cb = std::cos(beta);
    const double den2 = 1.0 - ca * ca * cb * cb;
    if (den2 < 1e-28) throw std::domain_error("degenerate right triangle");
    return ca * std::sin(beta) / std::sqrt(den2);
}

VolumeClass make_volume_class(double lifted) {
    double rep = std::fmod(lifted, kSphereVolume);
    if (rep < 0.0) rep += kSphereVolume;
    if (rep >= kSphereVolume) rep = 0.0;  // guard against fmod rounding
    return {lifted, rep};
}

double volume_class_distance(double a, double b) {
    double d = std::fmod(std::abs(a - b), kSphereVolume);
    return std::min(d, kSphereVolume - d);
}

namespace {

// Orientation of the tangent frame (f1,f2) at p relative to the face whose
// positively oriented vertex triple is t: +1 if (p,f1,f2) defines the same
// orientation of the face's 3-span as (t0,t1,t2).
int frame_sign(const Vec4& p, const Vec4& f1, const Vec4& f2,
               const std::array<Vec4, 3>& t) {
    const Vec4 nu = cross4(t[0], t[1], t[2]);
    const double a = det4(p, f1, f2, nu);
    const double b = det4(t[0], t[1], t[2], nu);
    return (a * b > 0.0) ? 1 : -1;
}

}  // namespace

double oriented_dihedral_angle(const Vec4& u, const Vec4& v,
                               const std::array<Vec4, 2>& w,
                               const std::array<std::array<Vec4, 3>, 2>& tri,
                               double edge_param) {
    const Vec4 p = normalized(u * (1.0 - edge_param) + v * edge_param);
    Vec4 t = v - p * dot(v, p);
    const double tn = norm(t);
    if (tn < 1e-12) throw std::domain_error("degenerate edge");
    t = t * (1.0 / tn);

    // Inward unit tangents n_i orthogonal to the edge, and exterior normals m_i.
    Vec4 n[2], m[2];
    for (int i = 0; i < 2; ++i) {
        Vec4 ni = w[i] - p * dot(w[i], p) - t * dot(w[i], t);
        const double nn = norm(ni);
        if (nn < 1e-12) throw std::domain_error("degenerate face at edge");
        n[i] = ni * (1.0 / nn);
        Vec4 mi = normalized(cross4(p, t, n[i]));
        // m_i followed by a positive face frame must orient the tangent space
        // of the sphere positively (outward-normal-first convention).
        const int s = frame_sign(p, t, n[i], tri[i]);
        const double d = det4(p, mi, t, n[i]);
        if ((d > 0.0 ? 1 : -1) != s) mi = -mi;
        m[i] = mi;
    }

    // Positive rotation around the edge takes m_1 to n_1; in that sense
    // n_2 = cos(phi) n_1 - sin(phi) m_1.
    double phi = std::atan2(-dot(n[1], m[0]), dot(n[1], n[0]));
    if (phi < 0.0) phi += 2.0 * kPi;
    return phi;
}

ProjectiveTangent half_angle_tangent(double phi) {
    ProjectiveTangent t{std::sin(0.5 * phi), std::cos(0.5 * phi)};
    const double n = std::hypot(t.X, t.Y);
    t.X /= n;
    t.Y /= n;
    if (t.X < 0.0 || (t.X == 0.0 && t.Y < 0.0)) {
        t.X = -t.X;
        t.Y = -t.Y;
    }
    return t;
}

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ull;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
    return x ^ (x >> 31);
}

namespace {

constexpr std::int64_t kBlock = 65536;

// Gaussian 4-vectors, Box-Muller over a per-block mt19937_64 stream. The
// normal deviates are generated by a fixed algorithm (not
// std::normal_distribution) so streams are reproducible across platforms.
struct GaussianBlock {
    std::mt19937_64 gen;
    explicit GaussianBlock(std::uint64_t block_seed) : gen(block_seed) {}

    double uniform() {
        // in (0,1]; avoids log(0)
        return (static_cast<double>(gen() >> 11) + 1.0) * (1.0 / 9007199254740992.0);
    }

    Vec4 next() {
        Vec4 x;
        for (int h = 0; h < 2; ++h) {
            const double u1 = uniform(), u2 = uniform();
            const double r = std::sqrt(-2.0 * std::log(u1));
            x[2 * h] = r * std::cos(2.0 * kPi * u2);
            x[2 * h + 1] = r * std::sin(2.0 * kPi * u2);
        }
        return x;
    }
};

// Kronecker (generalized golden ratio) low-discrepancy stream mapped through
// Box-Muller; the seed enters as a Cranley-Patterson rotation.
struct KroneckerBlock {
    double alpha[4], shift[4];
    std::int64_t base;

    KroneckerBlock(std::uint64_t seed, std::int64_t first_index) : base(first_index) {
        // x^5 = x + 1 root
        double phi = 1.0;
        for (int i = 0; i < 64; ++i) phi = std::pow(1.0 + phi, 1.0 / 5.0);
        double a = 1.0;
        for (int i = 0; i < 4; ++i) {
            a /= phi;
            alpha[i] = a;
            shift[i] = (splitmix64(seed + i) >> 11) * (1.0 / 9007199254740992.0);
        }
    }

    Vec4 next() {
        const double n = static_cast<double>(++base);
        double u[4];
        for (int i = 0; i < 4; ++i) {
            double f = std::fmod(n * alpha[i] + shift[i], 1.0);
            u[i] = (f <= 0.0) ? 1e-12 : f;
        }
        Vec4 x;
        for (int h = 0; h < 2; ++h) {
            const double r = std::sqrt(-2.0 * std::log(u[2 * h]));
            x[2 * h] = r * std::cos(2.0 * kPi * u[2 * h + 1]);
            x[2 * h + 1] = r * std::sin(2.0 * kPi * u[2 * h + 1]);
        }
        return x;
    }
};

}  // namespace

OracleEstimate tetra_volume_oriented(const Vec4& c1, const Vec4& c2, const Vec4& c3,
                                     const Vec4& c4, const OracleOptions& opts) {
    const double d = det4(c1, c2, c3, c4);
    if (std::abs(d) < 1e-12) return {make_volume_class(0.0), 0.0};
    const double sign = (d > 0.0) ? 1.0 : -1.0;

    // Inverse of the vertex matrix: membership reduces to lambda = M^{-1} x >= 0.
    Vec4 inv_rows[4];
    {
        Vec4 e[4];
        for (int i = 0; i < 4; ++i) {
            Vec4 rhs{};
            rhs[i] = 1.0;
            if (!solve4(c1, c2, c3, c4, rhs, e[i]))
                return {make_volume_class(0.0), 0.0};
        }
        // e[i] is the i-th column of M^{-1}; transpose into rows.
        for (int r = 0; r < 4; ++r)
            for (int i = 0; i < 4; ++i) inv_rows[r][i] = e[i][r];
    }

    const std::int64_t n = opts.samples;
    const std::int64_t nblocks = (n + kBlock - 1) / kBlock;

    auto count_block = [&](std::int64_t b) -> std::int64_t {
        const std::int64_t lo = b * kBlock;
        const std::int64_t hi = std::min(n, lo + kBlock);
        std::int64_t inside = 0;
        auto test = [&](const Vec4& x) {
            for (int r = 0; r < 4; ++r) {
                double l = inv_rows[r][0] * x[0] + inv_rows[r][1] * x[1] +
                           inv_rows[r][2] * x[2] + inv_rows[r][3] * x[3];
                if (l < -1e-12) return false;
            }
            return true;
        };
        if (opts.low_discrepancy) {
            KroneckerBlock stream(opts.seed, lo);
            for (std::int64_t i = lo; i < hi; ++i)
                if (test(stream.next())) ++inside;
        } else {
            GaussianBlock stream(splitmix64(opts.seed ^ splitmix64(static_cast<std::uint64_t>(b))));
            for (std::int64_t i = lo; i < hi; ++i)
                if (test(stream.next())) ++inside;
        }
        return inside;
    };

    std::int64_t inside = 0;
    int nthreads = opts.threads > 0 ? opts.threads
                                    : static_cast<int>(std::thread::hardware_concurrency());
    if (nthreads < 1) nthreads = 1;
    if (nthreads == 1 || nblocks == 1) {
        for (std::int64_t b = 0; b < nblocks; ++b) inside += count_block(b);
    } else {
        std::vector<std::int64_t> partial(static_cast<size_t>(nthreads), 0);
        std::vector<std::thread> workers;
        for (int t = 0; t < nthreads; ++t)
            workers.emplace_back([&, t] {
                std::int64_t acc = 0;
                for (std::int64_t b = t; b < nblocks; b += nthreads) acc += count_block(b);
                partial[static_cast<size_t>(t)] = acc;
            });
        for (auto& w : workers) w.join();
        for (auto v : partial) inside += v;  // integer sum: order-independent
    }

    const double f = static_cast<double>(inside) / static_cast<double>(n);
    const double vol = f * kSphereVolume;
    const double se = kSphereVolume * std::sqrt(f * (1.0 - f) / static_cast<double>(n));
    return {make_volume_class(sign * vol), se};
}

}  // namespace exoflex
