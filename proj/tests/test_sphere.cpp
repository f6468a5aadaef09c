#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <set>
#include <stdexcept>

#include "exoflex/sphere.hpp"
#include "exoflex/vec4.hpp"

using namespace exoflex;

namespace {

const Vec4 e1{{1, 0, 0, 0}};
const Vec4 e2{{0, 1, 0, 0}};
const Vec4 e3{{0, 0, 1, 0}};
const Vec4 e4{{0, 0, 0, 1}};

}  // namespace

TEST_CASE("clamped_acos passes through, clamps inside the band, throws beyond") {
    CHECK(clamped_acos(0.5) == doctest::Approx(std::acos(0.5)).epsilon(1e-15));
    CHECK(clamped_acos(1.0) == 0.0);
    CHECK(clamped_acos(-1.0) == doctest::Approx(kPi).epsilon(1e-15));
    CHECK(clamped_acos(1.0 + 1e-10) == 0.0);
    CHECK(clamped_acos(-1.0 - 1e-10) == doctest::Approx(kPi).epsilon(1e-15));
    CHECK_THROWS_AS(clamped_acos(1.0 + 1e-8), std::domain_error);
    CHECK_THROWS_AS(clamped_acos(-1.0 - 1e-8), std::domain_error);
    CHECK(clamped_acos(1.0 + 1e-8, 1e-7) == 0.0);
    CHECK_THROWS_AS(clamped_acos(1.0 + 1e-8, 1e-9), std::domain_error);
}

TEST_CASE("clamped_sqrt passes through, clamps inside the band, throws beyond") {
    CHECK(clamped_sqrt(2.0) == doctest::Approx(std::sqrt(2.0)).epsilon(1e-15));
    CHECK(clamped_sqrt(0.0) == 0.0);
    CHECK(clamped_sqrt(-1e-10) == 0.0);
    CHECK_THROWS_AS(clamped_sqrt(-1e-8), std::domain_error);
    CHECK(clamped_sqrt(-1e-8, 1e-7) == 0.0);
}

TEST_CASE("dist measures great-circle distance") {
    CHECK(dist(e1, e1) == doctest::Approx(0.0).epsilon(1e-15));
    CHECK(dist(e1, e2) == doctest::Approx(kPi / 2).epsilon(1e-15));
    CHECK(dist(e1, -e1) == doctest::Approx(kPi).epsilon(1e-15));
    const Vec4 u = normalized(Vec4{{1, 1, 0, 0}});
    CHECK(dist(e1, u) == doctest::Approx(kPi / 4).epsilon(1e-12));
    CHECK(dist(u, e1) == doctest::Approx(dist(e1, u)).epsilon(1e-15));
}

TEST_CASE("triangle_area matches the angle-excess of known triangles") {
    // Equilateral with side cosines 1/2: each angle has cosine c/(1+c) = 1/3.
    CHECK(triangle_area(0.5, 0.5, 0.5) ==
          doctest::Approx(3.0 * std::acos(1.0 / 3.0) - kPi).epsilon(1e-13));
    // Octant triangle: three right angles.
    CHECK(triangle_area(0.0, 0.0, 0.0) == doctest::Approx(kPi / 2).epsilon(1e-13));
    // Symmetric in its arguments.
    CHECK(triangle_area(0.2, 0.5, 0.6) ==
          doctest::Approx(triangle_area(0.6, 0.2, 0.5)).epsilon(1e-13));
    // Tiny triangles have near-zero excess.
    CHECK(triangle_area(0.9999, 0.9999, 0.99999) < 1e-3);
    CHECK(triangle_area(0.9999, 0.9999, 0.99999) > 0.0);
}

TEST_CASE("triangle_area rejects sides of length 0 or pi") {
    CHECK_THROWS_AS(triangle_area(1.0, 0.5, 0.5), std::domain_error);
    CHECK_THROWS_AS(triangle_area(0.5, -1.0, 0.5), std::domain_error);
    CHECK_THROWS_AS(triangle_area(0.5, 0.5, 1.0), std::domain_error);
}

TEST_CASE("right_triangle_side reproduces a concrete quadrantal triangle") {
    // Triangle A=e1, B=e2, C as below: the side AB is a quarter circle.
    const double c1 = 0.4, c2 = 0.5;
    const double c3 = std::sqrt(1.0 - c1 * c1 - c2 * c2);
    const Vec4 C{{c1, c2, c3, 0}};
    CHECK(dist(e1, e2) == doctest::Approx(kPi / 2).epsilon(1e-15));
    // Base angles at A and B from the tangent directions along the sides.
    const double alpha = std::acos(c2 / std::sqrt(c2 * c2 + c3 * c3));
    const double beta = std::acos(c1 / std::sqrt(c1 * c1 + c3 * c3));
    // The function returns the cosine of the side opposite the first angle.
    CHECK(right_triangle_side(alpha, beta) == doctest::Approx(c2).epsilon(1e-12));
    CHECK(right_triangle_side(beta, alpha) == doctest::Approx(c1).epsilon(1e-12));
    CHECK(std::cos(dist(C, e2)) == doctest::Approx(c2).epsilon(1e-12));
    CHECK(std::cos(dist(C, e1)) == doctest::Approx(c1).epsilon(1e-12));
}

TEST_CASE("right_triangle_side rejects the degenerate angle pair") {
    CHECK_THROWS_AS(right_triangle_side(0.0, 0.0), std::domain_error);
}

TEST_CASE("make_volume_class reduces to [0, 2 pi^2)") {
    CHECK(make_volume_class(0.0).representative == 0.0);
    CHECK(make_volume_class(1.0).representative == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(make_volume_class(kSphereVolume + 1.0).representative ==
          doctest::Approx(1.0).epsilon(1e-12));
    CHECK(make_volume_class(-1.0).representative ==
          doctest::Approx(kSphereVolume - 1.0).epsilon(1e-12));
    CHECK(make_volume_class(kSphereVolume).representative == doctest::Approx(0.0));
    CHECK(make_volume_class(-3.0 * kSphereVolume - 2.0).representative ==
          doctest::Approx(kSphereVolume - 2.0).epsilon(1e-12));
    for (double lifted : {-100.0, -19.7, 0.0, 5.0, 19.74, 123.4}) {
        const VolumeClass vc = make_volume_class(lifted);
        CHECK(vc.lifted == lifted);
        CHECK(vc.representative >= 0.0);
        CHECK(vc.representative < kSphereVolume);
        // Difference is an exact multiple of the sphere volume.
        const double k = std::round((lifted - vc.representative) / kSphereVolume);
        CHECK(std::abs(lifted - vc.representative - k * kSphereVolume) < 1e-12);
    }
}

TEST_CASE("volume_class_distance is the circle metric modulo 2 pi^2") {
    CHECK(volume_class_distance(0.0, 0.0) == 0.0);
    CHECK(volume_class_distance(1.0, 3.5) == doctest::Approx(2.5).epsilon(1e-15));
    CHECK(volume_class_distance(0.5, kSphereVolume - 0.5) ==
          doctest::Approx(1.0).epsilon(1e-12));
    CHECK(volume_class_distance(0.0, kSphereVolume / 2) ==
          doctest::Approx(kSphereVolume / 2).epsilon(1e-15));
    CHECK(volume_class_distance(2.0 + 5.0 * kSphereVolume, 3.0) ==
          doctest::Approx(1.0).epsilon(1e-9));
    CHECK(volume_class_distance(3.0, 2.0) == volume_class_distance(2.0, 3.0));
    // Never exceeds half the circle.
    for (double a : {0.1, 7.3, 19.0})
        for (double b : {0.2, 9.9, 15.5})
            CHECK(volume_class_distance(a, b) <= kSphereVolume / 2 + 1e-12);
}

TEST_CASE("half_angle_tangent is the normalized (sin, cos) of phi/2 with X >= 0") {
    const ProjectiveTangent t0 = half_angle_tangent(0.0);
    CHECK(t0.X == doctest::Approx(0.0));
    CHECK(t0.Y == doctest::Approx(1.0));
    const ProjectiveTangent tp = half_angle_tangent(kPi);
    CHECK(tp.X == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(std::abs(tp.Y) < 1e-15);
    const ProjectiveTangent th = half_angle_tangent(kPi / 2);
    CHECK(th.X == doctest::Approx(std::sqrt(0.5)).epsilon(1e-15));
    CHECK(th.Y == doctest::Approx(std::sqrt(0.5)).epsilon(1e-15));
    const ProjectiveTangent t3 = half_angle_tangent(3 * kPi / 2);
    CHECK(t3.X == doctest::Approx(std::sqrt(0.5)).epsilon(1e-15));
    CHECK(t3.Y == doctest::Approx(-std::sqrt(0.5)).epsilon(1e-15));
    for (double phi : {0.3, 1.7, kPi - 1e-6, kPi + 1e-6, 4.0, 6.28}) {
        const ProjectiveTangent t = half_angle_tangent(phi);
        CHECK(t.X * t.X + t.Y * t.Y == doctest::Approx(1.0).epsilon(1e-13));
        CHECK(t.X >= 0.0);
        // Recovers phi in [0, 2 pi): phi = 2 atan2(X, Y).
        double rec = 2.0 * std::atan2(t.X, t.Y);
        if (rec < 0) rec += 2 * kPi;
        CHECK(rec == doctest::Approx(phi).epsilon(1e-12));
    }
}

TEST_CASE("splitmix64 is a deterministic injection on small inputs") {
    CHECK(splitmix64(42) == splitmix64(42));
    std::set<std::uint64_t> seen;
    for (std::uint64_t i = 0; i < 256; ++i) seen.insert(splitmix64(i));
    CHECK(seen.size() == 256);
    CHECK(splitmix64(0) != 0);
}

TEST_CASE("tetra oracle: orthant cone occupies 1/16 of the sphere") {
    OracleOptions opts;
    opts.samples = 2'000'000;
    const OracleEstimate est = tetra_volume_oriented(e1, e2, e3, e4, opts);
    const double expect = kSphereVolume / 16.0;  // pi^2 / 8
    CHECK(est.stderr_est > 0.0);
    CHECK(est.stderr_est < 0.02);
    CHECK(std::abs(est.vol.lifted - expect) < 4.0 * est.stderr_est);
    CHECK(est.vol.representative == doctest::Approx(est.vol.lifted).epsilon(1e-15));
}

TEST_CASE("tetra oracle: swapping two vertices flips the sign") {
    OracleOptions opts;
    opts.samples = 500'000;
    const OracleEstimate a = tetra_volume_oriented(e1, e2, e3, e4, opts);
    const OracleEstimate b = tetra_volume_oriented(e2, e1, e3, e4, opts);
    CHECK(a.vol.lifted > 0.0);
    CHECK(b.vol.lifted < 0.0);
    CHECK(std::abs(a.vol.lifted + b.vol.lifted) < 8.0 * a.stderr_est);
}

TEST_CASE("tetra oracle: a dependent quadruple reports exactly zero") {
    const Vec4 mid = normalized(e1 + e2);
    const OracleEstimate est = tetra_volume_oriented(e1, e2, mid, e4);
    CHECK(est.vol.lifted == 0.0);
    CHECK(est.stderr_est == 0.0);
}

TEST_CASE("tetra oracle: results do not depend on the thread count") {
    OracleOptions one, two;
    one.samples = two.samples = 300'000;
    one.threads = 1;
    two.threads = 2;
    const OracleEstimate a = tetra_volume_oriented(e1, e2, e3, e4, one);
    const OracleEstimate b = tetra_volume_oriented(e1, e2, e3, e4, two);
    CHECK(a.vol.lifted == b.vol.lifted);
    CHECK(a.stderr_est == b.stderr_est);
}

TEST_CASE("tetra oracle: fixed seed reproduces, a new seed perturbs") {
    OracleOptions opts;
    opts.samples = 200'000;
    const OracleEstimate a = tetra_volume_oriented(e1, e2, e3, e4, opts);
    const OracleEstimate b = tetra_volume_oriented(e1, e2, e3, e4, opts);
    CHECK(a.vol.lifted == b.vol.lifted);
    opts.seed = 43;
    const OracleEstimate c = tetra_volume_oriented(e1, e2, e3, e4, opts);
    CHECK(a.vol.lifted != c.vol.lifted);
}

TEST_CASE("tetra oracle: the low-discrepancy stream agrees with the target") {
    OracleOptions opts;
    opts.samples = 500'000;
    opts.low_discrepancy = true;
    const OracleEstimate est = tetra_volume_oriented(e1, e2, e3, e4, opts);
    CHECK(std::abs(est.vol.lifted - kSphereVolume / 16.0) < 0.005);
}

TEST_CASE("cross4 is orthogonal to its arguments and positively oriented") {
    const Vec4 a{{0.3, -0.2, 0.5, 0.1}};
    const Vec4 b{{-0.1, 0.7, 0.2, 0.4}};
    const Vec4 c{{0.6, 0.1, -0.3, 0.2}};
    const Vec4 x = cross4(a, b, c);
    CHECK(std::abs(dot(x, a)) < 1e-12);
    CHECK(std::abs(dot(x, b)) < 1e-12);
    CHECK(std::abs(dot(x, c)) < 1e-12);
    CHECK(det4(x, a, b, c) == doctest::Approx(dot(x, x)).epsilon(1e-10));
    // <cross4(a,b,c), d> = det4(d,a,b,c) for a generic d.
    const Vec4 d{{0.2, 0.9, -0.4, 0.3}};
    CHECK(dot(x, d) == doctest::Approx(det4(d, a, b, c)).epsilon(1e-12));
}

TEST_CASE("solve4 solves a generic system and flags a singular one") {
    const Vec4 m0{{2, 0, 1, 0}};
    const Vec4 m1{{0, 3, 0, 1}};
    const Vec4 m2{{1, 0, 4, 0}};
    const Vec4 m3{{0, 1, 0, 5}};
    const Vec4 rhs{{1, 2, 3, 4}};
    Vec4 x{};
    REQUIRE(solve4(m0, m1, m2, m3, rhs, x));
    const Vec4 back = m0 * x[0] + m1 * x[1] + m2 * x[2] + m3 * x[3];
    for (int i = 0; i < 4; ++i) CHECK(back[i] == doctest::Approx(rhs[i]).epsilon(1e-12));
    CHECK_FALSE(solve4(m0, m0, m2, m3, rhs, x));
}
