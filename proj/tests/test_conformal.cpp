#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>
#include <sstream>

#include "robinucq/conformal.hpp"

using namespace robinucq;

namespace {
constexpr double kPi = std::numbers::pi;

Domain unit_square() { return build_polygon({{0, 0}, {1, 0}, {1, 1}, {0, 1}}); }
} // namespace

TEST_CASE("64-gon map is close to the identity") {
    Domain d = regular_polygon(64);
    ConformalMap m = schwarz_christoffel(d);

    double bsum = 0.0;
    for (double b : m.turning) bsum += b;
    CHECK(bsum == doctest::Approx(2.0).epsilon(1e-12));

    // boundary images land on the polygon, and the map deviates from the
    // rotated identity by no more than the mid-edge sag 1-cos(pi/64) ~ 1.2e-3
    auto dist_to_polygon = [&](Complex p) {
        double best = 1e300;
        for (size_t k = 0; k < d.vertices.size(); ++k) {
            Vec2 a = d.vertices[k];
            Vec2 b = d.vertices[(k + 1) % d.vertices.size()];
            Vec2 q = from_complex(p);
            Vec2 ab = b - a;
            double t = std::clamp((q - a).dot(ab) / ab.norm2(), 0.0, 1.0);
            best = std::min(best, (q - (a + t * ab)).norm());
        }
        return best;
    };
    double omega = std::arg(m.derivative(Complex{0.0, 0.0}));
    double maxdev = 0.0, maxdist = 0.0;
    for (int j = 0; j < 256; ++j) {
        double t = 2.0 * kPi * (j + 0.37) / 256.0;
        Complex p = m.boundary_point(t);
        maxdev = std::max(maxdev, std::abs(p - std::polar(1.0, t + omega)));
        maxdist = std::max(maxdist, dist_to_polygon(p));
    }
    CHECK(maxdist <= 1e-8);
    CHECK(maxdev <= 2e-3);

    // |phi'| on |z| = 0.5
    for (int j = 0; j < 32; ++j) {
        Complex z = std::polar(0.5, 2.0 * kPi * j / 32.0);
        double dmag = std::abs(m.derivative(z));
        CHECK(dmag > 0.99);
        CHECK(dmag < 1.01);
    }

    CHECK(std::abs(m.map(Complex{0.0, 0.0}) - Complex{0.0, 0.0}) < 1e-12);
}

TEST_CASE("square map: prevertices at fourth roots of unity up to rotation") {
    ConformalMap m = schwarz_christoffel(unit_square());
    REQUIRE(m.vertex_count() == 4);
    for (int k = 0; k < 4; ++k) {
        double gap = m.prevertex_angles[static_cast<size_t>((k + 1) % 4)] -
                     m.prevertex_angles[static_cast<size_t>(k)];
        if (gap <= 0.0) gap += 2.0 * kPi;
        CHECK(gap == doctest::Approx(kPi / 2.0).epsilon(1e-6));
        CHECK(m.turning[static_cast<size_t>(k)] == doctest::Approx(0.5).epsilon(1e-12));
    }
    // phi(0) = centroid
    CHECK(std::abs(m.map(Complex{0.0, 0.0}) - Complex{0.5, 0.5}) < 1e-9);

    // image side lengths all equal within 1e-6
    for (int k = 0; k < 4; ++k) {
        Complex a = m.vertices[static_cast<size_t>(k)];
        Complex b = m.vertices[static_cast<size_t>((k + 1) % 4)];
        CHECK(std::abs(b - a) == doctest::Approx(1.0).epsilon(1e-6));
    }
}

TEST_CASE("rectangle map: opposite sides match") {
    Domain rect = build_polygon({{0, 0}, {2, 0}, {2, 1}, {0, 1}});
    ConformalMap m = schwarz_christoffel(rect);
    auto side = [&](int k) {
        Complex a = m.boundary_point(m.prevertex_angles[static_cast<size_t>(k)]);
        Complex b = m.boundary_point(m.prevertex_angles[static_cast<size_t>((k + 1) % 4)]);
        return std::abs(b - a);
    };
    CHECK(side(0) == doctest::Approx(side(2)).epsilon(1e-6));
    CHECK(side(1) == doctest::Approx(side(3)).epsilon(1e-6));
    CHECK(side(0) == doctest::Approx(2.0).epsilon(1e-6));
    CHECK(side(1) == doctest::Approx(1.0).epsilon(1e-6));
}

TEST_CASE("area and perimeter identities on the unit square") {
    ConformalMap m = schwarz_christoffel(unit_square());
    double area = area_identity(m);
    CHECK(std::abs(area - 1.0) < 0.01);

    double per = perimeter_identity(m);
    CHECK(std::abs(per - 4.0) / 4.0 < 1e-3);

    // area-consistent scale at the origin: |phi'(0)|^2 <= area / pi is the
    // Schwarz-lemma style bound; here just check the quadrature cross-check
    double d0 = std::abs(m.derivative(Complex{0.0, 0.0}));
    CHECK(d0 > 0.0);
}

TEST_CASE("derivative argument jumps by the exterior angle across prevertices") {
    ConformalMap m = schwarz_christoffel(unit_square());
    double t0 = m.prevertex_angles[1];
    double eps = 1e-5;
    Complex before = m.derivative(std::polar(1.0, t0 - eps));
    Complex after = m.derivative(std::polar(1.0, t0 + eps));
    double jump = std::arg(after / before);
    if (jump < 0.0) jump += 2.0 * kPi;
    CHECK(jump == doctest::Approx(kPi * 0.5).epsilon(1e-2)); // pi - interior angle
}

TEST_CASE("arclength pullback") {
    ConformalMap m = schwarz_christoffel(unit_square());
    CHECK(arclength_pullback(m, {{0.0, 4.0}}) == doctest::Approx(4.0).epsilon(1e-3));
    CHECK(arclength_pullback(m, {{0.0, 1.0}}) == doctest::Approx(1.0).epsilon(1e-3));
    CHECK(arclength_pullback(m, {{1.0, 2.0}}) == doctest::Approx(1.0).epsilon(1e-3));
    CHECK(arclength_pullback(m, {}) == doctest::Approx(0.0));
}

TEST_CASE("smirnov norm matches the boundary L2 norm") {
    ConformalMap m = schwarz_christoffel(unit_square());
    int nb = 160;
    std::vector<double> s(static_cast<size_t>(nb));
    std::vector<Complex> one(static_cast<size_t>(nb)), zero(static_cast<size_t>(nb)),
        tracez(static_cast<size_t>(nb));
    auto point_at = [&](double sv) {
        // arclength parametrization of the unit square boundary
        double t = std::fmod(sv, 4.0);
        if (t < 1.0) return Complex{t, 0.0};
        if (t < 2.0) return Complex{1.0, t - 1.0};
        if (t < 3.0) return Complex{3.0 - t, 1.0};
        return Complex{0.0, 4.0 - t};
    };
    for (int i = 0; i < nb; ++i) {
        double sv = 4.0 * i / nb;
        s[static_cast<size_t>(i)] = sv;
        one[static_cast<size_t>(i)] = 1.0;
        zero[static_cast<size_t>(i)] = 0.0;
        tracez[static_cast<size_t>(i)] = point_at(sv);
    }

    CHECK(smirnov_norm(s, one, m) == doctest::Approx(2.0).epsilon(1e-3)); // sqrt(perimeter)
    CHECK(smirnov_norm(s, zero, m) == doctest::Approx(0.0));

    // direct boundary quadrature of |z|^2 over the square boundary
    double direct = 0.0;
    int q = 4000;
    for (int i = 0; i < q; ++i) {
        double sv = 4.0 * (i + 0.5) / q;
        direct += std::norm(point_at(sv)) * (4.0 / q);
    }
    CHECK(smirnov_norm(s, tracez, m) == doctest::Approx(std::sqrt(direct)).epsilon(2e-3));
}

TEST_CASE("a2 of the derivative weight") {
    // near-identity map: both constants close to 1
    ConformalMap id = schwarz_christoffel(regular_polygon(64));
    A2Pair a_id = a2_of_derivative(id, 128);
    CHECK(a_id.of_derivative <= 1.1);
    CHECK(a_id.of_reciprocal <= 1.1);

    // square map: finite, stable under sample doubling, scale invariant
    ConformalMap sq = schwarz_christoffel(unit_square());
    A2Pair coarse = a2_of_derivative(sq, 256);
    A2Pair fine = a2_of_derivative(sq, 512);
    CHECK(coarse.of_derivative > 1.0);
    CHECK(std::abs(fine.of_derivative - coarse.of_derivative) / coarse.of_derivative < 0.10);

    Domain big = build_polygon({{0, 0}, {2, 0}, {2, 2}, {0, 2}});
    ConformalMap sq2 = schwarz_christoffel(big);
    A2Pair scaled = a2_of_derivative(sq2, 256);
    CHECK(std::abs(scaled.of_derivative - coarse.of_derivative) < 1e-10 * coarse.of_derivative + 1e-8);
}

TEST_CASE("reciprocal derivative stays H2-bounded inside") {
    ConformalMap m = schwarz_christoffel(unit_square());
    double norm2 = 0.0;
    int q = 512;
    for (int j = 0; j < q; ++j) {
        Complex z = std::polar(0.9, 2.0 * kPi * j / q);
        norm2 += std::norm(1.0 / m.derivative(z)) * (2.0 * kPi * 0.9 / q);
    }
    CHECK(std::isfinite(norm2));
    CHECK(norm2 < 100.0);
}

TEST_CASE("map text round trip") {
    ConformalMap m = schwarz_christoffel(unit_square());
    std::stringstream ss;
    write_map(ss, m);
    ConformalMap r = read_map(ss);
    REQUIRE(r.vertex_count() == 4);
    for (int k = 0; k < 4; ++k) {
        CHECK(r.prevertex_angles[static_cast<size_t>(k)] ==
              doctest::Approx(m.prevertex_angles[static_cast<size_t>(k)]).epsilon(1e-15));
        CHECK(std::abs(r.vertices[static_cast<size_t>(k)] - m.vertices[static_cast<size_t>(k)]) <
              1e-9);
    }
    Complex z{0.3, -0.2};
    CHECK(std::abs(r.map(z) - m.map(z)) < 1e-9);
}
