#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>
#include <set>
#include <sstream>

#include "robinucq/geometry.hpp"
#include "robinucq/mesh_io.hpp"

using namespace robinucq;

namespace {

Domain unit_square() {
    return build_polygon({{0, 0}, {1, 0}, {1, 1}, {0, 1}});
}

Domain l_shape() {
    // unit square minus the upper-right quarter
    return build_polygon({{0, 0}, {1, 0}, {1, 0.5}, {0.5, 0.5}, {0.5, 1}, {0, 1}});
}

} // namespace

TEST_CASE("build_polygon basics") {
    Domain sq = unit_square();
    CHECK(sq.perimeter() == doctest::Approx(4.0));
    CHECK(sq.area() == doctest::Approx(1.0));

    // clockwise input is corrected
    Domain cw = build_polygon({{0, 0}, {0, 1}, {1, 1}, {1, 0}});
    CHECK(cw.area() == doctest::Approx(1.0));
    CHECK(cw.perimeter() == doctest::Approx(4.0));

    // figure-eight rejected with the offending edge pair named
    CHECK_THROWS_WITH_AS(build_polygon({{0, 0}, {1, 1}, {1, 0}, {0, 1}}),
                         doctest::Contains("self-intersecting"), std::invalid_argument);

    CHECK_THROWS_AS(build_polygon({{0, 0}, {1, 0}}), std::invalid_argument);
    CHECK_THROWS_AS(build_polygon({{0, 0}, {0, 0}, {1, 0}, {1, 1}}), std::invalid_argument);
}

TEST_CASE("64-gon perimeter closed form") {
    Domain d = regular_polygon(64);
    double expected = 128.0 * std::sin(std::numbers::pi / 64.0);
    CHECK(d.perimeter() == doctest::Approx(expected).epsilon(1e-12));
    CHECK(d.perimeter() == doctest::Approx(6.28066).epsilon(1e-5));
}

TEST_CASE("triangulate conserves area") {
    Domain sq = unit_square();
    Mesh coarse = triangulate(sq, 0.5);
    CHECK(coarse.tri_count() >= 8);
    CHECK(coarse.total_area() == doctest::Approx(1.0).epsilon(1e-10));
    for (int t = 0; t < coarse.tri_count(); ++t)
        CHECK(coarse.tri_area(t) > 0.0);

    Mesh fine = triangulate(sq, 0.1);
    CHECK(fine.total_area() == doctest::Approx(1.0).epsilon(1e-10));
    // element count scales like (0.5/0.1)^2 = 25; allow a generous band
    double ratio = static_cast<double>(fine.tri_count()) / coarse.tri_count();
    CHECK(ratio > 10.0);
    CHECK(ratio < 60.0);

    CHECK(fine.h <= 2.0 * 0.1);

    Mesh lm = triangulate(l_shape(), 0.1);
    CHECK(lm.total_area() == doctest::Approx(0.75).epsilon(1e-10));
}

TEST_CASE("triangulate rejects infeasible h") {
    CHECK_THROWS_WITH_AS(triangulate(unit_square(), 1.5),
                         doctest::Contains("feasible"), std::invalid_argument);
    CHECK_THROWS_AS(triangulate(unit_square(), -0.1), std::invalid_argument);
}

TEST_CASE("boundary conformity and ordering") {
    for (double h : {0.3, 0.13}) {
        Mesh m = triangulate(l_shape(), h);
        // boundary arclength strictly increasing
        for (int b = 1; b < m.boundary_count(); ++b)
            CHECK(m.boundary_s[static_cast<size_t>(b)] > m.boundary_s[static_cast<size_t>(b - 1)]);
        // every consecutive boundary pair is an edge of some triangle
        std::set<std::pair<int, int>> edges;
        for (const auto& T : m.triangles)
            for (int e = 0; e < 3; ++e) {
                int u = T[static_cast<size_t>(e)], v = T[static_cast<size_t>((e + 1) % 3)];
                edges.insert({std::min(u, v), std::max(u, v)});
            }
        int nb = m.boundary_count();
        for (int b = 0; b < nb; ++b) {
            int u = m.boundary_nodes[static_cast<size_t>(b)];
            int v = m.boundary_nodes[static_cast<size_t>((b + 1) % nb)];
            CHECK(edges.count({std::min(u, v), std::max(u, v)}) == 1);
        }
    }
}

TEST_CASE("partition_boundary half split") {
    Mesh m = triangulate(unit_square(), 0.25);
    BoundaryPartition p = partition_boundary(m, {{0.0, 2.0}});
    CHECK(p.gamma_measure == doctest::Approx(2.0).epsilon(1e-12));
    CHECK(p.gamma0_measure == doctest::Approx(2.0).epsilon(1e-12));

    // degenerate partition rejected
    CHECK_THROWS_AS(partition_boundary(m, {{0.0, 4.0}}), std::invalid_argument);

    // additive over disconnected spans
    BoundaryPartition q = partition_boundary(m, {{0.0, 1.0}, {2.0, 3.0}});
    CHECK(q.gamma_measure == doctest::Approx(2.0).epsilon(1e-12));
    int flips = 0;
    for (int b = 0; b < m.boundary_count(); ++b) {
        int nb = m.boundary_count();
        if (q.node_in_gamma(b) != q.node_in_gamma((b + 1) % nb)) ++flips;
    }
    CHECK(flips == 4); // two disjoint arcs
}

TEST_CASE("partition_boundary idempotent") {
    Mesh m = triangulate(unit_square(), 0.2);
    BoundaryPartition p = partition_boundary(m, {{0.3, 1.7}});
    BoundaryPartition q = partition_boundary(m, p.gamma_spans);
    REQUIRE(p.in_gamma.size() == q.in_gamma.size());
    for (size_t i = 0; i < p.in_gamma.size(); ++i) CHECK(p.in_gamma[i] == q.in_gamma[i]);
    CHECK(p.gamma_measure == doctest::Approx(q.gamma_measure).epsilon(1e-14));
}

TEST_CASE("boundary frames") {
    Mesh m = triangulate(unit_square(), 0.25);
    BoundaryFrame f = boundary_frames(m);

    double total = 0.0;
    for (double w : f.weights) total += w;
    CHECK(total == doctest::Approx(4.0).epsilon(1e-12));

    for (int b = 0; b < m.boundary_count(); ++b) {
        CHECK(f.tau[static_cast<size_t>(b)].norm() == doctest::Approx(1.0).epsilon(1e-12));
        CHECK(f.normal[static_cast<size_t>(b)].norm() == doctest::Approx(1.0).epsilon(1e-12));
        CHECK(f.normal[static_cast<size_t>(b)].dot(f.tau[static_cast<size_t>(b)]) ==
              doctest::Approx(0.0).epsilon(1e-12));
        CHECK(f.normal[static_cast<size_t>(b)].cross(f.tau[static_cast<size_t>(b)]) ==
              doctest::Approx(1.0).epsilon(1e-12));
    }

    // interior node of the bottom edge: n = (0,-1), tau = (1,0)
    bool found = false;
    for (int b = 0; b < m.boundary_count(); ++b) {
        const Vec2& p = m.nodes[static_cast<size_t>(m.boundary_nodes[static_cast<size_t>(b)])];
        if (std::abs(p.y) < 1e-14 && p.x > 0.1 && p.x < 0.9) {
            CHECK(f.normal[static_cast<size_t>(b)].x == doctest::Approx(0.0).epsilon(1e-12));
            CHECK(f.normal[static_cast<size_t>(b)].y == doctest::Approx(-1.0).epsilon(1e-12));
            CHECK(f.tau[static_cast<size_t>(b)].x == doctest::Approx(1.0).epsilon(1e-12));
            found = true;
        }
    }
    CHECK(found);
}

TEST_CASE("64-gon normals near radial") {
    Mesh m = triangulate(regular_polygon(64), 0.2);
    BoundaryFrame f = boundary_frames(m);
    for (int b = 0; b < m.boundary_count(); ++b) {
        const Vec2& p = m.nodes[static_cast<size_t>(m.boundary_nodes[static_cast<size_t>(b)])];
        Vec2 radial = p.normalized();
        double angle = std::acos(std::clamp(radial.dot(f.normal[static_cast<size_t>(b)]), -1.0, 1.0));
        CHECK(angle < 0.05);
    }
}

TEST_CASE("mesh file round trip") {
    Mesh m = triangulate(l_shape(), 0.2);
    std::stringstream ss;
    write_mesh(ss, m);
    Mesh r = read_mesh(ss);
    REQUIRE(r.node_count() == m.node_count());
    REQUIRE(r.tri_count() == m.tri_count());
    REQUIRE(r.boundary_count() == m.boundary_count());
    CHECK(r.total_area() == doctest::Approx(m.total_area()).epsilon(1e-14));
    for (int i = 0; i < m.node_count(); ++i) {
        CHECK(r.nodes[static_cast<size_t>(i)].x == m.nodes[static_cast<size_t>(i)].x);
        CHECK(r.nodes[static_cast<size_t>(i)].y == m.nodes[static_cast<size_t>(i)].y);
    }
    CHECK(r.perimeter() == doctest::Approx(m.perimeter()).epsilon(1e-12));
}

TEST_CASE("locate finds containing triangles") {
    Mesh m = triangulate(unit_square(), 0.2);
    int t = m.locate({0.31, 0.47});
    REQUIRE(t >= 0);
    CHECK(m.locate({2.5, 2.5}) == -1);
    CHECK(m.distance_to_boundary({0.5, 0.5}) == doctest::Approx(0.5));
    CHECK(m.distance_to_boundary({0.1, 0.4}) == doctest::Approx(0.1));
}
