#pragma once

#include <array>
#include <string>
#include <utility>
#include <vector>

#include "robinucq/vec2.hpp"

namespace robinucq {

/// Simple closed polygon, counterclockwise. Vertices live on the boundary
/// curve in order; the first vertex is the arclength origin.
struct Domain {
    std::vector<Vec2> vertices;
    bool closed = true;

    double perimeter() const;
    double area() const; // shoelace
    Vec2 centroid() const;
    double shortest_edge() const;
    double diameter() const;
};

/// Builds a simple ccw polygon. Clockwise input is reversed; self-intersecting
/// input is rejected naming the offending edge pair.
Domain build_polygon(std::vector<Vec2> vertices);

/// Regular n-gon inscribed in the circle of given radius, first vertex at
/// angle 0.
Domain regular_polygon(int n, double radius = 1.0, Vec2 center = {0.0, 0.0});

struct Mesh {
    std::vector<Vec2> nodes;
    std::vector<std::array<int, 3>> triangles; // ccw index triples
    std::vector<int> boundary_nodes;           // ccw cyclic order
    std::vector<double> boundary_s;            // arclength coordinate per boundary node
    double h = 0.0;                            // max element diameter
    Domain domain;

    int node_count() const { return static_cast<int>(nodes.size()); }
    int tri_count() const { return static_cast<int>(triangles.size()); }
    int boundary_count() const { return static_cast<int>(boundary_nodes.size()); }
    double perimeter() const { return domain.perimeter(); }

    double tri_area(int t) const;
    Vec2 tri_centroid(int t) const;
    double total_area() const;

    /// -1 for interior nodes, else position in boundary_nodes.
    const std::vector<int>& boundary_index_of_node() const;

    /// Exact Euclidean distance from a point to the polygon boundary.
    double distance_to_boundary(const Vec2& p) const;

    /// Triangle containing p (centroid-nearest fallback), -1 if p is outside
    /// every element by more than a tolerance.
    int locate(const Vec2& p) const;

private:
    mutable std::vector<int> boundary_index_; // lazy inverse map

    // lazy uniform bins over the bounding box for point location
    mutable std::vector<std::vector<int>> bins_;
    mutable int bin_nx_ = 0, bin_ny_ = 0;
    mutable Vec2 bin_lo_, bin_hi_;
    void build_bins() const;
    int test_triangle(int t, const Vec2& p) const;
};

/// Conforming triangulation with max element diameter <= 2*h_target.
/// Boundary nodes are ordered ccw starting at the first polygon vertex.
Mesh triangulate(const Domain& domain, double h_target);

/// Measurable boundary partition: Gamma is a union of per-node support
/// intervals, Gamma0 the complement. Both have positive measure.
struct BoundaryPartition {
    std::vector<std::pair<double, double>> gamma_spans; // snapped arclength intervals
    std::vector<char> in_gamma;                         // flag per boundary node
    double gamma_measure = 0.0;
    double gamma0_measure = 0.0;

    bool node_in_gamma(int b) const { return in_gamma[static_cast<size_t>(b)] != 0; }
};

/// Snaps the requested arclength spans to node-support boundaries (half-edge
/// midpoints). Rejects partitions where either side has zero measure.
BoundaryPartition partition_boundary(const Mesh& mesh,
                                     const std::vector<std::pair<double, double>>& gamma_spans);

/// Unit tangent/normal frame and arclength quadrature weight per boundary
/// node. (n, tau) is a positive frame; corners carry the bisector average.
struct BoundaryFrame {
    std::vector<Vec2> tau;
    std::vector<Vec2> normal;
    std::vector<double> weights;
};

BoundaryFrame boundary_frames(const Mesh& mesh);

} // namespace robinucq
