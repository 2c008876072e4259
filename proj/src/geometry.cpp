#include "robinucq/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <numbers>
#include <sstream>
#include <stdexcept>

namespace robinucq {

namespace {

double signed_area(const std::vector<Vec2>& v) {
    double a = 0.0;
    size_t n = v.size();
    for (size_t i = 0; i < n; ++i) {
        const Vec2& p = v[i];
        const Vec2& q = v[(i + 1) % n];
        a += p.cross(q);
    }
    return 0.5 * a;
}

// Proper or improper intersection of segments [a,b] and [c,d].
bool segments_intersect(const Vec2& a, const Vec2& b, const Vec2& c, const Vec2& d) {
    auto orient = [](const Vec2& p, const Vec2& q, const Vec2& r) {
        double v = (q - p).cross(r - p);
        double scale = (q - p).norm() * (r - p).norm();
        if (std::abs(v) <= 1e-14 * scale) return 0;
        return v > 0 ? 1 : -1;
    };
    int o1 = orient(a, b, c), o2 = orient(a, b, d);
    int o3 = orient(c, d, a), o4 = orient(c, d, b);
    if (o1 != o2 && o3 != o4) return true;
    auto on_segment = [](const Vec2& p, const Vec2& q, const Vec2& r) {
        return std::min(p.x, q.x) - 1e-14 <= r.x && r.x <= std::max(p.x, q.x) + 1e-14 &&
               std::min(p.y, q.y) - 1e-14 <= r.y && r.y <= std::max(p.y, q.y) + 1e-14;
    };
    if (o1 == 0 && on_segment(a, b, c)) return true;
    if (o2 == 0 && on_segment(a, b, d)) return true;
    if (o3 == 0 && on_segment(c, d, a)) return true;
    if (o4 == 0 && on_segment(c, d, b)) return true;
    return false;
}

bool point_in_polygon(const std::vector<Vec2>& poly, const Vec2& p) {
    bool inside = false;
    size_t n = poly.size();
    for (size_t i = 0, j = n - 1; i < n; j = i++) {
        const Vec2& a = poly[i];
        const Vec2& b = poly[j];
        if ((a.y > p.y) != (b.y > p.y)) {
            double xint = a.x + (p.y - a.y) / (b.y - a.y) * (b.x - a.x);
            if (p.x < xint) inside = !inside;
        }
    }
    return inside;
}

double point_segment_distance(const Vec2& p, const Vec2& a, const Vec2& b) {
    Vec2 ab = b - a;
    double t = (p - a).dot(ab) / ab.norm2();
    t = std::clamp(t, 0.0, 1.0);
    return (p - (a + t * ab)).norm();
}

// Deterministic tiny jitter used to break cocircular grid degeneracies in
// the Delaunay insertion.
double hash_jitter(uint64_t key) {
    key ^= key >> 33;
    key *= 0xff51afd7ed558ccdULL;
    key ^= key >> 33;
    key *= 0xc4ceb9fe1a85ec53ULL;
    key ^= key >> 33;
    return (static_cast<double>(key & 0xffffffULL) / double(0xffffffULL)) - 0.5;
}

struct DelaunayTri {
    int a, b, c;
    bool alive = true;
};

bool in_circumcircle(const Vec2& a, const Vec2& b, const Vec2& c, const Vec2& p) {
    double ax = a.x - p.x, ay = a.y - p.y;
    double bx = b.x - p.x, by = b.y - p.y;
    double cx = c.x - p.x, cy = c.y - p.y;
    double det = (ax * ax + ay * ay) * (bx * cy - cx * by) -
                 (bx * bx + by * by) * (ax * cy - cx * ay) +
                 (cx * cx + cy * cy) * (ax * by - bx * ay);
    // cocircular sets (axis-aligned boundary points form them) resolve to
    // "outside" so the cavity stays consistent
    double s = std::max({ax * ax + ay * ay, bx * bx + by * by, cx * cx + cy * cy});
    return det > 1e-12 * s * s; // triangle assumed ccw
}

// Bowyer-Watson over a fixed point set. Points are expected to be in general
// position (the caller jitters grid points).
std::vector<std::array<int, 3>> delaunay(const std::vector<Vec2>& pts) {
    int n = static_cast<int>(pts.size());
    Vec2 lo{std::numeric_limits<double>::max(), std::numeric_limits<double>::max()};
    Vec2 hi{-lo.x, -lo.y};
    for (const Vec2& p : pts) {
        lo.x = std::min(lo.x, p.x); lo.y = std::min(lo.y, p.y);
        hi.x = std::max(hi.x, p.x); hi.y = std::max(hi.y, p.y);
    }
    Vec2 c = 0.5 * (lo + hi);
    double r = std::max(hi.x - lo.x, hi.y - lo.y) * 20.0 + 1.0;

    std::vector<Vec2> all = pts;
    all.push_back({c.x - 2.0 * r, c.y - r});
    all.push_back({c.x + 2.0 * r, c.y - r});
    all.push_back({c.x, c.y + 2.0 * r});

    std::vector<DelaunayTri> tris;
    tris.push_back({n, n + 1, n + 2});

    std::vector<int> bad;
    for (int ip = 0; ip < n; ++ip) {
        const Vec2& p = all[static_cast<size_t>(ip)];
        bad.clear();
        for (int t = 0; t < static_cast<int>(tris.size()); ++t) {
            const DelaunayTri& T = tris[static_cast<size_t>(t)];
            if (!T.alive) continue;
            if (in_circumcircle(all[static_cast<size_t>(T.a)], all[static_cast<size_t>(T.b)],
                                all[static_cast<size_t>(T.c)], p))
                bad.push_back(t);
        }
        // cavity boundary = edges appearing in exactly one bad triangle
        std::vector<std::array<int, 2>> edges;
        for (int t : bad) {
            const DelaunayTri& T = tris[static_cast<size_t>(t)];
            edges.push_back({T.a, T.b});
            edges.push_back({T.b, T.c});
            edges.push_back({T.c, T.a});
            tris[static_cast<size_t>(t)].alive = false;
        }
        for (size_t i = 0; i < edges.size(); ++i) {
            bool shared = false;
            for (size_t j = 0; j < edges.size(); ++j) {
                if (i == j) continue;
                if (edges[i][0] == edges[j][1] && edges[i][1] == edges[j][0]) { shared = true; break; }
            }
            if (!shared)
                tris.push_back({edges[i][0], edges[i][1], ip});
        }
    }

    std::vector<std::array<int, 3>> out;
    for (const DelaunayTri& T : tris) {
        if (!T.alive) continue;
        if (T.a >= n || T.b >= n || T.c >= n) continue;
        out.push_back({T.a, T.b, T.c});
    }
    return out;
}

} // namespace

double Domain::perimeter() const {
    double s = 0.0;
    size_t n = vertices.size();
    for (size_t i = 0; i < n; ++i)
        s += (vertices[(i + 1) % n] - vertices[i]).norm();
    return s;
}

double Domain::area() const { return signed_area(vertices); }

Vec2 Domain::centroid() const {
    double a = 0.0;
    Vec2 c{0.0, 0.0};
    size_t n = vertices.size();
    for (size_t i = 0; i < n; ++i) {
        const Vec2& p = vertices[i];
        const Vec2& q = vertices[(i + 1) % n];
        double w = p.cross(q);
        a += w;
        c += (p + q) * w;
    }
    return c / (3.0 * a);
}

double Domain::shortest_edge() const {
    double m = std::numeric_limits<double>::max();
    size_t n = vertices.size();
    for (size_t i = 0; i < n; ++i)
        m = std::min(m, (vertices[(i + 1) % n] - vertices[i]).norm());
    return m;
}

double Domain::diameter() const {
    double d = 0.0;
    for (size_t i = 0; i < vertices.size(); ++i)
        for (size_t j = i + 1; j < vertices.size(); ++j)
            d = std::max(d, (vertices[i] - vertices[j]).norm());
    return d;
}

Domain build_polygon(std::vector<Vec2> vertices) {
    if (vertices.size() < 3)
        throw std::invalid_argument("build_polygon: need at least 3 vertices");
    size_t n = vertices.size();
    for (size_t i = 0; i < n; ++i) {
        if ((vertices[(i + 1) % n] - vertices[i]).norm() == 0.0)
            throw std::invalid_argument("build_polygon: consecutive vertices coincide at index " +
                                        std::to_string(i));
    }
    if (signed_area(vertices) < 0.0)
        std::reverse(vertices.begin(), vertices.end());

    // simplicity: non-adjacent edges must not intersect
    for (size_t i = 0; i < n; ++i) {
        for (size_t j = i + 1; j < n; ++j) {
            if (j == i || (j + 1) % n == i || (i + 1) % n == j) continue;
            if (segments_intersect(vertices[i], vertices[(i + 1) % n],
                                   vertices[j], vertices[(j + 1) % n])) {
                std::ostringstream msg;
                msg << "build_polygon: polygon is self-intersecting (edges " << i << "-"
                    << (i + 1) % n << " and " << j << "-" << (j + 1) % n << " cross)";
                throw std::invalid_argument(msg.str());
            }
        }
    }
    Domain d;
    d.vertices = std::move(vertices);
    return d;
}

Domain regular_polygon(int n, double radius, Vec2 center) {
    std::vector<Vec2> v;
    v.reserve(static_cast<size_t>(n));
    for (int k = 0; k < n; ++k) {
        double t = 2.0 * std::numbers::pi * k / n;
        v.push_back({center.x + radius * std::cos(t), center.y + radius * std::sin(t)});
    }
    return build_polygon(std::move(v));
}

double Mesh::tri_area(int t) const {
    const auto& T = triangles[static_cast<size_t>(t)];
    const Vec2& a = nodes[static_cast<size_t>(T[0])];
    const Vec2& b = nodes[static_cast<size_t>(T[1])];
    const Vec2& c = nodes[static_cast<size_t>(T[2])];
    return 0.5 * (b - a).cross(c - a);
}

Vec2 Mesh::tri_centroid(int t) const {
    const auto& T = triangles[static_cast<size_t>(t)];
    return (nodes[static_cast<size_t>(T[0])] + nodes[static_cast<size_t>(T[1])] +
            nodes[static_cast<size_t>(T[2])]) / 3.0;
}

double Mesh::total_area() const {
    double a = 0.0;
    for (int t = 0; t < tri_count(); ++t) a += tri_area(t);
    return a;
}

const std::vector<int>& Mesh::boundary_index_of_node() const {
    if (boundary_index_.empty()) {
        boundary_index_.assign(nodes.size(), -1);
        for (int b = 0; b < boundary_count(); ++b)
            boundary_index_[static_cast<size_t>(boundary_nodes[static_cast<size_t>(b)])] = b;
    }
    return boundary_index_;
}

double Mesh::distance_to_boundary(const Vec2& p) const {
    double d = std::numeric_limits<double>::max();
    size_t n = domain.vertices.size();
    for (size_t i = 0; i < n; ++i)
        d = std::min(d, point_segment_distance(p, domain.vertices[i], domain.vertices[(i + 1) % n]));
    return d;
}

int Mesh::test_triangle(int t, const Vec2& p) const {
    const auto& T = triangles[static_cast<size_t>(t)];
    const Vec2& a = nodes[static_cast<size_t>(T[0])];
    const Vec2& b = nodes[static_cast<size_t>(T[1])];
    const Vec2& c = nodes[static_cast<size_t>(T[2])];
    double area2 = (b - a).cross(c - a);
    double l1 = (b - p).cross(c - p) / area2;
    double l2 = (c - p).cross(a - p) / area2;
    double l3 = 1.0 - l1 - l2;
    return std::min({l1, l2, l3}) >= -1e-12 ? 1 : 0;
}

void Mesh::build_bins() const {
    bin_lo_ = {std::numeric_limits<double>::max(), std::numeric_limits<double>::max()};
    bin_hi_ = {-bin_lo_.x, -bin_lo_.y};
    for (const Vec2& p : nodes) {
        bin_lo_.x = std::min(bin_lo_.x, p.x); bin_lo_.y = std::min(bin_lo_.y, p.y);
        bin_hi_.x = std::max(bin_hi_.x, p.x); bin_hi_.y = std::max(bin_hi_.y, p.y);
    }
    double cell = std::max(h, 1e-12) * 1.5;
    bin_nx_ = std::max(1, static_cast<int>((bin_hi_.x - bin_lo_.x) / cell) + 1);
    bin_ny_ = std::max(1, static_cast<int>((bin_hi_.y - bin_lo_.y) / cell) + 1);
    bins_.assign(static_cast<size_t>(bin_nx_ * bin_ny_), {});
    auto cell_of = [&](double x, double lo, double hi, int n) {
        int c = static_cast<int>((x - lo) / (hi - lo) * n);
        return std::clamp(c, 0, n - 1);
    };
    for (int t = 0; t < tri_count(); ++t) {
        const auto& T = triangles[static_cast<size_t>(t)];
        Vec2 tlo = nodes[static_cast<size_t>(T[0])], thi = tlo;
        for (int k = 1; k < 3; ++k) {
            const Vec2& v = nodes[static_cast<size_t>(T[static_cast<size_t>(k)])];
            tlo.x = std::min(tlo.x, v.x); tlo.y = std::min(tlo.y, v.y);
            thi.x = std::max(thi.x, v.x); thi.y = std::max(thi.y, v.y);
        }
        int i0 = cell_of(tlo.x, bin_lo_.x, bin_hi_.x, bin_nx_);
        int i1 = cell_of(thi.x, bin_lo_.x, bin_hi_.x, bin_nx_);
        int j0 = cell_of(tlo.y, bin_lo_.y, bin_hi_.y, bin_ny_);
        int j1 = cell_of(thi.y, bin_lo_.y, bin_hi_.y, bin_ny_);
        for (int j = j0; j <= j1; ++j)
            for (int i = i0; i <= i1; ++i)
                bins_[static_cast<size_t>(j * bin_nx_ + i)].push_back(t);
    }
}

int Mesh::locate(const Vec2& p) const {
    if (bins_.empty()) build_bins();
    auto cell_of = [&](double x, double lo, double hi, int n) {
        int c = static_cast<int>((x - lo) / (hi - lo) * n);
        return std::clamp(c, 0, n - 1);
    };
    int ci = cell_of(p.x, bin_lo_.x, bin_hi_.x, bin_nx_);
    int cj = cell_of(p.y, bin_lo_.y, bin_hi_.y, bin_ny_);
    for (int t : bins_[static_cast<size_t>(cj * bin_nx_ + ci)])
        if (test_triangle(t, p)) return t;
    // fallback scan for points that straddle cell borders or sit marginally
    // outside the mesh
    double best = std::numeric_limits<double>::max();
    int best_t = -1;
    for (int t = 0; t < tri_count(); ++t) {
        if (test_triangle(t, p)) return t;
        const auto& T = triangles[static_cast<size_t>(t)];
        const Vec2& a = nodes[static_cast<size_t>(T[0])];
        const Vec2& b = nodes[static_cast<size_t>(T[1])];
        const Vec2& c = nodes[static_cast<size_t>(T[2])];
        double area2 = (b - a).cross(c - a);
        double l1 = (b - p).cross(c - p) / area2;
        double l2 = (c - p).cross(a - p) / area2;
        double m = std::min({l1, l2, 1.0 - l1 - l2});
        if (-m < best) { best = -m; best_t = t; }
    }
    return best < 1e-6 ? best_t : -1;
}

Mesh triangulate(const Domain& domain, double h_target) {
    if (h_target <= 0.0)
        throw std::invalid_argument("triangulate: h_target must be positive");
    double feasible = 0.5 * domain.diameter();
    if (h_target >= feasible) {
        std::ostringstream msg;
        msg << "triangulate: h_target=" << h_target
            << " too coarse for geometry; feasible targets are below " << feasible;
        throw std::invalid_argument(msg.str());
    }

    // boundary resampling: every polygon vertex is a node, edges split into
    // segments of length <= h_target
    std::vector<Vec2> bpts;
    std::vector<double> bs;
    size_t nv = domain.vertices.size();
    double s_acc = 0.0;
    for (size_t i = 0; i < nv; ++i) {
        const Vec2& a = domain.vertices[i];
        const Vec2& b = domain.vertices[(i + 1) % nv];
        double len = (b - a).norm();
        int m = std::max(1, static_cast<int>(std::ceil(len / h_target - 1e-12)));
        for (int j = 0; j < m; ++j) {
            double t = static_cast<double>(j) / m;
            bpts.push_back(a + t * (b - a));
            bs.push_back(s_acc + t * len);
        }
        s_acc += len;
    }

    for (int attempt = 0; attempt < 6; ++attempt) {
        // staggered interior lattice, kept clear of the boundary
        std::vector<Vec2> pts = bpts;
        Vec2 lo{std::numeric_limits<double>::max(), std::numeric_limits<double>::max()};
        Vec2 hi{-lo.x, -lo.y};
        for (const Vec2& p : domain.vertices) {
            lo.x = std::min(lo.x, p.x); lo.y = std::min(lo.y, p.y);
            hi.x = std::max(hi.x, p.x); hi.y = std::max(hi.y, p.y);
        }
        double dy = h_target * std::sqrt(3.0) / 2.0;
        int rows = static_cast<int>((hi.y - lo.y) / dy) + 2;
        int cols = static_cast<int>((hi.x - lo.x) / h_target) + 2;
        double clearance = 0.6 * h_target;
        double shift = attempt * h_target / 7.0; // nudges the lattice on retries
        Mesh mesh;
        mesh.domain = domain;
        for (int r = 0; r < rows; ++r) {
            double y = lo.y + (r + 0.5) * dy + shift;
            double xoff = ((r % 2 == 0) ? 0.5 * h_target : 0.0) + shift;
            for (int cidx = 0; cidx < cols; ++cidx) {
                double x = lo.x + xoff + cidx * h_target;
                Vec2 p{x, y};
                uint64_t key = (static_cast<uint64_t>(r) << 32) ^ static_cast<uint64_t>(cidx);
                p.x += 2e-4 * h_target * hash_jitter(key * 2 + 1);
                p.y += 2e-4 * h_target * hash_jitter(key * 2 + 2);
                if (!point_in_polygon(domain.vertices, p)) continue;
                if (mesh.distance_to_boundary(p) < clearance) continue;
                pts.push_back(p);
            }
        }

        auto tris = delaunay(pts);

        // keep triangles inside the polygon
        std::vector<std::array<int, 3>> kept;
        for (auto& T : tris) {
            Vec2 c = (pts[static_cast<size_t>(T[0])] + pts[static_cast<size_t>(T[1])] +
                      pts[static_cast<size_t>(T[2])]) / 3.0;
            if (!point_in_polygon(domain.vertices, c)) continue;
            Vec2 a = pts[static_cast<size_t>(T[0])];
            Vec2 b = pts[static_cast<size_t>(T[1])];
            Vec2 d = pts[static_cast<size_t>(T[2])];
            if ((b - a).cross(d - a) < 0.0) std::swap(T[1], T[2]);
            kept.push_back(T);
        }

        // conformity: every consecutive boundary pair must be a mesh edge
        int nb = static_cast<int>(bpts.size());
        std::vector<char> present(static_cast<size_t>(nb), 0);
        for (const auto& T : kept) {
            for (int e = 0; e < 3; ++e) {
                int u = T[static_cast<size_t>(e)], v = T[static_cast<size_t>((e + 1) % 3)];
                if (u < nb && v < nb) {
                    if ((u + 1) % nb == v) present[static_cast<size_t>(u)] = 1;
                    if ((v + 1) % nb == u) present[static_cast<size_t>(v)] = 1;
                }
            }
        }
        bool all_present = true;
        std::vector<Vec2> new_bpts;
        std::vector<double> new_bs;
        for (int i = 0; i < nb; ++i) {
            new_bpts.push_back(bpts[static_cast<size_t>(i)]);
            new_bs.push_back(bs[static_cast<size_t>(i)]);
            if (!present[static_cast<size_t>(i)]) {
                all_present = false;
                int j = (i + 1) % nb;
                new_bpts.push_back(0.5 * (bpts[static_cast<size_t>(i)] + bpts[static_cast<size_t>(j)]));
                double sj = (j == 0) ? domain.perimeter() : bs[static_cast<size_t>(j)];
                new_bs.push_back(0.5 * (bs[static_cast<size_t>(i)] + sj));
            }
        }
        if (!all_present) {
            bpts = std::move(new_bpts);
            bs = std::move(new_bs);
            continue;
        }

        // overlap guard: a degenerate Delaunay pass shows up as an area mismatch
        double kept_area = 0.0;
        for (const auto& T : kept) {
            const Vec2& a = pts[static_cast<size_t>(T[0])];
            const Vec2& b = pts[static_cast<size_t>(T[1])];
            const Vec2& d = pts[static_cast<size_t>(T[2])];
            kept_area += 0.5 * (b - a).cross(d - a);
        }
        if (std::abs(kept_area - domain.area()) > 1e-9 * domain.area()) continue;

        mesh.nodes = std::move(pts);
        mesh.triangles = std::move(kept);
        mesh.boundary_nodes.resize(static_cast<size_t>(nb));
        for (int i = 0; i < nb; ++i) mesh.boundary_nodes[static_cast<size_t>(i)] = i;
        mesh.boundary_s = bs;
        double hmax = 0.0;
        for (const auto& T : mesh.triangles) {
            for (int e = 0; e < 3; ++e) {
                double l = (mesh.nodes[static_cast<size_t>(T[static_cast<size_t>(e)])] -
                            mesh.nodes[static_cast<size_t>(T[static_cast<size_t>((e + 1) % 3)])]).norm();
                hmax = std::max(hmax, l);
            }
        }
        mesh.h = hmax;
        return mesh;
    }
    throw std::runtime_error("triangulate: failed to produce a conforming mesh after repairs");
}

BoundaryPartition partition_boundary(const Mesh& mesh,
                                     const std::vector<std::pair<double, double>>& gamma_spans) {
    double P = mesh.perimeter();
    int nb = mesh.boundary_count();
    if (nb < 3) throw std::invalid_argument("partition_boundary: mesh has no usable boundary");
    for (const auto& [a, b] : gamma_spans) {
        if (!(a >= -0.5 * P && b <= 1.5 * P) || !(a < b) || !(b - a < P + 1e-12))
            throw std::invalid_argument(
                "partition_boundary: spans must satisfy a < b with length below the perimeter");
    }

    auto wrap = [&](double x) { // into [0, P)
        double r = std::fmod(x, P);
        return r < 0.0 ? r + P : r;
    };

    // node-support cut points: midpoints between consecutive boundary nodes;
    // cuts[i] lies after node i along the boundary
    std::vector<double> cuts(static_cast<size_t>(nb));
    for (int i = 0; i < nb; ++i) {
        double si = mesh.boundary_s[static_cast<size_t>(i)];
        double sj = (i + 1 < nb) ? mesh.boundary_s[static_cast<size_t>(i + 1)] : P;
        cuts[static_cast<size_t>(i)] = 0.5 * (si + sj);
    }
    // snap to the nearest cut, as a signed displacement so span lengths are
    // preserved; ties break toward smaller arclength
    auto snap = [&](double x) {
        double bestd = std::numeric_limits<double>::max();
        for (double c : cuts) {
            double d = wrap(c - x);
            if (d > 0.5 * P) d -= P; // signed displacement in (-P/2, P/2]
            if (std::abs(d) < std::abs(bestd) - 1e-15 ||
                (std::abs(std::abs(d) - std::abs(bestd)) <= 1e-15 && d < bestd))
                bestd = d;
        }
        return x + bestd;
    };

    BoundaryFrame frame = boundary_frames(mesh);
    std::vector<char> flags(static_cast<size_t>(nb), 0);
    std::vector<std::pair<double, double>> snapped;
    for (const auto& [a, b] : gamma_spans) {
        double sa = snap(a), sb = snap(b);
        double len = sb - sa;
        if (len <= 1e-12) continue; // collapsed under snapping
        if (len >= P - 1e-12) len = P;
        snapped.emplace_back(sa, sb);
        // node i has support interval of length weights[i] starting at the
        // preceding cut; containment tested cyclically
        for (int i = 0; i < nb; ++i) {
            double lo = cuts[static_cast<size_t>((i + nb - 1) % nb)];
            if (i == 0) lo -= P;
            double off = wrap(lo - sa);
            if (off + frame.weights[static_cast<size_t>(i)] <= len + 1e-12 || len == P)
                flags[static_cast<size_t>(i)] = 1;
        }
    }

    BoundaryPartition part;
    part.gamma_spans = snapped;
    part.in_gamma = flags;
    for (int i = 0; i < nb; ++i) {
        if (flags[static_cast<size_t>(i)]) part.gamma_measure += frame.weights[static_cast<size_t>(i)];
        else part.gamma0_measure += frame.weights[static_cast<size_t>(i)];
    }
    if (part.gamma_measure <= 0.0 || part.gamma0_measure <= 0.0)
        throw std::invalid_argument(
            "partition_boundary: both Gamma and Gamma0 must have positive measure after snapping");
    return part;
}

BoundaryFrame boundary_frames(const Mesh& mesh) {
    int nb = mesh.boundary_count();
    BoundaryFrame f;
    f.tau.resize(static_cast<size_t>(nb));
    f.normal.resize(static_cast<size_t>(nb));
    f.weights.resize(static_cast<size_t>(nb));
    for (int i = 0; i < nb; ++i) {
        const Vec2& prev = mesh.nodes[static_cast<size_t>(mesh.boundary_nodes[static_cast<size_t>((i + nb - 1) % nb)])];
        const Vec2& cur = mesh.nodes[static_cast<size_t>(mesh.boundary_nodes[static_cast<size_t>(i)])];
        const Vec2& next = mesh.nodes[static_cast<size_t>(mesh.boundary_nodes[static_cast<size_t>((i + 1) % nb)])];
        Vec2 d1 = (cur - prev).normalized();
        Vec2 d2 = (next - cur).normalized();
        Vec2 t = (d1 + d2).normalized();
        f.tau[static_cast<size_t>(i)] = t;
        f.normal[static_cast<size_t>(i)] = {t.y, -t.x}; // tau = normal rotated by +pi/2
        f.weights[static_cast<size_t>(i)] = 0.5 * ((cur - prev).norm() + (next - cur).norm());
    }
    return f;
}

} // namespace robinucq
