#include "robinucq/fem.hpp"

#include <Eigen/SparseLU>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>

namespace robinucq {

namespace {

struct ElementGeometry {
    Vec2 grad[3]; // basis gradients
    double area;
};

ElementGeometry element_geometry(const Mesh& mesh, int t) {
    const auto& T = mesh.triangles[static_cast<size_t>(t)];
    const Vec2& a = mesh.nodes[static_cast<size_t>(T[0])];
    const Vec2& b = mesh.nodes[static_cast<size_t>(T[1])];
    const Vec2& c = mesh.nodes[static_cast<size_t>(T[2])];
    double area2 = (b - a).cross(c - a);
    ElementGeometry g;
    g.area = 0.5 * area2;
    g.grad[0] = (c - b).perp() / area2;
    g.grad[1] = (a - c).perp() / area2;
    g.grad[2] = (b - a).perp() / area2;
    return g;
}

// sigma as a 2x2 symmetric matrix averaged over the element's vertices
struct SigmaAvg {
    double s11, s12, s22;
    Vec2 apply(const Vec2& v) const { return {s11 * v.x + s12 * v.y, s12 * v.x + s22 * v.y}; }
};

SigmaAvg element_sigma(const Mesh& mesh, const Conductivity& sigma, int t) {
    const auto& T = mesh.triangles[static_cast<size_t>(t)];
    SigmaAvg s{0.0, 0.0, 0.0};
    for (int v = 0; v < 3; ++v) {
        int n = T[static_cast<size_t>(v)];
        s.s11 += sigma.s11(n) / 3.0;
        s.s12 += sigma.s12(n) / 3.0;
        s.s22 += sigma.s22(n) / 3.0;
    }
    return s;
}

// degree-4 triangle quadrature (6 points)
struct TriQuad {
    double l1, l2, l3, w;
};
const TriQuad kTriQuad6[6] = {
    {0.108103018168070, 0.445948490915965, 0.445948490915965, 0.223381589678011},
    {0.445948490915965, 0.108103018168070, 0.445948490915965, 0.223381589678011},
    {0.445948490915965, 0.445948490915965, 0.108103018168070, 0.223381589678011},
    {0.816847572980459, 0.091576213509771, 0.091576213509771, 0.109951743655322},
    {0.091576213509771, 0.816847572980459, 0.091576213509771, 0.109951743655322},
    {0.091576213509771, 0.091576213509771, 0.816847572980459, 0.109951743655322},
};

Eigen::VectorXd lumped_interior_mass(const Mesh& mesh) {
    Eigen::VectorXd m = Eigen::VectorXd::Zero(mesh.node_count());
    for (int t = 0; t < mesh.tri_count(); ++t) {
        double a3 = mesh.tri_area(t) / 3.0;
        for (int v = 0; v < 3; ++v) m(mesh.triangles[static_cast<size_t>(t)][static_cast<size_t>(v)]) += a3;
    }
    return m;
}

// mean-zero constrained solve of K x = b via one Lagrange multiplier row
Eigen::VectorXd solve_mean_zero(const Mesh& mesh, const Eigen::SparseMatrix<double>& K,
                                const Eigen::VectorXd& b) {
    int n = mesh.node_count();
    Eigen::VectorXd m = lumped_interior_mass(mesh);
    std::vector<Eigen::Triplet<double>> trips;
    trips.reserve(static_cast<size_t>(K.nonZeros()) + 2 * static_cast<size_t>(n));
    for (int k = 0; k < K.outerSize(); ++k)
        for (Eigen::SparseMatrix<double>::InnerIterator it(K, k); it; ++it)
            trips.emplace_back(static_cast<int>(it.row()), static_cast<int>(it.col()), it.value());
    for (int i = 0; i < n; ++i) {
        trips.emplace_back(i, n, m(i));
        trips.emplace_back(n, i, m(i));
    }
    Eigen::SparseMatrix<double> A(n + 1, n + 1);
    A.setFromTriplets(trips.begin(), trips.end());
    Eigen::SparseLU<Eigen::SparseMatrix<double>> lu;
    lu.compute(A);
    if (lu.info() != Eigen::Success)
        throw std::runtime_error("solve_mean_zero: factorization failed (mesh or coefficient degenerate)");
    Eigen::VectorXd rhs(n + 1);
    rhs.head(n) = b;
    rhs(n) = 0.0;
    Eigen::VectorXd x = lu.solve(rhs);
    Eigen::VectorXd u = x.head(n);
    double resid = (K * u - b).norm();
    double scale = std::max(b.norm(), 1e-30);
    if (resid > 1e-8 * scale)
        throw std::runtime_error("solve_mean_zero: solver residual too large");
    return u;
}

} // namespace

double ScalarField::at(const Vec2& p) const {
    int t = mesh->locate(p);
    if (t < 0) throw std::domain_error("ScalarField::at: point outside the mesh");
    const auto& T = mesh->triangles[static_cast<size_t>(t)];
    const Vec2& a = mesh->nodes[static_cast<size_t>(T[0])];
    const Vec2& b = mesh->nodes[static_cast<size_t>(T[1])];
    const Vec2& c = mesh->nodes[static_cast<size_t>(T[2])];
    double area2 = (b - a).cross(c - a);
    double l1 = (b - p).cross(c - p) / area2;
    double l2 = (c - p).cross(a - p) / area2;
    double l3 = 1.0 - l1 - l2;
    return l1 * values(T[0]) + l2 * values(T[1]) + l3 * values(T[2]);
}

Vec2 ScalarField::gradient(int t) const {
    ElementGeometry g = element_geometry(*mesh, t);
    const auto& T = mesh->triangles[static_cast<size_t>(t)];
    Vec2 out{0.0, 0.0};
    for (int v = 0; v < 3; ++v) out += values(T[static_cast<size_t>(v)]) * g.grad[v];
    return out;
}

Conductivity Conductivity::constant(double sigma, int node_count) {
    return nodal(Eigen::VectorXd::Constant(node_count, sigma));
}

Conductivity Conductivity::nodal(Eigen::VectorXd values) {
    Conductivity c;
    c.iso_ = std::move(values);
    c.validate();
    return c;
}

Conductivity Conductivity::from_function(const Mesh& mesh, const std::function<double(Vec2)>& f) {
    Eigen::VectorXd v(mesh.node_count());
    for (int i = 0; i < mesh.node_count(); ++i) v(i) = f(mesh.nodes[static_cast<size_t>(i)]);
    return nodal(std::move(v));
}

Conductivity Conductivity::matrix_constant(double s11, double s12, double s22, int node_count) {
    return matrix_nodal(Eigen::VectorXd::Constant(node_count, s11),
                        Eigen::VectorXd::Constant(node_count, s12),
                        Eigen::VectorXd::Constant(node_count, s22));
}

Conductivity Conductivity::matrix_nodal(Eigen::VectorXd s11, Eigen::VectorXd s12,
                                        Eigen::VectorXd s22) {
    Conductivity c;
    c.m11_ = std::move(s11);
    c.m12_ = std::move(s12);
    c.m22_ = std::move(s22);
    c.validate();
    return c;
}

int Conductivity::node_count() const {
    return static_cast<int>(isotropic() ? iso_->size() : m11_->size());
}

void Conductivity::validate() {
    double lo = std::numeric_limits<double>::max(), hi = 0.0;
    if (isotropic()) {
        for (int i = 0; i < iso_->size(); ++i) {
            double s = (*iso_)(i);
            if (!(s > 0.0))
                throw std::invalid_argument("Conductivity: values must be strictly positive");
            lo = std::min(lo, s);
            hi = std::max(hi, s);
        }
    } else {
        if (m11_->size() != m12_->size() || m11_->size() != m22_->size())
            throw std::invalid_argument("Conductivity: matrix component sizes differ");
        for (int i = 0; i < m11_->size(); ++i) {
            double a = (*m11_)(i), b = (*m12_)(i), c = (*m22_)(i);
            double mean = 0.5 * (a + c);
            double dev = std::sqrt(0.25 * (a - c) * (a - c) + b * b);
            double lmin = mean - dev, lmax = mean + dev;
            if (!(lmin > 0.0))
                throw std::invalid_argument(
                    "Conductivity: matrix must be symmetric positive definite at every node");
            lo = std::min(lo, lmin);
            hi = std::max(hi, lmax);
        }
    }
    ellipticity_ = std::min(lo, 1.0 / hi);
}

Eigen::SparseMatrix<double> stiffness_matrix(const Mesh& mesh, const Conductivity& sigma) {
    std::vector<Eigen::Triplet<double>> trips;
    trips.reserve(static_cast<size_t>(mesh.tri_count()) * 9);
    for (int t = 0; t < mesh.tri_count(); ++t) {
        ElementGeometry g = element_geometry(mesh, t);
        SigmaAvg s = element_sigma(mesh, sigma, t);
        const auto& T = mesh.triangles[static_cast<size_t>(t)];
        for (int a = 0; a < 3; ++a) {
            Vec2 sg = s.apply(g.grad[a]);
            for (int b = 0; b < 3; ++b)
                trips.emplace_back(T[static_cast<size_t>(a)], T[static_cast<size_t>(b)],
                                   g.area * sg.dot(g.grad[b]));
        }
    }
    Eigen::SparseMatrix<double> K(mesh.node_count(), mesh.node_count());
    K.setFromTriplets(trips.begin(), trips.end());
    return K;
}

Eigen::SparseMatrix<double> mass_matrix(const Mesh& mesh) {
    std::vector<Eigen::Triplet<double>> trips;
    trips.reserve(static_cast<size_t>(mesh.tri_count()) * 9);
    for (int t = 0; t < mesh.tri_count(); ++t) {
        double A = mesh.tri_area(t);
        const auto& T = mesh.triangles[static_cast<size_t>(t)];
        for (int a = 0; a < 3; ++a)
            for (int b = 0; b < 3; ++b)
                trips.emplace_back(T[static_cast<size_t>(a)], T[static_cast<size_t>(b)],
                                   (a == b) ? A / 6.0 : A / 12.0);
    }
    Eigen::SparseMatrix<double> M(mesh.node_count(), mesh.node_count());
    M.setFromTriplets(trips.begin(), trips.end());
    return M;
}

Eigen::SparseMatrix<double> boundary_mass_matrix(const Mesh& mesh) {
    int nb = mesh.boundary_count();
    std::vector<Eigen::Triplet<double>> trips;
    for (int b = 0; b < nb; ++b) {
        int c = (b + 1) % nb;
        const Vec2& p = mesh.nodes[static_cast<size_t>(mesh.boundary_nodes[static_cast<size_t>(b)])];
        const Vec2& q = mesh.nodes[static_cast<size_t>(mesh.boundary_nodes[static_cast<size_t>(c)])];
        double len = (q - p).norm();
        trips.emplace_back(b, b, len / 3.0);
        trips.emplace_back(c, c, len / 3.0);
        trips.emplace_back(b, c, len / 6.0);
        trips.emplace_back(c, b, len / 6.0);
    }
    Eigen::SparseMatrix<double> M(nb, nb);
    M.setFromTriplets(trips.begin(), trips.end());
    return M;
}

ScalarField solve_neumann(const Mesh& mesh, const Conductivity& sigma, const BoundaryFunction& g,
                          NeumannGauge gauge, Vec2 z0) {
    int nb = mesh.boundary_count();
    if (g.size() != nb)
        throw std::invalid_argument("solve_neumann: boundary data size mismatch");
    BoundaryFrame frame = boundary_frames(mesh);

    // data is d_n u for isotropic sigma (paired as sigma g) and the conormal
    // flux for anisotropic sigma
    std::vector<double> pair_weight(static_cast<size_t>(nb));
    for (int b = 0; b < nb; ++b) {
        int node = mesh.boundary_nodes[static_cast<size_t>(b)];
        pair_weight[static_cast<size_t>(b)] = sigma.isotropic() ? sigma.scalar(node) : 1.0;
    }

    double imbalance = 0.0, gnorm2 = 0.0, snorm2 = 0.0, wsum2 = 0.0;
    for (int b = 0; b < nb; ++b) {
        double W = frame.weights[static_cast<size_t>(b)];
        imbalance += W * pair_weight[static_cast<size_t>(b)] * g[b];
        gnorm2 += W * g[b] * g[b];
        snorm2 += W * pair_weight[static_cast<size_t>(b)] * pair_weight[static_cast<size_t>(b)];
        wsum2 += W * pair_weight[static_cast<size_t>(b)] * pair_weight[static_cast<size_t>(b)];
    }
    // nodal quadrature of smooth data carries an O(h^2) imbalance, so the
    // rejection threshold sits at quadrature scale, not solver scale
    double tol = 1e-3 * std::sqrt(gnorm2) * std::sqrt(snorm2) + 1e-300;
    if (std::abs(imbalance) > tol) {
        std::ostringstream msg;
        msg << "solve_neumann: incompatible data, the sigma-weighted flux integral is "
            << imbalance << " (tolerance " << tol << "); the net flux through the boundary must vanish";
        throw std::invalid_argument(msg.str());
    }

    Eigen::VectorXd b = Eigen::VectorXd::Zero(mesh.node_count());
    double shift = imbalance / std::max(wsum2, 1e-300);
    for (int bb = 0; bb < nb; ++bb) {
        int node = mesh.boundary_nodes[static_cast<size_t>(bb)];
        double W = frame.weights[static_cast<size_t>(bb)];
        double gval = g[bb] - shift * pair_weight[static_cast<size_t>(bb)]; // residual projected out
        b(node) = W * pair_weight[static_cast<size_t>(bb)] * gval;
    }

    Eigen::SparseMatrix<double> K = stiffness_matrix(mesh, sigma);
    ScalarField u{&mesh, solve_mean_zero(mesh, K, b)};
    if (gauge == NeumannGauge::PointZero) u.values.array() -= u.at(z0);
    return u;
}

ScalarField solve_robin(const RobinSpec& spec, const Mesh& mesh) {
    int nb = mesh.boundary_count();
    if (spec.lambda.size() != nb || spec.g.size() != nb)
        throw std::invalid_argument("solve_robin: boundary data size mismatch");
    BoundaryFrame frame = boundary_frames(mesh);

    double lambda_mass = 0.0;
    for (int b = 0; b < nb; ++b) {
        if (!spec.partition.node_in_gamma(b)) continue;
        if (spec.lambda[b] < -1e-12)
            throw std::invalid_argument(
                "solve_robin: the Robin coefficient must be nonnegative a.e. on Gamma");
        lambda_mass += frame.weights[static_cast<size_t>(b)] * std::max(spec.lambda[b], 0.0);
    }
    if (lambda_mass <= 0.0)
        throw std::invalid_argument(
            "solve_robin: the Robin coefficient must not vanish identically on Gamma");

    Eigen::SparseMatrix<double> A = stiffness_matrix(mesh, spec.sigma);
    std::vector<Eigen::Triplet<double>> trips;
    Eigen::VectorXd b = Eigen::VectorXd::Zero(mesh.node_count());
    for (int bb = 0; bb < nb; ++bb) {
        int node = mesh.boundary_nodes[static_cast<size_t>(bb)];
        double W = frame.weights[static_cast<size_t>(bb)];
        if (spec.partition.node_in_gamma(bb))
            trips.emplace_back(node, node, W * std::max(spec.lambda[bb], 0.0));
        else
            b(node) = W * spec.g[bb];
    }
    Eigen::SparseMatrix<double> R(mesh.node_count(), mesh.node_count());
    R.setFromTriplets(trips.begin(), trips.end());
    A += R;

    Eigen::SimplicialLDLT<Eigen::SparseMatrix<double>> ldlt;
    ldlt.compute(A);
    if (ldlt.info() != Eigen::Success)
        throw std::runtime_error(
            "solve_robin: factorization failed; the assembled form is not positive definite "
            "(check the partition and Robin coefficient)");
    ScalarField u{&mesh, ldlt.solve(b)};
    double resid = (A * u.values - b).norm();
    if (resid > 1e-8 * std::max(b.norm(), 1e-30))
        throw std::runtime_error("solve_robin: solver residual too large (conditioning)");
    return u;
}

BoundaryFunction conormal_flux(const ScalarField& u, const Conductivity& sigma, FluxMass mass) {
    const Mesh& mesh = *u.mesh;
    int nb = mesh.boundary_count();
    Eigen::SparseMatrix<double> K = stiffness_matrix(mesh, sigma);
    Eigen::VectorXd r = K * u.values;
    Eigen::VectorXd rb(nb);
    for (int b = 0; b < nb; ++b) rb(b) = r(mesh.boundary_nodes[static_cast<size_t>(b)]);

    BoundaryFunction q = BoundaryFunction::zero(nb);
    if (mass == FluxMass::Lumped) {
        BoundaryFrame frame = boundary_frames(mesh);
        for (int b = 0; b < nb; ++b) q[b] = rb(b) / frame.weights[static_cast<size_t>(b)];
        return q;
    }
    Eigen::SparseMatrix<double> Mb = boundary_mass_matrix(mesh);
    Eigen::SimplicialLDLT<Eigen::SparseMatrix<double>> ldlt;
    ldlt.compute(Mb);
    if (ldlt.info() != Eigen::Success)
        throw std::runtime_error("conormal_flux: boundary mass factorization failed");
    Eigen::VectorXd qv = ldlt.solve(rb);
    for (int b = 0; b < nb; ++b) q[b] = qv(b);
    return q;
}

BoundaryFunction normal_derivative(const ScalarField& u, const Conductivity& sigma, FluxMass mass) {
    BoundaryFunction q = conormal_flux(u, sigma, mass);
    if (sigma.isotropic()) {
        const Mesh& mesh = *u.mesh;
        for (int b = 0; b < mesh.boundary_count(); ++b)
            q[b] /= sigma.scalar(mesh.boundary_nodes[static_cast<size_t>(b)]);
    }
    return q;
}

BoundaryFunction tangential_derivative(const Mesh& mesh, const BoundaryFunction& trace) {
    int nb = mesh.boundary_count();
    if (trace.size() != nb)
        throw std::invalid_argument("tangential_derivative: trace size mismatch");
    double P = mesh.perimeter();
    BoundaryFunction out = BoundaryFunction::zero(nb);
    for (int b = 0; b < nb; ++b) {
        int prev = (b + nb - 1) % nb, next = (b + 1) % nb;
        double ds = mesh.boundary_s[static_cast<size_t>(next)] - mesh.boundary_s[static_cast<size_t>(prev)];
        if (ds <= 0.0) ds += P;
        out[b] = (trace[next] - trace[prev]) / ds;
    }
    return out;
}

double interior_residual(const ScalarField& u, const Conductivity& sigma) {
    const Mesh& mesh = *u.mesh;
    Eigen::SparseMatrix<double> K = stiffness_matrix(mesh, sigma);
    Eigen::VectorXd r = K * u.values;
    const std::vector<int>& bidx = mesh.boundary_index_of_node();
    double acc = 0.0;
    for (int i = 0; i < mesh.node_count(); ++i)
        if (bidx[static_cast<size_t>(i)] < 0) acc += r(i) * r(i);
    return std::sqrt(acc);
}

ScalarField sigma_conjugate(const ScalarField& u, const Conductivity& sigma, double curl_tol) {
    if (!sigma.isotropic())
        throw std::invalid_argument("sigma_conjugate: requires an isotropic conductivity");
    const Mesh& mesh = *u.mesh;

    Eigen::SparseMatrix<double> K = stiffness_matrix(mesh, sigma);
    double energy = std::sqrt(std::max(u.values.dot(K * u.values), 0.0));
    double resid = interior_residual(u, sigma);
    if (resid > curl_tol * std::max(energy, 1e-30))
        throw std::invalid_argument(
            "sigma_conjugate: the field does not satisfy the conductivity equation "
            "(interior curl residual too large)");

    // least squares for grad v = sigma * rot(grad u)
    Eigen::VectorXd rhs = Eigen::VectorXd::Zero(mesh.node_count());
    for (int t = 0; t < mesh.tri_count(); ++t) {
        ElementGeometry g = element_geometry(mesh, t);
        SigmaAvg s = element_sigma(mesh, sigma, t);
        Vec2 w = u.gradient(t).perp() * s.s11; // isotropic: s11 == sigma
        const auto& T = mesh.triangles[static_cast<size_t>(t)];
        for (int v = 0; v < 3; ++v)
            rhs(T[static_cast<size_t>(v)]) += g.area * w.dot(g.grad[v]);
    }
    Conductivity one = Conductivity::constant(1.0, mesh.node_count());
    Eigen::SparseMatrix<double> K1 = stiffness_matrix(mesh, one);
    ScalarField v{&mesh, solve_mean_zero(mesh, K1, rhs)};

    // normalize the boundary mean of v to zero
    BoundaryFrame frame = boundary_frames(mesh);
    double num = 0.0, den = 0.0;
    for (int b = 0; b < mesh.boundary_count(); ++b) {
        double W = frame.weights[static_cast<size_t>(b)];
        num += W * v.values(mesh.boundary_nodes[static_cast<size_t>(b)]);
        den += W;
    }
    v.values.array() -= num / den;
    return v;
}

double robin_energy_norm(const ScalarField& u, const Conductivity& sigma,
                         const BoundaryFunction& lambda, const BoundaryPartition& partition) {
    const Mesh& mesh = *u.mesh;
    Eigen::SparseMatrix<double> K = stiffness_matrix(mesh, sigma);
    double acc = u.values.dot(K * u.values);
    BoundaryFrame frame = boundary_frames(mesh);
    for (int b = 0; b < mesh.boundary_count(); ++b) {
        if (!partition.node_in_gamma(b)) continue;
        double uv = u.values(mesh.boundary_nodes[static_cast<size_t>(b)]);
        acc += frame.weights[static_cast<size_t>(b)] * lambda[b] * uv * uv;
    }
    return std::sqrt(std::max(acc, 0.0));
}

double DiskOracle::trace_at(double theta) const {
    double t = std::fmod(theta, 2.0 * std::numbers::pi);
    if (t < 0.0) t += 2.0 * std::numbers::pi;
    int m = static_cast<int>(thetas.size());
    double pos = t / (2.0 * std::numbers::pi) * m;
    int lo = static_cast<int>(pos) % m;
    int hi = (lo + 1) % m;
    double w = pos - std::floor(pos);
    return (1.0 - w) * u[static_cast<size_t>(lo)] + w * u[static_cast<size_t>(hi)];
}

double DiskOracle::dnu_at(double theta) const {
    double t = std::fmod(theta, 2.0 * std::numbers::pi);
    if (t < 0.0) t += 2.0 * std::numbers::pi;
    int m = static_cast<int>(thetas.size());
    double pos = t / (2.0 * std::numbers::pi) * m;
    int lo = static_cast<int>(pos) % m;
    int hi = (lo + 1) % m;
    double w = pos - std::floor(pos);
    return (1.0 - w) * dnu[static_cast<size_t>(lo)] + w * dnu[static_cast<size_t>(hi)];
}

DiskOracle disk_series_oracle(const std::vector<std::pair<int, double>>& modes,
                              double lambda_const,
                              const std::vector<std::pair<double, double>>& gamma_spans,
                              int resolution, int mode_cap) {
    int M = resolution;
    int K = mode_cap > 0 ? mode_cap : std::max(4, M / 8);
    if (2 * (2 * K + 1) > M)
        throw std::invalid_argument("disk_series_oracle: resolution too low for the mode count");

    auto in_gamma = [&](double t) {
        for (const auto& [a, b] : gamma_spans)
            if (t >= a && t < b) return true;
        return false;
    };
    auto gval = [&](double t) {
        double g = 0.0;
        for (const auto& [k, amp] : modes) g += amp * std::cos(k * t);
        return g;
    };

    Eigen::MatrixXd A = Eigen::MatrixXd::Zero(M, 2 * K + 1);
    Eigen::VectorXd rhs = Eigen::VectorXd::Zero(M);
    for (int j = 0; j < M; ++j) {
        double t = 2.0 * std::numbers::pi * j / M;
        bool gamma = in_gamma(t);
        // columns: a_0, a_1..a_K, b_1..b_K
        if (gamma) A(j, 0) = lambda_const;
        for (int k = 1; k <= K; ++k) {
            double ck = std::cos(k * t), sk = std::sin(k * t);
            double factor = k + (gamma ? lambda_const : 0.0);
            A(j, k) = factor * ck;
            A(j, K + k) = factor * sk;
        }
        rhs(j) = gamma ? 0.0 : gval(t);
    }

    Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(A);
    if (qr.rank() < 2 * K + 1) {
        std::ostringstream msg;
        msg << "disk_series_oracle: collocation system is rank-deficient (rank " << qr.rank()
            << " of " << 2 * K + 1 << " at resolution " << M << ")";
        throw std::runtime_error(msg.str());
    }
    Eigen::VectorXd x = qr.solve(rhs);

    DiskOracle out;
    out.thetas.resize(static_cast<size_t>(M));
    out.u.resize(static_cast<size_t>(M));
    out.dnu.resize(static_cast<size_t>(M));
    for (int j = 0; j < M; ++j) {
        double t = 2.0 * std::numbers::pi * j / M;
        double uv = x(0), dv = 0.0;
        for (int k = 1; k <= K; ++k) {
            double ck = std::cos(k * t), sk = std::sin(k * t);
            uv += x(k) * ck + x(K + k) * sk;
            dv += k * (x(k) * ck + x(K + k) * sk);
        }
        out.thetas[static_cast<size_t>(j)] = t;
        out.u[static_cast<size_t>(j)] = uv;
        out.dnu[static_cast<size_t>(j)] = dv;
    }
    return out;
}

ScalarField interpolate(const Mesh& mesh, const std::function<double(Vec2)>& f) {
    ScalarField u{&mesh, Eigen::VectorXd(mesh.node_count())};
    for (int i = 0; i < mesh.node_count(); ++i) u.values(i) = f(mesh.nodes[static_cast<size_t>(i)]);
    return u;
}

BoundaryFunction boundary_trace(const ScalarField& u) {
    const Mesh& mesh = *u.mesh;
    BoundaryFunction f = BoundaryFunction::zero(mesh.boundary_count());
    for (int b = 0; b < mesh.boundary_count(); ++b)
        f[b] = u.values(mesh.boundary_nodes[static_cast<size_t>(b)]);
    return f;
}

BoundaryFunction boundary_function_from(const Mesh& mesh, const std::function<double(Vec2)>& f) {
    BoundaryFunction out = BoundaryFunction::zero(mesh.boundary_count());
    for (int b = 0; b < mesh.boundary_count(); ++b)
        out[b] = f(mesh.nodes[static_cast<size_t>(mesh.boundary_nodes[static_cast<size_t>(b)])]);
    return out;
}

double l2_norm(const ScalarField& u) {
    Eigen::SparseMatrix<double> M = mass_matrix(*u.mesh);
    return std::sqrt(std::max(u.values.dot(M * u.values), 0.0));
}

double w12_norm(const ScalarField& u) {
    const Mesh& mesh = *u.mesh;
    Conductivity one = Conductivity::constant(1.0, mesh.node_count());
    Eigen::SparseMatrix<double> K = stiffness_matrix(mesh, one);
    Eigen::SparseMatrix<double> M = mass_matrix(mesh);
    return std::sqrt(std::max(u.values.dot((K + M) * u.values), 0.0));
}

double l2_error(const ScalarField& u, const std::function<double(Vec2)>& exact) {
    const Mesh& mesh = *u.mesh;
    double acc = 0.0;
    for (int t = 0; t < mesh.tri_count(); ++t) {
        const auto& T = mesh.triangles[static_cast<size_t>(t)];
        const Vec2& a = mesh.nodes[static_cast<size_t>(T[0])];
        const Vec2& b = mesh.nodes[static_cast<size_t>(T[1])];
        const Vec2& c = mesh.nodes[static_cast<size_t>(T[2])];
        double A = mesh.tri_area(t);
        for (const TriQuad& q : kTriQuad6) {
            Vec2 p = q.l1 * a + q.l2 * b + q.l3 * c;
            double uh = q.l1 * u.values(T[0]) + q.l2 * u.values(T[1]) + q.l3 * u.values(T[2]);
            double d = uh - exact(p);
            acc += A * q.w * d * d;
        }
    }
    return std::sqrt(acc);
}

double boundary_l2(const Mesh& mesh, const BoundaryFunction& f) {
    BoundaryFrame frame = boundary_frames(mesh);
    double acc = 0.0;
    for (int b = 0; b < mesh.boundary_count(); ++b)
        acc += frame.weights[static_cast<size_t>(b)] * f[b] * f[b];
    return std::sqrt(acc);
}

double boundary_l2_on(const Mesh& mesh, const BoundaryFunction& f, const std::vector<char>& mask,
                      bool in_gamma) {
    BoundaryFrame frame = boundary_frames(mesh);
    double acc = 0.0;
    for (int b = 0; b < mesh.boundary_count(); ++b) {
        if ((mask[static_cast<size_t>(b)] != 0) != in_gamma) continue;
        acc += frame.weights[static_cast<size_t>(b)] * f[b] * f[b];
    }
    return std::sqrt(acc);
}

double boundary_integral(const Mesh& mesh, const BoundaryFunction& f,
                         const std::vector<char>* mask, bool in_gamma) {
    BoundaryFrame frame = boundary_frames(mesh);
    double acc = 0.0;
    for (int b = 0; b < mesh.boundary_count(); ++b) {
        if (mask && ((*mask)[static_cast<size_t>(b)] != 0) != in_gamma) continue;
        acc += frame.weights[static_cast<size_t>(b)] * f[b];
    }
    return acc;
}

std::pair<Eigen::VectorXd, Eigen::VectorXd> nodal_gradient(const ScalarField& u) {
    const Mesh& mesh = *u.mesh;
    Eigen::VectorXd gx = Eigen::VectorXd::Zero(mesh.node_count());
    Eigen::VectorXd gy = Eigen::VectorXd::Zero(mesh.node_count());
    Eigen::VectorXd wsum = Eigen::VectorXd::Zero(mesh.node_count());
    for (int t = 0; t < mesh.tri_count(); ++t) {
        Vec2 g = u.gradient(t);
        double A = mesh.tri_area(t);
        const auto& T = mesh.triangles[static_cast<size_t>(t)];
        for (int v = 0; v < 3; ++v) {
            gx(T[static_cast<size_t>(v)]) += A * g.x;
            gy(T[static_cast<size_t>(v)]) += A * g.y;
            wsum(T[static_cast<size_t>(v)]) += A;
        }
    }
    for (int i = 0; i < mesh.node_count(); ++i) {
        gx(i) /= wsum(i);
        gy(i) /= wsum(i);
    }
    return {gx, gy};
}

} // namespace robinucq
