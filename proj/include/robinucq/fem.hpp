#pragma once

#include <Eigen/Dense>
#include <Eigen/Sparse>

#include <functional>
#include <optional>
#include <utility>
#include <vector>

#include "robinucq/geometry.hpp"

namespace robinucq {

struct ScalarField {
    const Mesh* mesh = nullptr;
    Eigen::VectorXd values;

    double operator()(int node) const { return values(node); }
    /// Linear interpolation inside the element containing p.
    double at(const Vec2& p) const;
    /// Piecewise-constant gradient on element t.
    Vec2 gradient(int t) const;
};

/// Isotropic (scalar) or anisotropic (symmetric 2x2) nodal conductivity with
/// the ellipticity bounds c <= sigma <= 1/c (eigenvalue-wise).
class Conductivity {
public:
    static Conductivity constant(double sigma, int node_count);
    static Conductivity nodal(Eigen::VectorXd values);
    static Conductivity from_function(const Mesh& mesh, const std::function<double(Vec2)>& f);
    static Conductivity matrix_constant(double s11, double s12, double s22, int node_count);
    static Conductivity matrix_nodal(Eigen::VectorXd s11, Eigen::VectorXd s12, Eigen::VectorXd s22);

    bool isotropic() const { return iso_.has_value(); }
    int node_count() const;
    double scalar(int node) const { return (*iso_)(node); }
    const Eigen::VectorXd& scalar_values() const { return *iso_; }
    // entries of the symmetric matrix at a node (isotropic lifts to sigma*I)
    double s11(int node) const { return isotropic() ? (*iso_)(node) : (*m11_)(node); }
    double s12(int node) const { return isotropic() ? 0.0 : (*m12_)(node); }
    double s22(int node) const { return isotropic() ? (*iso_)(node) : (*m22_)(node); }

    /// Largest c with c <= eigenvalues <= 1/c at every node; throws on
    /// nonpositive data.
    double ellipticity() const { return ellipticity_; }

private:
    void validate();
    std::optional<Eigen::VectorXd> iso_;
    std::optional<Eigen::VectorXd> m11_, m12_, m22_;
    double ellipticity_ = 0.0;
};

struct BoundaryFunction {
    std::vector<double> values; // one per boundary node, ccw order

    int size() const { return static_cast<int>(values.size()); }
    double& operator[](int b) { return values[static_cast<size_t>(b)]; }
    double operator[](int b) const { return values[static_cast<size_t>(b)]; }
    static BoundaryFunction zero(int nb) { return {std::vector<double>(static_cast<size_t>(nb), 0.0)}; }
};

/// Forward Robin data: sigma grad u . n + lambda u = 0 on Gamma, flux g on
/// Gamma0. lambda >= 0 and not identically zero on Gamma.
struct RobinSpec {
    Conductivity sigma;
    BoundaryPartition partition;
    BoundaryFunction lambda; // zero off Gamma
    BoundaryFunction g;      // zero off Gamma0
};

enum class NeumannGauge { MeanZero, PointZero };

/// Energy solution of div(sigma grad u) = 0 with normal derivative g
/// (the paper's convention: g is d_n u, paired as <sigma g, psi>).
/// Compatibility: the sigma-weighted flux integral must vanish; a residual
/// below 1e-8 ||g|| ||sigma|| is projected out, larger ones are an error.
ScalarField solve_neumann(const Mesh& mesh, const Conductivity& sigma, const BoundaryFunction& g,
                          NeumannGauge gauge = NeumannGauge::MeanZero, Vec2 z0 = {0.0, 0.0});

ScalarField solve_robin(const RobinSpec& spec, const Mesh& mesh);

enum class FluxMass { Consistent, Lumped };

/// Variationally consistent boundary flux. Isotropic sigma returns the
/// normal derivative d_n u = (n . sigma grad u)/sigma; anisotropic returns
/// the conormal flux n . sigma grad u.
BoundaryFunction normal_derivative(const ScalarField& u, const Conductivity& sigma,
                                   FluxMass mass = FluxMass::Consistent);

/// Raw conormal flux n . sigma grad u (no division by sigma).
BoundaryFunction conormal_flux(const ScalarField& u, const Conductivity& sigma,
                               FluxMass mass = FluxMass::Consistent);

/// Centered periodic finite difference of a boundary trace in arclength.
BoundaryFunction tangential_derivative(const Mesh& mesh, const BoundaryFunction& trace);

/// sigma-harmonic conjugate: least-squares solution of
/// grad v = sigma rot(grad u), normalized to zero boundary mean. Requires an
/// isotropic sigma and a u whose conductivity residual is small.
ScalarField sigma_conjugate(const ScalarField& u, const Conductivity& sigma,
                            double curl_tol = 0.05);

double robin_energy_norm(const ScalarField& u, const Conductivity& sigma,
                         const BoundaryFunction& lambda, const BoundaryPartition& partition);

/// Fourier-collocation reference solution of the Robin problem on the unit
/// circle with sigma = 1: an independent oracle for the FEM path.
struct DiskOracle {
    std::vector<double> thetas; // dense collocation grid
    std::vector<double> u;      // trace on the circle
    std::vector<double> dnu;    // normal derivative on the circle
    double trace_at(double theta) const;
    double dnu_at(double theta) const;
};

/// modes: (k, amplitude) pairs describing g = sum amp cos(k theta) on
/// Gamma0; gamma_spans: angle intervals forming Gamma; lambda constant on
/// Gamma. resolution: collocation points (>= 8x the FEM boundary count).
DiskOracle disk_series_oracle(const std::vector<std::pair<int, double>>& modes,
                              double lambda_const,
                              const std::vector<std::pair<double, double>>& gamma_spans,
                              int resolution, int mode_cap = 0);

// --- assembly and norm helpers used across modules ---

Eigen::SparseMatrix<double> stiffness_matrix(const Mesh& mesh, const Conductivity& sigma);
Eigen::SparseMatrix<double> mass_matrix(const Mesh& mesh);
/// Consistent P1 mass on the closed boundary curve (size nb x nb).
Eigen::SparseMatrix<double> boundary_mass_matrix(const Mesh& mesh);

ScalarField interpolate(const Mesh& mesh, const std::function<double(Vec2)>& f);
BoundaryFunction boundary_trace(const ScalarField& u);
BoundaryFunction boundary_function_from(const Mesh& mesh, const std::function<double(Vec2)>& f);

double l2_norm(const ScalarField& u);
double w12_norm(const ScalarField& u);
double l2_error(const ScalarField& u, const std::function<double(Vec2)>& exact);
double boundary_l2(const Mesh& mesh, const BoundaryFunction& f);
double boundary_l2_on(const Mesh& mesh, const BoundaryFunction& f, const std::vector<char>& mask,
                      bool in_gamma);
/// Lumped boundary integral of f (optionally restricted to Gamma or Gamma0).
double boundary_integral(const Mesh& mesh, const BoundaryFunction& f,
                         const std::vector<char>* mask = nullptr, bool in_gamma = true);

/// Interior conductivity residual ||(K u)|_interior||_2, a discrete check
/// that u solves the equation away from the boundary.
double interior_residual(const ScalarField& u, const Conductivity& sigma);

/// Nodal average of the piecewise-constant element gradients.
std::pair<Eigen::VectorXd, Eigen::VectorXd> nodal_gradient(const ScalarField& u);

} // namespace robinucq
