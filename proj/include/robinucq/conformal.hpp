#pragma once

#include <iosfwd>
#include <utility>
#include <vector>

#include "robinucq/circle_series.hpp"
#include "robinucq/geometry.hpp"

namespace robinucq {

/// Schwarz-Christoffel map from the unit disk onto a polygon:
///   phi(z) = shift + scale * Integral_0^z prod_k (1 - w/z_k)^{-beta_k} dw,
/// with prevertices z_k = exp(i theta_k) strictly increasing ccw and turning
/// exponents beta_k summing to 2. Normalized so phi(0) is the polygon
/// centroid.
class ConformalMap {
public:
    std::vector<double> prevertex_angles; // in (0, 2*pi], one per vertex
    std::vector<double> turning;          // exterior-angle exponents
    Complex scale{1.0, 0.0};
    Complex shift{0.0, 0.0};
    std::vector<Complex> vertices;        // target polygon, ccw

    int vertex_count() const { return static_cast<int>(vertices.size()); }

    Complex map(Complex z) const;               // |z| <= 1
    Complex derivative(Complex z) const;        // phi'(z), away from prevertices
    Complex derivative_sqrt(Complex z) const;   // single-valued branch of sqrt(phi')
    Complex boundary_point(double theta) const; // phi(e^{i theta})

    /// Boundary correspondence: arclength along the polygon (origin at
    /// vertex 0, ccw) as a monotone function of the prevertex angle.
    double arclength_from_angle(double theta) const;
    double angle_from_arclength(double s) const;

    /// Rebuilds cached integrals after loading or editing the raw fields.
    void finalize();

private:
    friend ConformalMap schwarz_christoffel(const Domain& domain);

    std::vector<Complex> f_prevertex_;  // SC integral at each prevertex
    std::vector<double> theta_knots_;   // correspondence table
    std::vector<double> s_knots_;
    double theta_origin_ = 0.0;         // angle of the prevertex of vertex 0
};

/// Solves the parameter problem by damped Newton on side-length ratios plus
/// the centering condition phi(0) = centroid. Throws with the residual on
/// non-convergence.
ConformalMap schwarz_christoffel(const Domain& domain);

Complex map_derivative(const ConformalMap& map, Complex z);

/// Quadrature of |phi'| over the preimage of a union of boundary arcs given
/// in arclength coordinates; equals the arclength of E.
double arclength_pullback(const ConformalMap& map,
                          const std::vector<std::pair<double, double>>& arcs);

/// Smirnov norm of boundary data: the H^2 (Parseval) norm of
/// (f o phi) (phi')^{1/2} sampled on the circle. Data is given at arclength
/// positions on the polygon boundary and interpolated periodically.
double smirnov_norm(const std::vector<double>& s_positions, const std::vector<Complex>& f_values,
                    const ConformalMap& map, int order = CircleSeries::kDefaultOrder);

struct A2Pair {
    double of_derivative = 0.0;
    double of_reciprocal = 0.0;
};

/// Muckenhoupt characteristics of |phi'| and 1/|phi'| sampled on the circle.
A2Pair a2_of_derivative(const ConformalMap& map, int order = CircleSeries::kDefaultOrder);

/// Disk quadrature of |phi'|^2 (equals the polygon area).
double area_identity(const ConformalMap& map);

/// Circle quadrature of |phi'| (equals the polygon perimeter).
double perimeter_identity(const ConformalMap& map);

void write_map(std::ostream& os, const ConformalMap& map);
ConformalMap read_map(std::istream& is);
void write_map_file(const std::string& path, const ConformalMap& map);
ConformalMap read_map_file(const std::string& path);

} // namespace robinucq
