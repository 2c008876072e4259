#pragma once

#include <vector>

#include "robinucq/circle_series.hpp"

namespace robinucq {

/// Function on the disk described by its boundary series: either the
/// harmonic (Poisson) extension of the data, or a holomorphic function whose
/// negative-index coefficients vanish.
struct DiskFunction {
    enum class Kind { HarmonicExtension, Holomorphic };

    CircleSeries series;
    Kind kind = Kind::HarmonicExtension;

    /// Evaluation inside the disk: Poisson sum for harmonic extensions,
    /// truncated power series for holomorphic functions.
    Complex eval(Complex z) const;
};

/// Projects away negative-index coefficients (they must be small already:
/// aliasing only) and tags the result holomorphic.
DiskFunction make_holomorphic(const CircleSeries& s);

/// Harmonic extension of boundary data evaluated at |z| < 1:
/// sum c_k r^{|k|} e^{ik theta}.
Complex poisson_extend(const CircleSeries& s, Complex z);

/// Conjugate function: Fourier multiplier -i sgn(k), output mean zero.
CircleSeries conjugate_function(const CircleSeries& s);

/// Outer function with boundary modulus h, from positive samples of h at the
/// 2N+1 node angles. E_h(0) = exp(mean log h) > 0.
DiskFunction outer_function(const std::vector<double>& h_samples);

/// Hardy norm. For p = 2 the Parseval value sqrt(2 pi sum |c_k|^2);
/// otherwise the max over the supplied radii of the circle-mean quadrature,
/// with a monotonicity-in-rho consistency check.
double hardy_norm(const DiskFunction& f, double p, const std::vector<double>& radii = {});

/// Muckenhoupt A_2 characteristic of positive samples, the supremum of
/// (arc mean of w)(arc mean of 1/w) over all node-aligned arcs. Always >= 1.
double a2_constant(const std::vector<double>& w_samples);

/// Hardy-Littlewood maximal function over node-aligned arcs.
std::vector<double> hl_maximal(const std::vector<double>& phi_samples);

/// Nontangential maximal function M_alpha f per boundary node, sampled on a
/// fixed radial-cone grid inside |x - xi| < alpha (1 - |x|).
std::vector<double> nontangential_max(const DiskFunction& f, double alpha);

} // namespace robinucq
