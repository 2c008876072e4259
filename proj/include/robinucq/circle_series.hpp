#pragma once

#include <complex>
#include <string>
#include <vector>

#include "robinucq/vec2.hpp"

namespace robinucq {

/// Truncated Fourier series on the unit circle: coefficients c_k for
/// |k| <= N, evaluated/stored on the 2N+1 equispaced nodes
/// theta_j = 2*pi*j/(2N+1). Real-valued data satisfies c_{-k} = conj(c_k).
class CircleSeries {
public:
    static constexpr int kDefaultOrder = 256;

    CircleSeries() : CircleSeries(kDefaultOrder) {}
    explicit CircleSeries(int order)
        : order_(order), coeff_(static_cast<size_t>(2 * order + 1), Complex{0.0, 0.0}) {}

    int order() const { return order_; }
    int node_count() const { return 2 * order_ + 1; }
    double node_angle(int j) const;

    Complex coeff(int k) const { return coeff_[static_cast<size_t>(k + order_)]; }
    void set_coeff(int k, Complex c) { coeff_[static_cast<size_t>(k + order_)] = c; }

    /// Exact DFT of 2N+1 samples taken at the node angles.
    static CircleSeries from_samples(const std::vector<Complex>& samples);
    static CircleSeries from_real_samples(const std::vector<double>& samples);

    /// Values at the node angles (inverse DFT).
    std::vector<Complex> to_samples() const;
    std::vector<double> to_real_samples() const;

    Complex eval(double theta) const;

    bool is_real(double tol = 1e-10) const;
    double max_abs_coeff() const;

    /// Mean over the circle, i.e. c_0.
    Complex mean() const { return coeff(0); }

    CircleSeries resized(int new_order) const;

private:
    int order_;
    std::vector<Complex> coeff_; // index k + order_
};

/// Text persistence: lines `k re im`.
void write_series(std::ostream& os, const CircleSeries& s);
CircleSeries read_series(std::istream& is);
void write_series_file(const std::string& path, const CircleSeries& s);
CircleSeries read_series_file(const std::string& path);

} // namespace robinucq
