#include "robinucq/disk_hardy.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace robinucq {

namespace {
constexpr double kTwoPi = 2.0 * std::numbers::pi;
}

Complex DiskFunction::eval(Complex z) const {
    if (std::abs(z) >= 1.0 + 1e-14)
        throw std::domain_error("DiskFunction::eval: point outside the open disk");
    if (kind == Kind::Holomorphic) {
        // Horner over nonnegative powers
        Complex acc{0.0, 0.0};
        for (int k = series.order(); k >= 0; --k) acc = acc * z + series.coeff(k);
        return acc;
    }
    return poisson_extend(series, z);
}

DiskFunction make_holomorphic(const CircleSeries& s) {
    CircleSeries proj = s;
    for (int k = 1; k <= s.order(); ++k) proj.set_coeff(-k, Complex{0.0, 0.0});
    return DiskFunction{proj, DiskFunction::Kind::Holomorphic};
}

Complex poisson_extend(const CircleSeries& s, Complex z) {
    double r = std::abs(z);
    if (r >= 1.0)
        throw std::domain_error("poisson_extend: requires |z| < 1");
    double theta = std::arg(z);
    Complex sum = s.coeff(0);
    double rk = 1.0;
    for (int k = 1; k <= s.order(); ++k) {
        rk *= r;
        sum += rk * (s.coeff(k) * std::polar(1.0, k * theta) +
                     s.coeff(-k) * std::polar(1.0, -k * theta));
    }
    return sum;
}

CircleSeries conjugate_function(const CircleSeries& s) {
    if (!s.is_real())
        throw std::invalid_argument("conjugate_function: input series must be real-valued");
    CircleSeries out(s.order());
    const Complex minus_i{0.0, -1.0};
    for (int k = 1; k <= s.order(); ++k) {
        out.set_coeff(k, minus_i * s.coeff(k));
        out.set_coeff(-k, -minus_i * s.coeff(-k));
    }
    out.set_coeff(0, Complex{0.0, 0.0}); // normalization v(0) = 0
    return out;
}

DiskFunction outer_function(const std::vector<double>& h_samples) {
    for (double h : h_samples)
        if (!(h > 0.0))
            throw std::invalid_argument(
                "outer_function: boundary modulus must be positive at every sample "
                "(log h has to be integrable on the circle)");
    std::vector<double> logh(h_samples.size());
    for (size_t i = 0; i < h_samples.size(); ++i) logh[i] = std::log(h_samples[i]);

    CircleSeries L = CircleSeries::from_real_samples(logh);
    CircleSeries Lt = conjugate_function(L);
    std::vector<double> lt = Lt.to_real_samples();

    std::vector<Complex> e_samples(h_samples.size());
    for (size_t i = 0; i < h_samples.size(); ++i)
        e_samples[i] = std::exp(Complex{logh[i], lt[i]});
    return make_holomorphic(CircleSeries::from_samples(e_samples));
}

double hardy_norm(const DiskFunction& f, double p, const std::vector<double>& radii) {
    if (p < 1.0)
        throw std::invalid_argument("hardy_norm: exponent must satisfy p >= 1");
    const CircleSeries& s = f.series;
    if (p == 2.0) {
        double sum = 0.0;
        for (int k = -s.order(); k <= s.order(); ++k) sum += std::norm(s.coeff(k));
        return std::sqrt(kTwoPi * sum);
    }
    if (f.kind != DiskFunction::Kind::Holomorphic)
        throw std::invalid_argument("hardy_norm: radius-sampled norms need a holomorphic input");
    if (radii.empty())
        throw std::invalid_argument("hardy_norm: supply radii for p != 2");
    std::vector<double> rs = radii;
    std::sort(rs.begin(), rs.end());
    int m = s.node_count();
    double best = 0.0, prev = -1.0;
    for (double rho : rs) {
        if (!(rho > 0.0 && rho < 1.0))
            throw std::invalid_argument("hardy_norm: radii must lie in (0,1)");
        // f on T_rho via scaled coefficients, circle-mean quadrature at the nodes
        CircleSeries scaled(s.order());
        double rk = 1.0;
        for (int k = 0; k <= s.order(); ++k) {
            scaled.set_coeff(k, s.coeff(k) * rk);
            rk *= rho;
        }
        std::vector<Complex> vals = scaled.to_samples();
        double integral = 0.0;
        for (const Complex& v : vals) integral += std::pow(std::abs(v), p);
        integral *= kTwoPi / m * rho; // dm on T_rho
        double val = std::pow(integral, 1.0 / p);
        if (prev >= 0.0 && val < prev * (1.0 - 1e-9))
            throw std::runtime_error("hardy_norm: circle means failed the monotonicity check");
        prev = val;
        best = std::max(best, val);
    }
    return best;
}

double a2_constant(const std::vector<double>& w_samples) {
    int m = static_cast<int>(w_samples.size());
    if (m < 3) throw std::invalid_argument("a2_constant: need at least 3 samples");
    for (double w : w_samples)
        if (!(w > 0.0)) throw std::invalid_argument("a2_constant: weight samples must be positive");

    // normalizing by w[0] keeps the characteristic scale-free; a constant
    // weight then yields exactly 1
    std::vector<double> pw(static_cast<size_t>(2 * m + 1), 0.0), pi(static_cast<size_t>(2 * m + 1), 0.0);
    for (int i = 0; i < 2 * m; ++i) {
        double w = w_samples[static_cast<size_t>(i % m)] / w_samples[0];
        pw[static_cast<size_t>(i + 1)] = pw[static_cast<size_t>(i)] + w;
        pi[static_cast<size_t>(i + 1)] = pi[static_cast<size_t>(i)] + 1.0 / w;
    }
    double sup = 1.0;
    for (int start = 0; start < m; ++start) {
        for (int len = 1; len <= m; ++len) {
            double mw = (pw[static_cast<size_t>(start + len)] - pw[static_cast<size_t>(start)]) / len;
            double mi = (pi[static_cast<size_t>(start + len)] - pi[static_cast<size_t>(start)]) / len;
            sup = std::max(sup, mw * mi);
        }
    }
    return sup;
}

std::vector<double> hl_maximal(const std::vector<double>& phi_samples) {
    int m = static_cast<int>(phi_samples.size());
    std::vector<double> prefix(static_cast<size_t>(3 * m + 1), 0.0);
    for (int i = 0; i < 3 * m; ++i)
        prefix[static_cast<size_t>(i + 1)] =
            prefix[static_cast<size_t>(i)] + std::abs(phi_samples[static_cast<size_t>(i % m)]);

    std::vector<double> out(static_cast<size_t>(m), 0.0);
    for (int i = 0; i < m; ++i) {
        double best = 0.0;
        // arcs [i-a, i+b] containing node i, total length <= m
        for (int a = 0; a < m; ++a) {
            int lo = i - a + m; // in doubled-prefix coordinates
            for (int b = 0; a + b + 1 <= m; ++b) {
                int len = a + b + 1;
                double mean = (prefix[static_cast<size_t>(lo + len)] - prefix[static_cast<size_t>(lo)]) / len;
                best = std::max(best, mean);
            }
        }
        out[static_cast<size_t>(i)] = best;
    }
    return out;
}

std::vector<double> nontangential_max(const DiskFunction& f, double alpha) {
    if (!(alpha > 1.0))
        throw std::domain_error("nontangential_max: aperture must satisfy alpha > 1");
    if (f.kind != DiskFunction::Kind::Holomorphic)
        throw std::invalid_argument("nontangential_max: input must be holomorphic");

    constexpr int kRadii = 16;
    constexpr int kOffsets = 33;
    int m = f.series.node_count();
    std::vector<double> out(static_cast<size_t>(m), 0.0);

    // distances to the boundary, log-spaced
    std::vector<double> dist(kRadii);
    for (int i = 0; i < kRadii; ++i)
        dist[static_cast<size_t>(i)] = 0.9 * std::pow(1e-3 / 0.9, i / double(kRadii - 1));

    double spread = std::sqrt(alpha * alpha - 1.0);
    for (int j = 0; j < m; ++j) {
        double theta = kTwoPi * j / m;
        Complex xi = std::polar(1.0, theta);
        double best = 0.0;
        for (int i = 0; i < kRadii; ++i) {
            double d = dist[static_cast<size_t>(i)];
            double rho = 1.0 - d;
            double half_width = 1.2 * spread * d / std::max(rho, 0.1);
            for (int k = 0; k < kOffsets; ++k) {
                double off = half_width * (2.0 * k / (kOffsets - 1) - 1.0);
                Complex x = std::polar(rho, theta + off);
                if (std::abs(x - xi) >= alpha * d) continue; // outside the cone
                best = std::max(best, std::abs(f.eval(x)));
            }
        }
        out[static_cast<size_t>(j)] = best;
    }
    return out;
}

} // namespace robinucq
