#include "robinucq/conformal.hpp"

#include "robinucq/disk_hardy.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <numbers>
#include <sstream>
#include <stdexcept>

namespace robinucq {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

struct Rule {
    std::vector<double> nodes;   // in (0,1)
    std::vector<double> weights; // for integral over [0,1] incl. weight factor
};

// Gauss rule for int_0^1 u^b f(u) du via Golub-Welsch on the Jacobi
// recurrence with weight (1-x)^0 (1+x)^b on [-1,1].
Rule gauss_jacobi01(int n, double b) {
    double a = 0.0;
    Eigen::MatrixXd J = Eigen::MatrixXd::Zero(n, n);
    for (int j = 0; j < n; ++j) {
        double num = b * b - a * a;
        double den = (2.0 * j + a + b) * (2.0 * j + a + b + 2.0);
        J(j, j) = (j == 0) ? (b - a) / (a + b + 2.0) : (den != 0.0 ? num / den : 0.0);
    }
    for (int j = 1; j < n; ++j) {
        double beta;
        if (j == 1)
            beta = 4.0 * (a + 1.0) * (b + 1.0) /
                   ((a + b + 2.0) * (a + b + 2.0) * (a + b + 3.0));
        else {
            double t = 2.0 * j + a + b;
            beta = 4.0 * j * (j + a) * (j + b) * (j + a + b) / (t * t * (t + 1.0) * (t - 1.0));
        }
        J(j, j - 1) = J(j - 1, j) = std::sqrt(beta);
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(J);
    double mu0 = std::exp((a + b + 1.0) * std::numbers::ln2 + std::lgamma(a + 1.0) +
                          std::lgamma(b + 1.0) - std::lgamma(a + b + 2.0));
    Rule r;
    r.nodes.resize(static_cast<size_t>(n));
    r.weights.resize(static_cast<size_t>(n));
    double scale = std::pow(2.0, -(b + 1.0)); // [-1,1] -> [0,1] with weight u^b
    for (int i = 0; i < n; ++i) {
        r.nodes[static_cast<size_t>(i)] = 0.5 * (es.eigenvalues()(i) + 1.0);
        double v0 = es.eigenvectors()(0, i);
        r.weights[static_cast<size_t>(i)] = mu0 * v0 * v0 * scale;
    }
    return r;
}

const Rule& gauss_legendre01() {
    static Rule rule = gauss_jacobi01(16, 0.0);
    return rule;
}

const Rule& jacobi_rule_for(double b) {
    static std::map<long long, Rule> cache;
    long long key = llround(b * 1e12);
    auto it = cache.find(key);
    if (it == cache.end()) it = cache.emplace(key, gauss_jacobi01(16, b)).first;
    return it->second;
}

struct ScData {
    std::vector<Complex> prevertices;
    std::vector<double> turning;

    Complex product(Complex z, int skip = -1) const {
        Complex acc{0.0, 0.0};
        for (size_t k = 0; k < prevertices.size(); ++k) {
            if (static_cast<int>(k) == skip) continue;
            acc -= turning[k] * std::log(1.0 - z / prevertices[k]);
        }
        return std::exp(acc);
    }

    double min_dist(Complex z, int skip = -1) const {
        double d = std::numeric_limits<double>::max();
        for (size_t k = 0; k < prevertices.size(); ++k) {
            if (static_cast<int>(k) == skip) continue;
            d = std::min(d, std::abs(z - prevertices[k]));
        }
        return d;
    }

    // plain integral over a segment staying away from the prevertices,
    // subdividing while a panel is long relative to its singularity distance
    Complex segment_gl(Complex a, Complex b, int depth = 0) const {
        Complex mid = 0.5 * (a + b);
        double len = std::abs(b - a);
        double d = std::min({min_dist(a), min_dist(mid), min_dist(b)});
        if (len <= 0.75 * d || depth > 48 || len < 1e-14) {
            const Rule& gl = gauss_legendre01();
            Complex acc{0.0, 0.0};
            for (size_t i = 0; i < gl.nodes.size(); ++i)
                acc += gl.weights[i] * product(a + gl.nodes[i] * (b - a));
            return acc * (b - a);
        }
        return segment_gl(a, mid, depth + 1) + segment_gl(mid, b, depth + 1);
    }

    // integral from prevertex k toward q along the chord, Gauss-Jacobi at the
    // singular end and compound Gauss-Legendre beyond
    Complex half_from_prevertex(int k, Complex q) const {
        Complex p = prevertices[static_cast<size_t>(k)];
        double beta = turning[static_cast<size_t>(k)];
        Complex dir = q - p;
        double len = std::abs(dir);
        if (len < 1e-15) return {0.0, 0.0};

        // shrink the Jacobi panel until other prevertices keep their distance
        double x1 = 1.0;
        for (int iter = 0; iter < 60; ++iter) {
            double d = std::min(min_dist(p + x1 * dir, k), min_dist(p + 0.5 * x1 * dir, k));
            if (x1 * len <= d || x1 < 1e-10) break;
            x1 *= 0.5;
        }

        Complex c = -dir / p; // (1 - zeta/p) = c u along the chord
        const Rule& gj = jacobi_rule_for(-beta);
        Complex acc{0.0, 0.0};
        for (size_t i = 0; i < gj.nodes.size(); ++i) {
            double u = x1 * gj.nodes[i];
            acc += gj.weights[i] * product(p + u * dir, k);
        }
        Complex head = dir * std::pow(x1, 1.0 - beta) * std::exp(-beta * std::log(c)) * acc;
        if (x1 >= 1.0) return head;
        return head + segment_gl(p + x1 * dir, q);
    }

    // int |phi'-product| * mult(theta) dtheta over [t1,t2] inside one
    // prevertex gap; sing1/sing2 give the prevertex indices abutting the
    // ends (or -1)
    template <typename Mult>
    double arc_abs(double t1, double t2, int sing1, int sing2, Mult&& mult) const {
        double len = t2 - t1;
        if (len <= 1e-15) return 0.0;
        double cut1 = sing1 >= 0 ? 0.3 * len : 0.0;
        double cut2 = sing2 >= 0 ? 0.3 * len : 0.0;
        double acc = 0.0;
        if (sing1 >= 0) acc += arc_abs_jacobi(t1, cut1, sing1, +1.0, mult);
        if (sing2 >= 0) acc += arc_abs_jacobi(t2, cut2, sing2, -1.0, mult);
        acc += arc_abs_gl(t1 + cut1, t2 - cut2, mult);
        return acc;
    }

    double arc_abs(double t1, double t2, int sing1, int sing2) const {
        return arc_abs(t1, t2, sing1, sing2, [](double) { return 1.0; });
    }

    // Gauss-Jacobi piece starting at a prevertex angle t0 extending delta in
    // direction sgn
    template <typename Mult>
    double arc_abs_jacobi(double t0, double delta, int k, double sgn, Mult&& mult) const {
        if (delta <= 0.0) return 0.0;
        double beta = turning[static_cast<size_t>(k)];
        const Rule& gj = jacobi_rule_for(-beta);
        double acc = 0.0;
        for (size_t i = 0; i < gj.nodes.size(); ++i) {
            double dt = delta * gj.nodes[i];
            double t = t0 + sgn * dt;
            Complex z = std::polar(1.0, t);
            double rest = std::abs(product(z, k));
            // |1 - z/z_k| = 2 sin(dt/2); the dt^{-beta} part sits in the rule
            double corr = std::pow(2.0 * std::sin(0.5 * dt) / dt, -beta);
            acc += gj.weights[i] * rest * corr * mult(t);
        }
        return std::pow(delta, 1.0 - beta) * acc;
    }

    template <typename Mult>
    double arc_abs_gl(double t1, double t2, Mult&& mult, int depth = 0) const {
        if (t2 - t1 <= 1e-15) return 0.0;
        double mid = 0.5 * (t1 + t2);
        double d = std::min({min_dist(std::polar(1.0, t1)), min_dist(std::polar(1.0, mid)),
                             min_dist(std::polar(1.0, t2))});
        if ((t2 - t1) <= 0.75 * d || depth > 40) {
            const Rule& gl = gauss_legendre01();
            double acc = 0.0;
            for (size_t i = 0; i < gl.nodes.size(); ++i) {
                double t = t1 + gl.nodes[i] * (t2 - t1);
                acc += gl.weights[i] * std::abs(product(std::polar(1.0, t))) * mult(t);
            }
            return acc * (t2 - t1);
        }
        return arc_abs_gl(t1, mid, mult, depth + 1) + arc_abs_gl(mid, t2, mult, depth + 1);
    }
};

ScData sc_data(const ConformalMap& m) {
    ScData d;
    d.turning = m.turning;
    d.prevertices.reserve(m.prevertex_angles.size());
    for (double t : m.prevertex_angles) d.prevertices.push_back(std::polar(1.0, t));
    return d;
}

double wrap_angle(double t) { // into (0, 2*pi]
    double r = std::fmod(t, kTwoPi);
    if (r <= 0.0) r += kTwoPi;
    return r;
}

// sample grid on the circle with an irrational-fraction offset so prevertex
// angles (rational multiples of pi on symmetric polygons) are never hit
double sample_angle(int j, int m, const std::vector<double>& prevertex_angles) {
    double t = kTwoPi * (j + 0.4142135623730951) / m;
    for (int guard = 0; guard < 8; ++guard) {
        double dmin = std::numeric_limits<double>::max();
        for (double a : prevertex_angles) {
            double dt = std::abs(wrap_angle(t) - a);
            dmin = std::min(dmin, std::min(dt, kTwoPi - dt));
        }
        if (dmin > 1e-9) break;
        t += 1e-7;
    }
    return t;
}

} // namespace

Complex ConformalMap::derivative(Complex z) const {
    ScData d = sc_data(*this);
    if (d.min_dist(z) < 1e-12)
        throw std::domain_error("ConformalMap::derivative: evaluation at a prevertex");
    return scale * d.product(z);
}

Complex ConformalMap::derivative_sqrt(Complex z) const {
    ScData d = sc_data(*this);
    if (d.min_dist(z) < 1e-12)
        throw std::domain_error("ConformalMap::derivative_sqrt: evaluation at a prevertex");
    Complex acc{0.0, 0.0};
    for (size_t k = 0; k < d.prevertices.size(); ++k)
        acc -= 0.5 * turning[k] * std::log(1.0 - z / d.prevertices[k]);
    return std::sqrt(scale) * std::exp(acc);
}

Complex map_derivative(const ConformalMap& map, Complex z) { return map.derivative(z); }

Complex ConformalMap::map(Complex z) const {
    double r = std::abs(z);
    if (r > 1.0 + 1e-12)
        throw std::domain_error("ConformalMap::map: point outside the closed disk");
    if (r >= 1.0 - 1e-12) return boundary_point(std::arg(z));
    ScData d = sc_data(*this);
    return shift + scale * d.segment_gl({0.0, 0.0}, z);
}

Complex ConformalMap::boundary_point(double theta) const {
    double t = wrap_angle(theta);
    int n = vertex_count();
    // nearest prevertex as anchor
    int best = 0;
    double bd = std::numeric_limits<double>::max();
    for (int k = 0; k < n; ++k) {
        double dt = std::abs(t - prevertex_angles[static_cast<size_t>(k)]);
        dt = std::min(dt, kTwoPi - dt);
        if (dt < bd) { bd = dt; best = k; }
    }
    if (bd < 1e-14) return vertices[static_cast<size_t>(best)];
    ScData d = sc_data(*this);
    Complex q = std::polar(1.0, t);
    Complex F = f_prevertex_[static_cast<size_t>(best)] + d.half_from_prevertex(best, q);
    return shift + scale * F;
}

double ConformalMap::arclength_from_angle(double theta) const {
    double t = wrap_angle(theta);
    auto it = std::upper_bound(theta_knots_.begin(), theta_knots_.end(), t);
    size_t hi = static_cast<size_t>(it - theta_knots_.begin());
    if (hi == 0) return s_knots_.front();
    if (hi >= theta_knots_.size()) return s_knots_.back();
    double t0 = theta_knots_[hi - 1], t1 = theta_knots_[hi];
    double w = (t - t0) / (t1 - t0);
    return (1.0 - w) * s_knots_[hi - 1] + w * s_knots_[hi];
}

double ConformalMap::angle_from_arclength(double s) const {
    double P = s_knots_.back();
    double sv = std::fmod(s, P);
    if (sv < 0.0) sv += P;
    auto it = std::upper_bound(s_knots_.begin(), s_knots_.end(), sv);
    size_t hi = static_cast<size_t>(it - s_knots_.begin());
    if (hi == 0) hi = 1;
    if (hi >= s_knots_.size()) hi = s_knots_.size() - 1;
    double s0 = s_knots_[hi - 1], s1 = s_knots_[hi];
    double w = (sv - s0) / std::max(s1 - s0, 1e-300);
    return (1.0 - w) * theta_knots_[hi - 1] + w * theta_knots_[hi];
}

void ConformalMap::finalize() {
    int n = vertex_count();
    ScData d = sc_data(*this);

    // SC integral at each prevertex: radial to the first, chords onward
    f_prevertex_.assign(static_cast<size_t>(n), Complex{0.0, 0.0});
    f_prevertex_[0] = -d.half_from_prevertex(0, {0.0, 0.0});
    for (int k = 0; k + 1 < n; ++k) {
        Complex a = d.prevertices[static_cast<size_t>(k)];
        Complex b = d.prevertices[static_cast<size_t>(k + 1)];
        Complex m = 0.5 * (a + b);
        Complex side = d.half_from_prevertex(k, m) - d.half_from_prevertex(k + 1, m);
        f_prevertex_[static_cast<size_t>(k + 1)] = f_prevertex_[static_cast<size_t>(k)] + side;
    }

    // boundary correspondence: inside each gap the image runs along a straight
    // side, so arclength is the distance to the side's start vertex
    theta_knots_.clear();
    s_knots_.clear();
    std::vector<double> cum(static_cast<size_t>(n + 1), 0.0);
    for (int k = 0; k < n; ++k)
        cum[static_cast<size_t>(k + 1)] =
            cum[static_cast<size_t>(k)] +
            std::abs(vertices[static_cast<size_t>((k + 1) % n)] - vertices[static_cast<size_t>(k)]);

    std::vector<double> fractions;
    for (int m = 10; m >= 1; --m) fractions.push_back(std::pow(0.5, m));
    fractions.push_back(0.5);
    for (int m = 1; m <= 10; ++m) fractions.push_back(1.0 - std::pow(0.5, m + 1));
    std::sort(fractions.begin(), fractions.end());

    // gap j runs from angle a_j to b_j and maps to side (start vertex v_j)
    for (int j = 0; j < n; ++j) {
        double a = (j == 0) ? 0.0 : prevertex_angles[static_cast<size_t>(j - 1)];
        double b = prevertex_angles[static_cast<size_t>(j)];
        int v = (j == 0) ? n - 1 : j - 1; // side w_v -> w_{v+1}
        double s_base = cum[static_cast<size_t>(v)];
        theta_knots_.push_back(a);
        s_knots_.push_back(s_base);
        for (double f : fractions) {
            double t = a + f * (b - a);
            Complex p = boundary_point(t);
            theta_knots_.push_back(t);
            s_knots_.push_back(s_base + std::abs(p - vertices[static_cast<size_t>(v)]));
        }
    }
    theta_knots_.push_back(kTwoPi);
    s_knots_.push_back(cum[static_cast<size_t>(n)]);
    theta_origin_ = prevertex_angles[0];
}

ConformalMap schwarz_christoffel(const Domain& domain) {
    int n = static_cast<int>(domain.vertices.size());
    std::vector<Complex> w(static_cast<size_t>(n));
    for (int k = 0; k < n; ++k) w[static_cast<size_t>(k)] = domain.vertices[static_cast<size_t>(k)].to_complex();
    Complex wc = domain.centroid().to_complex();

    // turning exponents from edge directions
    std::vector<double> beta(static_cast<size_t>(n));
    double beta_sum = 0.0;
    for (int k = 0; k < n; ++k) {
        Complex din = w[static_cast<size_t>(k)] - w[static_cast<size_t>((k + n - 1) % n)];
        Complex dout = w[static_cast<size_t>((k + 1) % n)] - w[static_cast<size_t>(k)];
        beta[static_cast<size_t>(k)] = std::arg(dout / din) / std::numbers::pi;
        beta_sum += beta[static_cast<size_t>(k)];
    }
    if (std::abs(beta_sum - 2.0) > 1e-9)
        throw std::runtime_error("schwarz_christoffel: turning exponents do not sum to 2");

    std::vector<double> L(static_cast<size_t>(n)); // side k: w_k -> w_{k+1}
    for (int k = 0; k < n; ++k)
        L[static_cast<size_t>(k)] = std::abs(w[static_cast<size_t>((k + 1) % n)] - w[static_cast<size_t>(k)]);

    // unknowns: gap logits y_0..y_{n-2}; gap g_k precedes prevertex k and
    // corresponds to side w_{k-1} -> w_k (indices mod n)
    Eigen::VectorXd y(n - 1);
    for (int k = 0; k < n - 1; ++k)
        y(k) = std::log(L[static_cast<size_t>((k + n - 1) % n)] / L[static_cast<size_t>(n - 2)]);

    auto angles_from = [&](const Eigen::VectorXd& yy) {
        std::vector<double> g(static_cast<size_t>(n));
        double zmax = 0.0;
        for (int k = 0; k < n - 1; ++k) zmax = std::max(zmax, yy(k));
        double denom = std::exp(-zmax);
        for (int k = 0; k < n - 1; ++k) denom += std::exp(yy(k) - zmax);
        for (int k = 0; k < n; ++k) {
            double e = (k == n - 1) ? std::exp(-zmax) : std::exp(yy(k) - zmax);
            g[static_cast<size_t>(k)] = kTwoPi * e / denom;
        }
        std::vector<double> th(static_cast<size_t>(n));
        double acc = 0.0;
        for (int k = 0; k < n; ++k) {
            acc += g[static_cast<size_t>(k)];
            th[static_cast<size_t>(k)] = acc;
        }
        th[static_cast<size_t>(n - 1)] = kTwoPi;
        return th;
    };

    auto residual = [&](const Eigen::VectorXd& yy) {
        ScData d;
        d.turning = beta;
        d.prevertices.clear();
        for (double t : angles_from(yy)) d.prevertices.push_back(std::polar(1.0, t));

        Eigen::VectorXd r(n - 1);
        // side integrals S_k: z_k -> z_{k+1} corresponds to side w_k -> w_{k+1}
        std::vector<double> S(static_cast<size_t>(n - 1));
        for (int k = 0; k + 1 < n; ++k) {
            Complex a = d.prevertices[static_cast<size_t>(k)];
            Complex b = d.prevertices[static_cast<size_t>(k + 1)];
            Complex m = 0.5 * (a + b);
            S[static_cast<size_t>(k)] =
                std::abs(d.half_from_prevertex(k, m) - d.half_from_prevertex(k + 1, m));
        }
        for (int k = 1; k <= n - 3; ++k)
            r(k - 1) = S[static_cast<size_t>(k)] / S[0] - L[static_cast<size_t>(k)] / L[0];

        // centering: F(z_{n-1}) / F(z_0) matches (w_{n-1}-wc)/(w_0-wc)
        Complex F0 = -d.half_from_prevertex(0, {0.0, 0.0});
        Complex Fn = -d.half_from_prevertex(n - 1, {0.0, 0.0});
        Complex lhs = Fn / F0;
        Complex rhs = (w[static_cast<size_t>(n - 1)] - wc) / (w[0] - wc);
        r(n - 3) = lhs.real() - rhs.real();
        r(n - 2) = lhs.imag() - rhs.imag();
        return r;
    };

    Eigen::VectorXd r = residual(y);
    double rnorm = r.lpNorm<Eigen::Infinity>();
    int stalls = 0;
    for (int iter = 0; iter < 60 && rnorm > 1e-11; ++iter) {
        Eigen::MatrixXd J(n - 1, n - 1);
        double step = 1e-6;
        for (int k = 0; k < n - 1; ++k) {
            Eigen::VectorXd yk = y;
            yk(k) += step;
            J.col(k) = (residual(yk) - r) / step;
        }
        Eigen::VectorXd dy = J.fullPivLu().solve(-r);
        double lambda = 1.0;
        bool accepted = false;
        for (int ls = 0; ls < 14; ++ls) {
            Eigen::VectorXd yn = y + lambda * dy;
            Eigen::VectorXd rn = residual(yn);
            double rnn = rn.lpNorm<Eigen::Infinity>();
            if (rnn < rnorm * (1.0 - 1e-4 * lambda) || rnn < 1e-12) {
                y = yn;
                r = rn;
                rnorm = rnn;
                accepted = true;
                break;
            }
            lambda *= 0.5;
        }
        if (!accepted && ++stalls >= 3) break;
    }
    if (rnorm > 1e-8) {
        std::ostringstream msg;
        msg << "schwarz_christoffel: parameter problem did not converge (residual " << rnorm
            << ")";
        throw std::runtime_error(msg.str());
    }

    ConformalMap m;
    m.prevertex_angles = angles_from(y);
    m.turning = beta;
    m.vertices = w;
    ScData d = sc_data(m);
    Complex F0 = -d.half_from_prevertex(0, {0.0, 0.0});
    m.scale = (w[0] - wc) / F0;
    m.shift = wc;
    m.finalize();

    // vertex reproduction check
    double diam = domain.diameter();
    for (int k = 0; k < n; ++k) {
        Complex img = m.shift + m.scale * m.f_prevertex_[static_cast<size_t>(k)];
        if (std::abs(img - w[static_cast<size_t>(k)]) > 1e-6 * diam) {
            std::ostringstream msg;
            msg << "schwarz_christoffel: vertex " << k << " reproduced with error "
                << std::abs(img - w[static_cast<size_t>(k)]) << " (diameter " << diam << ")";
            throw std::runtime_error(msg.str());
        }
    }
    return m;
}

double arclength_pullback(const ConformalMap& map,
                          const std::vector<std::pair<double, double>>& arcs) {
    ScData d = sc_data(map);
    double total = 0.0;
    double C = std::abs(map.scale);
    for (const auto& [sa, sb] : arcs) {
        if (sb <= sa) continue;
        double ta = map.angle_from_arclength(sa);
        double tb = map.angle_from_arclength(sb);
        if (tb <= ta + 1e-15) tb += kTwoPi;
        // split at prevertex angles inside (ta, tb)
        std::vector<double> cuts{ta};
        for (int rot = 0; rot < 2; ++rot)
            for (double t : map.prevertex_angles) {
                double tt = t + rot * kTwoPi;
                if (tt > ta + 1e-13 && tt < tb - 1e-13) cuts.push_back(tt);
            }
        cuts.push_back(tb);
        std::sort(cuts.begin(), cuts.end());
        for (size_t i = 0; i + 1 < cuts.size(); ++i) {
            double t1 = cuts[i], t2 = cuts[i + 1];
            auto near_prevertex = [&](double t) {
                for (size_t k = 0; k < map.prevertex_angles.size(); ++k) {
                    double dt = std::abs(wrap_angle(t) - map.prevertex_angles[k]);
                    dt = std::min(dt, kTwoPi - dt);
                    if (dt < 1e-12) return static_cast<int>(k);
                }
                return -1;
            };
            total += C * d.arc_abs(t1, t2, near_prevertex(t1), near_prevertex(t2));
        }
    }
    return total;
}

double smirnov_norm(const std::vector<double>& s_positions, const std::vector<Complex>& f_values,
                    const ConformalMap& map, int order) {
    if (s_positions.size() != f_values.size() || s_positions.empty())
        throw std::invalid_argument("smirnov_norm: mismatched boundary samples");
    double P = 0.0;
    {
        int n = map.vertex_count();
        for (int k = 0; k < n; ++k)
            P += std::abs(map.vertices[static_cast<size_t>((k + 1) % n)] -
                          map.vertices[static_cast<size_t>(k)]);
    }
    auto interp = [&](double s) {
        double sv = std::fmod(s, P);
        if (sv < 0.0) sv += P;
        auto it = std::upper_bound(s_positions.begin(), s_positions.end(), sv);
        size_t hi = static_cast<size_t>(it - s_positions.begin());
        size_t lo = (hi == 0) ? s_positions.size() - 1 : hi - 1;
        size_t nxt = (lo + 1) % s_positions.size();
        double span = s_positions[nxt] - s_positions[lo];
        if (span <= 0.0) span += P;
        double off = sv - s_positions[lo];
        if (off < 0.0) off += P;
        double w = span > 1e-300 ? off / span : 0.0;
        return (1.0 - w) * f_values[lo] + w * f_values[nxt];
    };

    // |(f o phi)(phi')^{1/2}|^2 = |f o phi|^2 |phi'| integrates over the
    // circle with the same Jacobi desingularization as the arclength
    // quadrature; the truncated-series Parseval value converges too slowly
    // against the corner singularities of phi'
    (void)order;
    ScData d = sc_data(map);
    double C = std::abs(map.scale);
    int n = map.vertex_count();
    double total = 0.0;
    for (int j = 0; j < n; ++j) {
        double a = (j == 0) ? 0.0 : map.prevertex_angles[static_cast<size_t>(j - 1)];
        double b = map.prevertex_angles[static_cast<size_t>(j)];
        int ka = (j == 0) ? n - 1 : j - 1;
        auto mult = [&](double t) { return std::norm(interp(map.arclength_from_angle(t))); };
        total += C * d.arc_abs(a, b, ka, j, mult);
    }
    return std::sqrt(total);
}

A2Pair a2_of_derivative(const ConformalMap& map, int order) {
    int m = 2 * order + 1;
    ScData d = sc_data(map);
    std::vector<double> w(static_cast<size_t>(m)), winv(static_cast<size_t>(m));
    double C = std::abs(map.scale);
    for (int j = 0; j < m; ++j) {
        double t = sample_angle(j, m, map.prevertex_angles);
        double v = C * std::abs(d.product(std::polar(1.0, t)));
        w[static_cast<size_t>(j)] = v;
        winv[static_cast<size_t>(j)] = 1.0 / v;
    }
    return {a2_constant(w), a2_constant(winv)};
}

double area_identity(const ConformalMap& map) {
    ScData d = sc_data(map);
    double C2 = std::norm(map.scale);

    auto ring = [&](double rho) {
        // integral over theta of |phi'(rho e^{i t})|^2, geometric panels
        // toward the prevertex angles within each gap
        double acc = 0.0;
        int n = map.vertex_count();
        const Rule& gl = gauss_legendre01();
        for (int j = 0; j < n; ++j) {
            double a = (j == 0) ? 0.0 : map.prevertex_angles[static_cast<size_t>(j - 1)];
            double b = map.prevertex_angles[static_cast<size_t>(j)];
            std::vector<double> knots{a};
            for (int lv = 10; lv >= 1; --lv) knots.push_back(a + (b - a) * std::pow(0.5, lv + 1));
            knots.push_back(0.5 * (a + b));
            for (int lv = 1; lv <= 10; ++lv) knots.push_back(b - (b - a) * std::pow(0.5, lv + 1));
            knots.push_back(b);
            for (size_t i = 0; i + 1 < knots.size(); ++i) {
                double t1 = knots[i], t2 = knots[i + 1];
                double part = 0.0;
                for (size_t q = 0; q < gl.nodes.size(); ++q) {
                    Complex z = std::polar(rho, t1 + gl.nodes[q] * (t2 - t1));
                    part += gl.weights[q] * std::norm(d.product(z));
                }
                acc += part * (t2 - t1);
            }
        }
        return acc;
    };

    double total = 0.0;
    const Rule& gl = gauss_legendre01();
    // [0, 0.9] in two Gauss-Legendre panels
    for (int panel = 0; panel < 2; ++panel) {
        double r0 = 0.45 * panel, r1 = 0.45 * (panel + 1);
        for (size_t q = 0; q < gl.nodes.size(); ++q) {
            double rho = r0 + gl.nodes[q] * (r1 - r0);
            total += gl.weights[q] * (r1 - r0) * rho * ring(rho);
        }
    }
    // [0.9, 1) geometric panels toward the boundary
    double lo = 0.9;
    for (int panel = 0; panel < 14; ++panel) {
        double width = 0.1 * std::pow(0.5, panel + 1);
        double hi = (panel == 13) ? 1.0 - 1e-7 : lo + width;
        for (size_t q = 0; q < gl.nodes.size(); ++q) {
            double rho = lo + gl.nodes[q] * (hi - lo);
            total += gl.weights[q] * (hi - lo) * rho * ring(rho);
        }
        lo = hi;
    }
    return C2 * total;
}

double perimeter_identity(const ConformalMap& map) {
    double P = 0.0;
    int n = map.vertex_count();
    for (int k = 0; k < n; ++k)
        P += std::abs(map.vertices[static_cast<size_t>((k + 1) % n)] -
                      map.vertices[static_cast<size_t>(k)]);
    return arclength_pullback(map, {{0.0, P}});
}

void write_map(std::ostream& os, const ConformalMap& map) {
    char buf[128];
    os << "# schwarz-christoffel map: angles/exponents, scale, shift\n";
    os << map.vertex_count() << "\n";
    for (int k = 0; k < map.vertex_count(); ++k) {
        std::snprintf(buf, sizeof(buf), "%.17g %.17g\n", map.prevertex_angles[static_cast<size_t>(k)],
                      map.turning[static_cast<size_t>(k)]);
        os << buf;
    }
    std::snprintf(buf, sizeof(buf), "%.17g %.17g\n%.17g %.17g\n", map.scale.real(),
                  map.scale.imag(), map.shift.real(), map.shift.imag());
    os << buf;
}

ConformalMap read_map(std::istream& is) {
    std::string line;
    auto next_line = [&]() {
        while (std::getline(is, line)) {
            auto hash = line.find('#');
            if (hash != std::string::npos) line.erase(hash);
            std::istringstream probe(line);
            std::string tok;
            if (probe >> tok) return true;
        }
        return false;
    };
    if (!next_line()) throw std::runtime_error("read_map: empty input");
    ConformalMap m;
    int n = std::stoi(line);
    m.prevertex_angles.resize(static_cast<size_t>(n));
    m.turning.resize(static_cast<size_t>(n));
    for (int k = 0; k < n; ++k) {
        if (!next_line()) throw std::runtime_error("read_map: truncated angle table");
        std::istringstream ls(line);
        ls >> m.prevertex_angles[static_cast<size_t>(k)] >> m.turning[static_cast<size_t>(k)];
    }
    if (!next_line()) throw std::runtime_error("read_map: missing scale");
    {
        std::istringstream ls(line);
        double re, im;
        ls >> re >> im;
        m.scale = {re, im};
    }
    if (!next_line()) throw std::runtime_error("read_map: missing shift");
    {
        std::istringstream ls(line);
        double re, im;
        ls >> re >> im;
        m.shift = {re, im};
    }
    // vertices are reproducible from the map data
    ScData d = sc_data(m);
    Complex F0 = -d.half_from_prevertex(0, {0.0, 0.0});
    m.vertices.resize(static_cast<size_t>(n));
    Complex F = F0;
    m.vertices[0] = m.shift + m.scale * F0;
    for (int k = 0; k + 1 < n; ++k) {
        Complex a = d.prevertices[static_cast<size_t>(k)];
        Complex b = d.prevertices[static_cast<size_t>(k + 1)];
        Complex mid = 0.5 * (a + b);
        F += d.half_from_prevertex(k, mid) - d.half_from_prevertex(k + 1, mid);
        m.vertices[static_cast<size_t>(k + 1)] = m.shift + m.scale * F;
    }
    m.finalize();
    return m;
}

void write_map_file(const std::string& path, const ConformalMap& map) {
    std::ofstream os(path);
    if (!os) throw std::runtime_error("write_map_file: cannot open " + path);
    write_map(os, map);
}

ConformalMap read_map_file(const std::string& path) {
    std::ifstream is(path);
    if (!is) throw std::runtime_error("read_map_file: cannot open " + path);
    return read_map(is);
}

} // namespace robinucq
