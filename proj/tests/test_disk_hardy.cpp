#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "robinucq/disk_hardy.hpp"

using namespace robinucq;

namespace {

constexpr double kPi = std::numbers::pi;

CircleSeries cosine(int k, int order = 64) {
    CircleSeries s(order);
    s.set_coeff(k, 0.5);
    s.set_coeff(-k, 0.5);
    return s;
}

CircleSeries sine(int k, int order = 64) {
    CircleSeries s(order);
    s.set_coeff(k, Complex{0.0, -0.5});
    s.set_coeff(-k, Complex{0.0, 0.5});
    return s;
}

CircleSeries constant(double c, int order = 64) {
    CircleSeries s(order);
    s.set_coeff(0, c);
    return s;
}

CircleSeries add(const CircleSeries& a, const CircleSeries& b, double ca = 1.0, double cb = 1.0) {
    CircleSeries out(a.order());
    for (int k = -a.order(); k <= a.order(); ++k)
        out.set_coeff(k, ca * a.coeff(k) + cb * b.coeff(k));
    return out;
}

double linf_diff(const CircleSeries& a, const CircleSeries& b) {
    double m = 0.0;
    for (int k = -a.order(); k <= a.order(); ++k)
        m = std::max(m, std::abs(a.coeff(k) - b.coeff(k)));
    return m;
}

} // namespace

TEST_CASE("series sample round trip") {
    CircleSeries s(32);
    s.set_coeff(0, 0.7);
    s.set_coeff(3, Complex{0.2, -0.1});
    s.set_coeff(-3, Complex{0.2, 0.1});
    s.set_coeff(17, Complex{0.05, 0.02});
    s.set_coeff(-17, Complex{0.05, -0.02});
    CircleSeries r = CircleSeries::from_samples(s.to_samples());
    CHECK(linf_diff(s, r) < 1e-12);
    CHECK(s.is_real());
}

TEST_CASE("poisson extension") {
    CHECK(poisson_extend(constant(1.0), Complex{0.3, 0.2}).real() == doctest::Approx(1.0));
    CHECK(poisson_extend(cosine(1), Complex{0.5, 0.0}).real() == doctest::Approx(0.5));
    // cos 3theta at 0.5 e^{i pi/6}: r^3 cos(3 theta) = 0.125 cos(pi/2) = 0
    Complex z = std::polar(0.5, kPi / 6.0);
    CHECK(std::abs(poisson_extend(cosine(3), z)) < 1e-14);
    CHECK_THROWS_AS(poisson_extend(cosine(1), Complex{1.0, 0.3}), std::domain_error);
}

TEST_CASE("conjugate function on monomials") {
    CHECK(linf_diff(conjugate_function(cosine(1)), sine(1)) < 1e-15);
    CHECK(linf_diff(conjugate_function(constant(1.0)), constant(0.0)) < 1e-15);
    // cos 2t - 3 sin 5t -> sin 2t + 3 cos 5t
    CircleSeries in = add(cosine(2), sine(5), 1.0, -3.0);
    CircleSeries expect = add(sine(2), cosine(5), 1.0, 3.0);
    CHECK(linf_diff(conjugate_function(in), expect) < 1e-15);

    CircleSeries not_real(8);
    not_real.set_coeff(2, Complex{1.0, 0.0}); // c_{-2} = 0 != conj(c_2)
    CHECK_THROWS_AS(conjugate_function(not_real), std::invalid_argument);
}

TEST_CASE("conjugation involution and Riesz isometry") {
    std::mt19937 rng(7);
    std::uniform_real_distribution<double> unif(-1.0, 1.0);
    CircleSeries psi(48);
    psi.set_coeff(0, unif(rng));
    for (int k = 1; k <= 40; ++k) {
        Complex c{unif(rng), unif(rng)};
        psi.set_coeff(k, c);
        psi.set_coeff(-k, std::conj(c));
    }
    CircleSeries twice = conjugate_function(conjugate_function(psi));
    // conj(conj psi) = -(psi - mean psi), exactly in coefficients
    CircleSeries expect(psi.order());
    for (int k = -psi.order(); k <= psi.order(); ++k)
        if (k != 0) expect.set_coeff(k, -psi.coeff(k));
    CHECK(linf_diff(twice, expect) < 1e-15);

    // p = 2 isometry on mean-zero data
    CircleSeries tilde = conjugate_function(psi);
    double n1 = 0.0, n2 = 0.0;
    for (int k = -psi.order(); k <= psi.order(); ++k) {
        if (k != 0) n1 += std::norm(psi.coeff(k));
        n2 += std::norm(tilde.coeff(k));
    }
    CHECK(n1 == doctest::Approx(n2).epsilon(1e-15));
}

TEST_CASE("outer function") {
    int m = 2 * 64 + 1;

    SUBCASE("constant") {
        std::vector<double> h(static_cast<size_t>(m), 2.0);
        DiskFunction e = outer_function(h);
        CHECK(std::abs(e.series.coeff(0) - 2.0) < 1e-12);
        for (int k = 1; k <= e.series.order(); ++k)
            CHECK(std::abs(e.series.coeff(k)) < 1e-12);
    }

    SUBCASE("modulus of 2+z recovers 2+z exactly") {
        CircleSeries nodes(64);
        std::vector<double> h(static_cast<size_t>(m));
        for (int j = 0; j < m; ++j)
            h[static_cast<size_t>(j)] = std::abs(2.0 + std::polar(1.0, nodes.node_angle(j)));
        DiskFunction e = outer_function(h);
        CHECK(std::abs(e.series.coeff(0) - 2.0) < 1e-10);
        CHECK(std::abs(e.series.coeff(1) - 1.0) < 1e-10);
        for (int k = 2; k <= 10; ++k) CHECK(std::abs(e.series.coeff(k)) < 1e-10);
    }

    SUBCASE("round trip for e^{cos theta}") {
        CircleSeries nodes(64);
        std::vector<double> h(static_cast<size_t>(m));
        for (int j = 0; j < m; ++j)
            h[static_cast<size_t>(j)] = std::exp(std::cos(nodes.node_angle(j)));
        DiskFunction e = outer_function(h);
        std::vector<Complex> vals = e.series.to_samples();
        double maxerr = 0.0, mean_log = 0.0;
        for (int j = 0; j < m; ++j) {
            maxerr = std::max(maxerr, std::abs(std::abs(vals[static_cast<size_t>(j)]) -
                                               h[static_cast<size_t>(j)]));
            mean_log += std::log(h[static_cast<size_t>(j)]) / m;
        }
        CHECK(maxerr <= 1e-8);
        // E_h(0) = exp(mean of log h)
        CHECK(std::abs(e.eval(Complex{0.0, 0.0}) - std::exp(mean_log)) < 1e-10);
    }

    SUBCASE("nonpositive sample rejected") {
        std::vector<double> h(static_cast<size_t>(m), 1.0);
        h[3] = 0.0;
        CHECK_THROWS_WITH_AS(outer_function(h), doctest::Contains("integrable"),
                             std::invalid_argument);
    }
}

TEST_CASE("hardy norm") {
    CircleSeries z1(64);
    z1.set_coeff(1, 1.0);
    CHECK(hardy_norm(make_holomorphic(z1), 2.0) == doctest::Approx(std::sqrt(2.0 * kPi)));

    CHECK(hardy_norm(make_holomorphic(constant(3.0)), 2.0) ==
          doctest::Approx(3.0 * std::sqrt(2.0 * kPi)));

    // f(z) = 1/(1-z/2): geometric coefficients, ||f||_2^2 = 2 pi sum 4^{-k}
    CircleSeries geo(64);
    for (int k = 0; k <= 64; ++k) geo.set_coeff(k, std::pow(0.5, k));
    CHECK(hardy_norm(make_holomorphic(geo), 2.0) ==
          doctest::Approx(std::sqrt(8.0 * kPi / 3.0)).epsilon(1e-12));

    // radius-sampled path is monotone and approaches the boundary value
    DiskFunction f = make_holomorphic(add(constant(1.0), z1));
    double n4 = hardy_norm(f, 4.0, {0.3, 0.6, 0.9, 0.99});
    CHECK(n4 > 0.0);
    CHECK_THROWS_AS(hardy_norm(DiskFunction{cosine(1), DiskFunction::Kind::HarmonicExtension},
                               4.0, {0.5}),
                    std::invalid_argument);
}

TEST_CASE("a2 constant") {
    int m = 129;
    std::vector<double> ones(static_cast<size_t>(m), 1.0);
    CHECK(a2_constant(ones) == doctest::Approx(1.0).epsilon(1e-15));

    std::vector<double> fives(static_cast<size_t>(m), 5.0);
    CHECK(a2_constant(fives) == doctest::Approx(1.0).epsilon(1e-15));

    // scale invariance, exact
    std::mt19937 rng(11);
    std::uniform_real_distribution<double> unif(0.5, 2.0);
    std::vector<double> w(static_cast<size_t>(m));
    for (double& v : w) v = unif(rng);
    std::vector<double> w3 = w;
    for (double& v : w3) v *= 3.0;
    CHECK(a2_constant(w) == doctest::Approx(a2_constant(w3)).epsilon(1e-10));

    // power weight |theta|^{1/2} on an offset grid: finite, stable under doubling
    auto power_weight = [](int mm) {
        std::vector<double> out(static_cast<size_t>(mm));
        for (int j = 0; j < mm; ++j) {
            double t = 2.0 * kPi * (j + 0.5) / mm;
            if (t > kPi) t -= 2.0 * kPi;
            out[static_cast<size_t>(j)] = std::sqrt(std::abs(t));
        }
        return out;
    };
    double a_coarse = a2_constant(power_weight(129));
    double a_fine = a2_constant(power_weight(257));
    CHECK(a_coarse > 1.0);
    CHECK(std::abs(a_fine - a_coarse) / a_coarse < 0.05);

    std::vector<double> bad = ones;
    bad[5] = -1.0;
    CHECK_THROWS_AS(a2_constant(bad), std::invalid_argument);
}

TEST_CASE("hardy-littlewood maximal function") {
    int m = 129;
    std::vector<double> c(static_cast<size_t>(m), -2.5);
    auto mc = hl_maximal(c);
    for (double v : mc) CHECK(v == doctest::Approx(2.5));

    // indicator of a half circle
    std::vector<double> ind(static_cast<size_t>(m), 0.0);
    for (int j = 0; j < (m + 1) / 2; ++j) ind[static_cast<size_t>(j)] = 1.0;
    auto mi = hl_maximal(ind);
    for (double v : mi) CHECK(v >= 0.5);

    // domination of the function and of arc means
    std::mt19937 rng(3);
    std::uniform_real_distribution<double> unif(-1.0, 1.0);
    std::vector<double> phi(static_cast<size_t>(m));
    for (double& v : phi) v = unif(rng);
    auto mp = hl_maximal(phi);
    for (int j = 0; j < m; ++j) CHECK(mp[static_cast<size_t>(j)] >= std::abs(phi[static_cast<size_t>(j)]) - 1e-12);
    for (int arc = 0; arc < 20; ++arc) {
        int start = (arc * 13) % m;
        int len = 3 + (arc * 7) % 40;
        double mean = 0.0, minmax = 1e300;
        for (int t = 0; t < len; ++t) {
            int j = (start + t) % m;
            mean += std::abs(phi[static_cast<size_t>(j)]) / len;
            minmax = std::min(minmax, mp[static_cast<size_t>(j)]);
        }
        CHECK(mean <= minmax + 1e-12);
    }
}

TEST_CASE("nontangential maximal function") {
    DiskFunction c = make_holomorphic(constant(2.0, 32));
    auto mc = nontangential_max(c, 2.0);
    for (double v : mc) CHECK(v == doctest::Approx(2.0));

    CircleSeries z1(32);
    z1.set_coeff(1, 1.0);
    auto mz = nontangential_max(make_holomorphic(z1), 2.0);
    for (double v : mz) CHECK(v <= 1.0);

    CHECK_THROWS_AS(nontangential_max(c, 0.9), std::domain_error);

    // measured L2 bound for a random degree-32 polynomial
    std::mt19937 rng(5);
    std::normal_distribution<double> gauss(0.0, 1.0);
    CircleSeries poly(32);
    for (int k = 0; k <= 32; ++k) poly.set_coeff(k, Complex{gauss(rng), gauss(rng)});
    DiskFunction f = make_holomorphic(poly);
    auto mf = nontangential_max(f, 2.0);
    int m = poly.node_count();
    double l2 = 0.0;
    for (double v : mf) l2 += v * v * 2.0 * kPi / m;
    l2 = std::sqrt(l2);
    double ratio = l2 / hardy_norm(f, 2.0);
    CHECK(ratio <= 10.0);
    CHECK(ratio >= 0.5);
}

TEST_CASE("weighted conjugation bound follows the A2 constant") {
    int m = 129;
    auto weight = [&](double a) {
        std::vector<double> w(static_cast<size_t>(m));
        for (int j = 0; j < m; ++j) {
            double t = 2.0 * kPi * (j + 0.5) / m;
            if (t > kPi) t -= 2.0 * kPi;
            w[static_cast<size_t>(j)] = std::pow(std::abs(t), a);
        }
        return w;
    };

    std::mt19937 rng(17);
    std::normal_distribution<double> gauss(0.0, 1.0);
    std::vector<CircleSeries> polys;
    for (int trial = 0; trial < 100; ++trial) {
        CircleSeries phi(64);
        for (int k = 1; k <= 16; ++k) {
            Complex ck{gauss(rng), gauss(rng)};
            phi.set_coeff(k, ck);
            phi.set_coeff(-k, std::conj(ck));
        }
        polys.push_back(phi);
    }

    auto measured_c = [&](const std::vector<double>& w) {
        double worst = 0.0;
        for (const CircleSeries& phi : polys) {
            CircleSeries tilde = conjugate_function(phi);
            std::vector<double> pv = phi.resized(64).to_real_samples();
            std::vector<double> tv = tilde.to_real_samples();
            // resample the weight on the poly's node grid (both are m=129)
            double num = 0.0, den = 0.0;
            for (int j = 0; j < m; ++j) {
                num += tv[static_cast<size_t>(j)] * tv[static_cast<size_t>(j)] * w[static_cast<size_t>(j)];
                den += pv[static_cast<size_t>(j)] * pv[static_cast<size_t>(j)] * w[static_cast<size_t>(j)];
            }
            worst = std::max(worst, num / den);
        }
        return worst;
    };

    double a0 = a2_constant(weight(0.0));
    double a1 = a2_constant(weight(0.4));
    double a2v = a2_constant(weight(0.8));
    CHECK(a0 < a1);
    CHECK(a1 < a2v);
    CHECK(a0 <= 4.0);

    double c0 = measured_c(weight(0.0));
    double c1 = measured_c(weight(0.4));
    double c2 = measured_c(weight(0.8));
    CHECK(c0 <= c1 * 1.05);
    CHECK(c1 <= c2 * 1.05);
    CHECK(c0 >= 1.0 - 1e-9); // exact isometry at w == 1
}
