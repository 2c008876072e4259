#include "robinucq/circle_series.hpp"

#include <fftw3.h>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <mutex>
#include <numbers>
#include <sstream>
#include <stdexcept>

namespace robinucq {

namespace {

std::mutex fftw_mutex; // FFTW planning is not thread-safe

void dft(std::vector<Complex>& data, int sign) {
    int n = static_cast<int>(data.size());
    fftw_plan plan;
    {
        std::lock_guard<std::mutex> lock(fftw_mutex);
        plan = fftw_plan_dft_1d(n, reinterpret_cast<fftw_complex*>(data.data()),
                                reinterpret_cast<fftw_complex*>(data.data()), sign,
                                FFTW_ESTIMATE);
    }
    fftw_execute(plan);
    {
        std::lock_guard<std::mutex> lock(fftw_mutex);
        fftw_destroy_plan(plan);
    }
}

} // namespace

double CircleSeries::node_angle(int j) const {
    return 2.0 * std::numbers::pi * j / node_count();
}

CircleSeries CircleSeries::from_samples(const std::vector<Complex>& samples) {
    int m = static_cast<int>(samples.size());
    if (m < 3 || m % 2 == 0)
        throw std::invalid_argument("CircleSeries::from_samples: need an odd sample count 2N+1");
    int n = (m - 1) / 2;
    std::vector<Complex> work = samples;
    dft(work, FFTW_FORWARD); // X_m = sum_j f_j e^{-2 pi i j m / M}
    CircleSeries s(n);
    for (int k = -n; k <= n; ++k) {
        int idx = k >= 0 ? k : k + m;
        s.set_coeff(k, work[static_cast<size_t>(idx)] / static_cast<double>(m));
    }
    return s;
}

CircleSeries CircleSeries::from_real_samples(const std::vector<double>& samples) {
    std::vector<Complex> c(samples.size());
    for (size_t i = 0; i < samples.size(); ++i) c[i] = samples[i];
    return from_samples(c);
}

std::vector<Complex> CircleSeries::to_samples() const {
    int m = node_count();
    std::vector<Complex> work(static_cast<size_t>(m), Complex{0.0, 0.0});
    for (int k = -order_; k <= order_; ++k) {
        int idx = k >= 0 ? k : k + m;
        work[static_cast<size_t>(idx)] = coeff(k);
    }
    dft(work, FFTW_BACKWARD); // f_j = sum_m X_m e^{+2 pi i j m / M}
    return work;
}

std::vector<double> CircleSeries::to_real_samples() const {
    std::vector<Complex> c = to_samples();
    std::vector<double> r(c.size());
    for (size_t i = 0; i < c.size(); ++i) r[i] = c[i].real();
    return r;
}

Complex CircleSeries::eval(double theta) const {
    Complex sum{0.0, 0.0};
    for (int k = -order_; k <= order_; ++k)
        sum += coeff(k) * std::polar(1.0, k * theta);
    return sum;
}

bool CircleSeries::is_real(double tol) const {
    double scale = std::max(max_abs_coeff(), 1e-300);
    for (int k = 0; k <= order_; ++k)
        if (std::abs(coeff(-k) - std::conj(coeff(k))) > tol * scale) return false;
    return true;
}

double CircleSeries::max_abs_coeff() const {
    double m = 0.0;
    for (const Complex& c : coeff_) m = std::max(m, std::abs(c));
    return m;
}

CircleSeries CircleSeries::resized(int new_order) const {
    CircleSeries s(new_order);
    int n = std::min(order_, new_order);
    for (int k = -n; k <= n; ++k) s.set_coeff(k, coeff(k));
    return s;
}

void write_series(std::ostream& os, const CircleSeries& s) {
    os << "# circle series, lines: k re im\n";
    char buf[96];
    for (int k = -s.order(); k <= s.order(); ++k) {
        std::snprintf(buf, sizeof(buf), "%d %.17g %.17g\n", k, s.coeff(k).real(),
                      s.coeff(k).imag());
        os << buf;
    }
}

CircleSeries read_series(std::istream& is) {
    std::map<int, Complex> entries;
    std::string line;
    int kmax = 0;
    while (std::getline(is, line)) {
        auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        std::istringstream ls(line);
        int k;
        double re, im;
        if (!(ls >> k >> re >> im)) continue;
        entries[k] = Complex{re, im};
        kmax = std::max(kmax, std::abs(k));
    }
    if (entries.empty()) throw std::runtime_error("read_series: no coefficients found");
    CircleSeries s(kmax);
    for (const auto& [k, c] : entries) s.set_coeff(k, c);
    return s;
}

void write_series_file(const std::string& path, const CircleSeries& s) {
    std::ofstream os(path);
    if (!os) throw std::runtime_error("write_series_file: cannot open " + path);
    write_series(os, s);
}

CircleSeries read_series_file(const std::string& path) {
    std::ifstream is(path);
    if (!is) throw std::runtime_error("read_series_file: cannot open " + path);
    return read_series(is);
}

} // namespace robinucq
