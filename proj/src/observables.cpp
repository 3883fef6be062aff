#include "dicke/observables.hpp"

#include "dicke/parallel.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>

namespace dicke {

namespace {

constexpr double kSpectrumFloor = 1e-14;

std::vector<double> hermitian_eigenvalues(const std::vector<cdouble>& a, int dim) {
    Eigen::MatrixXcd m(dim, dim);
    for (int i = 0; i < dim; ++i)
        for (int j = 0; j < dim; ++j) m(i, j) = a[static_cast<std::size_t>(i) * dim + j];
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(m, Eigen::EigenvaluesOnly);
    std::vector<double> w(dim);
    for (int i = 0; i < dim; ++i) w[i] = solver.eigenvalues()(i);
    return w;
}

// Occupied Dicke range [m_lo, m_hi]; the ensemble density vanishes outside.
std::pair<int, int> occupied_m_range(const AmplitudeTable& state) {
    const int N = state.n_qubits;
    int lo = N + 1, hi = -1;
    for (int m = 0; m <= N; ++m) {
        bool occ = false;
        for (int p = 0; p <= state.p_max && !occ; ++p)
            if (state.at(p, m) != cdouble{0.0, 0.0}) occ = true;
        if (occ) {
            lo = std::min(lo, m);
            hi = std::max(hi, m);
        }
    }
    if (hi < 0) { lo = 0; hi = 0; }
    return {lo, hi};
}

DensityMatrix ensemble_block(const AmplitudeTable& state, int m_lo, int m_hi) {
    const int d = m_hi - m_lo + 1;
    DensityMatrix rho;
    rho.dim = d;
    rho.a.assign(static_cast<std::size_t>(d) * d, cdouble{0.0, 0.0});
    for (int p = 0; p <= state.p_max; ++p)
        for (int i = 0; i < d; ++i) {
            const cdouble ci = state.at(p, m_lo + i);
            if (ci == cdouble{0.0, 0.0}) continue;
            for (int j = 0; j < d; ++j)
                rho.a[static_cast<std::size_t>(i) * d + j] +=
                    ci * std::conj(state.at(p, m_lo + j));
        }
    return rho;
}

}  // namespace

double DensityMatrix::trace_real() const {
    double t = 0.0;
    for (int i = 0; i < dim; ++i) t += at(i, i).real();
    return t;
}

EnsembleDensity reduced_ensemble(const AmplitudeTable& state) {
    EnsembleDensity rho;
    static_cast<DensityMatrix&>(rho) = ensemble_block(state, 0, state.n_qubits);
    return rho;
}

FieldDensity reduced_field(const AmplitudeTable& state) {
    const int d = state.p_max + 1;
    FieldDensity rho;
    rho.dim = d;
    rho.a.assign(static_cast<std::size_t>(d) * d, cdouble{0.0, 0.0});
    for (int m = 0; m <= state.n_qubits; ++m)
        for (int p = 0; p < d; ++p) {
            const cdouble cp = state.at(p, m);
            if (cp == cdouble{0.0, 0.0}) continue;
            for (int q = 0; q < d; ++q)
                rho.a[static_cast<std::size_t>(p) * d + q] += cp * std::conj(state.at(q, m));
        }
    return rho;
}

std::vector<double> density_spectrum(const DensityMatrix& rho) {
    return hermitian_eigenvalues(rho.a, rho.dim);
}

double density_purity_deficit(const DensityMatrix& rho) {
    double tr2 = 0.0;
    for (const cdouble& c : rho.a) tr2 += std::norm(c);
    return 1.0 - tr2;
}

double density_entropy(const DensityMatrix& rho) {
    double s = 0.0;
    for (double w : density_spectrum(rho))
        if (w > kSpectrumFloor) s -= w * std::log(w);
    return s;
}

double mean_photon(const AmplitudeTable& state) {
    double n = 0.0;
    for (int p = 0; p <= state.p_max; ++p)
        for (int m = 0; m <= state.n_qubits; ++m) n += p * std::norm(state.at(p, m));
    return n;
}

double mean_jz(const AmplitudeTable& state) {
    const double half_n = 0.5 * state.n_qubits;
    double jz = 0.0;
    for (int p = 0; p <= state.p_max; ++p)
        for (int m = 0; m <= state.n_qubits; ++m)
            jz += (m - half_n) * std::norm(state.at(p, m));
    return jz;
}

double population_inversion(const AmplitudeTable& state, double excitation0) {
    return excitation0 - mean_photon(state);
}

double purity_deficit(const AmplitudeTable& state) {
    auto [lo, hi] = occupied_m_range(state);
    return density_purity_deficit(ensemble_block(state, lo, hi));
}

double entropy(const AmplitudeTable& state) {
    auto [lo, hi] = occupied_m_range(state);
    return density_entropy(ensemble_block(state, lo, hi));
}

QGrid husimi_q(const AmplitudeTable& state, const QGridSpec& spec, int workers) {
    if (spec.resolution < 2) throw std::invalid_argument("grid resolution must be >= 2");
    QGrid grid;
    grid.spec = spec;
    const int r = spec.resolution;
    grid.re_axis.resize(r);
    grid.im_axis.resize(r);
    for (int i = 0; i < r; ++i) {
        const double x = -spec.half_width + 2.0 * spec.half_width * i / (r - 1);
        grid.re_axis[i] = spec.center.real() + x;
        grid.im_axis[i] = spec.center.imag() + x;
    }
    grid.values.assign(static_cast<std::size_t>(r) * r, 0.0);

    const int N = state.n_qubits;
    const int pmax = state.p_max;
    // log sqrt(p!) table
    std::vector<double> half_lgamma(pmax + 1);
    for (int p = 0; p <= pmax; ++p) half_lgamma[p] = 0.5 * std::lgamma(p + 1.0);

    parallel_for(static_cast<std::size_t>(r) * r, workers, [&](std::size_t idx) {
        const int i_im = static_cast<int>(idx) / r;
        const int i_re = static_cast<int>(idx) % r;
        const cdouble alpha{grid.re_axis[i_re], grid.im_axis[i_im]};
        const double a = std::abs(alpha);
        const double phase = std::arg(alpha);
        const double loga = (a > 0.0) ? std::log(a) : 0.0;
        std::vector<cdouble> acc(N + 1, cdouble{0.0, 0.0});
        for (int p = 0; p <= pmax; ++p) {
            double mag;
            if (a > 0.0)
                mag = std::exp(-0.5 * a * a + p * loga - half_lgamma[p]);
            else
                mag = (p == 0) ? 1.0 : 0.0;
            // (alpha*)^p contributes phase -p*arg(alpha)
            const cdouble coef = std::polar(mag, -p * phase);
            for (int m = 0; m <= N; ++m) acc[m] += coef * state.at(p, m);
        }
        double q = 0.0;
        for (int m = 0; m <= N; ++m) q += std::norm(acc[m]);
        grid.values[idx] = q / M_PI;
    });
    return grid;
}

int count_local_maxima(const QGrid& grid, double rel_threshold) {
    const int r = static_cast<int>(grid.re_axis.size());
    const double peak = *std::max_element(grid.values.begin(), grid.values.end());
    int count = 0;
    for (int i = 1; i + 1 < r; ++i)
        for (int j = 1; j + 1 < r; ++j) {
            const double v = grid.at(i, j);
            if (v <= rel_threshold * peak) continue;
            bool is_max = true;
            for (int di = -1; di <= 1 && is_max; ++di)
                for (int dj = -1; dj <= 1 && is_max; ++dj)
                    if ((di || dj) && grid.at(i + di, j + dj) > v) is_max = false;
            if (is_max) ++count;
        }
    return count;
}

}  // namespace dicke
