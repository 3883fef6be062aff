#include "dicke/model.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace dicke {

void ModelParams::validate() const {
    if (n_qubits < 1) throw std::invalid_argument("n_qubits must be >= 1");
    for (double v : {detuning, kerr, qubit_qubit, coupling})
        if (!std::isfinite(v)) throw std::invalid_argument("model parameters must be finite");
}

int sector_dim(int s, int n_qubits) { return std::min(s, n_qubits) + 1; }

double f_diag(int m, int s, const ModelParams& params) {
    const int N = params.n_qubits;
    if (s < 0) throw std::domain_error("sector label must be nonnegative");
    if (m < 0 || m > std::min(s, N)) throw std::domain_error("Dicke index outside sector range");
    const double j = m - 0.5 * N;
    const double p = s - m;  // physical photon count of this component
    return params.kerr * p * p + j * (params.detuning + params.qubit_qubit * j);
}

double g_offdiag(int m, int s, const ModelParams& params) {
    const int N = params.n_qubits;
    if (s < 0) throw std::domain_error("sector label must be nonnegative");
    if (m < 1 || m > N) throw std::domain_error("no coupling below Dicke index 1");
    const double r2 = s + 1.0 - m;
    if (r2 <= 0.0) return 0.0;
    const double j = m - 0.5 * N;
    const double r1 = 0.5 * N * (0.5 * N + 1.0) - j * (j - 1.0);
    return params.coupling * std::sqrt(r1) * std::sqrt(r2);
}

double SectorMatrix::trace() const {
    double t = 0.0;
    for (double v : diag) t += v;
    return t;
}

double SectorMatrix::frobenius_sq() const {
    double t = 0.0;
    for (double v : diag) t += v * v;
    for (double v : offdiag) t += 2.0 * v * v;
    return t;
}

double SectorMatrix::spectral_bound() const {
    const int d = dim();
    double b = 0.0;
    for (int i = 0; i < d; ++i) {
        double r = std::abs(diag[i]);
        if (i > 0) r += std::abs(offdiag[i - 1]);
        if (i + 1 < d) r += std::abs(offdiag[i]);
        b = std::max(b, r);
    }
    return b;
}

SectorMatrix build_sector(int s, const ModelParams& params) {
    params.validate();
    if (s < 0) throw std::domain_error("sector label must be nonnegative");
    const int d = sector_dim(s, params.n_qubits);
    SectorMatrix M;
    M.s = s;
    M.diag.resize(d);
    M.offdiag.resize(d - 1);
    for (int i = 0; i < d; ++i) M.diag[i] = f_diag(i, s, params);
    for (int i = 0; i + 1 < d; ++i) M.offdiag[i] = g_offdiag(i + 1, s, params);
    return M;
}

}  // namespace dicke
