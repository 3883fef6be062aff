#include "dicke/state.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace dicke {

AmplitudeTable::AmplitudeTable(int n_qubits_, int p_max_)
    : n_qubits(n_qubits_), p_max(p_max_),
      amps(static_cast<std::size_t>(p_max_ + 1) * (n_qubits_ + 1), cdouble{0.0, 0.0}) {
    if (n_qubits < 1) throw std::invalid_argument("n_qubits must be >= 1");
    if (p_max < 0) throw std::invalid_argument("p_max must be >= 0");
}

double AmplitudeTable::norm_sq() const {
    double t = 0.0;
    for (const cdouble& c : amps) t += std::norm(c);
    return t;
}

void AmplitudeTable::normalize() {
    const double n = std::sqrt(norm_sq());
    if (n == 0.0) throw std::invalid_argument("cannot normalize the zero state");
    for (cdouble& c : amps) c /= n;
}

SectorCoord lift(int p, int m) {
    if (p < 0 || m < 0) throw std::domain_error("negative basis index");
    return {p + m, m};
}

std::pair<int, int> lower(int s, int row, int n_qubits) {
    if (s < 0 || row < 0) throw std::domain_error("negative sector coordinate");
    if (row > std::min(s, n_qubits))
        throw std::domain_error("sector row lies in the transform kernel");
    return {s - row, row};
}

std::vector<cdouble> gather_sector(const AmplitudeTable& state, int s) {
    const int d = std::min(s, state.n_qubits) + 1;
    std::vector<cdouble> v(d, cdouble{0.0, 0.0});
    for (int row = 0; row < d; ++row) {
        const int p = s - row;
        if (p <= state.p_max) v[row] = state.at(p, row);
    }
    return v;
}

void scatter_sector(const std::vector<cdouble>& v, int s, AmplitudeTable& state) {
    const int d = std::min(s, state.n_qubits) + 1;
    if (static_cast<int>(v.size()) != d)
        throw std::invalid_argument("sector vector has wrong dimension");
    for (int row = 0; row < d; ++row) {
        const int p = s - row;
        if (p > state.p_max)
            throw truncation_error("scatter beyond p_max: sector " + std::to_string(s) +
                                   " needs photon index " + std::to_string(p));
        state.at(p, row) = v[row];
    }
}

int coherent_p_max(cdouble alpha) {
    const double a = std::abs(alpha);
    return static_cast<int>(std::ceil(a * a + 10.0 * a + 10.0));
}

double coherent_tail_mass(cdouble alpha, int p_max) {
    const double nbar = std::norm(alpha);
    double mass = 0.0, term = std::exp(-nbar);
    for (int p = 0; p <= p_max; ++p) {
        mass += term;
        term *= nbar / (p + 1);
    }
    return std::max(0.0, 1.0 - mass);
}

AmplitudeTable coherent_dicke_state(cdouble alpha, int m0, int n_qubits, int p_max) {
    if (m0 < 0 || m0 > n_qubits) throw std::invalid_argument("m0 outside 0..N");
    if (p_max < 0) p_max = coherent_p_max(alpha);
    AmplitudeTable state(n_qubits, p_max);
    const double a = std::abs(alpha);
    const double phase = std::arg(alpha);
    for (int p = 0; p <= p_max; ++p) {
        // log-space magnitude; exact vacuum for alpha = 0
        double logmag = (a > 0.0) ? -0.5 * a * a + p * std::log(a) - 0.5 * std::lgamma(p + 1.0)
                                  : (p == 0 ? 0.0 : -std::numeric_limits<double>::infinity());
        state.at(p, m0) = std::polar(std::exp(logmag), p * phase);
    }
    state.normalize();
    return state;
}

}  // namespace dicke
