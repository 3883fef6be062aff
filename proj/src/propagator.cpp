#include "dicke/propagator.hpp"

#include "dicke/parallel.hpp"

#include <algorithm>
#include <cmath>

namespace dicke {

int SectorPropagator::dim() const {
    return static_cast<int>(std::lround(std::sqrt(static_cast<double>(u.size()))));
}

cdouble& SectorPropagator::at(int i, int j) { return u[static_cast<std::size_t>(i) * dim() + j]; }
const cdouble& SectorPropagator::at(int i, int j) const {
    return u[static_cast<std::size_t>(i) * dim() + j];
}

SectorPropagator sector_propagator(const Eigensystem& eig, double t) {
    const int d = eig.dim();
    SectorPropagator prop;
    prop.s = eig.s;
    prop.t = t;
    prop.u.assign(static_cast<std::size_t>(d) * d, cdouble{0.0, 0.0});
    if (t == 0.0) {
        for (int i = 0; i < d; ++i) prop.at(i, i) = 1.0;
        return prop;
    }
    // U = Q exp(-i t Lambda) Q^T
    for (int k = 0; k < d; ++k) {
        const cdouble phase = std::polar(1.0, -t * eig.eigenvalues[k]);
        const double* q = eig.column(k);
        for (int i = 0; i < d; ++i) {
            const cdouble qi = phase * q[i];
            for (int j = 0; j < d; ++j) prop.at(i, j) += qi * q[j];
        }
    }
    return prop;
}

EvolutionContext::EvolutionContext(const ModelParams& params, int s_max, int workers)
    : params_(params), s_max_(s_max), sectors_(s_max + 1) {
    params_.validate();
    if (s_max < 0) throw std::invalid_argument("s_max must be >= 0");
    parallel_for(static_cast<std::size_t>(s_max) + 1, workers, [&](std::size_t s) {
        sectors_[s] = diagonalize(build_sector(static_cast<int>(s), params_));
    });
}

void EvolutionContext::apply(int s, double t, std::vector<cdouble>& v) const {
    const Eigensystem& eig = sectors_[s];
    const int d = eig.dim();
    if (static_cast<int>(v.size()) != d)
        throw std::invalid_argument("sector vector has wrong dimension");
    // v <- Q exp(-i t Lambda) Q^T v, fixed summation order for determinism
    std::vector<cdouble> coeff(d);
    for (int k = 0; k < d; ++k) {
        const double* q = eig.column(k);
        cdouble acc{0.0, 0.0};
        for (int i = 0; i < d; ++i) acc += q[i] * v[i];
        coeff[k] = acc * std::polar(1.0, -t * eig.eigenvalues[k]);
    }
    for (int i = 0; i < d; ++i) v[i] = cdouble{0.0, 0.0};
    for (int k = 0; k < d; ++k) {
        const double* q = eig.column(k);
        for (int i = 0; i < d; ++i) v[i] += coeff[k] * q[i];
    }
}

int max_occupied_sector(const AmplitudeTable& state) {
    int smax = -1;
    for (int p = state.p_max; p >= 0; --p)
        for (int m = state.n_qubits; m >= 0; --m)
            if (state.at(p, m) != cdouble{0.0, 0.0}) smax = std::max(smax, p + m);
    return smax;
}

AmplitudeTable evolve(const AmplitudeTable& state, double t, const EvolutionContext& ctx) {
    if (t == 0.0) return state;
    const int N = state.n_qubits;
    const int s_occ = max_occupied_sector(state);
    if (s_occ > ctx.s_max())
        throw truncation_error("evolution context does not cover occupied sector " +
                               std::to_string(s_occ));
    AmplitudeTable out(N, std::max(state.p_max, s_occ));
    for (int s = 0; s <= std::max(s_occ, -1); ++s) {
        std::vector<cdouble> v = gather_sector(state, s);
        bool occupied = false;
        for (const cdouble& c : v)
            if (c != cdouble{0.0, 0.0}) occupied = true;
        if (!occupied) continue;
        ctx.apply(s, t, v);
        scatter_sector(v, s, out);
    }
    return out;
}

AmplitudeTable evolve(const AmplitudeTable& state, double t, const ModelParams& params,
                      int workers) {
    if (t == 0.0) return state;
    const int s_occ = std::max(0, max_occupied_sector(state));
    EvolutionContext ctx(params, s_occ, workers);
    return evolve(state, t, ctx);
}

std::array<cdouble, 4> jc_kerr_propagator(int n, double t, const ModelParams& params) {
    params.validate();
    if (params.n_qubits != 1) throw std::domain_error("closed form requires a single qubit");
    if (n < 1) throw std::domain_error("sector 0 is one-dimensional; use the generic path");
    const double kappa = params.kerr, delta = params.detuning, lam = params.coupling;
    const double beta = delta + kappa * (1.0 - 2.0 * n);
    const double omega = std::sqrt(beta * beta + 4.0 * n * lam * lam);
    const double phi = 0.5 * kappa * (static_cast<double>(n) * n + (n - 1.0) * (n - 1.0)) +
                       0.25 * params.qubit_qubit;
    const cdouble pref = std::polar(1.0, -phi * t);
    const double c = std::cos(0.5 * omega * t);
    // sin(x)/x limit handles the n >= 1, lambda = 0, beta = 0 corner
    const double sinc =
        (omega == 0.0) ? 0.5 * t : std::sin(0.5 * omega * t) / omega;
    const cdouble is{0.0, sinc};
    const double offd = 2.0 * lam * std::sqrt(static_cast<double>(n));
    // traceless part of the sector matrix: [[-beta/2, lam sqrt n],[..., beta/2]]*2
    std::array<cdouble, 4> u;
    u[0] = pref * (c - is * (-beta));
    u[1] = pref * (-is * offd);
    u[2] = u[1];
    u[3] = pref * (c - is * beta);
    return u;
}

std::vector<AmplitudeTable> evolution_series(const AmplitudeTable& state0,
                                             const std::vector<double>& times,
                                             const ModelParams& params, int workers) {
    std::vector<AmplitudeTable> snapshots(times.size());
    evolution_scan(state0, times, params, workers,
                   [&](std::size_t i, const AmplitudeTable& snap) { snapshots[i] = snap; });
    return snapshots;
}

void evolution_scan(const AmplitudeTable& state0, const std::vector<double>& times,
                    const ModelParams& params, int workers,
                    const std::function<void(std::size_t, const AmplitudeTable&)>& visit) {
    for (std::size_t i = 1; i < times.size(); ++i)
        if (!(times[i] > times[i - 1]))
            throw std::invalid_argument("times must be strictly increasing");
    const int s_occ = std::max(0, max_occupied_sector(state0));
    EvolutionContext ctx(params, s_occ, workers);
    parallel_for(times.size(), workers, [&](std::size_t i) {
        AmplitudeTable snap = evolve(state0, times[i], ctx);
        visit(i, snap);
    });
}

}  // namespace dicke
