#include "dicke/oracle.hpp"

#include <cmath>
#include <stdexcept>

namespace dicke {

namespace {

double ladder_a(int m, int n_qubits) {
    // <m-1| J- |m> = sqrt(N/2 (N/2+1) - j(j-1)), j = m - N/2
    const double half_n = 0.5 * n_qubits;
    const double j = m - half_n;
    return std::sqrt(std::max(0.0, half_n * (half_n + 1.0) - j * (j - 1.0)));
}

struct AuxFG {
    double f;
    double g;
};

AuxFG aux_fg(AuxConvention conv, double j, double n, const ModelParams& p) {
    const double half_n = 0.5 * p.n_qubits;
    double f, r2;
    if (conv == AuxConvention::mirrored) {
        f = p.kerr * (n - half_n + j) * (n - half_n + j) + j * (p.detuning + p.qubit_qubit * j);
        r2 = n + 1.0 + half_n - j;
    } else {
        f = p.kerr * (n - half_n - j) * (n - half_n - j) + j * (p.detuning + p.qubit_qubit * j);
        r2 = n + 1.0 - half_n - j;
    }
    const double r1 = half_n * (half_n + 1.0) - j * (j - 1.0);
    const double g = p.coupling * std::sqrt(std::max(0.0, r1)) * std::sqrt(std::max(0.0, r2));
    return {f, g};
}

// Per-field-index blocks of the two auxiliary Hamiltonians; both are
// diagonal in the photon number, so exponentials factor per block.
void aux_blocks(AuxConvention conv, const ModelParams& p, int n, Eigen::MatrixXd& ha,
                Eigen::MatrixXd& hb) {
    const int N = p.n_qubits;
    const double half_n = 0.5 * N;
    ha.setZero(N + 1, N + 1);
    hb.setZero(N + 1, N + 1);
    for (int m = 0; m <= N; ++m) {
        const double j = m - half_n;
        ha(m, m) = aux_fg(conv, j, n, p).f;
        if (m >= 1) {
            const double g = aux_fg(conv, j, n, p).g;
            ha(m, m - 1) += g;
            ha(m - 1, m) += g;
        }
    }
    for (int m = 0; m <= N; ++m) {
        const double j = m - half_n;
        if (conv == AuxConvention::mirrored) {
            // k ranges as printed: 0 .. N/2 - 1 - j
            if (m <= N - 1 && n <= N - 1 - m) hb(m, m) += aux_fg(conv, j, n, p).f;
            if (N != 1 && m >= 1 && m <= N - 1 && n <= N - 1 - m) {
                const double g = aux_fg(conv, j, n, p).g;
                hb(m, m - 1) += g;
                hb(m - 1, m) += g;
            }
        } else {
            // j -> -j relabeling puts the correction on the transform kernel
            if (n <= m - 1) hb(m, m) += aux_fg(conv, j, n, p).f;
            if (N != 1 && m >= 1 && n <= m - 1) {
                const double g = aux_fg(conv, j, n, p).g;
                hb(m, m - 1) += g;
                hb(m - 1, m) += g;
            }
        }
    }
}

Eigen::MatrixXcd block_exp(const Eigen::MatrixXd& h, double t) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(h);
    const auto& w = solver.eigenvalues();
    const auto& q = solver.eigenvectors();
    Eigen::VectorXcd phase(w.size());
    for (int i = 0; i < w.size(); ++i) phase(i) = std::polar(1.0, -w(i) * t);
    return q * phase.asDiagonal() * q.transpose();
}

}  // namespace

DenseOperator dense_hamiltonian(const ModelParams& params, int p_cut) {
    params.validate();
    if (p_cut < 1) throw std::invalid_argument("p_cut must be >= 1");
    const int N = params.n_qubits;
    DenseOperator h;
    h.n_qubits = N;
    h.p_cut = p_cut;
    h.mat.setZero(h.dim(), h.dim());
    const double half_n = 0.5 * N;
    for (int p = 0; p <= p_cut; ++p)
        for (int m = 0; m <= N; ++m) {
            const double j = m - half_n;
            h.mat(h.index(p, m), h.index(p, m)) =
                params.kerr * p * p + params.detuning * j + params.qubit_qubit * j * j;
            // a† J-: (p, m) -> (p+1, m-1)
            if (m >= 1 && p + 1 <= p_cut) {
                const double v = params.coupling * std::sqrt(p + 1.0) * ladder_a(m, N);
                h.mat(h.index(p + 1, m - 1), h.index(p, m)) += v;
                h.mat(h.index(p, m), h.index(p + 1, m - 1)) += v;
            }
        }
    return h;
}

Eigen::VectorXcd dense_evolve(const DenseOperator& h, const Eigen::VectorXcd& psi0, double t) {
    if (psi0.size() != h.dim()) throw std::invalid_argument("state dimension mismatch");
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(h.mat);
    Eigen::VectorXcd c = solver.eigenvectors().adjoint() * psi0;
    for (int i = 0; i < c.size(); ++i) c(i) *= std::polar(1.0, -solver.eigenvalues()(i) * t);
    return solver.eigenvectors() * c;
}

DenseOperator factorized_propagator(const ModelParams& params, int p_cut, double t,
                                    AuxConvention convention) {
    params.validate();
    const int N = params.n_qubits;
    const int n_cut = p_cut + N;
    DenseOperator u;
    u.n_qubits = N;
    u.p_cut = p_cut;
    u.mat.setZero(u.dim(), u.dim());
    Eigen::MatrixXd ha, hb;
    for (int n = 0; n <= n_cut; ++n) {
        aux_blocks(convention, params, n, ha, hb);
        const Eigen::MatrixXcd ut = block_exp(ha, t) * block_exp(hb, t);
        // sandwich with the transform index maps:
        // column (p, m) lifts to (n = p+m, m); row m' lowers to (n - m', m')
        for (int m = 0; m <= N; ++m) {
            const int p = n - m;
            if (p < 0 || p > p_cut) continue;
            for (int mp = 0; mp <= std::min(n, N); ++mp) {
                const int pp = n - mp;
                if (pp > p_cut) continue;
                u.mat(u.index(pp, mp), u.index(p, m)) = ut(mp, m);
            }
        }
    }
    return u;
}

double factorized_unitarity_defect(const ModelParams& params, int p_cut, double t,
                                   AuxConvention convention) {
    params.validate();
    const int N = params.n_qubits;
    const int n_cut = p_cut + N;
    double defect = 0.0;
    Eigen::MatrixXd ha, hb;
    for (int n = 0; n <= n_cut; ++n) {
        aux_blocks(convention, params, n, ha, hb);
        const Eigen::MatrixXcd ut = block_exp(ha, t) * block_exp(hb, t);
        const Eigen::MatrixXcd res =
            ut * ut.adjoint() - Eigen::MatrixXcd::Identity(N + 1, N + 1);
        defect = std::max(defect, res.cwiseAbs().maxCoeff());
    }
    return defect;
}

DenseOperator dense_rabi_hamiltonian(const RabiParams& rabi, int p_cut) {
    rabi.validate();
    if (p_cut < 1) throw std::invalid_argument("p_cut must be >= 1");
    const int N = rabi.n_qubits;
    DenseOperator h;
    h.n_qubits = N;
    h.p_cut = p_cut;
    h.mat.setZero(h.dim(), h.dim());
    const double half_n = 0.5 * N;
    const double gs = rabi.dipole / std::sqrt(static_cast<double>(N));
    for (int p = 0; p <= p_cut; ++p)
        for (int m = 0; m <= N; ++m) {
            const double j = m - half_n;
            h.mat(h.index(p, m), h.index(p, m)) = rabi.omega_f * p + rabi.kerr * p * p +
                                                  rabi.omega_q * j +
                                                  rabi.collective / N * j * j;
            // chi (a^2 + a†^2)
            if (p + 2 <= p_cut) {
                const double v = rabi.two_photon * std::sqrt((p + 1.0) * (p + 2.0));
                h.mat(h.index(p + 2, m), h.index(p, m)) += v;
                h.mat(h.index(p, m), h.index(p + 2, m)) += v;
            }
            // (g/sqrt N)(a + a†)(J+ + J-)
            for (int dm : {+1, -1}) {
                const int m2 = m + dm;
                if (m2 < 0 || m2 > N) continue;
                const double am = (dm > 0) ? ladder_a(m2, N) : ladder_a(m, N);
                if (am == 0.0) continue;
                if (p + 1 <= p_cut)
                    h.mat(h.index(p + 1, m2), h.index(p, m)) += gs * std::sqrt(p + 1.0) * am;
                if (p - 1 >= 0)
                    h.mat(h.index(p - 1, m2), h.index(p, m)) += gs * std::sqrt(static_cast<double>(p)) * am;
            }
        }
    return h;
}

Eigen::VectorXcd to_dense(const AmplitudeTable& state, int p_cut) {
    const int N = state.n_qubits;
    Eigen::VectorXcd psi = Eigen::VectorXcd::Zero((p_cut + 1) * (N + 1));
    for (int p = 0; p <= std::min(p_cut, state.p_max); ++p)
        for (int m = 0; m <= N; ++m) psi(p * (N + 1) + m) = state.at(p, m);
    return psi;
}

AmplitudeTable from_dense(const Eigen::VectorXcd& psi, int n_qubits, int p_cut) {
    AmplitudeTable state(n_qubits, p_cut);
    for (int p = 0; p <= p_cut; ++p)
        for (int m = 0; m <= n_qubits; ++m) state.at(p, m) = psi(p * (n_qubits + 1) + m);
    return state;
}

}  // namespace dicke
