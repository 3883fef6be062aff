#pragma once

#include <vector>

namespace dicke {

/// Physical constants of the generalized Dicke Hamiltonian
///   H = delta*Jz + kerr*(a†a)^2 + qubit_qubit*Jz^2 + coupling*(a J+ + a† J-)
/// in the rotating frame of the field, units of hbar. All frequencies are
/// angular frequencies; times are in inverse angular-frequency units.
struct ModelParams {
    int n_qubits = 1;          // N
    double detuning = 0.0;     // delta = omega_q - omega_f
    double kerr = 0.0;         // kappa
    double qubit_qubit = 0.0;  // gamma
    double coupling = 1.0;     // lambda

    void validate() const;  // throws std::invalid_argument
};

// Dicke states are indexed internally by the integer m = j + N/2 in 0..N,
// so half-integer j for odd N is represented exactly. A conserved-excitation
// sector is labeled by s = p + m where p is the photon number.

/// Dimension of the physical block of sector s: min(s, N) + 1.
int sector_dim(int s, int n_qubits);

/// Diagonal entry of the transformed Hamiltonian at Dicke index m in
/// sector s: kerr*(s-m)^2 + j*(detuning + qubit_qubit*j), j = m - N/2.
double f_diag(int m, int s, const ModelParams& params);

/// Off-diagonal entry coupling Dicke indices m-1 and m in sector s:
/// coupling * sqrt(N/2*(N/2+1) - j*(j-1)) * sqrt(s + 1 - m), j = m - N/2.
/// Returns exactly 0 when s + 1 - m <= 0 (the transform kernel boundary).
double g_offdiag(int m, int s, const ModelParams& params);

/// Symmetric tridiagonal block of the transformed Hamiltonian for one
/// conserved-excitation sector. Row i corresponds to Dicke index m = i.
struct SectorMatrix {
    int s = 0;
    std::vector<double> diag;     // f values, index m = 0..d-1
    std::vector<double> offdiag;  // entry i couples m = i and m = i+1

    int dim() const { return static_cast<int>(diag.size()); }
    double trace() const;
    double frobenius_sq() const;
    // max Gershgorin bound, used for bisection brackets and tolerances
    double spectral_bound() const;
};

SectorMatrix build_sector(int s, const ModelParams& params);

}  // namespace dicke
