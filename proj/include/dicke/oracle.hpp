#pragma once

#include "dicke/model.hpp"
#include "dicke/rabi.hpp"
#include "dicke/state.hpp"

#include <Eigen/Dense>

namespace dicke {

/// Dense operator on the truncated product basis |p>|m>, p <= p_cut,
/// m <= N, ordered p-major. Desk-scale validation only.
struct DenseOperator {
    int n_qubits = 1;
    int p_cut = 0;
    Eigen::MatrixXcd mat;

    int dim() const { return (p_cut + 1) * (n_qubits + 1); }
    int index(int p, int m) const { return p * (n_qubits + 1) + m; }
};

/// Brute-force Hamiltonian of the generalized Dicke model, assembled
/// directly from the ladder-operator matrix elements (independent of the
/// sector machinery so it can arbitrate conventions).
DenseOperator dense_hamiltonian(const ModelParams& params, int p_cut);

/// Reference evolution via dense Hermitian eigendecomposition.
Eigen::VectorXcd dense_evolve(const DenseOperator& h, const Eigen::VectorXcd& psi0, double t);

/// Sign-convention readings of the two-factor auxiliary Hamiltonians. The
/// two documented forms differ by a j -> -j relabeling: `kernel` places the
/// correction factor on the transform-kernel rows and matches the
/// transformed Hamiltonian; `mirrored` keeps the opposite sign of j in the
/// Kerr offset and the mirrored projector ranges.
enum class AuxConvention { mirrored, kernel };

/// Two-factor evolution U_A(t) U_B(t) built from the auxiliary Hamiltonians
/// (both diagonal in the field basis), assembled in the transformed picture
/// and carried back through the index-map transform. Returns the dense
/// physical-basis operator. Columns with p + m near the truncation edge are
/// affected by the index shift; compare on an interior support.
DenseOperator factorized_propagator(const ModelParams& params, int p_cut, double t,
                                    AuxConvention convention);

/// The two-factor product before the transform sandwich is unitary exactly;
/// this returns its max |U U† - 1| entry on the truncated transformed space.
double factorized_unitarity_defect(const ModelParams& params, int p_cut, double t,
                                   AuxConvention convention);

/// Dense generalized Rabi Hamiltonian (counter-rotating terms, two-photon
/// drive, collective Jz^2) for the weak-coupling spectral cross-check.
DenseOperator dense_rabi_hamiltonian(const RabiParams& rabi, int p_cut);

/// Flattens an amplitude table onto the dense basis (zero-padded/truncated).
Eigen::VectorXcd to_dense(const AmplitudeTable& state, int p_cut);
AmplitudeTable from_dense(const Eigen::VectorXcd& psi, int n_qubits, int p_cut);

}  // namespace dicke
