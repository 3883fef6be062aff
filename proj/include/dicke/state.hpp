#pragma once

#include <complex>
#include <stdexcept>
#include <vector>

namespace dicke {

using cdouble = std::complex<double>;

/// Thrown when a scatter would write a photon index beyond the table.
struct truncation_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Pure state over the product basis |p photons> |Dicke m>, stored as a
/// dense complex table c_{p,m}, p in 0..p_max, m in 0..N.
struct AmplitudeTable {
    int n_qubits = 1;
    int p_max = 0;
    std::vector<cdouble> amps;  // row-major, index p*(N+1) + m

    AmplitudeTable() = default;
    AmplitudeTable(int n_qubits, int p_max);

    cdouble& at(int p, int m) { return amps[static_cast<std::size_t>(p) * (n_qubits + 1) + m]; }
    const cdouble& at(int p, int m) const {
        return amps[static_cast<std::size_t>(p) * (n_qubits + 1) + m];
    }

    double norm_sq() const;
    void normalize();
};

// The right-unitary transform built from boson phase (exponential-of-phase)
// ladder operators is pure index arithmetic: its adjoint maps a physical
// component (p, m) to sector coordinates (s = p + m, row = m), and the
// transform maps back.

struct SectorCoord {
    int s;
    int row;
};

/// Adjoint-transform index map: (p, m) -> (s = p + m, row = m).
SectorCoord lift(int p, int m);

/// Transform index map: (s, row) -> (p = s - row, m = row).
/// Rows beyond min(s, N) lie in the transform kernel and are rejected.
std::pair<int, int> lower(int s, int row, int n_qubits);

/// Sector slice of a state: vector[row] = c_{s-row, row}, zero where the
/// photon index exceeds p_max.
std::vector<cdouble> gather_sector(const AmplitudeTable& state, int s);

/// Writes vector[row] into c_{s-row, row}. Throws truncation_error if a
/// photon index would exceed p_max.
void scatter_sector(const std::vector<cdouble>& v, int s, AmplitudeTable& state);

/// Photon truncation for a coherent state with the discarded Poisson tail
/// mass below ~1e-12: ceil(|alpha|^2 + 10|alpha| + 10).
int coherent_p_max(cdouble alpha);

/// Poisson tail mass discarded by truncating a coherent state at p_max.
double coherent_tail_mass(cdouble alpha, int p_max);

/// Product state |alpha>_f |m0>, normalized over the retained photon range.
AmplitudeTable coherent_dicke_state(cdouble alpha, int m0, int n_qubits, int p_max = -1);

}  // namespace dicke
