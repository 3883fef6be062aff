#pragma once

#include "dicke/state.hpp"

#include <vector>

namespace dicke {

/// Hermitian reduced density matrix, dense row-major.
struct DensityMatrix {
    int dim = 0;
    std::vector<cdouble> a;

    cdouble& at(int i, int j) { return a[static_cast<std::size_t>(i) * dim + j]; }
    const cdouble& at(int i, int j) const { return a[static_cast<std::size_t>(i) * dim + j]; }
    double trace_real() const;
};

/// Reduced state of the qubit ensemble: rho[m][m'] = sum_p c_{p,m} c*_{p,m'}.
struct EnsembleDensity : DensityMatrix {};
/// Reduced state of the field: rho[p][q] = sum_m c_{p,m} c*_{q,m}.
struct FieldDensity : DensityMatrix {};

EnsembleDensity reduced_ensemble(const AmplitudeTable& state);
FieldDensity reduced_field(const AmplitudeTable& state);

/// Ascending eigenvalues of a Hermitian density matrix.
std::vector<double> density_spectrum(const DensityMatrix& rho);

double density_purity_deficit(const DensityMatrix& rho);  // 1 - Tr rho^2
double density_entropy(const DensityMatrix& rho);         // -Tr rho ln rho, natural log

double mean_photon(const AmplitudeTable& state);
double mean_jz(const AmplitudeTable& state);

/// Population inversion via excitation conservation:
/// <Jz(t)> = <n + Jz>(0) - <n(t)>. Must agree with mean_jz along any
/// evolution.
double population_inversion(const AmplitudeTable& state, double excitation0);

/// Purity deficit and entropy of the reduced field. Computed from the
/// ensemble-side trace, which has the same nonzero spectrum for a pure
/// global state and is far smaller for large photon truncations. The
/// ensemble trace is additionally restricted to the occupied Dicke range.
double purity_deficit(const AmplitudeTable& state);
double entropy(const AmplitudeTable& state);

struct QGridSpec {
    cdouble center{0.0, 0.0};
    double half_width = 6.0;
    int resolution = 64;  // points per axis
};

/// Husimi Q of the reduced field on a square grid:
/// Q(alpha) = (1/pi) sum_m |sum_p e^{-|a|^2/2} (a*)^p / sqrt(p!) c_{p,m}|^2.
/// Row-major over (im, re); axes give the sampled coordinates.
struct QGrid {
    QGridSpec spec;
    std::vector<double> re_axis;
    std::vector<double> im_axis;
    std::vector<double> values;

    double at(int i_im, int i_re) const {
        return values[static_cast<std::size_t>(i_im) * re_axis.size() + i_re];
    }
};

QGrid husimi_q(const AmplitudeTable& state, const QGridSpec& spec, int workers = 1);

/// Count of grid-local maxima above `rel_threshold` times the grid peak
/// (8-neighborhood, interior points). Used for phase-blob detection.
int count_local_maxima(const QGrid& grid, double rel_threshold = 0.1);

}  // namespace dicke
