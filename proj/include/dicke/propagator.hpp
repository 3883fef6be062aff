#pragma once

#include "dicke/model.hpp"
#include "dicke/state.hpp"
#include "dicke/tridiag.hpp"

#include <array>
#include <functional>
#include <vector>

namespace dicke {

/// Per-sector unitary exp(-i t H_sc(s)), dense row-major d x d.
struct SectorPropagator {
    int s = 0;
    double t = 0.0;
    std::vector<cdouble> u;

    int dim() const;
    cdouble& at(int i, int j);
    const cdouble& at(int i, int j) const;
};

SectorPropagator sector_propagator(const Eigensystem& eig, double t);

/// Eigensystems for all sectors up to s_max, built once and reused across
/// the whole time grid. Sector construction is embarrassingly parallel.
class EvolutionContext {
  public:
    EvolutionContext(const ModelParams& params, int s_max, int workers = 1);

    const ModelParams& params() const { return params_; }
    int s_max() const { return s_max_; }
    const Eigensystem& sector(int s) const { return sectors_[s]; }

    /// In-place exp(-i t H_sc(s)) applied to a sector vector.
    void apply(int s, double t, std::vector<cdouble>& v) const;

  private:
    ModelParams params_;
    int s_max_;
    std::vector<Eigensystem> sectors_;
};

/// Full reduced evolution: gather each occupied sector, apply the sector
/// unitary, scatter back. The output table is sized so that no occupied
/// component is truncated. t = 0 returns the input unchanged.
AmplitudeTable evolve(const AmplitudeTable& state, double t, const ModelParams& params,
                      int workers = 1);

/// Same, reusing a prebuilt context (the context must cover every occupied
/// sector of the state or a truncation_error is thrown).
AmplitudeTable evolve(const AmplitudeTable& state, double t, const EvolutionContext& ctx);

/// Closed-form 2x2 propagator of the single-qubit model in sector n >= 1,
/// rows ordered (m=0, m=1):
///   exp(-i t (phi + gamma/4)) * [cos(W t/2) I - (2i/W) sin(W t/2) (M - phi I)]
/// with beta(n) = delta + kerr (1 - 2n), W(n) = sqrt(beta^2 + 4 n lambda^2)
/// and phi = kerr (n^2 + (n-1)^2)/2. The constant gamma/4 phase makes the
/// result equal (not merely proportional) to the generic sector path.
std::array<cdouble, 4> jc_kerr_propagator(int n, double t, const ModelParams& params);

/// Snapshots of the state at each time; eigensystems are computed once.
std::vector<AmplitudeTable> evolution_series(const AmplitudeTable& state0,
                                             const std::vector<double>& times,
                                             const ModelParams& params, int workers = 1);

/// Streaming form: invokes visit(time_index, snapshot) for every time point
/// without retaining snapshots. Parallel over time points; visit must be
/// thread-safe (it is called with distinct indices).
void evolution_scan(const AmplitudeTable& state0, const std::vector<double>& times,
                    const ModelParams& params, int workers,
                    const std::function<void(std::size_t, const AmplitudeTable&)>& visit);

/// Largest occupied sector of a state (-1 for the zero table).
int max_occupied_sector(const AmplitudeTable& state);

}  // namespace dicke
