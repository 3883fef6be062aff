#pragma once

#include "dicke/model.hpp"

#include <optional>

namespace dicke {

/// Lab-frame generalized Rabi model:
///   H0 = omega_f a†a + kerr (a†a)^2 + two_photon (a^2 + a†^2)
///        + omega_q Jz + (collective/N) Jz^2
///   HI = (dipole/sqrt(N)) (a + a†)(J+ + J-)
struct RabiParams {
    int n_qubits = 1;
    double omega_f = 1.0;
    double omega_q = 1.0;
    double kerr = 0.0;        // kappa, passed through to the effective model
    double two_photon = 0.0;  // chi
    double collective = 0.0;  // xi
    double dipole = 0.0;      // g

    void validate() const;
};

/// Result of the squeezing-plus-small-rotation reduction to the effective
/// Dicke-Kerr model.
struct MappingReport {
    ModelParams effective;
    double squeeze_ratio = 0.0;       // chi / omega_f
    double rotation_ratio = 0.0;      // g / (omega_f - 2 chi^2/omega_f + omega_q)
    double nonlinearity_ratio = 0.0;  // max(|kerr|, |collective|) / omega_q
    double threshold = 0.1;
    bool squeeze_ok = false;
    bool rotation_ok = false;
    bool nonlinearity_ok = false;  // advisory only
    std::optional<double> critical_coupling;

    bool all_ok() const { return squeeze_ok && rotation_ok; }
};

/// Effective parameters:
///   delta = omega_q - omega_f + 2 chi^2/omega_f
///   gamma = xi / N
///   lambda = 2 g (omega_f - chi)(omega_f^2 - 2 chi^2)
///            / [sqrt(N) omega_f (omega_f^2 - 2 chi^2 + omega_q omega_f)]
/// Throws std::domain_error when the lambda denominator vanishes.
MappingReport effective_params(const RabiParams& rabi, double threshold = 0.1);

/// g_c = sqrt((omega_f - 2 chi^2/omega_f)(omega_q - xi)); nullopt when the
/// radicand is negative (no real critical coupling).
std::optional<double> critical_coupling(const RabiParams& rabi);

}  // namespace dicke
