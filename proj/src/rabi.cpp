#include "dicke/rabi.hpp"

#include <cmath>
#include <stdexcept>

namespace dicke {

void RabiParams::validate() const {
    if (n_qubits < 1) throw std::invalid_argument("n_qubits must be >= 1");
    if (omega_f <= 0.0) throw std::invalid_argument("omega_f must be positive");
    for (double v : {omega_f, omega_q, kerr, two_photon, collective, dipole})
        if (!std::isfinite(v)) throw std::invalid_argument("Rabi parameters must be finite");
}

MappingReport effective_params(const RabiParams& rabi, double threshold) {
    rabi.validate();
    const double wf = rabi.omega_f, wq = rabi.omega_q, chi = rabi.two_photon;
    const double denom = wf * wf - 2.0 * chi * chi + wq * wf;
    if (denom == 0.0) throw std::domain_error("the coupling denominator vanishes");

    MappingReport rep;
    rep.effective.n_qubits = rabi.n_qubits;
    rep.effective.detuning = wq - wf + 2.0 * chi * chi / wf;
    rep.effective.kerr = rabi.kerr;
    rep.effective.qubit_qubit = rabi.collective / rabi.n_qubits;
    rep.effective.coupling = 2.0 * rabi.dipole * (wf - chi) * (wf * wf - 2.0 * chi * chi) /
                             (std::sqrt(static_cast<double>(rabi.n_qubits)) * wf * denom);

    // post-squeezing tilde parameters are not defined in closed form; the
    // diagnostic uses g and omega_f - 2 chi^2/omega_f as stand-ins
    const double wf_tilde = wf - 2.0 * chi * chi / wf;
    rep.squeeze_ratio = std::abs(chi / wf);
    rep.rotation_ratio = std::abs(rabi.dipole / (wf_tilde + wq));
    rep.nonlinearity_ratio =
        (wq != 0.0) ? std::max(std::abs(rabi.kerr), std::abs(rabi.collective)) / std::abs(wq)
                    : 0.0;
    rep.threshold = threshold;
    rep.squeeze_ok = rep.squeeze_ratio < threshold;
    rep.rotation_ok = rep.rotation_ratio < threshold;
    rep.nonlinearity_ok = rep.nonlinearity_ratio < threshold;
    rep.critical_coupling = critical_coupling(rabi);
    return rep;
}

std::optional<double> critical_coupling(const RabiParams& rabi) {
    rabi.validate();
    const double a = rabi.omega_f - 2.0 * rabi.two_photon * rabi.two_photon / rabi.omega_f;
    const double b = rabi.omega_q - rabi.collective;
    const double radicand = a * b;
    if (radicand < 0.0) return std::nullopt;
    return std::sqrt(radicand);
}

}  // namespace dicke
