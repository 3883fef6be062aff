#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "dicke/rabi.hpp"

#include <cmath>

using namespace dicke;

TEST_CASE("effective parameters, worked example") {
    RabiParams r;
    r.n_qubits = 4;
    r.omega_f = 1.0;
    r.omega_q = 1.2;
    r.two_photon = 0.05;
    r.collective = 0.4;
    r.dipole = 0.02;
    const MappingReport rep = effective_params(r);
    CHECK(rep.effective.n_qubits == 4);
    // delta = 1.2 - 1.0 + 2 * 0.0025 / 1.0
    CHECK(rep.effective.detuning == doctest::Approx(0.205).epsilon(1e-12));
    CHECK(rep.effective.qubit_qubit == doctest::Approx(0.1).epsilon(1e-12));
    const double expect_lambda = 2.0 * 0.02 * (1.0 - 0.05) * (1.0 - 2.0 * 0.0025) /
                                 (2.0 * 1.0 * (1.0 - 2.0 * 0.0025 + 1.2));
    CHECK(rep.effective.coupling == doctest::Approx(expect_lambda).epsilon(1e-12));
    CHECK(rep.effective.kerr == 0.0);
}

TEST_CASE("zero two-photon drive reduces to the plain rotating-wave map") {
    RabiParams r;
    r.n_qubits = 1;
    r.omega_f = 1.0;
    r.omega_q = 0.9;
    r.dipole = 0.03;
    const MappingReport rep = effective_params(r);
    CHECK(rep.effective.detuning == doctest::Approx(-0.1).epsilon(1e-13));
    // lambda = 2 g omega_f^3 / (omega_f (omega_f^2 + omega_q omega_f)) = 2g/(1+wq)
    CHECK(rep.effective.coupling == doctest::Approx(2.0 * 0.03 / 1.9).epsilon(1e-13));
    CHECK(rep.effective.qubit_qubit == 0.0);
}

TEST_CASE("critical coupling") {
    RabiParams r;
    r.n_qubits = 2;
    r.omega_f = 1.0;
    r.omega_q = 1.2;
    r.collective = 0.3;
    auto gc = critical_coupling(r);
    REQUIRE(gc.has_value());
    CHECK(*gc == doctest::Approx(std::sqrt(0.9)).epsilon(1e-13));

    r.two_photon = 0.2;
    gc = critical_coupling(r);
    REQUIRE(gc.has_value());
    CHECK(*gc == doctest::Approx(std::sqrt((1.0 - 0.08) * 0.9)).epsilon(1e-13));

    r.collective = 2.0;  // omega_q - xi < 0
    CHECK(!critical_coupling(r).has_value());
}

TEST_CASE("validity flags track the threshold") {
    RabiParams r;
    r.n_qubits = 1;
    r.omega_f = 1.0;
    r.omega_q = 1.0;
    r.two_photon = 0.01;
    r.dipole = 0.05;
    const MappingReport ok = effective_params(r, 0.1);
    CHECK(ok.squeeze_ok);
    CHECK(ok.rotation_ok);
    CHECK(ok.all_ok());

    r.dipole = 0.5;
    const MappingReport strong = effective_params(r, 0.1);
    CHECK(!strong.rotation_ok);
    CHECK(!strong.all_ok());

    r.dipole = 0.05;
    r.two_photon = 0.3;
    const MappingReport squeezed = effective_params(r, 0.1);
    CHECK(!squeezed.squeeze_ok);
}

TEST_CASE("singular mapping throws") {
    RabiParams r;
    r.n_qubits = 1;
    r.omega_f = 1.0;
    r.omega_q = 1.0;
    // omega_f^2 - 2 chi^2 + omega_q omega_f = 0 at chi = 1
    r.two_photon = 1.0;
    CHECK_THROWS_AS(effective_params(r), std::domain_error);
}

TEST_CASE("input validation") {
    RabiParams r;
    r.omega_f = 0.0;
    CHECK_THROWS_AS(r.validate(), std::invalid_argument);
    r.omega_f = 1.0;
    r.n_qubits = 0;
    CHECK_THROWS_AS(r.validate(), std::invalid_argument);
}
