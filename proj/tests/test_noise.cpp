#include <doctest.h>

#include <random>

#include "helpers.hpp"
#include "qrep/noise.hpp"

using namespace qrep;

namespace {

// Choi matrix of the noisy gate on qubits (2, 3) of a (ref, ref, sys, sys) register.
Operator choi_of_noisy_gate(double beta) {
    Operator omega(16);
    for (std::size_t i = 0; i < 4; ++i) {
        for (std::size_t j = 0; j < 4; ++j) omega(i * 4 + i, j * 4 + j) = 1.0;
    }
    noisy_two_qubit_gate(omega, 2, 3, cnot_gate(), beta);
    return omega;
}

}  // namespace

TEST_CASE("parameter validation") {
    CHECK_NOTHROW(NoiseParams{}.validate());
    CHECK_THROWS_AS((NoiseParams{0.2, 0, 0}.validate()), std::invalid_argument);
    CHECK_THROWS_AS((NoiseParams{1, 1.5, 0}.validate()), std::invalid_argument);
    CHECK_THROWS_AS((NoiseParams{1, 0, 0.6}.validate()), std::invalid_argument);
    CHECK_THROWS_AS(werner_state(1.01), std::invalid_argument);
}

TEST_CASE("Werner state is Bell diagonal with fidelity f0") {
    for (double f : {0.25, 0.6, 0.9, 1.0}) {
        const auto w = werner_state(f);
        CHECK(w.real_trace() == doctest::Approx(1.0));
        const auto bw = bell_weights(w);
        CHECK(bw.phi_plus == doctest::Approx(f));
        CHECK(bw.phi_minus == doctest::Approx((1 - f) / 3));
        CHECK(bw.psi_plus == doctest::Approx((1 - f) / 3));
        CHECK(bw.psi_minus == doctest::Approx((1 - f) / 3));
        CHECK(validate_state(w).ok());
    }
}

TEST_CASE("noisy two-qubit gate is CPTP") {
    for (double beta : {0.0, 0.01, 0.3, 1.0}) {
        CAPTURE(beta);
        const auto choi = choi_of_noisy_gate(beta);
        const auto diag = validate_state(choi * 0.25);
        CHECK(diag.hermitian);
        CHECK(diag.positive);
        // Tracing out the output gives the identity on the reference.
        const std::size_t ref[] = {0, 1};
        CHECK(max_abs_diff(partial_trace(choi, ref), Operator::identity(4)) < 1e-14);
    }
}

TEST_CASE("full depolarization maps every input to the maximally mixed target") {
    std::mt19937_64 rng(7);
    auto rho = testutil::random_state(8, rng);
    const std::size_t keep[] = {1};
    const auto reduced = partial_trace(rho, keep);
    noisy_two_qubit_gate(rho, 0, 2, cnot_gate(), 1.0);
    const auto expected = tensor(tensor(Operator::identity(2) * 0.5, reduced), Operator::identity(2) * 0.5);
    CHECK(max_abs_diff(rho, expected) < 1e-14);
}

TEST_CASE("label-addressed gate equals index-addressed gate") {
    std::mt19937_64 rng(8);
    const auto rho = testutil::random_state(16, rng);
    RegisterLayout layout({"A", "a", "b", "B"});
    const auto via_labels = noisy_two_qubit_gate(rho, layout, {"b", "B"}, cnot_gate(), 0.1);
    auto via_index = rho;
    noisy_two_qubit_gate(via_index, 2, 3, cnot_gate(), 0.1);
    CHECK(max_abs_diff(via_labels, via_index) < 1e-15);
    auto copy = rho;
    CHECK_THROWS(noisy_two_qubit_gate(copy, 0, 1, Operator::from_rows({{1, 0, 0, 0}, {0, 1, 0, 0}, {0, 0, 1, 1}, {0, 0, 0, 1}}), 0.1));
}

TEST_CASE("noisy projectors form complete, positive instruments") {
    for (double delta : {0.0, 0.01, 0.25, 0.5}) {
        for (auto basis : {Basis::Z, Basis::X}) {
            const auto p0 = noisy_projector(basis, 0, delta);
            const auto p1 = noisy_projector(basis, 1, delta);
            CHECK(max_abs_diff(p0 + p1, Operator::identity(2)) < 1e-15);
            CHECK(validate_state(p0, 1e-12).positive);
            CHECK(validate_state(p1, 1e-12).positive);
        }
    }
    CHECK_THROWS(noisy_projector(Basis::Z, 2, 0.0));
    CHECK_THROWS(noisy_projector(Basis::X, 0, 0.7));
}

TEST_CASE("Pauli corrections are unitary and XZ = X Z") {
    for (auto p : {Pauli::I, Pauli::X, Pauli::Z, Pauli::XZ}) CHECK(is_unitary(pauli_correction(p)));
    CHECK(max_abs_diff(pauli_correction(Pauli::X) * pauli_correction(Pauli::Z), pauli_correction(Pauli::XZ)) == 0.0);
}
