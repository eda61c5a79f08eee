#include <doctest.h>

#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

#include "helpers.hpp"
#include "qrep/noise.hpp"
#include "qrep/qmat.hpp"

using namespace qrep;

TEST_CASE("bit convention: qubit 0 is the most significant bit") {
    // |10> on (q0, q1) is basis index 2.
    const auto ket1 = Operator::unit(2, 1, 1), ket0 = Operator::unit(2, 0, 0);
    const auto rho = tensor(ket1, ket0);
    CHECK(rho(2, 2) == cplx{1.0});
    const std::size_t keep0[] = {0};
    CHECK(max_abs_diff(partial_trace(rho, keep0), ket1) == 0.0);
}

TEST_CASE("operator construction rejects bad dimensions") {
    CHECK_THROWS_AS(Operator(3), std::invalid_argument);
    CHECK_THROWS_AS(Operator(1), std::invalid_argument);
    CHECK_THROWS(Operator::from_rows({{1, 0}, {0}}));
}

TEST_CASE("tensor, partial trace and permutation agree") {
    std::mt19937_64 rng(1);
    const auto a = testutil::random_state(4, rng);
    const auto b = testutil::random_state(2, rng);
    const auto ab = tensor(a, b);

    const std::size_t keep_a[] = {0, 1};
    CHECK(max_abs_diff(partial_trace(ab, keep_a), a) < 1e-14);
    const std::size_t keep_b[] = {2};
    CHECK(max_abs_diff(partial_trace(ab, keep_b), b) < 1e-14);

    // (a on 0,1; b on 2) -> (b, a0, a1)
    const std::size_t order[] = {2, 0, 1};
    CHECK(max_abs_diff(permute_qubits(ab, order), tensor(b, a)) < 1e-14);

    const std::size_t none[] = {0, 0};
    CHECK_THROWS(permute_qubits(ab, none));
    CHECK_THROWS(partial_trace(ab, std::span<const std::size_t>{}));
}

TEST_CASE("register layout lookups") {
    RegisterLayout l({"A", "a", "b", "B"});
    CHECK(l.index_of("b") == 2);
    CHECK_THROWS_AS(l.index_of("Z"), std::invalid_argument);
    const std::string dup[] = {"A", "A"};
    CHECK_THROWS_AS(l.indices_of(dup), std::invalid_argument);
    CHECK_THROWS(RegisterLayout({"x", "x"}));
}

TEST_CASE("in-place unitary matches dense embedding") {
    std::mt19937_64 rng(2);
    const auto rho = testutil::random_state(16, rng);
    const std::size_t targets[] = {3, 1};
    auto fast = rho;
    apply_unitary(fast, targets, cnot_gate());
    const auto u = embed(cnot_gate(), 4, targets);
    CHECK(max_abs_diff(fast, u * rho * u.adjoint()) < 1e-14);

    auto one = rho;
    apply_unitary(one, 2, pauli_correction(Pauli::XZ));
    const std::size_t t2[] = {2};
    const auto v = embed(pauli_correction(Pauli::XZ), 4, t2);
    CHECK(max_abs_diff(one, v * rho * v.adjoint()) < 1e-14);
}

TEST_CASE("measure_discard is Tr_q[(E x I) rho]") {
    std::mt19937_64 rng(3);
    const auto rho = testutil::random_state(8, rng);
    const auto e = noisy_projector(Basis::X, 1, 0.1);
    const std::size_t t[] = {1};
    const std::size_t keep[] = {0, 2};
    const auto dense = partial_trace(embed(e, 3, t) * rho, keep);
    CHECK(max_abs_diff(measure_discard(rho, 1, e), dense) < 1e-14);
}

TEST_CASE("operations are linear") {
    std::mt19937_64 rng(4);
    const auto x = testutil::random_operator(8, rng);
    const auto y = testutil::random_operator(8, rng);
    const cplx a{0.3, -1.2}, b{-0.7, 0.4};
    const auto e = noisy_projector(Basis::Z, 0, 0.05);

    CHECK(max_abs_diff(measure_discard(a * x + b * y, 0, e),
                       a * measure_discard(x, 0, e) + b * measure_discard(y, 0, e)) < 1e-13);
    const std::size_t keep[] = {1, 2};
    CHECK(max_abs_diff(partial_trace(a * x + b * y, keep), a * partial_trace(x, keep) + b * partial_trace(y, keep)) <
          1e-13);

    auto lhs = a * x + b * y;
    noisy_two_qubit_gate(lhs, 0, 2, cnot_gate(), 0.2);
    auto gx = x, gy = y;
    noisy_two_qubit_gate(gx, 0, 2, cnot_gate(), 0.2);
    noisy_two_qubit_gate(gy, 0, 2, cnot_gate(), 0.2);
    CHECK(max_abs_diff(lhs, a * gx + b * gy) < 1e-13);
}

TEST_CASE("validate_state diagnostics") {
    std::mt19937_64 rng(5);
    CHECK(validate_state(testutil::random_state(8, rng)).ok());
    auto bad = Operator::diagonal(std::vector<double>{1.2, -0.2});
    const auto d = validate_state(bad);
    CHECK_FALSE(d.positive);
    CHECK(d.min_eigenvalue == doctest::Approx(-0.2));
    auto nonherm = Operator::unit(2, 0, 1);
    CHECK_FALSE(validate_state(nonherm).hermitian);
}
