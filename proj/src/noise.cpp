#include "qrep/noise.hpp"

#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

namespace qrep {

void NoiseParams::validate() const {
    if (!(f0 >= 0.25 && f0 <= 1.0)) {
        throw std::invalid_argument("f0 must lie in [0.25, 1], got " + std::to_string(f0));
    }
    if (!(beta >= 0.0 && beta <= 1.0)) {
        throw std::invalid_argument("beta must lie in [0, 1], got " + std::to_string(beta));
    }
    if (!(delta >= 0.0 && delta <= 0.5)) {
        throw std::invalid_argument("delta must lie in [0, 0.5], got " + std::to_string(delta));
    }
}

std::array<cplx, 4> bell_vector(BellKind kind) {
    const double s = 1.0 / std::sqrt(2.0);
    switch (kind) {
        case BellKind::PhiPlus: return {s, 0.0, 0.0, s};
        case BellKind::PhiMinus: return {s, 0.0, 0.0, -s};
        case BellKind::PsiPlus: return {0.0, s, s, 0.0};
        case BellKind::PsiMinus: return {0.0, s, -s, 0.0};
    }
    throw std::invalid_argument("unknown Bell kind");
}

Operator bell_projector(BellKind kind) {
    const auto v = bell_vector(kind);
    return Operator::outer(v, v);
}

const Operator& cnot_gate() {
    static const Operator g = Operator::from_rows({{1, 0, 0, 0}, {0, 1, 0, 0}, {0, 0, 0, 1}, {0, 0, 1, 0}});
    return g;
}

Operator werner_state(double f0) {
    if (!(f0 >= 0.25 && f0 <= 1.0)) {
        throw std::invalid_argument("werner_state: f0 must lie in [0.25, 1], got " + std::to_string(f0));
    }
    const Operator phi = bell_projector(BellKind::PhiPlus);
    Operator rho = (Operator::identity(4) - phi) * ((1.0 - f0) / 3.0);
    rho.add_scaled(f0, phi);
    return rho;
}

void noisy_two_qubit_gate(Operator& rho, std::size_t first, std::size_t second, const Operator& gate,
                          double beta) {
    if (gate.dim() != 4) throw std::invalid_argument("noisy_two_qubit_gate: gate must be 4x4");
    if (!is_unitary(gate)) throw std::invalid_argument("noisy_two_qubit_gate: gate is not unitary");
    const std::size_t n = rho.num_qubits();
    const std::size_t targets[] = {first, second};
    if (beta == 0.0) {
        apply_unitary(rho, targets, gate);
        return;
    }
    if (n == 2) {
        const cplx tr = rho.trace();
        apply_unitary(rho, targets, gate);
        rho *= 1.0 - beta;
        for (std::size_t i = 0; i < 4; ++i) rho(i, i) += beta / 4.0 * tr;
        return;
    }

    std::vector<std::size_t> rest;
    for (std::size_t q = 0; q < n; ++q) {
        if (q != first && q != second) rest.push_back(q);
    }
    const Operator reduced = partial_trace(rho, rest);
    apply_unitary(rho, targets, gate);
    rho *= 1.0 - beta;

    // Add beta/4 * reduced (x) I on the targets, entry by entry.
    const std::size_t bf = std::size_t{1} << (n - 1 - first);
    const std::size_t bs = std::size_t{1} << (n - 1 - second);
    std::vector<std::size_t> bases;
    bases.reserve(reduced.dim());
    for (std::size_t i = 0; i < rho.dim(); ++i) {
        if ((i & (bf | bs)) == 0) bases.push_back(i);
    }
    const std::size_t off[] = {0, bs, bf, bf | bs};
    const double w = beta / 4.0;
    for (std::size_t r = 0; r < bases.size(); ++r) {
        for (std::size_t c = 0; c < bases.size(); ++c) {
            const cplx v = w * reduced(r, c);
            if (v == cplx{}) continue;
            for (auto o : off) rho(bases[r] + o, bases[c] + o) += v;
        }
    }
}

Operator noisy_two_qubit_gate(const Operator& rho, const RegisterLayout& layout,
                              const std::array<std::string, 2>& targets, const Operator& gate,
                              double beta) {
    if (layout.dim() != rho.dim()) throw std::invalid_argument("noisy_two_qubit_gate: layout mismatch");
    const auto idx = layout.indices_of(targets);
    Operator out = rho;
    noisy_two_qubit_gate(out, idx[0], idx[1], gate, beta);
    return out;
}

Operator noisy_projector(Basis basis, int outcome, double delta) {
    if (outcome != 0 && outcome != 1) throw std::invalid_argument("noisy_projector: outcome must be 0 or 1");
    if (!(delta >= 0.0 && delta <= 0.5)) throw std::invalid_argument("noisy_projector: delta out of range");
    const double keep = 1.0 - delta;
    if (basis == Basis::Z) {
        Operator p(2);
        p(outcome, outcome) = keep;
        p(1 - outcome, 1 - outcome) = delta;
        return p;
    }
    // |+><+| = [[1,1],[1,1]]/2, |-><-| = [[1,-1],[-1,1]]/2
    const double sign = outcome == 0 ? 1.0 : -1.0;
    const double off = 0.5 * sign * (keep - delta);
    return Operator::from_rows({{0.5, off}, {off, 0.5}});
}

BellWeights bell_weights(const Operator& rho2) {
    if (rho2.dim() != 4) throw std::invalid_argument("bell_weights: expected a two-qubit operator");
    auto overlap = [&](BellKind k) {
        const auto v = bell_vector(k);
        cplx acc{};
        for (std::size_t r = 0; r < 4; ++r) {
            for (std::size_t c = 0; c < 4; ++c) acc += std::conj(v[r]) * rho2(r, c) * v[c];
        }
        return acc.real();
    };
    return {overlap(BellKind::PhiPlus), overlap(BellKind::PhiMinus), overlap(BellKind::PsiPlus),
            overlap(BellKind::PsiMinus)};
}

Operator pauli_correction(Pauli kind) {
    switch (kind) {
        case Pauli::I: return Operator::identity(2);
        case Pauli::X: return Operator::from_rows({{0, 1}, {1, 0}});
        case Pauli::Z: return Operator::from_rows({{1, 0}, {0, -1}});
        case Pauli::XZ: return Operator::from_rows({{0, -1}, {1, 0}});
    }
    throw std::invalid_argument("unknown Pauli kind");
}

}  // namespace qrep
