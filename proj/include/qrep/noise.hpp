// Noise primitives: Werner Bell pairs, depolarizing two-qubit gates and
// faulty single-qubit projectors, plus Bell-basis helpers.
#pragma once

#include <array>
#include <span>
#include <string>

#include "qrep/qmat.hpp"

namespace qrep {

/// The three imperfection knobs shared by every component of the chain.
struct NoiseParams {
    double f0 = 1.0;     // initial Bell-pair fidelity, [0.25, 1]
    double beta = 0.0;   // two-qubit gate error probability, [0, 1]
    double delta = 0.0;  // measurement error probability, [0, 0.5]

    /// Throws std::invalid_argument when a field is out of range.
    void validate() const;
    static NoiseParams ideal() { return {}; }
};

enum class BellKind { PhiPlus, PhiMinus, PsiPlus, PsiMinus };
enum class Basis { Z, X };
enum class Pauli { I, X, Z, XZ };

std::array<cplx, 4> bell_vector(BellKind kind);
Operator bell_projector(BellKind kind);

/// CNOT with the first (most significant) qubit as control.
const Operator& cnot_gate();

/// F0 |phi+><phi+| + (1 - F0)/3 (I - |phi+><phi+|). Requires 0.25 <= f0 <= 1.
Operator werner_state(double f0);

/// (1 - beta) U rho U^dagger + beta/4 Tr_targets(rho) (x) I_targets, in place.
/// `targets` names the gate's (first, second) qubit.
void noisy_two_qubit_gate(Operator& rho, std::size_t first, std::size_t second, const Operator& gate,
                          double beta);
Operator noisy_two_qubit_gate(const Operator& rho, const RegisterLayout& layout,
                              const std::array<std::string, 2>& targets, const Operator& gate,
                              double beta);

/// Faulty projector: (1 - delta) |o><o| + delta |o'><o'| in the given basis.
/// For the X basis outcome 0 is |+> and 1 is |->.
Operator noisy_projector(Basis basis, int outcome, double delta);

struct BellWeights {
    double phi_plus = 0.0;
    double phi_minus = 0.0;
    double psi_plus = 0.0;
    double psi_minus = 0.0;
};

/// Diagonal of a two-qubit operator in the Bell basis.
BellWeights bell_weights(const Operator& rho2);

/// Exact single-qubit Pauli frame correction. XZ means "apply Z, then X".
Operator pauli_correction(Pauli kind);

}  // namespace qrep
