// Protocol circuits as operator-level transforms on single code rows:
// remote CNOT (elementary link), entanglement-swapping BSM and decoder.
#pragma once

#include <array>
#include <vector>

#include "qrep/noise.hpp"
#include "qrep/qmat.hpp"

namespace qrep {

/// How the |+~> codeword banks are prepared.
///   Ideal: perfect codeword.
///   Coded: codeword weights damaged by the two encoder CNOTs, other terms dropped.
///   Full:  Coded plus the six off-codeword diagonal terms (code length 3, level 1 only).
enum class EncoderMode { Ideal, Coded, Full };

/// Unnormalized 4x4 operator on one row's end-qubit pair; its trace carries
/// conditional probability mass.
using RowOperator = Operator;

/// Remote-CNOT output for the codeword component |j><k| on A_i, with the
/// ancilla outcomes fixed to (a_i = 0, b_i = +) and renormalized by 4.
/// Register order of the result: (A_i, B_i).
RowOperator elementary_row(int j, int k, const NoiseParams& params);

/// Weight multiplying the |j~><k~| component of an encoded bank.
/// Full mode is rejected; see extra_encoder_terms.
double encoder_weight(int j, int k, double beta, EncoderMode mode);

struct ExtraEncoderTerm {
    std::array<int, 3> bits;  // diagonal pattern |b1 b2 b3><b1 b2 b3|
    double weight;
};

/// The six off-codeword diagonal terms produced by noisy encoder CNOTs.
std::vector<ExtraEncoderTerm> extra_encoder_terms(double beta);

/// One component of an encoded bank in row-factorized form:
/// weight * (x)_i |rows[i].first><rows[i].second|.
struct EncoderTerm {
    std::vector<std::array<int, 2>> rows;
    double weight;
};

/// All components of rho_A^in for the given mode and code length. Ideal and
/// Coded give four uniform terms with weight C_jk / 2; Full adds the extra
/// terms (code length 3 only).
std::vector<EncoderTerm> encoder_terms(double beta, EncoderMode mode, int code_length = 3);

/// Entanglement swap of one row: left (A_i, B_i) (x) right (C_i, D_i), noisy
/// CNOT B_i -> C_i, noisy X projector (b_outcome, 0 = +) on B_i and noisy Z
/// projector (c_outcome) on C_i. Result is unnormalized on (A_i, D_i).
RowOperator swap_row(const RowOperator& left, const RowOperator& right, int c_outcome,
                     const NoiseParams& params, int b_outcome = 0);

struct DecodeResult {
    Operator state;     // conditional state on (A_1, A'_1), normalized; zero if weight == 0
    double prob = 0.0;  // conditional probability of the outcome given rho
    double weight = 0.0;  // trace of the unnormalized output
};

/// Decoder on both ends. `rho` is over (A_1..A_d, A'_1..A'_d). Each side
/// applies noisy CNOT 1->2, then 1->3 (..., 1->d), measures qubits 2..d
/// with noisy Z projectors and flips qubit 1 iff all its measured bits are 1.
/// `outcome` packs the measured bits MSB-first as (A_2..A_d, A'_2..A'_d);
/// for d = 3, outcome 0b1000 means d_{A2} = 1. The decoder CNOTs use
/// params.beta only when `noisy_gates` is set; projectors always use delta.
DecodeResult decode_channel(const Operator& rho, const NoiseParams& params, unsigned outcome,
                            bool noisy_gates = true, int code_length = 3);

}  // namespace qrep
