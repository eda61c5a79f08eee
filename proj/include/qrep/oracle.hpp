// Brute-force reference: simulates the protocol on the full multi-qubit
// register (no row factorization, no linearization) so the fast engine can be
// checked against it. Code length 3 means 12-qubit (4096-dim) registers, so
// this is slow and memory hungry by design (~350 MB peak).
#pragma once

#include <cstdint>

#include "qrep/circuits.hpp"
#include "qrep/noise.hpp"
#include "qrep/qmat.hpp"
#include "qrep/repeater.hpp"

namespace qrep::oracle {

struct OracleConfig {
    int code_length = 3;  // 2 or 3; non-ideal encoders need 3
    NoiseParams params;
    EncoderMode enc = EncoderMode::Ideal;
};

/// Encoded |+~> bank on d qubits, produced by running the noisy encoder
/// circuit (Full), its codeword-subspace projection (Coded) or the ideal one.
Operator brute_encoder(const OracleConfig& cfg);

/// Elementary link on (A_1..A_d, B_1..B_d) from the full 4d-qubit register,
/// ancilla outcomes (a = 0, b = +) on every row, renormalized by 4^d.
Operator brute_elementary(const OracleConfig& cfg);

/// One swap station between two elementary links; unnormalized, on
/// (A_1..A_d, D_1..D_d), no frame correction.
Operator brute_swap(const OracleConfig& cfg, const SwapPattern& pattern);

struct OracleDecode {
    Operator state;  // normalized, zero when weight == 0
    double weight = 0.0;
};

/// Textbook decoder: dense embedded gates and projectors on the 2d-qubit state.
OracleDecode brute_decode(const Operator& es, const NoiseParams& params, unsigned outcome, bool noisy_gates,
                          int code_length);

OracleDecode brute_swap_and_decode(const OracleConfig& cfg, const SwapPattern& pattern, unsigned outcome,
                                   bool decoder_noisy = true);

double compare(const Operator& a, const Operator& b);

struct VerifyReport {
    int code_length = 0;
    int points = 0;
    double max_elementary = 0.0;
    double max_swap = 0.0;
    double max_decode = 0.0;
    double tolerance = 0.0;

    bool passed() const noexcept;
};

/// Random parameter points (seeded) comparing engine and oracle at every stage.
VerifyReport verify_engine(int code_length, int points, std::uint64_t seed, double tol = 1e-10);

}  // namespace qrep::oracle
