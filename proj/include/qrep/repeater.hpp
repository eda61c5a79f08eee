// Linearized repeater engine.
//
// An encoded bank is a sum of row-uniform components |j~><k~|, and every
// circuit in the chain acts transversally, so the end-to-end state is
//
//     sum_combo  weight(combo) * (x)_{rows} R_combo
//
// where R_combo is a 4x4 row operator obtained by recursing swap_row over
// nesting levels. Only 4-qubit algebra is needed until the final assembly.
#pragma once

#include <cstdint>
#include <vector>

#include "qrep/circuits.hpp"
#include "qrep/noise.hpp"
#include "qrep/qmat.hpp"

namespace qrep {

/// Packed index bits for a nesting level: 2^(level+1) bits, elementary link
/// bits (j, k) of the leftmost link in the most significant positions.
using IndexCombo = std::uint32_t;

inline constexpr int kMaxExactLevel = 3;

constexpr int combo_bits(int level) { return 1 << (level + 1); }
constexpr std::size_t table_size(int level) { return std::size_t{1} << combo_bits(level); }
/// Number of golden (frame-equivalent) swap outcome patterns at a level: 16^(2^n - 1).
double golden_multiplicity(int level);

struct RowTable {
    int level = 0;
    std::vector<RowOperator> entries;  // indexed by IndexCombo
    std::vector<double> weights;       // product of encoder weights of the spanned links

    std::size_t size() const noexcept { return entries.size(); }
    const RowOperator& operator[](IndexCombo c) const { return entries.at(c); }
};

/// Row table at `level` with all swap stations fixed to the golden (+, 0)
/// outcome. Level 0 holds the four elementary rows. EncoderMode::Full is
/// rejected (its extra terms are not row-uniform); levels above
/// kMaxExactLevel throw std::domain_error.
RowTable build_row_table(int level, const NoiseParams& params, EncoderMode enc);

/// (1/2)^(2^level) * sum_combo weight * R^(x)d, reordered to
/// (A_1..A_d, A'_1..A'_d). Unnormalized: its trace is the probability of one
/// specific golden swap pattern. A level-0 table gives the elementary link.
Operator assemble_es_state(const RowTable& table, int code_length = 3);

/// Per-row swap outcomes at a single swap station. b[i] is the X outcome on
/// B_i (0 = +), c[i] the Z outcome on C_i.
struct SwapPattern {
    std::vector<int> b;
    std::vector<int> c;

    static SwapPattern golden(int code_length = 3);
    int code_length() const noexcept { return static_cast<int>(c.size()); }
    /// Majority of C is 1: the logical outcome sits in the Psi frame.
    bool logical_bit_flip() const noexcept;
    /// Odd number of '-' on B: the logical outcome sits in the minus frame.
    bool logical_phase_flip() const noexcept;
    /// Detected disagreement among the C outcomes.
    bool error_detected() const noexcept;
};

/// Elementary link state on (A_1..A_d, B_1..B_d) from the linearized sum.
Operator elementary_link_state(const NoiseParams& params, EncoderMode enc, int code_length = 3);

/// End-to-end state after one swap station (nesting level 1) for an
/// arbitrary outcome pattern, unnormalized, on (A_1..A_d, D_1..D_d).
/// Supports every encoder mode (Full only for code length 3).
Operator es_state_level1(const NoiseParams& params, EncoderMode enc, const SwapPattern& pattern,
                         int code_length = 3);

/// Exact Pauli-frame correction for the pattern: logical X (X on every D_i)
/// for a Psi-frame outcome and Z on A_1 for a minus-frame outcome.
void apply_frame_correction(Operator& es_state, const SwapPattern& pattern);

struct GoldenReport {
    int level = 0;
    double es_trace = 0.0;      // Tr[rho_ES^(n)] for one golden pattern
    double decode_prob = 0.0;   // Pr[d = 0000 | golden pattern]
    double p_golden = 0.0;      // golden multiplicity * es_trace * decode_prob
    Operator state;             // normalized decoded golden state on (A, A')
    double e_z = 0.0;
    double e_x = 0.0;
    double secret_fraction = 0.0;  // r_inf(state)
    double r_golden = 0.0;         // p_golden * secret_fraction
};

/// Golden-only pipeline: build tables, assemble, decode with d = 0000.
GoldenReport golden_pipeline(int level, const NoiseParams& params, EncoderMode enc, bool decoder_noisy);

enum class OutcomeClass { Golden, GoodNotGolden, Bad };

/// Class multiplicities at nesting level 1 (16, 16 and 48); Golden at level n
/// is golden_multiplicity(n).
int class_multiplicity(OutcomeClass cls);

struct OutcomeRecord {
    SwapPattern m;
    unsigned d = 0;           // decoder outcome, see decode_channel
    double joint_prob = 0.0;  // p_{m,d} for this single pattern
    Operator cond_state;      // frame-corrected, normalized; zero when joint_prob == 0
    OutcomeClass cls = OutcomeClass::Bad;
    int multiplicity = 16;    // equivalent (Bell frame, B pattern) outcomes
    double e_z = 0.0;         // NaN when joint_prob == 0
    double e_x = 0.0;
};

struct SwapClassState {
    SwapPattern m;
    Operator es_state;  // frame-corrected, unnormalized; trace is p_m
    int multiplicity = 16;
};

struct OutcomeEnumeration {
    NoiseParams params;
    EncoderMode enc = EncoderMode::Ideal;
    bool decoder_noisy = true;
    std::vector<SwapClassState> swap_states;
    std::vector<OutcomeRecord> records;

    /// sum multiplicity * joint_prob; 1 for trace-preserving encoders.
    double total_probability() const;
};

/// Reduced nesting-level-1 enumeration: B fixed to +++, C in
/// {000, 001, 010, 100}, all 16 decoder outcomes; each record stands for 16
/// frame-equivalent outcomes.
OutcomeEnumeration enumerate_outcomes_n1(const NoiseParams& params, EncoderMode enc, bool decoder_noisy);

struct SymmetryReport {
    double max_secret_fraction_deviation = 0.0;
    double max_probability_deviation = 0.0;
    double max_state_deviation = 0.0;

    double max_deviation() const noexcept;
};

/// Recompute the golden decoded state for the B patterns {+++, +--, -+-, --+}
/// and report how far they drift from each other.
SymmetryReport verify_b_register_symmetry(const NoiseParams& params, EncoderMode enc = EncoderMode::Ideal,
                                          bool decoder_noisy = true);

}  // namespace qrep
