#include "qrep/circuits.hpp"

#include <stdexcept>
#include <string>

namespace qrep {
namespace {

void require_bit(int b, const char* what) {
    if (b != 0 && b != 1) throw std::invalid_argument(std::string(what) + " must be 0 or 1");
}

}  // namespace

RowOperator elementary_row(int j, int k, const NoiseParams& params) {
    require_bit(j, "elementary_row: j");
    require_bit(k, "elementary_row: k");
    params.validate();
    // Register (A, a, b, B).
    Operator rho = tensor(tensor(Operator::unit(2, j, k), werner_state(params.f0)), Operator::unit(2, 0, 0));
    noisy_two_qubit_gate(rho, 0, 1, cnot_gate(), params.beta);
    noisy_two_qubit_gate(rho, 2, 3, cnot_gate(), params.beta);
    rho = measure_discard(rho, 2, noisy_projector(Basis::X, 0, params.delta));
    rho = measure_discard(rho, 1, noisy_projector(Basis::Z, 0, params.delta));
    rho *= 4.0;
    return rho;
}

double encoder_weight(int j, int k, double beta, EncoderMode mode) {
    require_bit(j, "encoder_weight: j");
    require_bit(k, "encoder_weight: k");
    switch (mode) {
        case EncoderMode::Ideal: return 1.0;
        case EncoderMode::Coded:
            return j == k ? 1.0 + beta * (beta / 2.0 - 5.0 / 4.0) : (1.0 - beta) * (1.0 - beta);
        case EncoderMode::Full:
            throw std::invalid_argument("encoder_weight: Full mode has extra terms, use encoder_terms");
    }
    throw std::invalid_argument("unknown encoder mode");
}

std::vector<ExtraEncoderTerm> extra_encoder_terms(double beta) {
    if (!(beta >= 0.0 && beta <= 1.0)) throw std::invalid_argument("extra_encoder_terms: beta out of range");
    const double flipped_pair = beta / 4.0 * (1.5 - beta);
    const double single = beta / 8.0;
    return {{{1, 0, 1}, flipped_pair}, {{0, 1, 0}, flipped_pair}, {{0, 0, 1}, single},
            {{1, 0, 0}, single},       {{1, 1, 0}, single},       {{0, 1, 1}, single}};
}

std::vector<EncoderTerm> encoder_terms(double beta, EncoderMode mode, int code_length) {
    if (code_length < 1) throw std::invalid_argument("encoder_terms: code length must be positive");
    if (mode == EncoderMode::Full && code_length != 3) {
        throw std::invalid_argument("encoder_terms: Full mode requires code length 3");
    }
    const auto d = static_cast<std::size_t>(code_length);
    std::vector<EncoderTerm> out;
    const EncoderMode uniform = mode == EncoderMode::Full ? EncoderMode::Coded : mode;
    for (int j = 0; j < 2; ++j) {
        for (int k = 0; k < 2; ++k) {
            out.push_back({std::vector<std::array<int, 2>>(d, {j, k}), 0.5 * encoder_weight(j, k, beta, uniform)});
        }
    }
    if (mode == EncoderMode::Full) {
        for (const auto& t : extra_encoder_terms(beta)) {
            EncoderTerm term{{}, t.weight};
            for (int b : t.bits) term.rows.push_back({b, b});
            out.push_back(std::move(term));
        }
    }
    return out;
}

RowOperator swap_row(const RowOperator& left, const RowOperator& right, int c_outcome,
                     const NoiseParams& params, int b_outcome) {
    require_bit(c_outcome, "swap_row: c_outcome");
    require_bit(b_outcome, "swap_row: b_outcome");
    if (left.dim() != 4 || right.dim() != 4) throw std::invalid_argument("swap_row: rows must be 4x4");
    // Register (A, B, C, D).
    Operator rho = tensor(left, right);
    noisy_two_qubit_gate(rho, 1, 2, cnot_gate(), params.beta);
    rho = measure_discard(rho, 2, noisy_projector(Basis::Z, c_outcome, params.delta));
    return measure_discard(rho, 1, noisy_projector(Basis::X, b_outcome, params.delta));
}

DecodeResult decode_channel(const Operator& rho, const NoiseParams& params, unsigned outcome,
                            bool noisy_gates, int code_length) {
    if (code_length < 2) throw std::invalid_argument("decode_channel: code length must be >= 2");
    const auto d = static_cast<std::size_t>(code_length);
    if (rho.num_qubits() != 2 * d) throw std::invalid_argument("decode_channel: operator does not match code length");
    const std::size_t nbits = 2 * (d - 1);
    if (outcome >= (1U << nbits)) throw std::invalid_argument("decode_channel: outcome out of range");

    const double beta = noisy_gates ? params.beta : 0.0;
    Operator work = rho;
    for (std::size_t side = 0; side < 2; ++side) {
        const std::size_t head = side * d;
        for (std::size_t t = 1; t < d; ++t) noisy_two_qubit_gate(work, head, head + t, cnot_gate(), beta);
    }
    work.hermitize();

    // Bit for measured qubit (side, t), t in 1..d-1, inside `outcome`.
    auto outcome_bit = [&](std::size_t side, std::size_t t) {
        const std::size_t pos = side * (d - 1) + (t - 1);
        return static_cast<int>((outcome >> (nbits - 1 - pos)) & 1U);
    };
    // Discard from the highest qubit index down so lower indices stay put.
    for (std::size_t side = 2; side-- > 0;) {
        for (std::size_t t = d; t-- > 1;) {
            work = measure_discard(work, side * d + t, noisy_projector(Basis::Z, outcome_bit(side, t), params.delta));
        }
    }

    const Operator& x = pauli_correction(Pauli::X);
    for (std::size_t side = 0; side < 2; ++side) {
        bool all_ones = true;
        for (std::size_t t = 1; t < d; ++t) all_ones = all_ones && outcome_bit(side, t) == 1;
        if (all_ones) apply_unitary(work, side, x);
    }
    work.hermitize();

    DecodeResult res;
    res.weight = work.real_trace();
    const double total = rho.real_trace();
    res.prob = total > 0.0 ? res.weight / total : 0.0;
    if (res.weight > 0.0) {
        work *= 1.0 / res.weight;
        res.state = std::move(work);
    } else {
        res.state = Operator(4);
    }
    return res;
}

}  // namespace qrep
