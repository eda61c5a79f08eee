#include "qrep/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

namespace qrep::oracle {
namespace {

void check_config(const OracleConfig& cfg) {
    if (cfg.code_length < 2 || cfg.code_length > 3) throw std::invalid_argument("oracle: code length must be 2 or 3");
    if (cfg.enc != EncoderMode::Ideal && cfg.code_length != 3) {
        throw std::invalid_argument("oracle: non-ideal encoders need code length 3");
    }
    cfg.params.validate();
}

Operator ket0_projector(std::size_t qubits) { return Operator::unit(std::size_t{1} << qubits, 0, 0); }

Operator swap_from_link(const Operator& link, const NoiseParams& p, const SwapPattern& m, std::size_t d) {
    // (A, B, C, D), each bank d qubits wide.
    Operator rho = tensor(link, link);
    for (std::size_t i = 0; i < d; ++i) noisy_two_qubit_gate(rho, d + i, 2 * d + i, cnot_gate(), p.beta);
    for (std::size_t i = d; i-- > 0;) rho = measure_discard(rho, 2 * d + i, noisy_projector(Basis::Z, m.c[i], p.delta));
    for (std::size_t i = d; i-- > 0;) rho = measure_discard(rho, d + i, noisy_projector(Basis::X, m.b[i], p.delta));
    return rho;
}

// (1-beta) U rho U^dagger + beta/4 Tr_t(rho) (x) I_t, written with dense
// embedded matrices and explicit reordering.
Operator dense_noisy_cnot(const Operator& rho, const RegisterLayout& layout, const std::string& ctrl,
                          const std::string& tgt, double beta) {
    const std::string targets[] = {ctrl, tgt};
    const Operator u = embed(cnot_gate(), layout, targets);
    Operator out = u * rho * u.adjoint();
    if (beta == 0.0) return out;
    out *= 1.0 - beta;

    std::vector<std::string> rest;
    for (const auto& l : layout.labels()) {
        if (l != ctrl && l != tgt) rest.push_back(l);
    }
    const Operator reduced = partial_trace(rho, layout, rest);
    const Operator widened = tensor(reduced, Operator::identity(4));  // (rest..., ctrl, tgt)
    std::vector<std::size_t> order;
    std::size_t k = 0;
    for (const auto& l : layout.labels()) {
        if (l == ctrl) order.push_back(rest.size());
        else if (l == tgt) order.push_back(rest.size() + 1);
        else order.push_back(k++);
    }
    out.add_scaled(beta / 4.0, permute_qubits(widened, order));
    return out;
}

}  // namespace

Operator brute_encoder(const OracleConfig& cfg) {
    check_config(cfg);
    const auto d = static_cast<std::size_t>(cfg.code_length);
    const double s = 1.0 / std::sqrt(2.0);
    const cplx plus[] = {s, s};
    Operator rho = tensor(Operator::outer(plus, plus), ket0_projector(d - 1));
    const double beta = cfg.enc == EncoderMode::Ideal ? 0.0 : cfg.params.beta;
    for (std::size_t t = 1; t < d; ++t) noisy_two_qubit_gate(rho, 0, t, cnot_gate(), beta);
    if (cfg.enc == EncoderMode::Coded) {
        // Keep only the codeword block span{|0..0>, |1..1>}.
        const std::size_t last = rho.dim() - 1;
        for (std::size_t r = 0; r < rho.dim(); ++r) {
            for (std::size_t c = 0; c < rho.dim(); ++c) {
                if ((r != 0 && r != last) || (c != 0 && c != last)) rho(r, c) = 0.0;
            }
        }
    }
    return rho;
}

Operator brute_elementary(const OracleConfig& cfg) {
    check_config(cfg);
    const auto d = static_cast<std::size_t>(cfg.code_length);
    const auto& p = cfg.params;
    // A_i = i, B_i = d + i, a_i = 2d + 2i, b_i = 2d + 2i + 1.
    Operator pairs = werner_state(p.f0);
    for (std::size_t i = 1; i < d; ++i) pairs = tensor(pairs, werner_state(p.f0));
    Operator rho = tensor(tensor(brute_encoder(cfg), ket0_projector(d)), pairs);
    for (std::size_t i = 0; i < d; ++i) {
        noisy_two_qubit_gate(rho, i, 2 * d + 2 * i, cnot_gate(), p.beta);
        noisy_two_qubit_gate(rho, 2 * d + 2 * i + 1, d + i, cnot_gate(), p.beta);
    }
    for (std::size_t i = d; i-- > 0;) {
        rho = measure_discard(rho, 2 * d + 2 * i + 1, noisy_projector(Basis::X, 0, p.delta));
        rho = measure_discard(rho, 2 * d + 2 * i, noisy_projector(Basis::Z, 0, p.delta));
    }
    rho *= std::pow(4.0, static_cast<double>(d));
    return rho;
}

Operator brute_swap(const OracleConfig& cfg, const SwapPattern& pattern) {
    if (pattern.code_length() != cfg.code_length) throw std::invalid_argument("brute_swap: pattern size mismatch");
    return swap_from_link(brute_elementary(cfg), cfg.params, pattern, static_cast<std::size_t>(cfg.code_length));
}

OracleDecode brute_decode(const Operator& es, const NoiseParams& params, unsigned outcome, bool noisy_gates,
                          int code_length) {
    const auto d = static_cast<std::size_t>(code_length);
    if (es.num_qubits() != 2 * d) throw std::invalid_argument("brute_decode: size mismatch");
    std::vector<std::string> labels;
    for (const char* side : {"A", "Ap"}) {
        for (std::size_t i = 1; i <= d; ++i) labels.push_back(side + std::to_string(i));
    }
    RegisterLayout layout(labels);
    const double beta = noisy_gates ? params.beta : 0.0;

    Operator rho = es;
    for (const char* side : {"A", "Ap"}) {
        for (std::size_t t = 2; t <= d; ++t) {
            rho = dense_noisy_cnot(rho, layout, side + std::string("1"), side + std::to_string(t), beta);
        }
    }

    const std::size_t nbits = 2 * (d - 1);
    std::size_t pos = 0;
    bool flip[2] = {true, true};
    for (int side = 0; side < 2; ++side) {
        const std::string prefix = side == 0 ? "A" : "Ap";
        for (std::size_t t = 2; t <= d; ++t, ++pos) {
            const int bit = static_cast<int>((outcome >> (nbits - 1 - pos)) & 1U);
            flip[side] = flip[side] && bit == 1;
            const std::string target[] = {prefix + std::to_string(t)};
            rho = embed(noisy_projector(Basis::Z, bit, params.delta), layout, target) * rho;
            std::vector<std::string> keep;
            for (const auto& l : layout.labels()) {
                if (l != target[0]) keep.push_back(l);
            }
            rho = partial_trace(rho, layout, keep);
            layout = RegisterLayout(keep);
        }
    }
    for (int side = 0; side < 2; ++side) {
        if (!flip[side]) continue;
        const std::string target[] = {side == 0 ? "A1" : "Ap1"};
        const Operator x = embed(pauli_correction(Pauli::X), layout, target);
        rho = x * rho * x;
    }

    OracleDecode out;
    out.weight = rho.real_trace();
    out.state = out.weight > 0.0 ? rho * (1.0 / out.weight) : Operator(4);
    return out;
}

OracleDecode brute_swap_and_decode(const OracleConfig& cfg, const SwapPattern& pattern, unsigned outcome,
                                   bool decoder_noisy) {
    return brute_decode(brute_swap(cfg, pattern), cfg.params, outcome, decoder_noisy, cfg.code_length);
}

double compare(const Operator& a, const Operator& b) { return max_abs_diff(a, b); }

bool VerifyReport::passed() const noexcept {
    return points > 0 && max_elementary <= tolerance && max_swap <= tolerance && max_decode <= tolerance;
}

VerifyReport verify_engine(int code_length, int points, std::uint64_t seed, double tol) {
    if (points < 1) throw std::invalid_argument("verify_engine: need at least one point");
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> f0(0.8, 1.0), beta(0.0, 0.08), delta(0.0, 0.04);
    std::bernoulli_distribution coin(0.5);
    const auto d = static_cast<std::size_t>(code_length);
    const EncoderMode modes[] = {EncoderMode::Ideal, EncoderMode::Coded, EncoderMode::Full};

    VerifyReport rep;
    rep.code_length = code_length;
    rep.tolerance = tol;
    for (int pt = 0; pt < points; ++pt) {
        OracleConfig cfg;
        cfg.code_length = code_length;
        cfg.params.f0 = f0(rng);
        cfg.params.beta = beta(rng);
        cfg.params.delta = delta(rng);
        cfg.enc = code_length == 3 ? modes[pt % 3] : EncoderMode::Ideal;
        const bool noisy = pt % 2 == 0;

        const Operator link = brute_elementary(cfg);
        rep.max_elementary =
            std::max(rep.max_elementary, compare(link, elementary_link_state(cfg.params, cfg.enc, code_length)));

        SwapPattern random{std::vector<int>(d), std::vector<int>(d)};
        for (std::size_t i = 0; i < d; ++i) {
            random.b[i] = coin(rng);
            random.c[i] = coin(rng);
        }
        for (const auto& m : {SwapPattern::golden(code_length), random}) {
            const Operator brute = swap_from_link(link, cfg.params, m, d);
            const Operator fast = es_state_level1(cfg.params, cfg.enc, m, code_length);
            rep.max_swap = std::max(rep.max_swap, compare(brute, fast));
            for (unsigned o = 0; o < (1U << (2 * (d - 1))); ++o) {
                const auto a = brute_decode(brute, cfg.params, o, noisy, code_length);
                const auto b = decode_channel(fast, cfg.params, o, noisy, code_length);
                rep.max_decode = std::max({rep.max_decode, std::abs(a.weight - b.weight),
                                           compare(a.state * a.weight, b.state * b.weight)});
            }
        }
        ++rep.points;
    }
    return rep;
}

}  // namespace qrep::oracle
