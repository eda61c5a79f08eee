#include "qrep/repeater.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

#include "qrep/kernels.hpp"
#include "qrep/qkd.hpp"

namespace qrep {
namespace {

void check_level(int level) {
    if (level < 0) throw std::invalid_argument("nesting level must be non-negative");
    if (level > kMaxExactLevel) {
        throw std::domain_error("nesting level " + std::to_string(level) + " exceeds the exact limit of " +
                                std::to_string(kMaxExactLevel) + " (2^" + std::to_string(combo_bits(level)) +
                                " row combinations)");
    }
}

void check_pattern(const SwapPattern& m, int d) {
    if (m.code_length() != d || static_cast<int>(m.b.size()) != d) {
        throw std::invalid_argument("swap pattern does not match code length");
    }
    for (int i = 0; i < d; ++i) {
        if ((m.b[i] != 0 && m.b[i] != 1) || (m.c[i] != 0 && m.c[i] != 1)) {
            throw std::invalid_argument("swap pattern entries must be 0 or 1");
        }
    }
}

// out += s * rows[0] (x) rows[1] (x) ... ; all rows 4x4. `scratch` holds the
// running prefix product.
void kron_chain_accumulate(cplx s, const std::vector<const Operator*>& rows, Operator& out,
                           std::vector<cplx>& scratch_a, std::vector<cplx>& scratch_b) {
    const auto& k = kernels::active();
    if (rows.size() == 1) {
        k.caxpy(s, rows[0]->data().data(), out.data().data(), 16);
        return;
    }
    const cplx* prefix = rows[0]->data().data();
    std::size_t m = 4;
    for (std::size_t i = 1; i + 1 < rows.size(); ++i) {
        scratch_b.assign(m * 4 * m * 4, cplx{});
        k.kron_accumulate(1.0, prefix, m, rows[i]->data().data(), 4, scratch_b.data());
        scratch_a.swap(scratch_b);
        prefix = scratch_a.data();
        m *= 4;
    }
    k.kron_accumulate(s, prefix, m, rows.back()->data().data(), 4, out.data().data());
}

// Interleaved (X_1 Y_1 X_2 Y_2 ...) -> (X_1..X_d, Y_1..Y_d).
Operator deinterleave(const Operator& op, int d) {
    std::vector<std::size_t> order(2 * static_cast<std::size_t>(d));
    for (int i = 0; i < d; ++i) {
        order[i] = 2 * static_cast<std::size_t>(i);
        order[d + i] = 2 * static_cast<std::size_t>(i) + 1;
    }
    return permute_qubits(op, order);
}

Operator interleaved_zero(int d) { return Operator(std::size_t{1} << (2 * d)); }

IndexCombo pack(const std::array<int, 2>& jk) { return static_cast<IndexCombo>((jk[0] << 1) | jk[1]); }

// Per-row swap output for every (left, right, b, c) with elementary inputs.
struct Level1Rows {
    std::array<RowOperator, 64> rows;

    Level1Rows(const NoiseParams& params) {
        std::array<RowOperator, 4> base;
        for (int c = 0; c < 4; ++c) base[c] = elementary_row(c >> 1, c & 1, params);
        for (int l = 0; l < 4; ++l) {
            for (int r = 0; r < 4; ++r) {
                for (int b = 0; b < 2; ++b) {
                    for (int c = 0; c < 2; ++c) rows[index(l, r, b, c)] = swap_row(base[l], base[r], c, params, b);
                }
            }
        }
    }
    static std::size_t index(int l, int r, int b, int c) { return static_cast<std::size_t>((((l << 2) | r) << 2) | (b << 1) | c); }
};

}  // namespace

double golden_multiplicity(int level) {
    check_level(level);
    return std::pow(16.0, static_cast<double>((1 << level) - 1));
}

RowTable build_row_table(int level, const NoiseParams& params, EncoderMode enc) {
    check_level(level);
    if (enc == EncoderMode::Full) {
        throw std::invalid_argument("build_row_table: Full encoder terms are not row-uniform; use es_state_level1");
    }
    params.validate();

    RowTable table;
    table.level = 0;
    for (IndexCombo c = 0; c < 4; ++c) {
        const int j = static_cast<int>(c >> 1), k = static_cast<int>(c & 1);
        table.entries.push_back(elementary_row(j, k, params));
        table.weights.push_back(encoder_weight(j, k, params.beta, enc));
    }
    for (int l = 1; l <= level; ++l) {
        RowTable next;
        next.level = l;
        const int half = combo_bits(l - 1);
        const IndexCombo mask = (IndexCombo{1} << half) - 1;
        const std::size_t n = table_size(l);
        next.entries.reserve(n);
        next.weights.reserve(n);
        for (std::size_t c = 0; c < n; ++c) {
            const auto left = static_cast<IndexCombo>(c >> half);
            const auto right = static_cast<IndexCombo>(c) & mask;
            next.entries.push_back(swap_row(table.entries[left], table.entries[right], 0, params, 0));
            next.weights.push_back(table.weights[left] * table.weights[right]);
        }
        table = std::move(next);
    }
    return table;
}

Operator assemble_es_state(const RowTable& table, int code_length) {
    if (code_length < 1) throw std::invalid_argument("assemble_es_state: code length must be positive");
    if (table.size() != table_size(table.level) || table.weights.size() != table.size()) {
        throw std::invalid_argument("assemble_es_state: malformed row table");
    }
    const double prefactor = std::pow(0.5, static_cast<double>(1 << table.level));
    Operator acc = interleaved_zero(code_length);
    std::vector<const Operator*> rows(static_cast<std::size_t>(code_length));
    std::vector<cplx> sa, sb;
    for (std::size_t c = 0; c < table.size(); ++c) {
        const double w = prefactor * table.weights[c];
        if (w == 0.0) continue;
        std::fill(rows.begin(), rows.end(), &table.entries[c]);
        kron_chain_accumulate(w, rows, acc, sa, sb);
    }
    return deinterleave(acc, code_length);
}

SwapPattern SwapPattern::golden(int code_length) {
    if (code_length < 1) throw std::invalid_argument("SwapPattern: code length must be positive");
    return {std::vector<int>(code_length, 0), std::vector<int>(code_length, 0)};
}

bool SwapPattern::logical_bit_flip() const noexcept {
    int ones = 0;
    for (int v : c) ones += v;
    return 2 * ones > code_length();
}

bool SwapPattern::logical_phase_flip() const noexcept {
    int minus = 0;
    for (int v : b) minus += v;
    return minus % 2 == 1;
}

bool SwapPattern::error_detected() const noexcept {
    for (int v : c) {
        if (v != c.front()) return true;
    }
    return false;
}

Operator elementary_link_state(const NoiseParams& params, EncoderMode enc, int code_length) {
    params.validate();
    std::array<RowOperator, 4> base;
    for (int c = 0; c < 4; ++c) base[c] = elementary_row(c >> 1, c & 1, params);

    Operator acc = interleaved_zero(code_length);
    std::vector<const Operator*> rows(static_cast<std::size_t>(code_length));
    std::vector<cplx> sa, sb;
    for (const auto& term : encoder_terms(params.beta, enc, code_length)) {
        for (int i = 0; i < code_length; ++i) rows[i] = &base[pack(term.rows[i])];
        kron_chain_accumulate(term.weight, rows, acc, sa, sb);
    }
    return deinterleave(acc, code_length);
}

Operator es_state_level1(const NoiseParams& params, EncoderMode enc, const SwapPattern& pattern,
                         int code_length) {
    params.validate();
    check_pattern(pattern, code_length);
    const auto terms = encoder_terms(params.beta, enc, code_length);
    const Level1Rows cache(params);

    Operator acc = interleaved_zero(code_length);
    std::vector<const Operator*> rows(static_cast<std::size_t>(code_length));
    std::vector<cplx> sa, sb;
    for (const auto& tl : terms) {
        for (const auto& tr : terms) {
            const double w = tl.weight * tr.weight;
            if (w == 0.0) continue;
            for (int i = 0; i < code_length; ++i) {
                rows[i] = &cache.rows[Level1Rows::index(pack(tl.rows[i]), pack(tr.rows[i]), pattern.b[i],
                                                        pattern.c[i])];
            }
            kron_chain_accumulate(w, rows, acc, sa, sb);
        }
    }
    Operator out = deinterleave(acc, code_length);
    out.hermitize();
    return out;
}

void apply_frame_correction(Operator& es_state, const SwapPattern& pattern) {
    const auto d = static_cast<std::size_t>(pattern.code_length());
    if (es_state.num_qubits() != 2 * d) throw std::invalid_argument("apply_frame_correction: size mismatch");
    if (pattern.logical_bit_flip()) {
        const Operator& x = pauli_correction(Pauli::X);
        for (std::size_t q = d; q < 2 * d; ++q) apply_unitary(es_state, q, x);
    }
    if (pattern.logical_phase_flip()) apply_unitary(es_state, 0, pauli_correction(Pauli::Z));
}

GoldenReport golden_pipeline(int level, const NoiseParams& params, EncoderMode enc, bool decoder_noisy) {
    check_level(level);
    params.validate();
    Operator es;
    if (enc == EncoderMode::Full) {
        if (level != 1) throw std::invalid_argument("golden_pipeline: Full encoder is only supported at level 1");
        es = es_state_level1(params, enc, SwapPattern::golden(3), 3);
    } else {
        es = assemble_es_state(build_row_table(level, params, enc), 3);
        es.hermitize();
    }

    GoldenReport rep;
    rep.level = level;
    rep.es_trace = es.real_trace();
    auto dec = decode_channel(es, params, 0, decoder_noisy, 3);
    rep.decode_prob = dec.prob;
    rep.p_golden = golden_multiplicity(level) * dec.weight;
    rep.state = std::move(dec.state);
    if (dec.weight > 0.0) {
        const auto q = qber(rep.state, params.delta);
        rep.e_z = q.e_z;
        rep.e_x = q.e_x;
        rep.secret_fraction = secret_fraction(q);
    }
    rep.r_golden = rep.p_golden * rep.secret_fraction;
    return rep;
}

int class_multiplicity(OutcomeClass cls) {
    switch (cls) {
        case OutcomeClass::Golden:
        case OutcomeClass::GoodNotGolden: return 16;
        case OutcomeClass::Bad: return 48;
    }
    throw std::invalid_argument("unknown outcome class");
}

double OutcomeEnumeration::total_probability() const {
    double s = 0.0;
    for (const auto& r : records) s += r.multiplicity * r.joint_prob;
    return s;
}

OutcomeEnumeration enumerate_outcomes_n1(const NoiseParams& params, EncoderMode enc, bool decoder_noisy) {
    params.validate();
    OutcomeEnumeration out;
    out.params = params;
    out.enc = enc;
    out.decoder_noisy = decoder_noisy;

    const std::vector<std::vector<int>> c_patterns = {{0, 0, 0}, {0, 0, 1}, {0, 1, 0}, {1, 0, 0}};
    constexpr double nan = std::numeric_limits<double>::quiet_NaN();
    for (const auto& c : c_patterns) {
        SwapPattern m{{0, 0, 0}, c};
        Operator es = es_state_level1(params, enc, m, 3);
        apply_frame_correction(es, m);
        const bool bad = m.error_detected();
        for (unsigned d = 0; d < 16; ++d) {
            auto dec = decode_channel(es, params, d, decoder_noisy, 3);
            OutcomeRecord rec;
            rec.m = m;
            rec.d = d;
            rec.joint_prob = dec.weight;
            rec.cls = bad ? OutcomeClass::Bad : (d == 0 ? OutcomeClass::Golden : OutcomeClass::GoodNotGolden);
            rec.multiplicity = 16;
            if (dec.weight > 0.0) {
                const auto q = qber(dec.state, params.delta);
                rec.e_z = q.e_z;
                rec.e_x = q.e_x;
            } else {
                rec.e_z = rec.e_x = nan;
            }
            rec.cond_state = std::move(dec.state);
            out.records.push_back(std::move(rec));
        }
        out.swap_states.push_back({std::move(m), std::move(es), 16});
    }
    return out;
}

double SymmetryReport::max_deviation() const noexcept {
    return std::max({max_secret_fraction_deviation, max_probability_deviation, max_state_deviation});
}

SymmetryReport verify_b_register_symmetry(const NoiseParams& params, EncoderMode enc, bool decoder_noisy) {
    const std::vector<std::vector<int>> b_patterns = {{0, 0, 0}, {0, 1, 1}, {1, 0, 1}, {1, 1, 0}};
    SymmetryReport rep;
    DecodeResult ref;
    double ref_r = 0.0;
    bool first = true;
    for (const auto& b : b_patterns) {
        SwapPattern m{b, {0, 0, 0}};
        Operator es = es_state_level1(params, enc, m, 3);
        apply_frame_correction(es, m);
        auto dec = decode_channel(es, params, 0, decoder_noisy, 3);
        const double r = dec.weight > 0.0 ? secret_fraction(dec.state, params.delta) : 0.0;
        if (first) {
            ref = std::move(dec);
            ref_r = r;
            first = false;
            continue;
        }
        rep.max_state_deviation = std::max(rep.max_state_deviation, max_abs_diff(dec.state, ref.state));
        rep.max_probability_deviation = std::max(rep.max_probability_deviation, std::abs(dec.weight - ref.weight));
        rep.max_secret_fraction_deviation = std::max(rep.max_secret_fraction_deviation, std::abs(r - ref_r));
    }
    return rep;
}

}  // namespace qrep
