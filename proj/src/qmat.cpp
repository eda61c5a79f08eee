#include "qrep/qmat.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <bit>
#include <cmath>
#include <stdexcept>
#include <unordered_set>

#include "qrep/kernels.hpp"

namespace qrep {
namespace {

bool is_pow2(std::size_t n) { return n >= 2 && std::has_single_bit(n); }

void require_same_dim(const Operator& a, const Operator& b) {
    if (a.dim() != b.dim()) {
        throw std::invalid_argument("operator dimension mismatch: " + std::to_string(a.dim()) +
                                    " vs " + std::to_string(b.dim()));
    }
}

// Bit mask of qubit q in an n-qubit index (qubit 0 is the MSB).
inline std::size_t qubit_bit(std::size_t n, std::size_t q) { return std::size_t{1} << (n - 1 - q); }

// Indices with all `qubits` bits cleared, in increasing order.
std::vector<std::size_t> base_indices(std::size_t n, std::span<const std::size_t> qubits) {
    std::size_t mask = 0;
    for (auto q : qubits) mask |= qubit_bit(n, q);
    std::vector<std::size_t> out;
    out.reserve((std::size_t{1} << n) >> qubits.size());
    for (std::size_t i = 0; i < (std::size_t{1} << n); ++i) {
        if ((i & mask) == 0) out.push_back(i);
    }
    return out;
}

// offsets[s] places the bits of s (qubits[0] most significant) onto the register.
std::vector<std::size_t> target_offsets(std::size_t n, std::span<const std::size_t> qubits) {
    const std::size_t k = qubits.size();
    std::vector<std::size_t> off(std::size_t{1} << k, 0);
    for (std::size_t s = 0; s < off.size(); ++s) {
        for (std::size_t t = 0; t < k; ++t) {
            if ((s >> (k - 1 - t)) & 1U) off[s] |= qubit_bit(n, qubits[t]);
        }
    }
    return off;
}

void check_qubits(std::size_t n, std::span<const std::size_t> qubits) {
    std::vector<bool> seen(n, false);
    for (auto q : qubits) {
        if (q >= n) throw std::invalid_argument("qubit index out of range");
        if (seen[q]) throw std::invalid_argument("duplicate qubit index");
        seen[q] = true;
    }
}

}  // namespace

// ---------------------------------------------------------------- Operator

Operator::Operator(std::size_t dim) : dim_(dim), data_(dim * dim) {
    if (!is_pow2(dim)) {
        throw std::invalid_argument("operator dimension must be a power of two >= 2, got " +
                                    std::to_string(dim));
    }
}

Operator Operator::identity(std::size_t dim) {
    Operator out(dim);
    for (std::size_t i = 0; i < dim; ++i) out(i, i) = 1.0;
    return out;
}

Operator Operator::unit(std::size_t dim, std::size_t row, std::size_t col) {
    Operator out(dim);
    out(row, col) = 1.0;
    return out;
}

Operator Operator::outer(std::span<const cplx> ket, std::span<const cplx> bra) {
    if (ket.size() != bra.size()) throw std::invalid_argument("outer: size mismatch");
    Operator out(ket.size());
    for (std::size_t r = 0; r < ket.size(); ++r) {
        for (std::size_t c = 0; c < bra.size(); ++c) out(r, c) = ket[r] * std::conj(bra[c]);
    }
    return out;
}

Operator Operator::from_rows(std::initializer_list<std::initializer_list<cplx>> rows) {
    Operator out(rows.size());
    std::size_t r = 0;
    for (const auto& row : rows) {
        if (row.size() != rows.size()) throw std::invalid_argument("from_rows: matrix not square");
        std::size_t c = 0;
        for (const auto& v : row) out(r, c++) = v;
        ++r;
    }
    return out;
}

Operator Operator::diagonal(std::span<const double> diag) {
    Operator out(diag.size());
    for (std::size_t i = 0; i < diag.size(); ++i) out(i, i) = diag[i];
    return out;
}

std::size_t Operator::num_qubits() const noexcept {
    return dim_ == 0 ? 0 : static_cast<std::size_t>(std::countr_zero(dim_));
}

cplx Operator::trace() const noexcept {
    cplx t{};
    for (std::size_t i = 0; i < dim_; ++i) t += (*this)(i, i);
    return t;
}

Operator Operator::adjoint() const {
    Operator out(dim_);
    for (std::size_t r = 0; r < dim_; ++r) {
        for (std::size_t c = 0; c < dim_; ++c) out(c, r) = std::conj((*this)(r, c));
    }
    return out;
}

void Operator::hermitize() noexcept {
    for (std::size_t r = 0; r < dim_; ++r) {
        (*this)(r, r).imag(0.0);
        for (std::size_t c = r + 1; c < dim_; ++c) {
            const cplx avg = 0.5 * ((*this)(r, c) + std::conj((*this)(c, r)));
            (*this)(r, c) = avg;
            (*this)(c, r) = std::conj(avg);
        }
    }
}

double Operator::max_abs() const noexcept {
    double m = 0.0;
    for (const auto& v : data_) m = std::max(m, std::abs(v));
    return m;
}

Operator& Operator::operator+=(const Operator& other) { return add_scaled(1.0, other); }

Operator& Operator::operator-=(const Operator& other) { return add_scaled(-1.0, other); }

Operator& Operator::operator*=(cplx s) noexcept {
    for (auto& v : data_) v *= s;
    return *this;
}

Operator& Operator::add_scaled(cplx s, const Operator& other) {
    require_same_dim(*this, other);
    kernels::active().caxpy(s, other.data_.data(), data_.data(), data_.size());
    return *this;
}

Operator operator*(const Operator& a, const Operator& b) {
    require_same_dim(a, b);
    const std::size_t n = a.dim();
    Operator out(n);
    const auto& k = kernels::active();
    for (std::size_t r = 0; r < n; ++r) {
        for (std::size_t m = 0; m < n; ++m) {
            const cplx v = a(r, m);
            if (v == cplx{}) continue;
            k.caxpy(v, b.row(m).data(), out.row(r).data(), n);
        }
    }
    return out;
}

// ---------------------------------------------------------- RegisterLayout

RegisterLayout::RegisterLayout(std::initializer_list<std::string> labels)
    : RegisterLayout(std::vector<std::string>(labels)) {}

RegisterLayout::RegisterLayout(std::vector<std::string> labels) : labels_(std::move(labels)) {
    std::unordered_set<std::string> seen;
    for (const auto& l : labels_) {
        if (!seen.insert(l).second) throw std::invalid_argument("duplicate register label: " + l);
    }
}

std::size_t RegisterLayout::index_of(const std::string& label) const {
    const auto it = std::find(labels_.begin(), labels_.end(), label);
    if (it == labels_.end()) throw std::invalid_argument("unknown register label: " + label);
    return static_cast<std::size_t>(it - labels_.begin());
}

std::vector<std::size_t> RegisterLayout::indices_of(std::span<const std::string> labels) const {
    std::vector<std::size_t> out;
    out.reserve(labels.size());
    for (const auto& l : labels) {
        const std::size_t i = index_of(l);
        if (std::find(out.begin(), out.end(), i) != out.end()) {
            throw std::invalid_argument("duplicate target label: " + l);
        }
        out.push_back(i);
    }
    return out;
}

// ------------------------------------------------------------- operations

Operator tensor(const Operator& a, const Operator& b) {
    Operator out(a.dim() * b.dim());
    kernels::active().kron_accumulate(1.0, a.data().data(), a.dim(), b.data().data(), b.dim(),
                                      out.data().data());
    return out;
}

Operator embed(const Operator& gate, std::size_t num_qubits, std::span<const std::size_t> targets) {
    check_qubits(num_qubits, targets);
    if (gate.dim() != (std::size_t{1} << targets.size())) {
        throw std::invalid_argument("embed: gate dimension does not match target count");
    }
    const std::size_t dim = std::size_t{1} << num_qubits;
    const auto bases = base_indices(num_qubits, targets);
    const auto off = target_offsets(num_qubits, targets);
    Operator out(dim);
    for (auto b : bases) {
        for (std::size_t r = 0; r < off.size(); ++r) {
            for (std::size_t c = 0; c < off.size(); ++c) out(b + off[r], b + off[c]) = gate(r, c);
        }
    }
    return out;
}

Operator embed(const Operator& gate, const RegisterLayout& layout,
               std::span<const std::string> targets) {
    return embed(gate, layout.size(), layout.indices_of(targets));
}

Operator partial_trace(const Operator& op, std::span<const std::size_t> keep) {
    if (keep.empty()) throw std::invalid_argument("partial_trace: keep set is empty");
    const std::size_t n = op.num_qubits();
    check_qubits(n, keep);
    std::vector<std::size_t> kept(keep.begin(), keep.end());
    std::sort(kept.begin(), kept.end());
    std::vector<std::size_t> traced;
    for (std::size_t q = 0; q < n; ++q) {
        if (!std::binary_search(kept.begin(), kept.end(), q)) traced.push_back(q);
    }
    const auto keep_off = target_offsets(n, kept);
    const auto trace_off = target_offsets(n, traced);
    Operator out(keep_off.size());
    for (std::size_t r = 0; r < keep_off.size(); ++r) {
        for (std::size_t c = 0; c < keep_off.size(); ++c) {
            cplx acc{};
            for (auto t : trace_off) acc += op(keep_off[r] + t, keep_off[c] + t);
            out(r, c) = acc;
        }
    }
    return out;
}

Operator partial_trace(const Operator& op, const RegisterLayout& layout,
                       std::span<const std::string> keep) {
    if (layout.dim() != op.dim()) throw std::invalid_argument("partial_trace: layout/operator mismatch");
    return partial_trace(op, layout.indices_of(keep));
}

Operator permute_qubits(const Operator& op, std::span<const std::size_t> order) {
    const std::size_t n = op.num_qubits();
    if (order.size() != n) throw std::invalid_argument("permute_qubits: order has wrong length");
    check_qubits(n, order);
    // new index bit i (MSB first) comes from old qubit order[i]
    const std::size_t dim = op.dim();
    std::vector<std::size_t> map(dim);
    for (std::size_t idx = 0; idx < dim; ++idx) {
        std::size_t old = 0;
        for (std::size_t i = 0; i < n; ++i) {
            if (idx & qubit_bit(n, i)) old |= qubit_bit(n, order[i]);
        }
        map[idx] = old;
    }
    Operator out(dim);
    for (std::size_t r = 0; r < dim; ++r) {
        for (std::size_t c = 0; c < dim; ++c) out(r, c) = op(map[r], map[c]);
    }
    return out;
}

void apply_unitary(Operator& rho, std::span<const std::size_t> qubits, const Operator& gate) {
    const std::size_t n = rho.num_qubits();
    check_qubits(n, qubits);
    const std::size_t k = std::size_t{1} << qubits.size();
    if (gate.dim() != k) throw std::invalid_argument("apply_unitary: gate dimension mismatch");

    struct Entry {
        std::size_t r, c;
        cplx v;
    };
    std::vector<Entry> nz;
    for (std::size_t r = 0; r < k; ++r) {
        for (std::size_t c = 0; c < k; ++c) {
            if (gate(r, c) != cplx{}) nz.push_back({r, c, gate(r, c)});
        }
    }
    const auto bases = base_indices(n, qubits);
    const auto off = target_offsets(n, qubits);
    const std::size_t dim = rho.dim();
    std::vector<cplx> in(k), out(k);

    // rho <- G rho
    for (auto b : bases) {
        for (std::size_t col = 0; col < dim; ++col) {
            for (std::size_t s = 0; s < k; ++s) in[s] = rho(b + off[s], col);
            std::fill(out.begin(), out.end(), cplx{});
            for (const auto& e : nz) out[e.r] += e.v * in[e.c];
            for (std::size_t s = 0; s < k; ++s) rho(b + off[s], col) = out[s];
        }
    }
    // rho <- rho G^dagger
    for (std::size_t row = 0; row < dim; ++row) {
        auto rr = rho.row(row);
        for (auto b : bases) {
            for (std::size_t s = 0; s < k; ++s) in[s] = rr[b + off[s]];
            std::fill(out.begin(), out.end(), cplx{});
            for (const auto& e : nz) out[e.r] += std::conj(e.v) * in[e.c];
            for (std::size_t s = 0; s < k; ++s) rr[b + off[s]] = out[s];
        }
    }
}

void apply_unitary(Operator& rho, std::size_t qubit, const Operator& gate) {
    const std::size_t q[] = {qubit};
    apply_unitary(rho, q, gate);
}

Operator measure_discard(const Operator& rho, std::size_t qubit, const Operator& effect) {
    const std::size_t n = rho.num_qubits();
    if (n < 2) throw std::invalid_argument("measure_discard: need at least two qubits");
    if (qubit >= n) throw std::invalid_argument("measure_discard: qubit out of range");
    if (effect.dim() != 2) throw std::invalid_argument("measure_discard: effect must be 2x2");
    const std::size_t bit = qubit_bit(n, qubit);
    const std::size_t low = bit - 1;
    const std::size_t half = rho.dim() / 2;
    auto expand = [&](std::size_t i) { return ((i & ~low) << 1) | (i & low); };
    Operator out(half);
    for (std::size_t i = 0; i < half; ++i) {
        const std::size_t ri = expand(i);
        for (std::size_t j = 0; j < half; ++j) {
            const std::size_t cj = expand(j);
            cplx acc{};
            for (std::size_t s = 0; s < 2; ++s) {
                for (std::size_t t = 0; t < 2; ++t) {
                    acc += effect(t, s) * rho(ri | (s ? bit : 0), cj | (t ? bit : 0));
                }
            }
            out(i, j) = acc;
        }
    }
    return out;
}

double max_abs_diff(const Operator& a, const Operator& b) {
    require_same_dim(a, b);
    double m = 0.0;
    for (std::size_t i = 0; i < a.data().size(); ++i) m = std::max(m, std::abs(a.data()[i] - b.data()[i]));
    return m;
}

bool is_unitary(const Operator& u, double tol) {
    if (u.empty()) return false;
    return max_abs_diff(u * u.adjoint(), Operator::identity(u.dim())) <= tol;
}

StateDiagnostics validate_state(const Operator& op, double tol) {
    StateDiagnostics d;
    const std::size_t n = op.dim();
    for (std::size_t r = 0; r < n; ++r) {
        for (std::size_t c = r; c < n; ++c) {
            d.hermiticity_deviation = std::max(d.hermiticity_deviation, std::abs(op(r, c) - std::conj(op(c, r))));
        }
    }
    Eigen::MatrixXcd m(n, n);
    for (std::size_t r = 0; r < n; ++r) {
        for (std::size_t c = 0; c < n; ++c) m(r, c) = 0.5 * (op(r, c) + std::conj(op(c, r)));
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(m, Eigen::EigenvaluesOnly);
    d.min_eigenvalue = solver.eigenvalues().minCoeff();
    d.trace = op.trace();
    d.hermitian = d.hermiticity_deviation <= tol;
    d.positive = d.min_eigenvalue >= -tol;
    d.trace_in_range = std::abs(d.trace.imag()) <= tol && d.trace.real() >= -tol && d.trace.real() <= 1.0 + tol;
    return d;
}

}  // namespace qrep
