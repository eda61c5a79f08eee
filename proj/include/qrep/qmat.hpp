// Dense complex operators over small multi-qubit registers.
//
// Bit convention (repo-wide): qubit 0 is the most significant bit of a
// matrix index, i.e. the leftmost label of a RegisterLayout.
#pragma once

#include <complex>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <string>
#include <vector>

namespace qrep {

using cplx = std::complex<double>;

/// Row-major dense square matrix of dimension 2^k (k >= 1).
///
/// Used both for normalized states and for unnormalized operators whose
/// trace carries an occurrence probability.
class Operator {
public:
    Operator() = default;
    /// Zero operator. Throws std::invalid_argument unless dim is a power of two >= 2.
    explicit Operator(std::size_t dim);

    static Operator identity(std::size_t dim);
    /// |row><col| in dimension dim.
    static Operator unit(std::size_t dim, std::size_t row, std::size_t col);
    static Operator outer(std::span<const cplx> ket, std::span<const cplx> bra);
    static Operator from_rows(std::initializer_list<std::initializer_list<cplx>> rows);
    static Operator diagonal(std::span<const double> diag);

    std::size_t dim() const noexcept { return dim_; }
    std::size_t num_qubits() const noexcept;
    bool empty() const noexcept { return dim_ == 0; }

    cplx& operator()(std::size_t r, std::size_t c) noexcept { return data_[r * dim_ + c]; }
    const cplx& operator()(std::size_t r, std::size_t c) const noexcept { return data_[r * dim_ + c]; }

    std::span<cplx> data() noexcept { return data_; }
    std::span<const cplx> data() const noexcept { return data_; }
    std::span<cplx> row(std::size_t r) noexcept { return {data_.data() + r * dim_, dim_}; }
    std::span<const cplx> row(std::size_t r) const noexcept { return {data_.data() + r * dim_, dim_}; }

    cplx trace() const noexcept;
    double real_trace() const noexcept { return trace().real(); }
    Operator adjoint() const;
    /// Replace by (M + M^dagger) / 2.
    void hermitize() noexcept;
    double max_abs() const noexcept;

    Operator& operator+=(const Operator& other);
    Operator& operator-=(const Operator& other);
    Operator& operator*=(cplx s) noexcept;
    /// this += s * other, through the active SIMD kernel.
    Operator& add_scaled(cplx s, const Operator& other);

    friend Operator operator+(Operator a, const Operator& b) { return a += b; }
    friend Operator operator-(Operator a, const Operator& b) { return a -= b; }
    friend Operator operator*(Operator a, cplx s) { return a *= s; }
    friend Operator operator*(cplx s, Operator a) { return a *= s; }
    friend Operator operator*(const Operator& a, const Operator& b);

private:
    std::size_t dim_ = 0;
    std::vector<cplx> data_;
};

/// Ordered qubit labels; label i is qubit i (most significant first).
class RegisterLayout {
public:
    RegisterLayout() = default;
    RegisterLayout(std::initializer_list<std::string> labels);
    explicit RegisterLayout(std::vector<std::string> labels);

    std::size_t size() const noexcept { return labels_.size(); }
    std::size_t dim() const noexcept { return std::size_t{1} << labels_.size(); }
    const std::vector<std::string>& labels() const noexcept { return labels_; }
    const std::string& label(std::size_t i) const { return labels_.at(i); }

    /// Throws std::invalid_argument for an unknown label.
    std::size_t index_of(const std::string& label) const;
    /// Throws on unknown or duplicate labels.
    std::vector<std::size_t> indices_of(std::span<const std::string> labels) const;

private:
    std::vector<std::string> labels_;
};

/// Kronecker product; `a` occupies the most significant qubits.
Operator tensor(const Operator& a, const Operator& b);

/// Full-register unitary acting as `gate` on `targets` (in gate qubit order)
/// and as identity elsewhere.
Operator embed(const Operator& gate, const RegisterLayout& layout,
               std::span<const std::string> targets);
Operator embed(const Operator& gate, std::size_t num_qubits, std::span<const std::size_t> targets);

/// Reduced operator on `keep`; the result keeps the layout's qubit order.
Operator partial_trace(const Operator& op, const RegisterLayout& layout,
                       std::span<const std::string> keep);
Operator partial_trace(const Operator& op, std::span<const std::size_t> keep);

/// Reorders qubits: qubit i of the result is qubit order[i] of `op`.
Operator permute_qubits(const Operator& op, std::span<const std::size_t> order);

/// rho <- G rho G^dagger with G acting on `qubits` (G's most significant
/// qubit is qubits[0]). Cost O(dim^2 * nnz(G)).
void apply_unitary(Operator& rho, std::span<const std::size_t> qubits, const Operator& gate);
void apply_unitary(Operator& rho, std::size_t qubit, const Operator& gate);

/// Tr_q[(E (x) I) rho]: outcome-weighted reduction that removes qubit q.
Operator measure_discard(const Operator& rho, std::size_t qubit, const Operator& effect);

/// Entrywise max |a - b|. Throws std::invalid_argument on dimension mismatch.
double max_abs_diff(const Operator& a, const Operator& b);

bool is_unitary(const Operator& u, double tol = 1e-10);

struct StateDiagnostics {
    double hermiticity_deviation = 0.0;  // max |M - M^dagger|
    double min_eigenvalue = 0.0;         // of the Hermitian part
    cplx trace{};
    bool hermitian = true;
    bool positive = true;
    bool trace_in_range = true;

    bool ok() const noexcept { return hermitian && positive && trace_in_range; }
};

/// Hermiticity within tol, eigenvalues >= -tol, real trace in [0, 1 + tol].
StateDiagnostics validate_state(const Operator& op, double tol = 1e-9);

}  // namespace qrep
