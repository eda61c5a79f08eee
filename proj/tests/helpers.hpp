#pragma once

#include <cmath>
#include <random>

#include "qrep/qmat.hpp"

namespace testutil {

inline qrep::Operator random_operator(std::size_t dim, std::mt19937_64& rng) {
    std::normal_distribution<double> g;
    qrep::Operator m(dim);
    for (auto& v : m.data()) v = {g(rng), g(rng)};
    return m;
}

// Random density matrix: G G^dagger / tr.
inline qrep::Operator random_state(std::size_t dim, std::mt19937_64& rng) {
    const auto g = random_operator(dim, rng);
    auto rho = g * g.adjoint();
    rho *= 1.0 / rho.real_trace();
    return rho;
}

}  // namespace testutil
