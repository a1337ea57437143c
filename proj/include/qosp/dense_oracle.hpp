#pragma once

#include <Eigen/Dense>

#include <complex>
#include <cstdint>
#include <vector>

#include "qosp/errors.hpp"
#include "qosp/statevector.hpp"

namespace qosp {

// Dense consolidation of circuits for test-scale cross-checks (n <= 6).
// Builds the padded 2^n x 2^n unitary of each placed gate and left-multiplies
// them in application order. Oracle only; never used on the fast path.

struct PlacedGate {
    Eigen::MatrixXcd matrix;   // 2^k x 2^k
    std::vector<int> qubits;   // k target qubits; qubits[0] is the most
                               // significant bit of the small-matrix index
};

inline constexpr int kMaxOracleQubits = 6;

// Padded full-register matrix of a k-qubit gate at arbitrary positions.
inline Eigen::MatrixXcd embed_gate(int n, const PlacedGate& g) {
    if (n < 1 || n > kMaxOracleQubits)
        throw ResourceLimit("dense oracle limited to 6 qubits");
    const int k = static_cast<int>(g.qubits.size());
    if (g.matrix.rows() != (1 << k) || g.matrix.cols() != (1 << k))
        throw InvalidParameter("gate matrix size does not match target count");
    for (int q : g.qubits)
        if (q < 0 || q >= n) throw InvalidParameter("gate target out of range");

    const std::uint64_t dim = std::uint64_t{1} << n;
    Eigen::MatrixXcd full = Eigen::MatrixXcd::Zero(dim, dim);
    for (std::uint64_t col = 0; col < dim; ++col) {
        int sub = 0;
        for (int t = 0; t < k; ++t)
            sub = (sub << 1) | static_cast<int>((col >> (n - 1 - g.qubits[t])) & 1u);
        for (int r = 0; r < (1 << k); ++r) {
            std::uint64_t row = col;
            for (int t = 0; t < k; ++t) {
                const std::uint64_t mask = std::uint64_t{1} << (n - 1 - g.qubits[t]);
                if ((r >> (k - 1 - t)) & 1)
                    row |= mask;
                else
                    row &= ~mask;
            }
            full(row, col) = g.matrix(r, sub);
        }
    }
    return full;
}

// U = U_M * ... * U_2 * U_1 for gates listed in application order.
inline Eigen::MatrixXcd dense_circuit_oracle(int n, const std::vector<PlacedGate>& gates) {
    if (n < 1 || n > kMaxOracleQubits)
        throw ResourceLimit("dense oracle limited to 6 qubits");
    const std::uint64_t dim = std::uint64_t{1} << n;
    Eigen::MatrixXcd u = Eigen::MatrixXcd::Identity(dim, dim);
    for (const PlacedGate& g : gates) u = embed_gate(n, g) * u;
    return u;
}

// exp(-i * t * H) for Hermitian H, via eigendecomposition.
inline Eigen::MatrixXcd propagator(const Eigen::MatrixXcd& h, double t) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(h);
    if (es.info() != Eigen::Success)
        throw NumericalFailure("hermitian eigendecomposition failed");
    const auto& v = es.eigenvectors();
    Eigen::VectorXcd phases(es.eigenvalues().size());
    for (Eigen::Index i = 0; i < phases.size(); ++i)
        phases(i) = std::exp(std::complex<double>(0.0, -t * es.eigenvalues()(i)));
    return v * phases.asDiagonal() * v.adjoint();
}

inline Eigen::MatrixXcd gate2_matrix(const Gate2& g) {
    Eigen::MatrixXcd m(2, 2);
    for (int r = 0; r < 2; ++r)
        for (int c = 0; c < 2; ++c) m(r, c) = g.m[r][c];
    return m;
}

inline Eigen::MatrixXcd gate4_matrix(const Gate4& g) {
    Eigen::MatrixXcd m(4, 4);
    for (int r = 0; r < 4; ++r)
        for (int c = 0; c < 4; ++c) m(r, c) = g.m[r][c];
    return m;
}

inline Eigen::VectorXcd to_eigen(const StateVector& s) {
    Eigen::VectorXcd v(s.amps.size());
    for (std::size_t i = 0; i < s.amps.size(); ++i) v(i) = s.amps[i];
    return v;
}

}  // namespace qosp
