#pragma once

#include <algorithm>
#include <bit>
#include <cmath>
#include <complex>
#include <cstdint>
#include <random>
#include <span>
#include <string>
#include <vector>

#include "qosp/errors.hpp"
#include "qosp/rng.hpp"

namespace qosp {

using c64 = std::complex<double>;

inline constexpr int kMaxQubits = 24;

// Full 2^n amplitude register. Qubit 0 is the most significant bit of a
// basis index, matching the |x1 x2 ... xN> tensor convention; use
// qosp::bit_of to read a qubit's value out of an index.
struct StateVector {
    int n_qubits = 0;
    std::vector<c64> amps;

    double norm_sq() const {
        double s = 0.0;
        for (const c64& a : amps) s += std::norm(a);
        return s;
    }
};

struct Gate2 {
    c64 m[2][2];
};

struct Gate4 {
    c64 m[4][4];  // sub-index = 2*bit(q1) + bit(q2)
};

namespace gates {

inline Gate2 pauli_x() { return {{{0, 1}, {1, 0}}}; }
inline Gate2 pauli_y() { return {{{0, c64(0, -1)}, {c64(0, 1), 0}}}; }
inline Gate2 pauli_z() { return {{{1, 0}, {0, -1}}}; }

inline Gate2 hadamard() {
    const double h = 1.0 / std::sqrt(2.0);
    return {{{h, h}, {h, -h}}};
}

inline Gate2 rx(double theta) {
    const double c = std::cos(theta / 2.0), s = std::sin(theta / 2.0);
    return {{{c, c64(0, -s)}, {c64(0, -s), c}}};
}

inline Gate2 ry(double theta) {
    const double c = std::cos(theta / 2.0), s = std::sin(theta / 2.0);
    return {{{c, -s}, {s, c}}};
}

inline Gate2 rz(double theta) {
    return {{{std::exp(c64(0, -theta / 2.0)), 0}, {0, std::exp(c64(0, theta / 2.0))}}};
}

inline Gate4 cnot() {
    Gate4 g{};
    g.m[0][0] = g.m[1][1] = g.m[2][3] = g.m[3][2] = 1.0;
    return g;
}

// Eq.-style pair swap block: identity on |00>,|11>, and
// [[cos(b/2), i sin(b/2)], [i sin(b/2), cos(b/2)]] on the {|01>,|10>} block.
inline Gate4 xy_pair(double beta) {
    Gate4 g{};
    const double c = std::cos(beta / 2.0), s = std::sin(beta / 2.0);
    g.m[0][0] = g.m[3][3] = 1.0;
    g.m[1][1] = g.m[2][2] = c;
    g.m[1][2] = g.m[2][1] = c64(0, s);
    return g;
}

}  // namespace gates

namespace detail {

inline void require_unitary2(const Gate2& g) {
    // rows of U must be orthonormal (U U^dag = I)
    const c64 r00 = g.m[0][0] * std::conj(g.m[0][0]) + g.m[0][1] * std::conj(g.m[0][1]);
    const c64 r11 = g.m[1][0] * std::conj(g.m[1][0]) + g.m[1][1] * std::conj(g.m[1][1]);
    const c64 r01 = g.m[0][0] * std::conj(g.m[1][0]) + g.m[0][1] * std::conj(g.m[1][1]);
    if (std::abs(r00 - 1.0) > 1e-10 || std::abs(r11 - 1.0) > 1e-10 || std::abs(r01) > 1e-10)
        throw InvalidParameter("2x2 gate matrix is not unitary");
}

inline void require_unitary4(const Gate4& g) {
    for (int r = 0; r < 4; ++r)
        for (int s = 0; s < 4; ++s) {
            c64 dot = 0.0;
            for (int k = 0; k < 4; ++k) dot += g.m[r][k] * std::conj(g.m[s][k]);
            if (std::abs(dot - (r == s ? 1.0 : 0.0)) > 1e-10)
                throw InvalidParameter("4x4 gate matrix is not unitary");
        }
}

inline void require_qubit(const StateVector& s, int q) {
    if (q < 0 || q >= s.n_qubits)
        throw InvalidParameter("qubit index " + std::to_string(q) + " out of range for " +
                               std::to_string(s.n_qubits) + " qubits");
}

}  // namespace detail

inline StateVector make_zero_state(int n) {
    if (n < 1 || n > kMaxQubits)
        throw ResourceLimit("qubit count must be in [1, " + std::to_string(kMaxQubits) + "]");
    StateVector s;
    s.n_qubits = n;
    s.amps.assign(std::size_t{1} << n, c64{});
    s.amps[0] = 1.0;
    return s;
}

// |+>^n: Hadamard on every qubit of |0...0>; every amplitude 2^(-n/2).
inline StateVector prepare_plus_state(int n) {
    StateVector s = make_zero_state(n);
    const double a = std::pow(2.0, -0.5 * n);
    std::fill(s.amps.begin(), s.amps.end(), c64(a, 0.0));
    return s;
}

inline double binomial(int n, int k) {
    if (k < 0 || k > n) return 0.0;
    double r = 1.0;
    for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
    return r;
}

// Dicke state: amplitude 1/sqrt(C(n, ones)) on every basis state of Hamming
// weight `ones`, written directly (no preparation circuit).
inline StateVector prepare_dicke(int n, int ones) {
    if (ones < 0 || ones > n) throw InvalidParameter("ones count must be in [0, n]");
    StateVector s = make_zero_state(n);
    s.amps[0] = 0.0;
    const double a = 1.0 / std::sqrt(binomial(n, ones));
    const std::uint64_t dim = std::uint64_t{1} << n;
    for (std::uint64_t m = 0; m < dim; ++m)
        if (std::popcount(m) == ones) s.amps[m] = a;
    return s;
}

inline void apply_single_qubit_gate(StateVector& s, const Gate2& g, int q) {
    detail::require_qubit(s, q);
    detail::require_unitary2(g);
    const int b = s.n_qubits - 1 - q;
    const std::uint64_t mask = std::uint64_t{1} << b;
    const std::uint64_t lo = mask - 1;
    const std::uint64_t half = std::uint64_t{1} << (s.n_qubits - 1);
    for (std::uint64_t i = 0; i < half; ++i) {
        const std::uint64_t i0 = ((i & ~lo) << 1) | (i & lo);
        const std::uint64_t i1 = i0 | mask;
        const c64 a0 = s.amps[i0], a1 = s.amps[i1];
        s.amps[i0] = g.m[0][0] * a0 + g.m[0][1] * a1;
        s.amps[i1] = g.m[1][0] * a0 + g.m[1][1] * a1;
    }
}

inline void apply_two_qubit_gate(StateVector& s, const Gate4& g, int q1, int q2) {
    detail::require_qubit(s, q1);
    detail::require_qubit(s, q2);
    if (q1 == q2) throw InvalidParameter("two-qubit gate requires distinct qubits");
    detail::require_unitary4(g);
    const std::uint64_t m1 = std::uint64_t{1} << (s.n_qubits - 1 - q1);
    const std::uint64_t m2 = std::uint64_t{1} << (s.n_qubits - 1 - q2);
    const std::uint64_t mhi = std::max(m1, m2), mlo = std::min(m1, m2);
    const std::uint64_t quarter = std::uint64_t{1} << (s.n_qubits - 2);
    for (std::uint64_t i = 0; i < quarter; ++i) {
        std::uint64_t base = ((i & ~(mlo - 1)) << 1) | (i & (mlo - 1));
        base = ((base & ~(mhi - 1)) << 1) | (base & (mhi - 1));
        const std::uint64_t idx[4] = {base, base | m2, base | m1, base | m1 | m2};
        c64 a[4];
        for (int t = 0; t < 4; ++t) a[t] = s.amps[idx[t]];
        for (int r = 0; r < 4; ++r)
            s.amps[idx[r]] =
                g.m[r][0] * a[0] + g.m[r][1] * a[1] + g.m[r][2] * a[2] + g.m[r][3] * a[3];
    }
}

// amp_m *= exp(-i * gamma * diag_m); the collapsed form of the per-term
// rotation-Z / CX ladder for a diagonal cost operator.
inline void apply_cost_phase(StateVector& s, std::span<const double> diag, double gamma) {
    if (diag.size() != s.amps.size())
        throw InvalidParameter("diagonal length does not match state dimension");
    if (gamma == 0.0) return;
    for (std::size_t m = 0; m < s.amps.size(); ++m) {
        const double ph = -gamma * diag[m];
        s.amps[m] *= c64(std::cos(ph), std::sin(ph));
    }
}

// R_x(2*beta) on every qubit == exp(-i*beta*sum_k X_k).
inline void apply_x_mixer_layer(StateVector& s, double beta) {
    const double c = std::cos(beta), sn = std::sin(beta);
    for (int q = 0; q < s.n_qubits; ++q) {
        const int b = s.n_qubits - 1 - q;
        const std::uint64_t mask = std::uint64_t{1} << b;
        const std::uint64_t lo = mask - 1;
        const std::uint64_t half = std::uint64_t{1} << (s.n_qubits - 1);
        for (std::uint64_t i = 0; i < half; ++i) {
            const std::uint64_t i0 = ((i & ~lo) << 1) | (i & lo);
            const std::uint64_t i1 = i0 | mask;
            const c64 a0 = s.amps[i0], a1 = s.amps[i1];
            // [[c, -i sn], [-i sn, c]]
            s.amps[i0] = c64(c * a0.real() + sn * a1.imag(), c * a0.imag() - sn * a1.real());
            s.amps[i1] = c64(c * a1.real() + sn * a0.imag(), c * a1.imag() - sn * a0.real());
        }
    }
}

// Pairwise swap-block sequence over every unordered qubit pair in fixed
// lexicographic order (1,2),(1,3),...,(N-1,N). This is the printed pair
// matrix applied as a gate sequence, not the exact exponential of the full
// XY operator; the overlapping pair terms do not all commute.
inline void apply_xy_mixer_layer(StateVector& s, double beta) {
    const double c = std::cos(beta / 2.0), sn = std::sin(beta / 2.0);
    const int n = s.n_qubits;
    for (int k = 0; k < n - 1; ++k) {
        for (int m = k + 1; m < n; ++m) {
            const std::uint64_t mk = std::uint64_t{1} << (n - 1 - k);
            const std::uint64_t mm = std::uint64_t{1} << (n - 1 - m);
            const std::uint64_t quarter = std::uint64_t{1} << (n - 2);
            for (std::uint64_t i = 0; i < quarter; ++i) {
                std::uint64_t base = ((i & ~(mm - 1)) << 1) | (i & (mm - 1));
                base = ((base & ~(mk - 1)) << 1) | (base & (mk - 1));
                const std::uint64_t i01 = base | mm, i10 = base | mk;
                const c64 a01 = s.amps[i01], a10 = s.amps[i10];
                // [[c, i sn], [i sn, c]] on {|01>, |10>}
                s.amps[i01] =
                    c64(c * a01.real() - sn * a10.imag(), c * a01.imag() + sn * a10.real());
                s.amps[i10] =
                    c64(c * a10.real() - sn * a01.imag(), c * a10.imag() + sn * a01.real());
            }
        }
    }
}

namespace detail {

inline std::vector<double> cumulative_probabilities(const StateVector& s) {
    std::vector<double> cum(s.amps.size());
    double acc = 0.0;
    for (std::size_t m = 0; m < s.amps.size(); ++m) {
        acc += std::norm(s.amps[m]);
        cum[m] = acc;
    }
    return cum;
}

}  // namespace detail

// i.i.d. draws from |amp|^2, deterministic per seed. The state is not
// collapsed: each shot re-samples the same prepared distribution. Returned
// values are basis indices (decode bits with qosp::bit_of).
inline std::vector<std::uint64_t> sample_bitstrings(const StateVector& s, int shots,
                                                    std::uint64_t seed) {
    if (shots < 1) throw InvalidParameter("shot count must be >= 1");
    const std::vector<double> cum = detail::cumulative_probabilities(s);
    const double total = cum.back();
    std::mt19937_64 gen(seed);
    std::vector<std::uint64_t> out(shots);
    for (int t = 0; t < shots; ++t) {
        const double u = uniform01(gen) * total;
        const auto it = std::upper_bound(cum.begin(), cum.end(), u);
        out[t] = static_cast<std::uint64_t>(
            std::min<std::ptrdiff_t>(it - cum.begin(), cum.size() - 1));
    }
    return out;
}

inline double expectation_of_diagonal(const StateVector& s, std::span<const double> diag) {
    if (diag.size() != s.amps.size())
        throw InvalidParameter("diagonal length does not match state dimension");
    double e = 0.0;
    for (std::size_t m = 0; m < s.amps.size(); ++m) e += std::norm(s.amps[m]) * diag[m];
    return e;
}

inline std::string index_to_bits(std::uint64_t index, int n) {
    std::string s(n, '0');
    for (int q = 0; q < n; ++q)
        if ((index >> (n - 1 - q)) & 1u) s[q] = '1';
    return s;
}

}  // namespace qosp
