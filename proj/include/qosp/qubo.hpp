#pragma once

#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "qosp/errors.hpp"
#include "qosp/structural.hpp"

namespace qosp {

enum class Sense { Minimize, Maximize };

// Upper-triangular key for unordered variable pairs (p < q, 0-based).
using VarPair = std::pair<int, int>;

inline VarPair make_pair_key(int p, int q) {
    if (p == q) throw InvalidParameter("self-pair {p,p}: fold x_p^2 = x_p into linear");
    return p < q ? VarPair{p, q} : VarPair{q, p};
}

// Quadratic binary objective: offset + sum_p linear_p x_p
//                                    + sum_{p<q} quadratic{p,q} x_p x_q.
struct QuboProblem {
    int n_vars = 0;
    Sense sense = Sense::Minimize;
    std::vector<double> linear;
    std::map<VarPair, double> quadratic;  // one entry per unordered pair
    double offset = 0.0;

    void add_quadratic(int p, int q, double v) { quadratic[make_pair_key(p, q)] += v; }
};

// Pauli-Z decomposition of a diagonal cost operator:
// H = a*I + sum_j b_j Z_j + sum_{j<k} c_{jk} Z_j Z_k.
struct IsingCoefficients {
    int n_vars = 0;
    double a = 0.0;
    std::vector<double> b;
    std::map<VarPair, double> c;
};

inline double evaluate_qubo(const QuboProblem& q, std::span<const int> x) {
    if (static_cast<int>(x.size()) != q.n_vars)
        throw InvalidParameter("bit vector length " + std::to_string(x.size()) +
                               " does not match n_vars " + std::to_string(q.n_vars));
    for (int v : x)
        if (v != 0 && v != 1) throw InvalidParameter("bit entries must be 0 or 1");
    double val = q.offset;
    for (int p = 0; p < q.n_vars; ++p)
        if (x[p]) val += q.linear[p];
    for (const auto& [pq, coef] : q.quadratic)
        if (x[pq.first] && x[pq.second]) val += coef;
    return val;
}

// Bit-order convention used throughout: variable/qubit 0 is the most
// significant bit of a basis index, matching |x1 x2 ... xN> tensor order.
inline int bit_of(std::uint64_t index, int var, int n_vars) {
    return static_cast<int>((index >> (n_vars - 1 - var)) & 1u);
}

inline double evaluate_qubo_at_index(const QuboProblem& q, std::uint64_t index) {
    double val = q.offset;
    for (int p = 0; p < q.n_vars; ++p)
        if (bit_of(index, p, q.n_vars)) val += q.linear[p];
    for (const auto& [pq, coef] : q.quadratic)
        if (bit_of(index, pq.first, q.n_vars) && bit_of(index, pq.second, q.n_vars))
            val += coef;
    return val;
}

// Modal strain energy objective over sensor-selection bits, to be maximized:
//   w_pq = |k_pq| * (sum_i |phi_pi|) * (sum_j |phi_qj|)
// with linear_p = w_pp and quadratic{p,q} = w_pq + w_qp. Zero stiffness
// couplings contribute no quadratic entry.
inline QuboProblem build_mse_qubo(const ModalBasis& modal, const StructuralModel& model) {
    const int n = model.n_dof;
    if (modal.mode_shapes.rows() != n || modal.mode_shapes.cols() != n)
        throw InvalidParameter("modal basis dimensions do not match model");

    std::vector<double> s(n, 0.0);  // s_p = sum_i |phi_pi|
    for (int p = 0; p < n; ++p)
        for (int i = 0; i < n; ++i) s[p] += std::abs(modal.mode_shapes(p, i));

    QuboProblem q;
    q.n_vars = n;
    q.sense = Sense::Maximize;
    q.linear.resize(n);
    for (int p = 0; p < n; ++p) q.linear[p] = std::abs(model.stiffness(p, p)) * s[p] * s[p];
    for (int p = 0; p < n; ++p)
        for (int r = p + 1; r < n; ++r) {
            const double k = std::abs(model.stiffness(p, r));
            if (k != 0.0) q.quadratic[{p, r}] = 2.0 * k * s[p] * s[r];
        }
    return q;
}

// Heuristic penalty weight: large enough that a single cardinality violation
// costs more than any attainable objective gain. User-overridable at the CLI.
inline double default_penalty_weight(const QuboProblem& q, int n_sensors) {
    double max_coef = 0.0;
    for (double v : q.linear) max_coef = std::max(max_coef, std::abs(v));
    for (const auto& [pq, v] : q.quadratic) max_coef = std::max(max_coef, std::abs(v));
    return 2.0 * max_coef * n_sensors;
}

// Fold the cardinality constraint sum_p x_p = n_sensors into the objective as
// alpha*(sum x - n_s)^2, expanded with x_p^2 = x_p, and return a
// minimize-sense problem (the objective itself is negated when the input
// maximizes).
inline QuboProblem add_cardinality_penalty(const QuboProblem& q, int n_sensors, double alpha) {
    if (n_sensors < 1 || n_sensors > q.n_vars)
        throw InvalidParameter("sensor count must be in [1, n_vars]");
    if (alpha <= 0.0) throw InvalidParameter("penalty weight must be positive");

    QuboProblem out;
    out.n_vars = q.n_vars;
    out.sense = Sense::Minimize;
    const double sgn = q.sense == Sense::Maximize ? -1.0 : 1.0;
    out.offset = sgn * q.offset + alpha * n_sensors * n_sensors;
    out.linear.resize(q.n_vars);
    for (int p = 0; p < q.n_vars; ++p)
        out.linear[p] = sgn * q.linear[p] + alpha * (1.0 - 2.0 * n_sensors);
    for (const auto& [pq, v] : q.quadratic) out.quadratic[pq] = sgn * v;
    for (int p = 0; p < q.n_vars; ++p)
        for (int r = p + 1; r < q.n_vars; ++r) out.quadratic[{p, r}] += 2.0 * alpha;
    return out;
}

inline QuboProblem negate_to_minimize(const QuboProblem& q) {
    if (q.sense == Sense::Minimize) return q;
    QuboProblem out = q;
    out.sense = Sense::Minimize;
    out.offset = -q.offset;
    for (double& v : out.linear) v = -v;
    for (auto& [pq, v] : out.quadratic) v = -v;
    return out;
}

// Boolean-to-Pauli translation: h*x_p -> h/2 I - h/2 Z_p and
// g*x_p x_q -> g/4 (I - Z_p - Z_q + Z_p Z_q); the offset lands in a.
inline IsingCoefficients qubo_to_ising(const QuboProblem& q) {
    if (q.sense != Sense::Minimize)
        throw ContractViolation("qubo_to_ising expects a minimize-sense problem; "
                                "negate maximize objectives first");
    IsingCoefficients ising;
    ising.n_vars = q.n_vars;
    ising.a = q.offset;
    ising.b.assign(q.n_vars, 0.0);
    for (int p = 0; p < q.n_vars; ++p) {
        ising.a += q.linear[p] / 2.0;
        ising.b[p] -= q.linear[p] / 2.0;
    }
    for (const auto& [pq, g] : q.quadratic) {
        ising.a += g / 4.0;
        ising.b[pq.first] -= g / 4.0;
        ising.b[pq.second] -= g / 4.0;
        ising.c[pq] += g / 4.0;
    }
    return ising;
}

namespace detail {

// Diagonal of the Ising operator; with_constant=false drops the a*I term
// (a global phase in the circuit, canceled on normalization).
inline std::vector<double> ising_diagonal(const IsingCoefficients& ising, bool with_constant) {
    const int n = ising.n_vars;
    if (n > 20) throw ResourceLimit("diagonal table limited to 20 variables");
    const std::size_t dim = std::size_t{1} << n;
    std::vector<double> diag(dim, with_constant ? ising.a : 0.0);
    for (int j = 0; j < n; ++j) {
        if (ising.b[j] == 0.0) continue;
        const std::uint64_t mask = std::uint64_t{1} << (n - 1 - j);
        for (std::size_t m = 0; m < dim; ++m)
            diag[m] += (m & mask) ? -ising.b[j] : ising.b[j];
    }
    for (const auto& [jk, coef] : ising.c) {
        if (coef == 0.0) continue;
        const std::uint64_t mj = std::uint64_t{1} << (n - 1 - jk.first);
        const std::uint64_t mk = std::uint64_t{1} << (n - 1 - jk.second);
        for (std::size_t m = 0; m < dim; ++m) {
            const double zz = ((m & mj) != 0) == ((m & mk) != 0) ? 1.0 : -1.0;
            diag[m] += coef * zz;
        }
    }
    return diag;
}

}  // namespace detail

// Brute-force diagonal: entry m equals the source QUBO at bitstring m
// (variable 0 = most significant bit). Test and verification oracle.
inline std::vector<double> ising_diagonal_oracle(const IsingCoefficients& ising) {
    return detail::ising_diagonal(ising, true);
}

// Phase table for the cost unitary: same diagonal with the constant dropped.
inline std::vector<double> ising_phase_diagonal(const IsingCoefficients& ising) {
    return detail::ising_diagonal(ising, false);
}

}  // namespace qosp
