#pragma once

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <limits>
#include <numbers>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "qosp/errors.hpp"
#include "qosp/qubo.hpp"
#include "qosp/statevector.hpp"

namespace qosp {

enum class Mixer { StandardX, FullXY };

inline std::string mixer_name(Mixer m) { return m == Mixer::StandardX ? "x" : "xy"; }

struct QaoaConfig {
    int p = 1;                  // layer count
    Mixer mixer = Mixer::FullXY;
    int shots = 1000;           // n_e; 0 = exact-expectation mode
    int n_sensors = 4;          // Dicke weight for the XY mixer
    double alpha = 0.0;         // penalty weight (X mixer path only)
    std::uint64_t seed = 0;
};

struct Schedule {
    std::vector<double> betas;
    std::vector<double> gammas;
};

// Two-parameter linear schedule: gamma rises from 0.01*pi to gamma_p, beta
// falls from beta_1 to 0.01*pi. p = 1 degenerates to the raw endpoints.
inline Schedule linear_schedule(double beta1, double gamma_p, int p) {
    if (p < 1) throw InvalidParameter("layer count must be >= 1");
    Schedule sch;
    sch.betas.resize(p);
    sch.gammas.resize(p);
    if (p == 1) {
        sch.betas[0] = beta1;
        sch.gammas[0] = gamma_p;
        return sch;
    }
    const double eps = 0.01 * std::numbers::pi;
    for (int j = 1; j <= p; ++j) {
        sch.gammas[j - 1] = (gamma_p - eps) / (p - 1) * (j - 1) + eps;
        sch.betas[j - 1] = beta1 - (beta1 - eps) / (p - 1) * (j - 1);
    }
    return sch;
}

namespace detail {

// Hamming-weight-w slice of the register. Diagonal phases and the pairwise
// XY blocks both act within a fixed-weight subspace; starting from a Dicke
// state the complement stays exactly zero, so for the XY mixer the layers
// run on the C(n, w) nonzero amplitudes only. The arithmetic per amplitude
// is identical to the full kernels, so results match them bit for bit.
struct WeightSubspace {
    int n = 0, weight = 0;
    std::vector<std::uint32_t> states;                       // ascending indices
    std::vector<std::vector<std::pair<std::uint32_t, std::uint32_t>>> pair_links;

    WeightSubspace(int n_, int w) : n(n_), weight(w) {
        const std::uint32_t dim = std::uint32_t{1} << n;
        std::vector<std::int32_t> pos(dim, -1);
        for (std::uint32_t m = 0; m < dim; ++m)
            if (std::popcount(m) == weight) {
                pos[m] = static_cast<std::int32_t>(states.size());
                states.push_back(m);
            }
        for (int k = 0; k < n - 1; ++k) {
            for (int q = k + 1; q < n; ++q) {
                const std::uint32_t mk = std::uint32_t{1} << (n - 1 - k);
                const std::uint32_t mq = std::uint32_t{1} << (n - 1 - q);
                auto& links = pair_links.emplace_back();
                for (std::uint32_t st : states) {
                    if ((st & mk) == 0 && (st & mq) != 0) {
                        const std::uint32_t partner = (st ^ mq) | mk;
                        links.emplace_back(pos[st], pos[partner]);
                    }
                }
            }
        }
    }
};

}  // namespace detail

// Prepared p-layer circuit for one Ising problem: phase table and, for the
// XY mixer, the weight-subspace tables are built once and reused across
// parameter points.
class QaoaCircuit {
  public:
    QaoaCircuit(const IsingCoefficients& ising, const QaoaConfig& config)
        : n_(ising.n_vars), config_(config), phase_diag_(ising_phase_diagonal(ising)) {
        if (n_ < 1 || n_ > kMaxQubits)
            throw ResourceLimit("circuit limited to " + std::to_string(kMaxQubits) + " qubits");
        if (config.p < 1) throw InvalidParameter("layer count must be >= 1");
        if (config.mixer == Mixer::FullXY) {
            if (config.n_sensors < 0 || config.n_sensors > n_)
                throw InvalidParameter("sensor count out of range for Dicke preparation");
            subspace_.emplace(n_, config.n_sensors);
            sub_diag_.reserve(subspace_->states.size());
            for (std::uint32_t st : subspace_->states) sub_diag_.push_back(phase_diag_[st]);
        }
    }

    int n_qubits() const { return n_; }
    const QaoaConfig& config() const { return config_; }
    const std::vector<double>& phase_diagonal() const { return phase_diag_; }

    // p alternating layers, cost phase first: U_H1(beta_j) U_H2(gamma_j),
    // j = 1..p, on |+>^n (X mixer) or the Dicke state (XY mixer).
    StateVector run(double beta1, double gamma_p) const {
        const Schedule sch = linear_schedule(beta1, gamma_p, config_.p);
        if (config_.mixer == Mixer::StandardX) {
            StateVector state = prepare_plus_state(n_);
            for (int j = 0; j < config_.p; ++j) {
                apply_cost_phase(state, phase_diag_, sch.gammas[j]);
                apply_x_mixer_layer(state, sch.betas[j]);
            }
            return state;
        }
        return run_xy(sch);
    }

  private:
    StateVector run_xy(const Schedule& sch) const {
        const auto& sub = *subspace_;
        const std::size_t dim = sub.states.size();
        std::vector<c64> amps(dim, c64(1.0 / std::sqrt(static_cast<double>(dim)), 0.0));
        for (int j = 0; j < config_.p; ++j) {
            const double gamma = sch.gammas[j];
            if (gamma != 0.0) {
                for (std::size_t m = 0; m < dim; ++m) {
                    const double ph = -gamma * sub_diag_[m];
                    amps[m] *= c64(std::cos(ph), std::sin(ph));
                }
            }
            const double c = std::cos(sch.betas[j] / 2.0), sn = std::sin(sch.betas[j] / 2.0);
            for (const auto& links : sub.pair_links) {
                for (const auto& [p01, p10] : links) {
                    const c64 a01 = amps[p01], a10 = amps[p10];
                    amps[p01] =
                        c64(c * a01.real() - sn * a10.imag(), c * a01.imag() + sn * a10.real());
                    amps[p10] =
                        c64(c * a10.real() - sn * a01.imag(), c * a10.imag() + sn * a01.real());
                }
            }
        }
        StateVector state = make_zero_state(n_);
        state.amps[0] = 0.0;
        for (std::size_t m = 0; m < dim; ++m) state.amps[sub.states[m]] = amps[m];
        return state;
    }

    int n_;
    QaoaConfig config_;
    std::vector<double> phase_diag_;
    std::optional<detail::WeightSubspace> subspace_;
    std::vector<double> sub_diag_;
};

inline StateVector run_qaoa_circuit(const IsingCoefficients& ising, const QaoaConfig& config,
                                    double beta1, double gamma_p) {
    return QaoaCircuit(ising, config).run(beta1, gamma_p);
}

// Eq.-(26) ratio in the maximization convention: value / optimum, 1 at the
// optimum.
inline double approximation_ratio(double value, double optimum) {
    if (optimum <= 0.0) throw InvalidParameter("optimum must be positive");
    return value / optimum;
}

enum class InfeasibleScore { Zero, Raw };

// Per-bitstring scoring for cost estimation. Feasible samples (Hamming
// weight n_sensors) score on the min-max scale over the feasible ensemble,
// which is the scale the reference rankings report; infeasible samples
// score 0 by default, or the raw objective / feasible maximum under Raw.
class ScoringContext {
  public:
    ScoringContext(const QuboProblem& maximize_qubo, int n_sensors,
                   InfeasibleScore policy = InfeasibleScore::Zero)
        : n_(maximize_qubo.n_vars), n_sensors_(n_sensors), policy_(policy) {
        if (maximize_qubo.sense != Sense::Maximize)
            throw ContractViolation("scoring expects the maximize-sense objective");
        if (n_ > 20) throw ResourceLimit("scoring table limited to 20 variables");
        if (n_sensors < 1 || n_sensors > n_) throw InvalidParameter("sensor count out of range");

        // value(m) = value(m minus lowest set bit p) + linear_p + couplings
        const std::size_t dim = std::size_t{1} << n_;
        std::vector<double> coupling(static_cast<std::size_t>(n_) * n_, 0.0);
        for (const auto& [pq, v] : maximize_qubo.quadratic) {
            coupling[pq.first * n_ + pq.second] = v;
            coupling[pq.second * n_ + pq.first] = v;
        }
        values_.resize(dim);
        values_[0] = maximize_qubo.offset;
        for (std::size_t m = 1; m < dim; ++m) {
            const int lowbit = std::countr_zero(m);
            const int p = n_ - 1 - lowbit;
            const std::size_t rest = m & (m - 1);
            double v = values_[rest] + maximize_qubo.linear[p];
            std::size_t r = rest;
            while (r) {
                const int q = n_ - 1 - std::countr_zero(r);
                v += coupling[p * n_ + q];
                r &= r - 1;
            }
            values_[m] = v;
        }

        feasible_max_ = -std::numeric_limits<double>::infinity();
        feasible_min_ = std::numeric_limits<double>::infinity();
        for (std::size_t m = 0; m < dim; ++m) {
            if (std::popcount(m) != n_sensors_) continue;
            feasible_max_ = std::max(feasible_max_, values_[m]);
            feasible_min_ = std::min(feasible_min_, values_[m]);
        }
        if (!(feasible_max_ > 0.0))
            throw NumericalFailure("feasible objective maximum is not positive");
    }

    int n_vars() const { return n_; }
    int n_sensors() const { return n_sensors_; }
    double objective_at(std::uint64_t index) const { return values_[index]; }
    double feasible_max() const { return feasible_max_; }
    double feasible_min() const { return feasible_min_; }

    bool feasible(std::uint64_t index) const { return std::popcount(index) == n_sensors_; }

    double ratio_of_value(double v) const {
        return (v - feasible_min_) / (feasible_max_ - feasible_min_);
    }

    double score(std::uint64_t index) const {
        if (feasible(index)) return ratio_of_value(values_[index]);
        return policy_ == InfeasibleScore::Zero ? 0.0 : values_[index] / feasible_max_;
    }

  private:
    int n_, n_sensors_;
    InfeasibleScore policy_;
    std::vector<double> values_;
    double feasible_max_ = 0.0, feasible_min_ = 0.0;
};

struct CostEstimate {
    double avg_ratio = 0.0;
    double best_ratio = 0.0;
    double feasible_fraction = 0.0;
};

// Shot-based estimate for n_e >= 1; exact |amp|^2-weighted expectation for
// n_e = 0 (best over the support, not over samples).
inline CostEstimate estimate_cost(const StateVector& state, const ScoringContext& ctx, int n_e,
                                  std::uint64_t seed) {
    if (state.n_qubits != ctx.n_vars())
        throw InvalidParameter("state size does not match scoring context");
    CostEstimate est;
    if (n_e == 0) {
        est.best_ratio = -std::numeric_limits<double>::infinity();
        for (std::size_t m = 0; m < state.amps.size(); ++m) {
            const double p = std::norm(state.amps[m]);
            const double sc = ctx.score(m);
            est.avg_ratio += p * sc;
            if (p > 0.0) est.best_ratio = std::max(est.best_ratio, sc);
            if (ctx.feasible(m)) est.feasible_fraction += p;
        }
        return est;
    }
    const auto samples = sample_bitstrings(state, n_e, seed);
    est.best_ratio = -std::numeric_limits<double>::infinity();
    int feasible = 0;
    for (std::uint64_t idx : samples) {
        const double sc = ctx.score(idx);
        est.avg_ratio += sc;
        est.best_ratio = std::max(est.best_ratio, sc);
        if (ctx.feasible(idx)) ++feasible;
    }
    est.avg_ratio /= n_e;
    est.feasible_fraction = static_cast<double>(feasible) / n_e;
    return est;
}

struct GateCountReport {
    int n_vars = 0;
    int layers = 0;
    long long quadratic_terms = 0;   // nonzero unordered ZZ pairs
    long long per_layer_gates = 0;   // 3 per pair (CX, Rz, CX) + one Rz per variable
    long long per_layer_bound = 0;   // 3N^2/2 - N/2, the dense-coupling cap
    long long total_gates = 0;       // p * per_layer + N initialization gates
};

inline GateCountReport gate_count(const IsingCoefficients& ising, int p) {
    if (p < 1) throw InvalidParameter("layer count must be >= 1");
    GateCountReport r;
    r.n_vars = ising.n_vars;
    r.layers = p;
    for (const auto& [pq, v] : ising.c)
        if (v != 0.0) ++r.quadratic_terms;
    r.per_layer_gates = 3 * r.quadratic_terms + r.n_vars;
    const long long n = r.n_vars;
    r.per_layer_bound = (3 * n * n - n) / 2;
    r.total_gates = static_cast<long long>(p) * r.per_layer_gates + n;
    return r;
}

}  // namespace qosp
