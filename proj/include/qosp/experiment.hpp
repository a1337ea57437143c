#pragma once

#include <algorithm>
#include <cstdint>
#include <numbers>
#include <string>
#include <vector>

#include "qosp/cases.hpp"
#include "qosp/errors.hpp"
#include "qosp/optimize.hpp"
#include "qosp/parallel.hpp"
#include "qosp/qaoa.hpp"
#include "qosp/qubo.hpp"
#include "qosp/rng.hpp"

namespace qosp {

// One row of an exhaustive ranking. Locations are ascending 1-based DOF
// indices; ratio is min-max scaled over the feasible ensemble so the top
// row is exactly 1 and the bottom row exactly 0.
struct RankedSolution {
    int rank = 0;
    std::vector<int> locations;
    double mse = 0.0;
    double ratio = 0.0;
};

// Every cardinality-n_s subset, sorted by descending objective; ties broken
// by lexicographic location order.
inline std::vector<RankedSolution> exhaustive_search(const QuboProblem& qubo, int n_sensors,
                                                     int top_k = 0) {
    if (qubo.sense != Sense::Maximize)
        throw ContractViolation("exhaustive search expects the maximize-sense objective");
    const int n = qubo.n_vars;
    if (n_sensors < 1 || n_sensors > n) throw InvalidParameter("sensor count out of range");
    double count = 1.0;
    for (int i = 0; i < n_sensors; ++i) count = count * (n - i) / (i + 1);
    if (count > 1e7) throw ResourceLimit("subset count exceeds enumeration guard");

    std::vector<double> coupling(static_cast<std::size_t>(n) * n, 0.0);
    for (const auto& [pq, v] : qubo.quadratic) {
        coupling[pq.first * n + pq.second] = v;
        coupling[pq.second * n + pq.first] = v;
    }

    std::vector<RankedSolution> all;
    all.reserve(static_cast<std::size_t>(count));
    std::vector<int> comb(n_sensors);
    for (int i = 0; i < n_sensors; ++i) comb[i] = i;
    while (true) {
        double v = qubo.offset;
        for (int i = 0; i < n_sensors; ++i) {
            v += qubo.linear[comb[i]];
            for (int j = i + 1; j < n_sensors; ++j) v += coupling[comb[i] * n + comb[j]];
        }
        RankedSolution sol;
        sol.mse = v;
        sol.locations.resize(n_sensors);
        for (int i = 0; i < n_sensors; ++i) sol.locations[i] = comb[i] + 1;
        all.push_back(std::move(sol));

        int i = n_sensors - 1;
        while (i >= 0 && comb[i] == n - n_sensors + i) --i;
        if (i < 0) break;
        ++comb[i];
        for (int j = i + 1; j < n_sensors; ++j) comb[j] = comb[j - 1] + 1;
    }

    std::sort(all.begin(), all.end(), [](const RankedSolution& a, const RankedSolution& b) {
        if (a.mse != b.mse) return a.mse > b.mse;
        return a.locations < b.locations;
    });
    const double vmax = all.front().mse;
    const double vmin = all.back().mse;
    for (std::size_t i = 0; i < all.size(); ++i) {
        all[i].rank = static_cast<int>(i) + 1;
        all[i].ratio = (all[i].mse - vmin) / (vmax - vmin);
    }
    if (top_k > 0 && static_cast<std::size_t>(top_k) < all.size()) all.resize(top_k);
    return all;
}

struct LandscapeCell {
    double beta1 = 0.0;
    double gamma_p = 0.0;
    double avg_ratio = 0.0;
    double best_ratio = 0.0;
    double feasible_fraction = 0.0;
};

struct LandscapeResult {
    int grid_n = 0;
    int p = 0;
    Mixer mixer = Mixer::FullXY;
    std::vector<LandscapeCell> cells;  // row-major; rows sweep beta1

    const LandscapeCell& at(int row, int col) const { return cells[row * grid_n + col]; }
};

struct LandscapeOptions {
    int grid_n = 50;
    int p = 1;
    Mixer mixer = Mixer::FullXY;
    int shots = 1000;          // 0 = exact expectation
    double alpha = 0.0;        // 0 = default penalty weight (X mixer)
    std::uint64_t seed = 0;
    int threads = 1;
    InfeasibleScore infeasible = InfeasibleScore::Zero;
};

inline IsingCoefficients circuit_ising_for(const CaseStudy& cs, Mixer mixer, double alpha) {
    if (mixer == Mixer::FullXY) return qubo_to_ising(negate_to_minimize(cs.mse));
    const double a = alpha > 0.0 ? alpha : default_penalty_weight(cs.mse, cs.n_sensors);
    return qubo_to_ising(add_cardinality_penalty(cs.mse, cs.n_sensors, a));
}

// Grid scan over beta1 in [-pi, pi] and gamma_p in [-2pi, 2pi], both
// endpoints included. Cell seeds derive from (master, row, col), so
// parallel and serial runs emit identical tables.
inline LandscapeResult run_landscape_scan(const CaseStudy& cs, const LandscapeOptions& opt) {
    if (opt.grid_n < 2) throw InvalidParameter("grid must be at least 2x2");
    const ScoringContext scoring(cs.mse, cs.n_sensors, opt.infeasible);
    QaoaConfig config;
    config.p = opt.p;
    config.mixer = opt.mixer;
    config.shots = opt.shots;
    config.n_sensors = cs.n_sensors;
    config.alpha = opt.alpha;
    const QaoaCircuit circuit(circuit_ising_for(cs, opt.mixer, opt.alpha), config);

    const double pi = std::numbers::pi;
    LandscapeResult out;
    out.grid_n = opt.grid_n;
    out.p = opt.p;
    out.mixer = opt.mixer;
    out.cells.resize(static_cast<std::size_t>(opt.grid_n) * opt.grid_n);

    parallel_for(out.cells.size(), opt.threads, [&](std::size_t idx) {
        const int row = static_cast<int>(idx) / opt.grid_n;
        const int col = static_cast<int>(idx) % opt.grid_n;
        const double beta1 = -pi + 2.0 * pi * row / (opt.grid_n - 1);
        const double gamma_p = -2.0 * pi + 4.0 * pi * col / (opt.grid_n - 1);
        const StateVector state = circuit.run(beta1, gamma_p);
        const CostEstimate est =
            estimate_cost(state, scoring, opt.shots, derive_seed(opt.seed, row, col));
        out.cells[idx] = {beta1, gamma_p, est.avg_ratio, est.best_ratio, est.feasible_fraction};
    });
    return out;
}

struct OptimizationRun {
    int run_id = 0;
    Mixer mixer = Mixer::FullXY;
    int p = 1;
    std::uint64_t seed = 0;
    double beta1_init = 0.0, gammap_init = 0.0;
    double beta1_final = 0.0, gammap_final = 0.0;
    int evaluations = 0;
    double final_avg_ratio = 0.0;
    double best_sampled_ratio = 0.0;  // best single-sample ratio seen anywhere in the run
};

struct OptimizationExperiment {
    std::vector<OptimizationRun> runs;
    MultistartSummary summary;
};

struct OptimizeOptions {
    int p = 7;
    Mixer mixer = Mixer::FullXY;
    int restarts = 50;
    int budget = 150;
    int shots = 1000;
    double alpha = 0.0;
    std::uint64_t seed = 0;
    int threads = 1;
    InfeasibleScore infeasible = InfeasibleScore::Zero;
};

// Multistart protocol: restarts independent starts drawn uniformly from
// beta1 in [-pi, pi], gamma_p in [-2pi, 2pi]; the optimizer minimizes
// 1 - avg_ratio. Within one restart every objective call reuses the same
// sampling seed, so the optimizer sees a deterministic function.
inline OptimizationExperiment run_optimization_experiment(const CaseStudy& cs,
                                                          const OptimizeOptions& opt) {
    if (opt.restarts < 1) throw InvalidParameter("restart count must be >= 1");
    const ScoringContext scoring(cs.mse, cs.n_sensors, opt.infeasible);
    QaoaConfig config;
    config.p = opt.p;
    config.mixer = opt.mixer;
    config.shots = opt.shots;
    config.n_sensors = cs.n_sensors;
    config.alpha = opt.alpha;
    const QaoaCircuit circuit(circuit_ising_for(cs, opt.mixer, opt.alpha), config);

    const double pi = std::numbers::pi;
    const Bounds2 box{{-pi, -2.0 * pi}, {pi, 2.0 * pi}};

    std::vector<double> best_samples(opt.restarts, 0.0);
    auto make_objective = [&](int restart, std::uint64_t run_seed) {
        double* best = &best_samples[restart];
        return [&circuit, &scoring, shots = opt.shots, run_seed, best](double b, double g) {
            const StateVector state = circuit.run(b, g);
            const CostEstimate est = estimate_cost(state, scoring, shots, run_seed);
            *best = std::max(*best, est.best_ratio);
            return 1.0 - est.avg_ratio;
        };
    };
    const MultistartResult ms = multistart_optimize(make_objective, box, opt.restarts,
                                                    opt.budget, opt.seed, opt.threads);

    OptimizationExperiment exp;
    exp.summary = ms.summary;
    exp.runs.resize(opt.restarts);
    for (int r = 0; r < opt.restarts; ++r) {
        OptimizationRun& row = exp.runs[r];
        row.run_id = r + 1;
        row.mixer = opt.mixer;
        row.p = opt.p;
        row.seed = ms.seeds[r];
        row.beta1_init = ms.starts[r][0];
        row.gammap_init = ms.starts[r][1];
        row.beta1_final = ms.results[r].best_params[0];
        row.gammap_final = ms.results[r].best_params[1];
        row.evaluations = ms.results[r].evaluations;
        row.final_avg_ratio = 1.0 - ms.results[r].best_objective;
        row.best_sampled_ratio = best_samples[r];
    }
    return exp;
}

}  // namespace qosp
