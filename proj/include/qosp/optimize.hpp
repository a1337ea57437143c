#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <string>
#include <utility>
#include <vector>

#include "qosp/errors.hpp"
#include "qosp/parallel.hpp"
#include "qosp/rng.hpp"

namespace qosp {

using Point2 = std::array<double, 2>;

struct Bounds2 {
    Point2 lo{};
    Point2 hi{};

    Point2 clip(Point2 x) const {
        for (int d = 0; d < 2; ++d) x[d] = std::clamp(x[d], lo[d], hi[d]);
        return x;
    }
};

struct OptimizeResult {
    Point2 best_params{};
    double best_objective = 0.0;
    int evaluations = 0;
    std::vector<std::pair<Point2, double>> trace;  // every evaluated point, in order
};

// Derivative-free 2-D minimization: Nelder-Mead simplex using function
// values only. Points are clipped to the bounds before evaluation; stops
// when the evaluation budget is exhausted or the simplex extent falls below
// 1e-4. Deterministic for a deterministic objective.
inline OptimizeResult minimize_derivative_free(
    const std::function<double(double, double)>& objective, Point2 start, Bounds2 bounds,
    int budget) {
    if (budget < 3) throw InvalidParameter("evaluation budget must be >= 3");
    for (int d = 0; d < 2; ++d)
        if (!(bounds.lo[d] < bounds.hi[d])) throw InvalidParameter("empty bounds box");

    constexpr double kInitialStep = 0.5;  // rad
    constexpr double kMinExtent = 1e-4;
    constexpr double kReflect = 1.0, kExpand = 2.0, kContract = 0.5, kShrink = 0.5;

    OptimizeResult res;
    auto eval = [&](Point2 x) -> double {
        x = bounds.clip(x);
        const double f = objective(x[0], x[1]);
        if (!std::isfinite(f))
            throw NumericalFailure("objective returned non-finite value at (" +
                                   std::to_string(x[0]) + ", " + std::to_string(x[1]) + ")");
        res.trace.emplace_back(x, f);
        return f;
    };

    struct Vertex {
        Point2 x;
        double f;
    };
    std::array<Vertex, 3> simplex;
    simplex[0].x = bounds.clip(start);
    for (int d = 0; d < 2; ++d) {
        Point2 x = simplex[0].x;
        x[d] += (x[d] + kInitialStep <= bounds.hi[d]) ? kInitialStep : -kInitialStep;
        simplex[d + 1].x = x;
    }
    for (auto& v : simplex) {
        if (res.trace.size() >= static_cast<std::size_t>(budget)) break;
        v.f = eval(v.x);
    }

    auto order = [&] {
        std::sort(simplex.begin(), simplex.end(),
                  [](const Vertex& a, const Vertex& b) { return a.f < b.f; });
    };
    auto extent = [&] {
        double e = 0.0;
        for (int i = 1; i < 3; ++i)
            for (int d = 0; d < 2; ++d)
                e = std::max(e, std::abs(simplex[i].x[d] - simplex[0].x[d]));
        return e;
    };

    order();
    while (res.trace.size() < static_cast<std::size_t>(budget) && extent() >= kMinExtent) {
        const Point2 centroid{(simplex[0].x[0] + simplex[1].x[0]) / 2.0,
                              (simplex[0].x[1] + simplex[1].x[1]) / 2.0};
        auto along = [&](double t) {
            return Point2{centroid[0] + t * (simplex[2].x[0] - centroid[0]),
                          centroid[1] + t * (simplex[2].x[1] - centroid[1])};
        };

        const double fr = eval(along(-kReflect));
        const Point2 xr = res.trace.back().first;
        if (fr < simplex[0].f) {
            if (res.trace.size() < static_cast<std::size_t>(budget)) {
                const double fe = eval(along(-kExpand));
                const Point2 xe = res.trace.back().first;
                simplex[2] = fe < fr ? Vertex{xe, fe} : Vertex{xr, fr};
            } else {
                simplex[2] = {xr, fr};
            }
        } else if (fr < simplex[1].f) {
            simplex[2] = {xr, fr};
        } else {
            const bool outside = fr < simplex[2].f;
            if (res.trace.size() >= static_cast<std::size_t>(budget)) break;
            const double fc = eval(along(outside ? -kContract : kContract));
            const Point2 xc = res.trace.back().first;
            if (fc < (outside ? fr : simplex[2].f)) {
                simplex[2] = {xc, fc};
            } else {
                for (int i = 1; i < 3; ++i) {  // shrink toward the best vertex
                    if (res.trace.size() >= static_cast<std::size_t>(budget)) break;
                    for (int d = 0; d < 2; ++d)
                        simplex[i].x[d] =
                            simplex[0].x[d] + kShrink * (simplex[i].x[d] - simplex[0].x[d]);
                    simplex[i].f = eval(simplex[i].x);
                }
            }
        }
        order();
    }

    res.evaluations = static_cast<int>(res.trace.size());
    res.best_objective = std::numeric_limits<double>::infinity();
    for (const auto& [x, f] : res.trace) {
        if (f < res.best_objective) {
            res.best_objective = f;
            res.best_params = x;
        }
    }
    return res;
}

struct MultistartSummary {
    double mean_final_ratio = 0.0;
    double std_final_ratio = 0.0;  // population standard deviation
};

struct MultistartResult {
    std::vector<Point2> starts;
    std::vector<std::uint64_t> seeds;
    std::vector<OptimizeResult> results;
    MultistartSummary summary;
};

// Independent restarts from uniform starts in `box`, each with a seed
// derived from the master seed. The objective factory receives the restart
// index and its seed; objectives are expected to be of the form
// 1 - avg_ratio, which is what the summary statistics invert.
inline MultistartResult multistart_optimize(
    const std::function<std::function<double(double, double)>(int, std::uint64_t)>&
        make_objective,
    const Bounds2& box, int restarts, int budget, std::uint64_t master_seed, int threads) {
    if (restarts < 1) throw InvalidParameter("restart count must be >= 1");
    MultistartResult out;
    out.starts.resize(restarts);
    out.seeds.resize(restarts);
    out.results.resize(restarts);
    parallel_for(static_cast<std::size_t>(restarts), threads, [&](std::size_t r) {
        const std::uint64_t seed = derive_seed(master_seed, r);
        std::mt19937_64 gen(seed);
        const Point2 start{uniform_in(gen, box.lo[0], box.hi[0]),
                           uniform_in(gen, box.lo[1], box.hi[1])};
        out.starts[r] = start;
        out.seeds[r] = seed;
        out.results[r] = minimize_derivative_free(
            make_objective(static_cast<int>(r), seed), start, box, budget);
    });

    double mean = 0.0;
    for (const auto& res : out.results) mean += 1.0 - res.best_objective;
    mean /= restarts;
    double var = 0.0;
    for (const auto& res : out.results) {
        const double d = (1.0 - res.best_objective) - mean;
        var += d * d;
    }
    out.summary.mean_final_ratio = mean;
    out.summary.std_final_ratio = std::sqrt(var / restarts);
    return out;
}

}  // namespace qosp
