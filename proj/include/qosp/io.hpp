#pragma once

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"

#include "qosp/cases.hpp"
#include "qosp/errors.hpp"
#include "qosp/experiment.hpp"

namespace qosp {

// All floating-point CSV fields carry 12 significant digits.
inline std::string format_real(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.12g", v);
    return buf;
}

inline void write_text_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot open output file", path);
    out << content;
    if (!out) throw IoError("write failed", path);
}

inline std::string locations_field(const std::vector<int>& locations) {
    std::string s;
    for (std::size_t i = 0; i < locations.size(); ++i) {
        if (i) s += '+';
        s += std::to_string(locations[i]);
    }
    return s;
}

inline std::string ranking_csv(const std::vector<RankedSolution>& ranking) {
    std::string s = "rank,ratio,mse,locations\n";
    for (const auto& r : ranking) {
        s += std::to_string(r.rank);
        s += ',';
        s += format_real(r.ratio);
        s += ',';
        s += format_real(r.mse);
        s += ',';
        s += locations_field(r.locations);
        s += '\n';
    }
    return s;
}

inline std::string landscape_csv(const LandscapeResult& grid) {
    std::string s = "beta1,gamma_p,p,mixer,avg_ratio,best_ratio,feasible_fraction\n";
    const std::string mixer = mixer_name(grid.mixer);
    for (const auto& c : grid.cells) {
        s += format_real(c.beta1);
        s += ',';
        s += format_real(c.gamma_p);
        s += ',';
        s += std::to_string(grid.p);
        s += ',';
        s += mixer;
        s += ',';
        s += format_real(c.avg_ratio);
        s += ',';
        s += format_real(c.best_ratio);
        s += ',';
        s += format_real(c.feasible_fraction);
        s += '\n';
    }
    return s;
}

inline std::string optimization_csv(const OptimizationExperiment& exp) {
    std::string s =
        "run_id,mixer,p,seed,beta1_init,gammap_init,beta1_final,gammap_final,"
        "evaluations,final_avg_ratio,best_sampled_ratio\n";
    for (const auto& r : exp.runs) {
        s += std::to_string(r.run_id);
        s += ',';
        s += mixer_name(r.mixer);
        s += ',';
        s += std::to_string(r.p);
        s += ',';
        s += std::to_string(r.seed);
        s += ',';
        s += format_real(r.beta1_init);
        s += ',';
        s += format_real(r.gammap_init);
        s += ',';
        s += format_real(r.beta1_final);
        s += ',';
        s += format_real(r.gammap_final);
        s += ',';
        s += std::to_string(r.evaluations);
        s += ',';
        s += format_real(r.final_avg_ratio);
        s += ',';
        s += format_real(r.best_sampled_ratio);
        s += '\n';
    }
    s += "# mean=" + format_real(exp.summary.mean_final_ratio) +
         ",std=" + format_real(exp.summary.std_final_ratio) + '\n';
    return s;
}

// Model document: stiffness row-major, mode shapes column-major, plus the
// full mass matrix alongside the diagonal (they differ for the truss).
inline std::string model_json(const CaseStudy& cs) {
    nlohmann::ordered_json doc;
    doc["n_dof"] = cs.model.n_dof;
    const int n = cs.model.n_dof;
    std::vector<double> stiffness, mass, shapes, mass_diag, freq;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            stiffness.push_back(cs.model.stiffness(i, j));
            mass.push_back(cs.model.mass(i, j));
        }
    for (int j = 0; j < n; ++j)
        for (int i = 0; i < n; ++i) shapes.push_back(cs.modal.mode_shapes(i, j));
    for (int i = 0; i < n; ++i) {
        mass_diag.push_back(cs.model.mass(i, i));
        freq.push_back(cs.modal.frequencies_sq(i));
    }
    doc["stiffness"] = stiffness;
    doc["mass_diagonal"] = mass_diag;
    doc["mass"] = mass;
    doc["frequencies_sq"] = freq;
    doc["mode_shapes"] = shapes;
    doc["dof_labels"] = cs.model.dof_labels;
    return doc.dump(2) + "\n";
}

// Coefficient dump for --dump-qubo: quadratic terms as [p, q, value]
// triples with 1-based indices.
inline std::string qubo_json(const QuboProblem& q) {
    nlohmann::ordered_json doc;
    doc["n_vars"] = q.n_vars;
    doc["sense"] = q.sense == Sense::Maximize ? "maximize" : "minimize";
    doc["offset"] = q.offset;
    doc["linear"] = q.linear;
    auto quad = nlohmann::ordered_json::array();
    for (const auto& [pq, v] : q.quadratic)
        quad.push_back({pq.first + 1, pq.second + 1, v});
    doc["quadratic"] = quad;
    return doc.dump(2) + "\n";
}

// ASCII greyscale heatmap of avg_ratio on a fixed [0,1] -> [0,255] scale;
// rows sweep beta1, columns sweep gamma_p.
inline std::string landscape_pgm(const LandscapeResult& grid) {
    std::string s = "P2\n" + std::to_string(grid.grid_n) + " " + std::to_string(grid.grid_n) +
                    "\n255\n";
    for (int row = 0; row < grid.grid_n; ++row) {
        for (int col = 0; col < grid.grid_n; ++col) {
            const double v = std::clamp(grid.at(row, col).avg_ratio, 0.0, 1.0);
            s += std::to_string(static_cast<int>(v * 255.0 + 0.5));
            s += col + 1 < grid.grid_n ? ' ' : '\n';
        }
    }
    return s;
}

}  // namespace qosp
