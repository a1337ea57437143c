#include <cstdint>
#include <iostream>
#include <string>

#include "CLI11.hpp"

#include "qosp/io.hpp"
#include "qosp/qaoa.hpp"

namespace {

qosp::Mixer parse_mixer(const std::string& s) {
    if (s == "x") return qosp::Mixer::StandardX;
    if (s == "xy") return qosp::Mixer::FullXY;
    throw qosp::InvalidParameter("mixer must be 'x' or 'xy'");
}

qosp::InfeasibleScore parse_infeasible(const std::string& s) {
    if (s == "zero") return qosp::InfeasibleScore::Zero;
    if (s == "raw") return qosp::InfeasibleScore::Raw;
    throw qosp::InvalidParameter("infeasible score must be 'zero' or 'raw'");
}

void maybe_dump_qubo(const qosp::CaseStudy& cs, const std::string& path) {
    if (!path.empty()) qosp::write_text_file(path, qosp::qubo_json(cs.mse));
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Sensor-placement QAOA experiments on the built-in case studies"};
    app.require_subcommand(1);

    std::string case_name = "shear16";
    std::string mixer = "xy";
    std::string infeasible = "zero";
    std::string out_path, pgm_path, dump_qubo_path;
    int sensors = 4, top = 10, p = 1, grid = 50, shots = 1000, restarts = 50, budget = 150;
    int threads = qosp::default_thread_count();
    double alpha = 0.0;
    std::uint64_t seed = 0;
    bool exact = false;

    auto add_case = [&](CLI::App* cmd) {
        cmd->add_option("--case", case_name, "shear16 or truss19")
            ->check(CLI::IsMember({"shear16", "truss19"}));
    };

    CLI::App* model = app.add_subcommand("model", "emit the structural model and modal data");
    add_case(model);
    model->add_option("--out", out_path, "output JSON path")->required();

    CLI::App* exhaustive =
        app.add_subcommand("exhaustive", "rank all sensor subsets by modal strain energy");
    add_case(exhaustive);
    exhaustive->add_option("--sensors", sensors, "sensors to place");
    exhaustive->add_option("--top", top, "rows to keep (0 = full ranking)");
    exhaustive->add_option("--out", out_path, "output CSV path")->required();
    exhaustive->add_option("--dump-qubo", dump_qubo_path, "also dump objective coefficients");

    CLI::App* landscape = app.add_subcommand("landscape", "grid scan over (beta1, gamma_p)");
    add_case(landscape);
    landscape->add_option("--mixer", mixer)->check(CLI::IsMember({"x", "xy"}));
    landscape->add_option("--p", p, "circuit repetitions");
    landscape->add_option("--grid", grid, "points per axis");
    landscape->add_option("--shots", shots, "measurements per cell");
    landscape->add_option("--alpha", alpha, "penalty weight (x mixer; 0 = auto)");
    landscape->add_option("--seed", seed);
    landscape->add_option("--sensors", sensors);
    landscape->add_option("--threads", threads);
    landscape->add_flag("--exact", exact, "exact expectations instead of sampling");
    landscape->add_option("--out", out_path, "output CSV path")->required();
    landscape->add_option("--pgm", pgm_path, "optional heatmap of avg_ratio");
    landscape->add_option("--dump-qubo", dump_qubo_path);

    CLI::App* optimize = app.add_subcommand("optimize", "multistart derivative-free runs");
    add_case(optimize);
    optimize->add_option("--mixer", mixer)->check(CLI::IsMember({"x", "xy"}));
    optimize->add_option("--p", p, "circuit repetitions");
    optimize->add_option("--restarts", restarts);
    optimize->add_option("--budget", budget, "objective evaluations per restart");
    optimize->add_option("--shots", shots);
    optimize->add_option("--alpha", alpha, "penalty weight (x mixer; 0 = auto)");
    optimize->add_option("--seed", seed);
    optimize->add_option("--sensors", sensors);
    optimize->add_option("--threads", threads);
    optimize->add_option("--infeasible-score", infeasible)
        ->check(CLI::IsMember({"zero", "raw"}));
    optimize->add_option("--out", out_path, "output CSV path")->required();
    optimize->add_option("--dump-qubo", dump_qubo_path);

    CLI::App* gates = app.add_subcommand("gates", "elementary gate count for the cost circuit");
    add_case(gates);
    gates->add_option("--mixer", mixer)->check(CLI::IsMember({"x", "xy"}));
    gates->add_option("--p", p, "circuit repetitions");
    gates->add_option("--sensors", sensors);
    gates->add_option("--alpha", alpha);

    CLI11_PARSE(app, argc, argv);

    try {
        const qosp::CaseStudy cs = qosp::make_case(case_name, sensors);

        if (model->parsed()) {
            qosp::write_text_file(out_path, qosp::model_json(cs));
        } else if (exhaustive->parsed()) {
            maybe_dump_qubo(cs, dump_qubo_path);
            const auto ranking = qosp::exhaustive_search(cs.mse, sensors, top);
            qosp::write_text_file(out_path, qosp::ranking_csv(ranking));
        } else if (landscape->parsed()) {
            maybe_dump_qubo(cs, dump_qubo_path);
            qosp::LandscapeOptions opt;
            opt.grid_n = grid;
            opt.p = p;
            opt.mixer = parse_mixer(mixer);
            opt.shots = exact ? 0 : shots;
            opt.alpha = alpha;
            opt.seed = seed;
            opt.threads = threads;
            const auto result = qosp::run_landscape_scan(cs, opt);
            qosp::write_text_file(out_path, qosp::landscape_csv(result));
            if (!pgm_path.empty()) qosp::write_text_file(pgm_path, qosp::landscape_pgm(result));
        } else if (optimize->parsed()) {
            maybe_dump_qubo(cs, dump_qubo_path);
            qosp::OptimizeOptions opt;
            opt.p = p;
            opt.mixer = parse_mixer(mixer);
            opt.restarts = restarts;
            opt.budget = budget;
            opt.shots = shots;
            opt.alpha = alpha;
            opt.seed = seed;
            opt.threads = threads;
            opt.infeasible = parse_infeasible(infeasible);
            const auto result = qosp::run_optimization_experiment(cs, opt);
            qosp::write_text_file(out_path, qosp::optimization_csv(result));
            std::cout << "mean=" << qosp::format_real(result.summary.mean_final_ratio)
                      << " std=" << qosp::format_real(result.summary.std_final_ratio) << "\n";
        } else if (gates->parsed()) {
            const auto ising = qosp::circuit_ising_for(cs, parse_mixer(mixer), alpha);
            const auto report = qosp::gate_count(ising, p);
            std::cout << "n_vars=" << report.n_vars << " p=" << report.layers
                      << " quadratic_terms=" << report.quadratic_terms
                      << " per_layer_gates=" << report.per_layer_gates
                      << " per_layer_bound=" << report.per_layer_bound
                      << " total_gates=" << report.total_gates << "\n";
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
