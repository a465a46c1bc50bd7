// Command-line front end: single runs (JSON), benchmark batteries and
// subset-size sweeps (CSV), and planted-partition graph generation.

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "qls/qls.hpp"

namespace {

constexpr int kExitBadFlags = 2;
constexpr int kExitDataError = 3;
constexpr int kExitSolverError = 4;

int classify(const qls::Error& e) {
    if (dynamic_cast<const qls::ConfigError*>(&e)) return kExitBadFlags;
    if (dynamic_cast<const qls::GraphDataError*>(&e)) return kExitDataError;
    if (dynamic_cast<const qls::SolverError*>(&e)) return kExitSolverError;
    return 1;
}

std::vector<std::uint64_t> expand_seeds(int seed_count, const std::string& seed_list) {
    std::vector<std::uint64_t> seeds;
    if (!seed_list.empty()) {
        std::stringstream fields(seed_list);
        std::string field;
        while (std::getline(fields, field, ',')) {
            if (field.empty()) continue;
            seeds.push_back(std::stoull(field));
        }
    } else {
        for (int i = 0; i < seed_count; ++i) seeds.push_back(static_cast<std::uint64_t>(i));
    }
    if (seeds.empty()) throw qls::ConfigInvalidError("no seeds given");
    return seeds;
}

std::ostream& open_output(std::ofstream& file, const std::string& path) {
    if (path.empty()) return std::cout;
    file.open(path);
    if (!file) throw qls::GraphDataError("cannot open output file '" + path + "'");
    return file;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Quantum-local-search community detection (2 communities, pluggable Ising solvers)"};
    app.require_subcommand(1);

    const std::string solver_help = "subproblem solver (" + qls::solver_names_joined() + ")";
    auto solver_validator = CLI::IsMember(qls::solver_names());

    // --- run ---
    auto* run = app.add_subcommand("run", "one seeded local-search run, RunRecord as JSON");
    std::string run_graph, run_solver, run_out;
    qls::QlsConfig run_cfg;
    run->add_option("--graph", run_graph, "edge-list path or planted:n=..,p_in=..,p_out=..[,seed=..]")->required();
    run->add_option("--solver", run_solver, solver_help)->required()->check(solver_validator);
    run->add_option("--seed", run_cfg.seed, "run seed")->required();
    run->add_option("--subset-size", run_cfg.subset_size, "subproblem size")->capture_default_str();
    run->add_option("--no-improve-limit", run_cfg.no_improve_limit, "stalled iterations before stopping")
        ->capture_default_str();
    run->add_option("--max-iterations", run_cfg.max_iterations, "safety cap")->capture_default_str();
    run->add_option("--shots", run_cfg.solver.shots, "annealer samples / variational measurements")
        ->capture_default_str();
    run->add_option("--opt-budget", run_cfg.solver.opt_budget, "variational objective evaluations")
        ->capture_default_str();
    run->add_option("--depth", run_cfg.solver.depth, "variational ansatz depth")->capture_default_str();
    run->add_option("--out", run_out, "output path (default stdout)");

    // --- bench ---
    auto* bench = app.add_subcommand("bench", "graphs x solvers x seeds battery, CSV rows");
    std::vector<std::string> bench_graphs, bench_solvers;
    int bench_seed_count = 30;
    std::string bench_seed_list, bench_out;
    qls::ExperimentSpec bench_spec;
    bench->add_option("--graph", bench_graphs, "edge-list path or planted spec (repeatable)")->required();
    bench->add_option("--solver", bench_solvers, solver_help + " (repeatable)")
        ->required()
        ->check(solver_validator);
    bench->add_option("--seeds", bench_seed_count, "use seeds 0..N-1")->capture_default_str();
    bench->add_option("--seed-list", bench_seed_list, "explicit comma-separated seeds (overrides --seeds)");
    bench->add_option("--subset-size", bench_spec.base.subset_size, "subproblem size")->capture_default_str();
    bench->add_option("--no-improve-limit", bench_spec.base.no_improve_limit, "stalled iterations before stopping")
        ->capture_default_str();
    bench->add_option("--max-iterations", bench_spec.base.max_iterations, "safety cap")->capture_default_str();
    bench->add_option("--shots", bench_spec.base.solver.shots, "annealer samples / variational measurements")
        ->capture_default_str();
    bench->add_option("--opt-budget", bench_spec.base.solver.opt_budget, "variational objective evaluations")
        ->capture_default_str();
    bench->add_option("--depth", bench_spec.base.solver.depth, "variational ansatz depth")->capture_default_str();
    bench->add_option("--out", bench_out, "CSV path (default stdout)");

    // --- sweep ---
    auto* sweep = app.add_subcommand("sweep", "subset-size ladder on a planted graph, CSV rows");
    int sweep_n = 0;
    double sweep_p_in = 0.0, sweep_p_out = 0.0;
    std::uint64_t sweep_graph_seed = 0;
    std::string sweep_sizes_text = "4,8,16,32", sweep_solver = "exact", sweep_seed_list, sweep_out;
    int sweep_seed_count = 10;
    qls::SweepSpec sweep_spec;
    sweep->add_option("--n", sweep_n, "vertex count (even)")->required();
    sweep->add_option("--p-in", sweep_p_in, "within-block edge probability")->required();
    sweep->add_option("--p-out", sweep_p_out, "cross-block edge probability")->required();
    sweep->add_option("--graph-seed", sweep_graph_seed, "generator seed")->capture_default_str();
    sweep->add_option("--subset-sizes", sweep_sizes_text, "comma-separated subset sizes")->capture_default_str();
    sweep->add_option("--seeds", sweep_seed_count, "use run seeds 0..K-1")->capture_default_str();
    sweep->add_option("--seed-list", sweep_seed_list, "explicit comma-separated run seeds");
    sweep->add_option("--solver", sweep_solver, solver_help)->check(solver_validator)->capture_default_str();
    sweep->add_option("--no-improve-limit", sweep_spec.base.no_improve_limit, "stalled iterations before stopping")
        ->capture_default_str();
    sweep->add_option("--max-iterations", sweep_spec.base.max_iterations, "safety cap")->capture_default_str();
    sweep->add_option("--shots", sweep_spec.base.solver.shots, "annealer samples / variational measurements")
        ->capture_default_str();
    sweep->add_option("--opt-budget", sweep_spec.base.solver.opt_budget, "variational objective evaluations")
        ->capture_default_str();
    sweep->add_option("--depth", sweep_spec.base.solver.depth, "variational ansatz depth")->capture_default_str();
    sweep->add_option("--out", sweep_out, "CSV path (default stdout)");

    // --- generate ---
    auto* generate = app.add_subcommand("generate", "write a planted-partition edge list");
    int gen_n = 0;
    double gen_p_in = 0.0, gen_p_out = 0.0;
    std::uint64_t gen_seed = 0;
    std::string gen_out;
    generate->add_option("--n", gen_n, "vertex count (even)")->required();
    generate->add_option("--p-in", gen_p_in, "within-block edge probability")->required();
    generate->add_option("--p-out", gen_p_out, "cross-block edge probability")->required();
    generate->add_option("--seed", gen_seed, "generator seed")->required();
    generate->add_option("--out", gen_out, "output path")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e);  // --help
        app.exit(e);
        return kExitBadFlags;
    }

    try {
        if (run->parsed()) {
            const qls::GraphSource source = qls::GraphSource::from_string(run_graph);
            const qls::Graph g = source.load();
            run_cfg.solver_name = run_solver;
            const qls::RunRecord record = qls::run_qls(g, run_cfg);
            std::ofstream file;
            std::ostream& out = open_output(file, run_out);
            out << qls::run_record_to_json(record, run_cfg, source.id, g).dump(2) << "\n";
            return 0;
        }

        if (bench->parsed()) {
            for (const auto& text : bench_graphs) bench_spec.graphs.push_back(qls::GraphSource::from_string(text));
            bench_spec.solvers = bench_solvers;
            bench_spec.seeds = expand_seeds(bench_seed_count, bench_seed_list);
            const qls::BenchOutcome outcome = qls::run_bench(bench_spec);
            std::ofstream file;
            std::ostream& out = open_output(file, bench_out);
            qls::write_bench_csv(out, outcome.rows);
            qls::write_bench_summary(std::cerr, outcome.rows);
            return outcome.any_failed ? 1 : 0;
        }

        if (sweep->parsed()) {
            std::stringstream sizes(sweep_sizes_text);
            std::string field;
            while (std::getline(sizes, field, ','))
                if (!field.empty()) sweep_spec.subset_sizes.push_back(std::stoi(field));
            std::ostringstream spec_text;
            spec_text << "planted:n=" << sweep_n << ",p_in=" << sweep_p_in << ",p_out=" << sweep_p_out
                      << ",seed=" << sweep_graph_seed;
            sweep_spec.graph = qls::GraphSource::from_string(spec_text.str());
            sweep_spec.seeds = expand_seeds(sweep_seed_count, sweep_seed_list);
            sweep_spec.base.solver_name = sweep_solver;
            const qls::SweepOutcome outcome = qls::run_sweep(sweep_spec);
            std::ofstream file;
            std::ostream& out = open_output(file, sweep_out);
            qls::write_sweep_csv(out, outcome.rows);
            qls::write_sweep_summary(std::cerr, outcome.rows);
            return outcome.any_failed ? 1 : 0;
        }

        if (generate->parsed()) {
            const qls::Graph g = qls::generate_planted_partition(gen_n, gen_p_in, gen_p_out, gen_seed);
            std::ofstream file(gen_out);
            if (!file) throw qls::GraphDataError("cannot open output file '" + gen_out + "'");
            std::ostringstream header;
            header << "planted-partition n=" << gen_n << " p_in=" << gen_p_in << " p_out=" << gen_p_out
                   << " seed=" << gen_seed;
            qls::save_edge_list(file, g, header.str());
            return 0;
        }
    } catch (const qls::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return classify(e);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
