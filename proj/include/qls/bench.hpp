#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <map>
#include <mutex>
#include <ostream>
#include <sstream>
#include <string>
#include <tuple>
#include <vector>

#include <json.hpp>

#include "qls/errors.hpp"
#include "qls/graph.hpp"
#include "qls/local_search.hpp"
#include "qls/parallel.hpp"

namespace qls {

// Floats in CSV carry 12 significant digits.
inline std::string format_double(double value) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.12g", value);
    return buf;
}

// CSV cells stay comma-free: embedded commas become ';'.
inline std::string csv_sanitize(std::string cell) {
    std::replace(cell.begin(), cell.end(), ',', ';');
    std::replace(cell.begin(), cell.end(), '\n', ' ');
    return cell;
}

/// A graph input: either an edge-list file path or an inline planted-partition
/// spec "planted:n=500,p_in=0.1,p_out=0.01,seed=7".
struct GraphSource {
    std::string id;
    std::string path;       // empty for generated graphs
    bool generated = false;
    int n = 0;
    double p_in = 0.0;
    double p_out = 0.0;
    std::uint64_t seed = 0;

    static GraphSource from_string(const std::string& text) {
        GraphSource src;
        src.id = text;
        if (text.rfind("planted:", 0) != 0) {
            src.path = text;
            return src;
        }
        src.generated = true;
        std::stringstream fields(text.substr(8));
        std::string field;
        bool have_n = false, have_pin = false, have_pout = false;
        while (std::getline(fields, field, ',')) {
            const auto eq = field.find('=');
            if (eq == std::string::npos) throw ConfigInvalidError("bad generator field '" + field + "'");
            const std::string key = field.substr(0, eq);
            const std::string value = field.substr(eq + 1);
            try {
                if (key == "n") { src.n = std::stoi(value); have_n = true; }
                else if (key == "p_in") { src.p_in = std::stod(value); have_pin = true; }
                else if (key == "p_out") { src.p_out = std::stod(value); have_pout = true; }
                else if (key == "seed") src.seed = std::stoull(value);
                else throw ConfigInvalidError("unknown generator key '" + key + "'");
            } catch (const ConfigInvalidError&) {
                throw;
            } catch (const std::exception&) {
                throw ConfigInvalidError("bad generator value '" + field + "'");
            }
        }
        if (!have_n || !have_pin || !have_pout)
            throw ConfigInvalidError("generator spec needs n, p_in, p_out");
        return src;
    }

    Graph load() const {
        if (generated) return generate_planted_partition(n, p_in, p_out, seed);
        std::ifstream in(path);
        if (!in) throw GraphDataError("cannot open graph file '" + path + "'");
        return load_edge_list(in).graph;
    }
};

struct ExperimentSpec {
    std::vector<GraphSource> graphs;
    std::vector<std::string> solvers;
    std::vector<std::uint64_t> seeds;
    QlsConfig base;      // subset size, limits, solver options (name ignored)
    int workers = 0;     // 0 = thread budget
};

struct ResultRow {
    std::string graph;
    int n = 0;
    long long m = 0;
    std::string solver;
    std::uint64_t seed = 0;
    double modularity = 0.0;
    int iterations = 0;
    int accepted_moves = 0;
    double wall_time_s = 0.0;
    std::string converged_reason;
    std::string status = "ok";
};

inline const char* result_row_header() {
    return "graph,n,m,solver,seed,modularity,iterations,accepted_moves,wall_time_s,converged_reason,status";
}

inline std::string to_csv(const ResultRow& r) {
    std::ostringstream out;
    out << csv_sanitize(r.graph) << ',' << r.n << ',' << r.m << ',' << csv_sanitize(r.solver) << ',' << r.seed << ','
        << format_double(r.modularity) << ',' << r.iterations << ',' << r.accepted_moves << ','
        << format_double(r.wall_time_s) << ',' << r.converged_reason << ',' << csv_sanitize(r.status);
    return out.str();
}

inline ResultRow result_row_from_csv(const std::string& line) {
    std::vector<std::string> cells;
    std::stringstream fields(line);
    std::string cell;
    while (std::getline(fields, cell, ',')) cells.push_back(cell);
    if (cells.size() != 11) throw Error("bad result row: " + line);
    ResultRow r;
    r.graph = cells[0];
    r.n = std::stoi(cells[1]);
    r.m = std::stoll(cells[2]);
    r.solver = cells[3];
    r.seed = std::stoull(cells[4]);
    r.modularity = std::stod(cells[5]);
    r.iterations = std::stoi(cells[6]);
    r.accepted_moves = std::stoi(cells[7]);
    r.wall_time_s = std::stod(cells[8]);
    r.converged_reason = cells[9];
    r.status = cells[10];
    return r;
}

inline nlohmann::json run_record_to_json(const RunRecord& record, const QlsConfig& cfg,
                                         const std::string& graph_id, const Graph& g) {
    nlohmann::json j;
    j["graph"] = {{"id", graph_id}, {"n", g.vertex_count()}, {"m", g.edge_count()}};
    j["config"] = {{"subset_size", cfg.subset_size},
                   {"no_improve_limit", cfg.no_improve_limit},
                   {"max_iterations", cfg.max_iterations},
                   {"solver", cfg.solver_name},
                   {"shots", cfg.solver.shots},
                   {"depth", cfg.solver.depth},
                   {"opt_budget", cfg.solver.opt_budget}};
    j["seed"] = record.seed;
    j["modularity_trajectory"] = record.modularity_trajectory;
    std::vector<bool> accepted(record.accepted.begin(), record.accepted.end());
    j["accepted"] = accepted;
    j["subsets"] = record.subsets;
    j["final_assignment"] = record.final_assignment.spins;
    j["final_modularity"] = record.final_modularity;
    j["iterations"] = record.iterations;
    j["accepted_moves"] = record.accepted_moves;
    j["effective_subset_size"] = record.effective_subset_size;
    j["converged_reason"] = record.converged_reason;
    j["total_evaluations"] = record.total_evaluations;
    j["wall_time_s"] = record.wall_time_s;
    return j;
}

struct BenchOutcome {
    std::vector<ResultRow> rows;  // graph-major, then solver, then seed
    bool any_failed = false;
};

/// Runs the (graphs x solvers x seeds) cross product. Row order is fixed by
/// the spec regardless of the worker count; per-run failures become rows with
/// an error status instead of aborting the batch.
inline BenchOutcome run_bench(const ExperimentSpec& spec) {
    if (spec.graphs.empty() || spec.solvers.empty() || spec.seeds.empty())
        throw ConfigInvalidError("bench needs at least one graph, solver, and seed");

    struct Task {
        std::size_t graph_index;
        std::string solver;
        std::uint64_t seed;
    };
    std::vector<Task> tasks;
    for (std::size_t gi = 0; gi < spec.graphs.size(); ++gi)
        for (const auto& solver : spec.solvers)
            for (std::uint64_t seed : spec.seeds) tasks.push_back({gi, solver, seed});

    // Graphs are immutable once built; load each once up front.
    std::vector<Graph> graphs;
    std::vector<std::string> graph_errors(spec.graphs.size());
    graphs.reserve(spec.graphs.size());
    for (const auto& src : spec.graphs) {
        try {
            graphs.push_back(src.load());
        } catch (const Error& e) {
            graphs.push_back(Graph());
            graph_errors[graphs.size() - 1] = e.what();
        }
    }

    BenchOutcome outcome;
    outcome.rows.resize(tasks.size());
    int workers = spec.workers > 0 ? spec.workers : thread_budget();
    workers = std::min<int>(workers, static_cast<int>(tasks.size()));
    // With several runs in flight, keep each run's solver single-threaded.
    const int solver_threads = workers > 1 ? 1 : 0;

    std::mutex failed_mutex;
    parallel_chunks(static_cast<int>(tasks.size()), workers, [&](int ti) {
        const Task& task = tasks[static_cast<std::size_t>(ti)];
        const GraphSource& src = spec.graphs[task.graph_index];
        ResultRow row;
        row.graph = src.id;
        row.solver = task.solver;
        row.seed = task.seed;
        try {
            if (!graph_errors[task.graph_index].empty()) throw GraphDataError(graph_errors[task.graph_index]);
            const Graph& g = graphs[task.graph_index];
            row.n = g.vertex_count();
            row.m = g.edge_count();
            QlsConfig cfg = spec.base;
            cfg.solver_name = task.solver;
            cfg.seed = task.seed;
            cfg.solver.threads = solver_threads;
            const RunRecord record = run_qls(g, cfg);
            row.modularity = record.final_modularity;
            row.iterations = record.iterations;
            row.accepted_moves = record.accepted_moves;
            row.wall_time_s = record.wall_time_s;
            row.converged_reason = record.converged_reason;
        } catch (const Error& e) {
            row.status = std::string("error: ") + e.what();
            row.modularity = std::nan("");
            std::lock_guard<std::mutex> lock(failed_mutex);
            outcome.any_failed = true;
        }
        outcome.rows[static_cast<std::size_t>(ti)] = std::move(row);
    });
    return outcome;
}

inline void write_bench_csv(std::ostream& out, const std::vector<ResultRow>& rows) {
    out << result_row_header() << "\n";
    for (const auto& row : rows) out << to_csv(row) << "\n";
}

// Per (graph, solver): min/median/max of modularity and iterations.
inline void write_bench_summary(std::ostream& out, const std::vector<ResultRow>& rows) {
    struct Key {
        std::string graph, solver;
        bool operator<(const Key& o) const { return std::tie(graph, solver) < std::tie(o.graph, o.solver); }
    };
    std::map<Key, std::vector<const ResultRow*>> groups;
    for (const auto& row : rows) groups[{row.graph, row.solver}].push_back(&row);
    auto median = [](std::vector<double> v) {
        std::sort(v.begin(), v.end());
        const std::size_t k = v.size();
        return k % 2 ? v[k / 2] : 0.5 * (v[k / 2 - 1] + v[k / 2]);
    };
    for (auto& [key, group] : groups) {
        std::vector<double> mods, iters;
        std::size_t failed = 0;
        for (const auto* row : group) {
            if (row->status != "ok") {
                ++failed;
                continue;
            }
            mods.push_back(row->modularity);
            iters.push_back(row->iterations);
        }
        out << key.graph << " / " << key.solver << ": ";
        if (mods.empty()) {
            out << "no successful runs";
        } else {
            out << "modularity min/med/max " << format_double(*std::min_element(mods.begin(), mods.end())) << "/"
                << format_double(median(mods)) << "/" << format_double(*std::max_element(mods.begin(), mods.end()))
                << ", iterations min/med/max " << *std::min_element(iters.begin(), iters.end()) << "/"
                << median(iters) << "/" << *std::max_element(iters.begin(), iters.end());
        }
        if (failed) out << " (" << failed << " failed)";
        out << "\n";
    }
}

struct SweepSpec {
    GraphSource graph;
    std::vector<int> subset_sizes;
    std::vector<std::uint64_t> seeds;
    QlsConfig base;
    int workers = 0;
};

struct SweepRow {
    int subset_size = 0;
    int effective_subset_size = 0;
    std::uint64_t seed = 0;
    int iterations = 0;
    double final_modularity = 0.0;
    std::string status = "ok";
};

inline const char* sweep_row_header() {
    return "subset_size,effective_subset_size,seed,iterations,final_modularity,status";
}

inline std::string to_csv(const SweepRow& r) {
    std::ostringstream out;
    out << r.subset_size << ',' << r.effective_subset_size << ',' << r.seed << ',' << r.iterations << ','
        << format_double(r.final_modularity) << ',' << csv_sanitize(r.status);
    return out.str();
}

struct SweepOutcome {
    std::vector<SweepRow> rows;
    bool any_failed = false;
};

/// Convergence-speed ladder: same graph and solver across subset sizes.
inline SweepOutcome run_sweep(const SweepSpec& spec) {
    if (spec.subset_sizes.empty() || spec.seeds.empty())
        throw ConfigInvalidError("sweep needs at least one subset size and seed");
    const Graph g = spec.graph.load();

    struct Task {
        int subset_size;
        std::uint64_t seed;
    };
    std::vector<Task> tasks;
    for (int size : spec.subset_sizes)
        for (std::uint64_t seed : spec.seeds) tasks.push_back({size, seed});

    SweepOutcome outcome;
    outcome.rows.resize(tasks.size());
    int workers = spec.workers > 0 ? spec.workers : thread_budget();
    workers = std::min<int>(workers, static_cast<int>(tasks.size()));
    const int solver_threads = workers > 1 ? 1 : 0;

    std::mutex failed_mutex;
    parallel_chunks(static_cast<int>(tasks.size()), workers, [&](int ti) {
        const Task& task = tasks[static_cast<std::size_t>(ti)];
        SweepRow row;
        row.subset_size = task.subset_size;
        row.seed = task.seed;
        try {
            QlsConfig cfg = spec.base;
            cfg.subset_size = task.subset_size;
            cfg.seed = task.seed;
            cfg.solver.threads = solver_threads;
            const RunRecord record = run_qls(g, cfg);
            row.effective_subset_size = record.effective_subset_size;
            row.iterations = record.iterations;
            row.final_modularity = record.final_modularity;
        } catch (const Error& e) {
            row.status = std::string("error: ") + e.what();
            std::lock_guard<std::mutex> lock(failed_mutex);
            outcome.any_failed = true;
        }
        outcome.rows[static_cast<std::size_t>(ti)] = std::move(row);
    });
    return outcome;
}

inline void write_sweep_csv(std::ostream& out, const std::vector<SweepRow>& rows) {
    out << sweep_row_header() << "\n";
    for (const auto& row : rows) out << to_csv(row) << "\n";
}

inline void write_sweep_summary(std::ostream& out, const std::vector<SweepRow>& rows) {
    std::map<int, std::vector<double>> iterations_by_size;
    for (const auto& row : rows)
        if (row.status == "ok") iterations_by_size[row.subset_size].push_back(row.iterations);
    for (auto& [size, iters] : iterations_by_size) {
        std::sort(iters.begin(), iters.end());
        const std::size_t k = iters.size();
        const double med = k % 2 ? iters[k / 2] : 0.5 * (iters[k / 2 - 1] + iters[k / 2]);
        out << "subset_size " << size << ": median iterations " << format_double(med) << " over " << k << " runs\n";
    }
}

}  // namespace qls
