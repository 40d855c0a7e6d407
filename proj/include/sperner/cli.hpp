#pragma once

#include <fstream>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "sperner/census.hpp"
#include "sperner/cycle_basis.hpp"
#include "sperner/generators.hpp"
#include "sperner/io.hpp"
#include "sperner/oracle.hpp"
#include "sperner/sweep.hpp"

// Command-line front end. Exit codes: 0 success or match, 1 semantic failure
// (mismatch, graph outside the class, audit collisions), 2 usage, I/O or
// parse failure.

namespace sperner::cli {

inline constexpr int kOk = 0;
inline constexpr int kSemantic = 1;
inline constexpr int kInput = 2;

namespace detail {

inline std::string join_edges(const MetricDigraph& g, const std::vector<EdgeIndex>& edges) {
    std::string out = "[";
    for (std::size_t i = 0; i < edges.size(); ++i) {
        if (i) out += ", ";
        out += g.edge(edges[i]).id;
    }
    return out + "]";
}

inline std::string join_cycles(const std::vector<std::size_t>& cycles) {
    std::string out;
    for (std::size_t i = 0; i < cycles.size(); ++i) {
        if (i) out += ';';
        out += std::to_string(cycles[i] + 1);
    }
    return out.empty() ? "-" : out;
}

struct Loaded {
    MetricDigraph graph;
    SpernerCertificate cert;
    CycleBasis basis;
};

inline Loaded load(const std::string& path) {
    MetricDigraph g = read_graph_file(path);
    SpernerCertificate cert = validate_sperner(g);
    CycleBasis basis = cert.is_sperner ? build_cycle_basis(g, cert) : CycleBasis{};
    return {std::move(g), std::move(cert), std::move(basis)};
}

inline int not_in_class(const Loaded& in, std::ostream& err) {
    err << "error: graph is not one-way Sperner: " << in.cert.violation.value_or("unknown") << "\n";
    return kSemantic;
}

inline std::vector<std::string> split_lengths(const std::string& list) {
    std::vector<std::string> out;
    if (list.empty()) return out;
    std::stringstream ss(list);
    std::string item;
    while (std::getline(ss, item, ',')) out.push_back(item);
    return out;
}

}  // namespace detail

inline int cmd_validate(const std::string& file, std::ostream& out, std::ostream& err) {
    auto in = detail::load(file);
    const auto& g = in.graph;
    out << "sperner: " << (in.cert.is_sperner ? "true" : "false") << "\n";
    out << "vertices: " << g.vertex_count() << "\nedges: " << g.edge_count() << "\n";
    if (!in.cert.is_sperner) {
        out << "violation: " << in.cert.violation.value_or("unknown") << "\n";
        out << "strongly-connected: " << (g.is_strongly_connected() ? "true" : "false") << "\n";
        out << "handshake: " << (handshake_sum(g) == 0 ? "ok" : "FAILED") << "\n";
        (void)err;
        return kSemantic;
    }
    const auto asym = asymptotic_coefficient(g, in.cert, in.basis);
    out << "k: " << in.basis.size() << "\nbeta: " << asym.beta << "\n";
    for (std::size_t i = 0; i < in.basis.size(); ++i) {
        const Route& c = in.basis.cycles[i];
        out << "cycle " << i + 1 << ": " << detail::join_edges(g, c.edges)
            << " time=" << format_real(c.time) << "\n";
    }
    for (VertexIndex v = 0; v < g.vertex_count(); ++v) {
        const Route& l = in.basis.chains[v];
        out << "chain " << g.vertex_id(v) << ": " << detail::join_edges(g, l.edges)
            << " time=" << format_real(l.time) << "\n";
    }
    const auto ids = check_identities(g, in.cert, in.basis);
    out << "handshake: " << (ids.handshake_ok ? "ok" : "FAILED") << "\n";
    out << "edge-sum: " << (ids.edge_sum_ok ? "ok" : "FAILED") << "\n";
    return ids.handshake_ok && ids.edge_sum_ok ? kOk : kSemantic;
}

struct CountOptions {
    double time = 0.0;
    bool oracle = false;
    bool oracle_only = false;
    double epsilon = default_epsilon;
};

inline int cmd_count(const std::string& file, const CountOptions& opt, std::ostream& out,
                     std::ostream& err) {
    auto in = detail::load(file);
    if (opt.oracle_only) {
        out << "oracle=" << count_endpoints(in.graph, opt.time, opt.epsilon) << "\n";
        return kOk;
    }
    if (!in.cert.is_sperner) return detail::not_in_class(in, err);
    const auto exact = exact_count_detailed(in.graph, in.cert, in.basis, opt.time, opt.epsilon);
    if (exact.boundary_hits)
        err << "warning: " << exact.boundary_hits
            << " route time(s) within epsilon of T; value uses the jump-inclusive convention\n";
    out << "exact=" << exact.value;
    if (!opt.oracle) {
        out << "\n";
        return kOk;
    }
    const auto oracle = static_cast<std::int64_t>(count_endpoints(in.graph, opt.time, opt.epsilon));
    const bool match = oracle == exact.value;
    out << " oracle=" << oracle << (match ? " MATCH" : " MISMATCH") << "\n";
    return match ? kOk : kSemantic;
}

inline int cmd_jumps(const std::string& file, double time, double epsilon, std::ostream& out,
                     std::ostream& err) {
    auto in = detail::load(file);
    if (!in.cert.is_sperner) return detail::not_in_class(in, err);
    const auto& g = in.graph;
    out << "time,jump,vertex,cycles,time_vector,total\n";
    std::int64_t total = 0;
    for (const JumpEvent& ev : jump_stream(g, in.cert, in.basis, time, epsilon)) {
        total += ev.jump;
        out << format_real(ev.time_value) << ',' << ev.jump << ',' << g.vertex_id(ev.vertex) << ','
            << detail::join_cycles(ev.cycle_set) << ",\"" << format_time_vector(ev.time_vector, g)
            << "\"," << total << "\n";
    }
    return kOk;
}

inline int cmd_asympt(const std::string& file, std::ostream& out, std::ostream& err) {
    auto in = detail::load(file);
    if (!in.cert.is_sperner) return detail::not_in_class(in, err);
    const auto a = asymptotic_coefficient(in.graph, in.cert, in.basis);
    out << "beta=" << a.beta << " coefficient=" << format_real(a.coefficient) << "\n";
    return kOk;
}

inline int cmd_sweep(const std::string& file, const SweepOptions& opt, const std::string& out_path,
                     std::ostream& out, std::ostream& err) {
    auto in = detail::load(file);
    if (!in.cert.is_sperner) return detail::not_in_class(in, err);
    const auto rows = run_sweep(in.graph, in.cert, in.basis, opt);
    std::ofstream csv(out_path, std::ios::binary);
    if (!csv) {
        err << "error: cannot open '" << out_path << "' for writing\n";
        return kInput;
    }
    write_sweep_csv(rows, csv);
    csv.flush();
    if (!csv) {
        err << "error: write to '" << out_path << "' failed\n";
        return kInput;
    }
    std::size_t mismatches = 0;
    for (const auto& row : rows)
        if (row.n_oracle && *row.n_oracle != row.n_exact) ++mismatches;
    out << "rows=" << rows.size() << " out=" << out_path;
    if (opt.with_oracle) out << " mismatches=" << mismatches;
    out << "\n";
    return mismatches == 0 ? kOk : kSemantic;
}

inline int cmd_audit(const std::string& file, double horizon, double epsilon, std::ostream& out,
                     std::ostream& err) {
    auto in = detail::load(file);
    if (!in.cert.is_sperner) return detail::not_in_class(in, err);
    const auto& g = in.graph;
    const auto warnings = general_position_audit(g, in.basis, horizon, epsilon);
    out << "warnings=" << warnings.size() << "\n";
    for (const auto& w : warnings)
        out << "collision: " << format_time_vector(w.first, g) << " t=" << format_real(w.first_time)
            << " ~ " << format_time_vector(w.second, g) << " t=" << format_real(w.second_time) << "\n";
    return warnings.empty() ? kOk : kSemantic;
}

struct ExampleOptions {
    std::size_t k = 3;
    std::size_t n = 3;
    std::string lengths;
};

inline int cmd_examples(const std::string& name, const ExampleOptions& opt,
                        const std::string& out_path, std::ostream& out, std::ostream& err) {
    const auto lengths = detail::split_lengths(opt.lengths);
    std::optional<MetricDigraph> g;
    try {
        if (name == "star-loops") g = star_loops(opt.k, lengths);
        else if (name == "path-cycle") g = path_cycle(opt.n, lengths);
        else if (name == "circle-chords") g = circle_chords(lengths);
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        return kInput;
    }
    if (!g) {
        err << "error: unknown example '" << name
            << "' (expected star-loops, path-cycle or circle-chords)\n";
        return kInput;
    }
    write_graph_file(*g, out_path);
    out << "wrote " << name << " to " << out_path << "\n";
    return kOk;
}

// Parses argv-style arguments (without the program name) and runs one command.
inline int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Endpoint census N(T) for walks on directed metric graphs", "sperner"};
    app.require_subcommand(1);
    double epsilon = default_epsilon;
    app.add_option("--epsilon", epsilon, "Threshold and audit guard")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();

    std::string file;
    int code = kOk;

    auto* validate = app.add_subcommand("validate", "Check class membership, print cycles and chains");
    validate->add_option("graph", file, "Graph JSON file")->required();

    CountOptions count_opt;
    auto* count_cmd = app.add_subcommand("count", "Print N(T)");
    count_cmd->add_option("graph", file, "Graph JSON file")->required();
    count_cmd->add_option("--time", count_opt.time, "Time T")->required()->check(CLI::NonNegativeNumber);
    count_cmd->add_flag("--oracle", count_opt.oracle, "Also run the brute-force oracle");
    count_cmd->add_flag("--oracle-only", count_opt.oracle_only, "Run only the oracle (any digraph)");

    double jump_time = 0.0;
    auto* jumps = app.add_subcommand("jumps", "Print the jump stream up to T");
    jumps->add_option("graph", file, "Graph JSON file")->required();
    jumps->add_option("--time", jump_time, "Time T")->required()->check(CLI::NonNegativeNumber);

    auto* asympt = app.add_subcommand("asympt", "Print beta and the leading coefficient");
    asympt->add_option("graph", file, "Graph JSON file")->required();

    SweepOptions sweep_opt;
    std::string sweep_out;
    auto* sweep = app.add_subcommand("sweep", "Write a convergence sweep as CSV");
    sweep->add_option("graph", file, "Graph JSON file")->required();
    sweep->add_option("--t-max", sweep_opt.t_max, "Largest T")->required()->check(CLI::PositiveNumber);
    sweep->add_option("--steps", sweep_opt.steps, "Number of rows")->required()->check(CLI::Range(2, 1000000));
    sweep->add_option("--out", sweep_out, "CSV output path")->required();
    sweep->add_flag("--oracle", sweep_opt.with_oracle, "Fill the N_oracle column");

    double horizon = 0.0;
    auto* audit = app.add_subcommand("audit", "Report numerically colliding route times");
    audit->add_option("graph", file, "Graph JSON file")->required();
    audit->add_option("--horizon", horizon, "Largest route time to inspect")->required()->check(CLI::PositiveNumber);

    std::string example_name, example_out;
    ExampleOptions example_opt;
    auto* examples = app.add_subcommand("examples", "Generate an example graph file");
    examples->add_option("name", example_name, "star-loops | path-cycle | circle-chords")->required();
    examples->add_option("--k", example_opt.k, "Loops for star-loops")->check(CLI::PositiveNumber);
    examples->add_option("--n", example_opt.n, "Vertices for path-cycle")->check(CLI::PositiveNumber);
    examples->add_option("--lengths", example_opt.lengths, "Comma-separated decimal lengths");
    examples->add_option("--out", example_out, "Output path")->required();

    for (auto* sub : app.get_subcommands({})) sub->fallthrough();

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) {
            out << app.help();
            return kOk;
        }
        err << "usage error: " << e.what() << "\n";
        return kInput;
    }

    try {
        if (*validate) code = cmd_validate(file, out, err);
        else if (*count_cmd) {
            count_opt.epsilon = epsilon;
            code = cmd_count(file, count_opt, out, err);
        } else if (*jumps) code = cmd_jumps(file, jump_time, epsilon, out, err);
        else if (*asympt) code = cmd_asympt(file, out, err);
        else if (*sweep) {
            sweep_opt.epsilon = epsilon;
            code = cmd_sweep(file, sweep_opt, sweep_out, out, err);
        } else if (*audit) code = cmd_audit(file, horizon, epsilon, out, err);
        else if (*examples) code = cmd_examples(example_name, example_opt, example_out, out, err);
    } catch (const ParseError& e) {
        err << "error: " << e.what() << "\n";
        return kInput;
    } catch (const ArgumentError& e) {
        err << "usage error: " << e.what() << "\n";
        return kInput;
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        return kSemantic;
    }
    return code;
}

}  // namespace sperner::cli
