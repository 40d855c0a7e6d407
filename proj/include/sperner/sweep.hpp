#pragma once

#include <cstdint>
#include <cstdio>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "sperner/census.hpp"
#include "sperner/error.hpp"
#include "sperner/oracle.hpp"

namespace sperner {

// 12 significant digits, "." separator, no locale.
inline std::string format_real(double x) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.12g", x);
    return buf;
}

struct SweepRow {
    double T = 0.0;
    std::int64_t n_exact = 0;
    std::optional<std::int64_t> n_oracle;
    double asymptotic = 0.0;
    std::optional<double> ratio;  // only when asymptotic > 0
};

struct SweepOptions {
    double t_max = 0.0;
    std::size_t steps = 0;
    bool with_oracle = false;
    double epsilon = default_epsilon;
};

// Rows at T = j · t_max / steps for j = 1..steps. The first row is checked
// against the prefix sum of the jump stream.
inline std::vector<SweepRow> run_sweep(const MetricDigraph& g, const SpernerCertificate& cert,
                                       const CycleBasis& basis, const SweepOptions& opt) {
    detail::require_sperner(cert);
    if (!(opt.t_max > 0.0)) throw ArgumentError("--t-max must be positive");
    if (opt.steps < 2) throw ArgumentError("--steps must be at least 2");
    const Asymptotics asym = asymptotic_coefficient(g, cert, basis);
    std::vector<SweepRow> rows;
    rows.reserve(opt.steps);
    for (std::size_t j = 1; j <= opt.steps; ++j) {
        SweepRow row;
        row.T = static_cast<double>(j) * opt.t_max / static_cast<double>(opt.steps);
        row.n_exact = exact_count(g, cert, basis, row.T, opt.epsilon);
        if (opt.with_oracle)
            row.n_oracle = static_cast<std::int64_t>(count_endpoints(g, row.T, opt.epsilon));
        row.asymptotic = asym.at(row.T);
        if (row.asymptotic > 0.0) row.ratio = static_cast<double>(row.n_exact) / row.asymptotic;
        rows.push_back(row);
    }
    std::int64_t jumps = 0;
    for (const JumpEvent& ev : jump_stream(g, cert, basis, rows.front().T, opt.epsilon))
        jumps += ev.jump;
    if (jumps != rows.front().n_exact)
        throw Error("jump stream sum " + std::to_string(jumps) + " disagrees with N(T) = " +
                    std::to_string(rows.front().n_exact) + " at T = " + format_real(rows.front().T));
    return rows;
}

inline void write_sweep_csv(const std::vector<SweepRow>& rows, std::ostream& out) {
    out << "T,N_exact,N_oracle,asymptotic,ratio\n";
    for (const SweepRow& row : rows) {
        out << format_real(row.T) << ',' << row.n_exact << ',';
        if (row.n_oracle) out << *row.n_oracle;
        out << ',' << format_real(row.asymptotic) << ',';
        if (row.ratio) out << format_real(*row.ratio);
        out << '\n';
    }
}

}  // namespace sperner
