#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <utility>
#include <vector>

#include "sperner/cycle_basis.hpp"
#include "sperner/error.hpp"
#include "sperner/graph.hpp"
#include "sperner/lattice.hpp"
#include "sperner/time_vector.hpp"

namespace sperner {

// One (v, I) term of the exact formula:
//   (ρ_out(G,v) − ρ_in(G'(v,I),v)) · #{ t(l_v) + Σ_{i∈I} n_i t(c_i) <= T, n_i >= 1 }
struct CensusTerm {
    VertexIndex vertex = 0;
    std::vector<std::size_t> cycle_set;  // ascending, 0-based
    std::int64_t coefficient = 0;
    double min_time = 0.0;  // t(l_v) + Σ_{i∈I} t(c_i)
};

// Visits every term whose coefficient is non-zero and whose smallest route
// time fits under T. Subsets are grown depth-first in index order; a subset
// whose minimal time already exceeds T is not extended, since adding cycles
// only makes it later.
template <class Visitor>
void for_each_census_term(const MetricDigraph& g, const SpernerCertificate& cert,
                          const CycleBasis& basis, double T, double eps, Visitor&& visit) {
    detail::require_sperner(cert);
    if (basis.chains.size() != g.vertex_count() || basis.size() != cert.back_edges.size())
        throw ArgumentError("cycle basis does not belong to this graph");
    CensusTerm term;
    for (VertexIndex v = 0; v < g.vertex_count(); ++v) {
        const auto rho_out = static_cast<std::int64_t>(
            degrees(g, all_edges(g), v).rho_out);
        term.vertex = v;
        term.cycle_set.clear();
        auto expand = [&](auto&& self, std::size_t next, double min_time) -> void {
            const auto subgraph = formula_subgraph(g, cert, v, term.cycle_set);
            term.coefficient =
                rho_out - static_cast<std::int64_t>(degrees(g, subgraph, v).rho_in);
            term.min_time = min_time;
            if (term.coefficient != 0) visit(std::as_const(term));
            for (std::size_t i = next; i < basis.size(); ++i) {
                const double t = min_time + basis.cycles[i].time;
                if (t > T + eps) continue;
                term.cycle_set.push_back(i);
                self(self, i + 1, t);
                term.cycle_set.pop_back();
            }
        };
        const double chain_time = basis.chains[v].time;
        if (chain_time <= T + eps) expand(expand, 0, chain_time);
    }
}

inline CountingProblem term_problem(const CycleBasis& basis, const CensusTerm& term, double T) {
    std::vector<double> coefficients;
    coefficients.reserve(term.cycle_set.size());
    for (std::size_t i : term.cycle_set) coefficients.push_back(basis.cycles[i].time);
    return CountingProblem::natural(std::move(coefficients), T - basis.chains[term.vertex].time);
}

struct ExactCount {
    std::int64_t value = 0;
    // Lattice points that sat within epsilon of T; non-zero means the value at
    // this T depends on the boundary convention.
    std::uint64_t boundary_hits = 0;
};

inline ExactCount exact_count_detailed(const MetricDigraph& g, const SpernerCertificate& cert,
                                       const CycleBasis& basis, double T,
                                       double eps = default_epsilon) {
    detail::require_sperner(cert);
    ExactCount out;
    if (T < 0.0) return out;
    for_each_census_term(g, cert, basis, T, eps, [&](const CensusTerm& term) {
        const CountResult r = count_detailed(term_problem(basis, term, T), eps);
        std::int64_t contribution = 0;
        if (r.count > static_cast<std::uint64_t>(INT64_MAX) ||
            __builtin_mul_overflow(term.coefficient, static_cast<std::int64_t>(r.count), &contribution) ||
            __builtin_add_overflow(out.value, contribution, &out.value))
            throw OverflowError("N(T) exceeds 64 bits");
        out.boundary_hits += r.boundary_hits;
    });
    return out;
}

// N(T) by the exact signed lattice-count formula. T < 0 gives 0.
inline std::int64_t exact_count(const MetricDigraph& g, const SpernerCertificate& cert,
                                const CycleBasis& basis, double T, double eps = default_epsilon) {
    return exact_count_detailed(g, cert, basis, T, eps).value;
}

struct JumpEvent {
    TimeVector time_vector;
    double time_value = 0.0;
    std::int64_t jump = 0;
    VertexIndex vertex = 0;
    std::vector<std::size_t> cycle_set;
};

// Every discontinuity of N on [0, T], ascending in time. The prefix sum of
// jumps up to any t <= T equals N(t) (jumps are included at their own time).
inline std::vector<JumpEvent> jump_stream(const MetricDigraph& g, const SpernerCertificate& cert,
                                          const CycleBasis& basis, double T,
                                          double eps = default_epsilon) {
    detail::require_sperner(cert);
    if (T < 0.0) throw ArgumentError("jump stream needs T >= 0");
    std::vector<JumpEvent> events;
    for_each_census_term(g, cert, basis, T, eps, [&](const CensusTerm& term) {
        for_each_solution(term_problem(basis, term, T), eps,
                          [&](std::span<const std::int64_t> n, double) {
                              JumpEvent ev;
                              ev.time_vector = basis.chains[term.vertex].time_vector;
                              for (std::size_t j = 0; j < n.size(); ++j)
                                  ev.time_vector.add(basis.cycles[term.cycle_set[j]].time_vector,
                                                     static_cast<TimeVector::Count>(n[j]));
                              ev.time_value = evaluate(ev.time_vector, g);
                              ev.jump = term.coefficient;
                              ev.vertex = term.vertex;
                              ev.cycle_set = term.cycle_set;
                              events.push_back(std::move(ev));
                          });
    });
    std::stable_sort(events.begin(), events.end(), [](const JumpEvent& a, const JumpEvent& b) {
        return a.time_value < b.time_value;
    });
    return events;
}

struct Asymptotics {
    std::size_t beta = 0;
    double coefficient = 0.0;

    // coefficient · T^(β−1)
    double at(double T) const {
        return coefficient * std::pow(T, static_cast<double>(beta) - 1.0);
    }
};

// N(T) ~ T^(β−1)/(β−1)! · Σ_e t(e) / Π_i t(c_i), with β the number of cycles.
inline Asymptotics asymptotic_coefficient(const MetricDigraph& g, const SpernerCertificate& cert,
                                          const CycleBasis& basis) {
    detail::require_sperner(cert);
    Asymptotics a;
    a.beta = basis.size();
    double total_length = 0.0;
    for (const Edge& e : g.edges()) total_length += e.length;
    double product = 1.0;
    for (const Route& c : basis.cycles) product *= c.time;
    a.coefficient = total_length / (std::tgamma(static_cast<double>(a.beta)) * product);
    return a;
}

struct IdentityCheck {
    bool handshake_ok = false;
    bool edge_sum_ok = false;
};

inline IdentityCheck check_identities(const MetricDigraph& g, const SpernerCertificate& cert,
                                      const CycleBasis& basis) {
    IdentityCheck out;
    out.handshake_ok = handshake_sum(g) == 0;
    if (!cert.is_sperner) return out;
    const SignedTimeVector combination = edge_sum_combination(g, basis);
    out.edge_sum_ok = std::all_of(combination.begin(), combination.end(),
                                  [](std::int64_t m) { return m == 1; });
    return out;
}

struct CensusReport {
    double T = 0.0;
    std::int64_t n_exact = 0;
    std::size_t beta = 0;
    double leading_coefficient = 0.0;
    IdentityCheck identities;
};

inline CensusReport census_report(const MetricDigraph& g, const SpernerCertificate& cert,
                                  const CycleBasis& basis, double T, double eps = default_epsilon) {
    const Asymptotics a = asymptotic_coefficient(g, cert, basis);
    return {T, exact_count(g, cert, basis, T, eps), a.beta, a.coefficient,
            check_identities(g, cert, basis)};
}

}  // namespace sperner
