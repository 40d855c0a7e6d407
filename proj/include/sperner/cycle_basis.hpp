#pragma once

#include <algorithm>
#include <cstddef>
#include <vector>

#include "sperner/error.hpp"
#include "sperner/graph.hpp"
#include "sperner/lattice.hpp"
#include "sperner/time_vector.hpp"

namespace sperner {

struct Route {
    std::vector<EdgeIndex> edges;
    TimeVector time_vector;
    double time = 0.0;
};

// Elementary cycles c_i (one per back edge, in back-edge input order) and the
// chain l_v for every vertex.
struct CycleBasis {
    std::vector<Route> cycles;
    std::vector<Route> chains;  // indexed by vertex

    std::size_t size() const { return cycles.size(); }
};

inline CycleBasis build_cycle_basis(const MetricDigraph& g, const SpernerCertificate& cert) {
    detail::require_sperner(cert);
    const std::size_t dim = g.edge_count();
    CycleBasis basis;
    basis.chains.reserve(g.vertex_count());
    for (VertexIndex v = 0; v < g.vertex_count(); ++v) {
        Route chain;
        chain.edges = simple_chain(g, cert, v);
        chain.time_vector = TimeVector::of_edges(dim, chain.edges);
        chain.time = evaluate(chain.time_vector, g);
        basis.chains.push_back(std::move(chain));
    }
    for (EdgeIndex back : cert.back_edges) {
        Route cycle;
        cycle.edges = basis.chains[g.edge(back).tail].edges;
        cycle.edges.push_back(back);
        cycle.time_vector = TimeVector::of_edges(dim, cycle.edges);
        cycle.time = evaluate(cycle.time_vector, g);
        basis.cycles.push_back(std::move(cycle));
    }
    return basis;
}

// Σ_i tv(c_i) − Σ_v (ρ_out(G,v) − ρ_in(G,v)) · tv(l_v), in signed integers.
// For a one-way Sperner graph this equals the all-ones vector.
inline SignedTimeVector edge_sum_combination(const MetricDigraph& g, const CycleBasis& basis) {
    SignedTimeVector acc(g.edge_count(), 0);
    for (const Route& c : basis.cycles) accumulate(acc, c.time_vector, 1);
    for (VertexIndex v = 0; v < g.vertex_count(); ++v) {
        const auto excess = static_cast<std::int64_t>(g.out_edges(v).size()) -
                            static_cast<std::int64_t>(g.in_edges(v).size());
        accumulate(acc, basis.chains[v].time_vector, -excess);
    }
    return acc;
}

struct RouteTime {
    TimeVector time_vector;
    double time = 0.0;
};

// Every route time t(l_v) + Σ_{i∈I} n_i t(c_i) (n_i >= 1) not exceeding
// `horizon`, over all vertices v and cycle subsets I, unsorted.
inline std::vector<RouteTime> realized_route_times(const MetricDigraph& g, const CycleBasis& basis,
                                                   double horizon, double eps = default_epsilon) {
    std::vector<RouteTime> out;
    const std::size_t k = basis.size();
    std::vector<std::size_t> subset;
    for (VertexIndex v = 0; v < g.vertex_count(); ++v) {
        const Route& chain = basis.chains[v];
        auto expand = [&](auto&& self, std::size_t next, double min_time) -> void {
            std::vector<double> coefficients;
            for (std::size_t i : subset) coefficients.push_back(basis.cycles[i].time);
            for_each_solution(CountingProblem::natural(coefficients, horizon - chain.time), eps,
                              [&](std::span<const std::int64_t> n, double) {
                                  RouteTime rt{chain.time_vector, 0.0};
                                  for (std::size_t j = 0; j < subset.size(); ++j)
                                      rt.time_vector.add(basis.cycles[subset[j]].time_vector,
                                                         static_cast<TimeVector::Count>(n[j]));
                                  rt.time = evaluate(rt.time_vector, g);
                                  out.push_back(std::move(rt));
                              });
            for (std::size_t i = next; i < k; ++i) {
                double t = min_time + basis.cycles[i].time;
                if (t > horizon + eps) continue;
                subset.push_back(i);
                self(self, i + 1, t);
                subset.pop_back();
            }
        };
        if (chain.time <= horizon + eps) expand(expand, 0, chain.time);
    }
    return out;
}

struct CollisionWarning {
    TimeVector first;
    TimeVector second;
    double first_time = 0.0;
    double second_time = 0.0;
};

// Pairs of distinct route-time vectors up to `horizon` whose numeric times are
// closer than `epsilon`. Empty means no near-violation of general position was
// detected on that range.
inline std::vector<CollisionWarning> general_position_audit(const MetricDigraph& g,
                                                            const CycleBasis& basis,
                                                            double horizon, double epsilon) {
    if (!(horizon > 0.0)) throw ArgumentError("audit horizon must be positive");
    if (!(epsilon > 0.0)) throw ArgumentError("audit epsilon must be positive");
    auto times = realized_route_times(g, basis, horizon, 0.0);
    std::sort(times.begin(), times.end(), [](const RouteTime& a, const RouteTime& b) {
        if (a.time != b.time) return a.time < b.time;
        return a.time_vector < b.time_vector;
    });
    std::vector<CollisionWarning> warnings;
    for (std::size_t i = 0; i < times.size(); ++i) {
        for (std::size_t j = i + 1; j < times.size() && times[j].time - times[i].time < epsilon; ++j) {
            if (times[i].time_vector == times[j].time_vector) continue;
            warnings.push_back({times[i].time_vector, times[j].time_vector, times[i].time,
                                times[j].time});
        }
    }
    return warnings;
}

}  // namespace sperner
