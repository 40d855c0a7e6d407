#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "sperner/error.hpp"
#include "sperner/graph.hpp"
#include "sperner/lattice.hpp"
#include "sperner/time_vector.hpp"

// Brute-force endpoint census straight from the definition of the walk: follow
// every route out of the source and record where it sits at time T. Works on
// any digraph with a source, Sperner or not.

namespace sperner {

// The walker at time T is on `edge`, which it entered at time t(arrival), at
// offset T − t(arrival) in [0, length(edge)).
struct EndpointKey {
    EdgeIndex edge = 0;
    TimeVector arrival;

    friend bool operator==(const EndpointKey&, const EndpointKey&) = default;
    friend auto operator<=>(const EndpointKey&, const EndpointKey&) = default;
};

struct EndpointPosition {
    EdgeIndex edge = 0;
    double offset = 0.0;
};

namespace oracle_detail {

inline void check_walk_defined(const MetricDigraph& g) {
    const auto reach = g.reachable(g.source());
    for (VertexIndex v = 0; v < g.vertex_count(); ++v)
        if (reach[v] && g.out_edges(v).empty())
            throw ModelError("vertex '" + g.vertex_id(v) +
                             "' is reachable from the source but has no outgoing edge");
}

// Every reached (vertex, arrival vector) state, stored flat: state i owns
// counts[i*E, (i+1)*E). An open-addressing table of state ids deduplicates, so
// a state is expanded at most once, whatever route produced it.
class StateArena {
public:
    explicit StateArena(std::size_t dimension) : dim_(dimension), table_(1024, kEmpty) {}

    std::size_t size() const { return vertex_.size(); }
    VertexIndex vertex(std::size_t id) const { return vertex_[id]; }
    std::span<const TimeVector::Count> counts(std::size_t id) const {
        return {counts_.data() + id * dim_, dim_};
    }

    // Appends the state if new; returns its id, or npos when already present.
    std::size_t insert(VertexIndex v, std::span<const TimeVector::Count> c) {
        if (2 * (size() + 1) > table_.size()) grow();
        const std::size_t mask = table_.size() - 1;
        for (std::size_t slot = hash(v, c) & mask;; slot = (slot + 1) & mask) {
            const std::uint32_t id = table_[slot];
            if (id == kEmpty) {
                if (size() >= kEmpty) throw OverflowError("oracle state space exceeds 2^32 states");
                table_[slot] = static_cast<std::uint32_t>(size());
                vertex_.push_back(v);
                counts_.insert(counts_.end(), c.begin(), c.end());
                return size() - 1;
            }
            if (vertex_[id] == v && std::equal(c.begin(), c.end(), counts(id).begin())) return npos;
        }
    }

    static constexpr std::size_t npos = static_cast<std::size_t>(-1);

private:
    static constexpr std::uint32_t kEmpty = 0xffffffffU;

    static std::size_t hash(VertexIndex v, std::span<const TimeVector::Count> c) {
        std::uint64_t h = 0x9e3779b97f4a7c15ULL ^ v;
        for (auto x : c) {
            h ^= x + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
            h *= 0xff51afd7ed558ccdULL;
        }
        return static_cast<std::size_t>(h ^ (h >> 33));
    }

    void grow() {
        std::vector<std::uint32_t> bigger(table_.size() * 2, kEmpty);
        const std::size_t mask = bigger.size() - 1;
        for (std::size_t id = 0; id < size(); ++id) {
            std::size_t slot = hash(vertex_[id], counts(id)) & mask;
            while (bigger[slot] != kEmpty) slot = (slot + 1) & mask;
            bigger[slot] = static_cast<std::uint32_t>(id);
        }
        table_.swap(bigger);
    }

    std::size_t dim_;
    std::vector<TimeVector::Count> counts_;
    std::vector<VertexIndex> vertex_;
    std::vector<std::uint32_t> table_;
};

// Calls emit(edge, arrival_counts, arrival_time) once per distinct endpoint key.
template <class Emit>
void search(const MetricDigraph& g, double T, double eps, Emit&& emit) {
    if (T < 0.0) throw ArgumentError("oracle needs T >= 0");
    check_walk_defined(g);

    const std::size_t dim = g.edge_count();
    StateArena arena(dim);
    std::vector<TimeVector::Count> scratch(dim, 0);
    std::vector<std::size_t> stack{arena.insert(g.source(), scratch)};

    while (!stack.empty()) {
        const std::size_t id = stack.back();
        stack.pop_back();
        const VertexIndex v = arena.vertex(id);
        const auto here = arena.counts(id);
        // same summation order as evaluate()
        double t = 0.0;
        for (std::size_t i = 0; i < dim; ++i)
            if (here[i] != 0) t += static_cast<double>(here[i]) * g.length(i);
        for (EdgeIndex e : g.out_edges(v)) {
            if (t + g.length(e) > T + eps) {
                emit(e, arena.counts(id), t);
                continue;
            }
            const auto current = arena.counts(id);
            std::copy(current.begin(), current.end(), scratch.begin());
            ++scratch[e];
            const std::size_t next = arena.insert(g.edge(e).head, scratch);
            if (next != StateArena::npos) stack.push_back(next);
        }
    }
}

}  // namespace oracle_detail

// All distinct endpoint keys at time T, sorted by edge then arrival vector.
// Its size is the oracle's N(T).
inline std::vector<EndpointKey> enumerate_endpoints(const MetricDigraph& g, double T,
                                                    double eps = default_epsilon) {
    std::vector<EndpointKey> keys;
    oracle_detail::search(g, T, eps, [&](EdgeIndex e, std::span<const TimeVector::Count> arrival, double) {
        keys.push_back({e, TimeVector(std::vector<TimeVector::Count>(arrival.begin(), arrival.end()))});
    });
    std::sort(keys.begin(), keys.end());
    return keys;
}

// |enumerate_endpoints(g, T)| without materializing the keys.
inline std::size_t count_endpoints(const MetricDigraph& g, double T, double eps = default_epsilon) {
    std::size_t n = 0;
    oracle_detail::search(g, T, eps, [&](EdgeIndex, std::span<const TimeVector::Count>, double) { ++n; });
    return n;
}

// Numeric view of the endpoints, sorted by edge then offset.
inline std::vector<EndpointPosition> endpoint_positions(const MetricDigraph& g, double T,
                                                        double eps = default_epsilon) {
    std::vector<EndpointPosition> out;
    oracle_detail::search(g, T, eps, [&](EdgeIndex e, std::span<const TimeVector::Count>, double arrival_time) {
        out.push_back({e, std::max(0.0, T - arrival_time)});
    });
    std::sort(out.begin(), out.end(), [](const EndpointPosition& a, const EndpointPosition& b) {
        if (a.edge != b.edge) return a.edge < b.edge;
        return a.offset < b.offset;
    });
    return out;
}

}  // namespace sperner
