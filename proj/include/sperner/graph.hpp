#pragma once

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "sperner/error.hpp"

namespace sperner {

using VertexIndex = std::size_t;
using EdgeIndex = std::size_t;

// Parses a strictly positive decimal literal ("2.5", "1.414213562373", "3e-2").
// Signs, hex, inf and nan are rejected.
inline double parse_length(std::string_view text) {
    auto fail = [&](const char* why) {
        return StructuralError("bad edge length '" + std::string(text) + "': " + why);
    };
    if (text.empty()) throw fail("empty");
    if (text.front() == '+' || text.front() == '-') throw fail("signs are not allowed");
    bool digit_seen = false;
    for (char c : text) {
        if (c >= '0' && c <= '9') {
            digit_seen = true;
        } else if (c != '.' && c != 'e' && c != 'E' && c != '+' && c != '-') {
            throw fail("not a decimal number");
        }
    }
    if (!digit_seen) throw fail("not a decimal number");
    double value = 0.0;
    auto [end, ec] = std::from_chars(text.data(), text.data() + text.size(), value,
                                     std::chars_format::general);
    if (ec != std::errc{} || end != text.data() + text.size()) throw fail("not a decimal number");
    if (!std::isfinite(value)) throw fail("not finite");
    if (value <= 0.0) throw fail("must be positive");
    return value;
}

struct Edge {
    std::string id;
    VertexIndex tail = 0;
    VertexIndex head = 0;
    double length = 0.0;
    std::string length_text;
};

// Edge as it appears in an input file: endpoints by vertex id, length as text.
struct EdgeSpec {
    std::string id;
    std::string from;
    std::string to;
    std::string length;
};

// Finite directed graph with positive edge lengths and a designated source.
// Vertices and edges get dense indices in input order. Immutable once built.
class MetricDigraph {
public:
    MetricDigraph(std::vector<std::string> vertices, const std::vector<EdgeSpec>& edges,
                  const std::string& source)
        : vertex_ids_(std::move(vertices)) {
        for (VertexIndex v = 0; v < vertex_ids_.size(); ++v) {
            if (!vertex_index_.emplace(vertex_ids_[v], v).second)
                throw StructuralError("duplicate vertex id '" + vertex_ids_[v] + "'");
        }
        auto src = vertex_index_.find(source);
        if (src == vertex_index_.end())
            throw StructuralError("source '" + source + "' is not a vertex");
        source_ = src->second;

        out_.resize(vertex_ids_.size());
        in_.resize(vertex_ids_.size());
        edges_.reserve(edges.size());
        for (const auto& spec : edges) {
            if (!edge_index_.emplace(spec.id, edges_.size()).second)
                throw StructuralError("duplicate edge id '" + spec.id + "'");
            auto tail = vertex_index_.find(spec.from);
            auto head = vertex_index_.find(spec.to);
            if (tail == vertex_index_.end())
                throw StructuralError("edge '" + spec.id + "' starts at unknown vertex '" +
                                      spec.from + "'");
            if (head == vertex_index_.end())
                throw StructuralError("edge '" + spec.id + "' ends at unknown vertex '" +
                                      spec.to + "'");
            double length = 0.0;
            try {
                length = parse_length(spec.length);
            } catch (const StructuralError& e) {
                throw StructuralError("edge '" + spec.id + "': " + e.what());
            }
            EdgeIndex e = edges_.size();
            edges_.push_back(Edge{spec.id, tail->second, head->second, length, spec.length});
            out_[tail->second].push_back(e);
            in_[head->second].push_back(e);
        }
        check_weakly_connected();
    }

    std::size_t vertex_count() const { return vertex_ids_.size(); }
    std::size_t edge_count() const { return edges_.size(); }
    VertexIndex source() const { return source_; }

    const std::string& vertex_id(VertexIndex v) const { return vertex_ids_.at(v); }
    std::span<const std::string> vertex_ids() const { return vertex_ids_; }
    const Edge& edge(EdgeIndex e) const { return edges_.at(e); }
    std::span<const Edge> edges() const { return edges_; }
    double length(EdgeIndex e) const { return edges_[e].length; }

    std::span<const EdgeIndex> out_edges(VertexIndex v) const { return out_.at(v); }
    std::span<const EdgeIndex> in_edges(VertexIndex v) const { return in_.at(v); }

    std::optional<VertexIndex> find_vertex(std::string_view id) const {
        auto it = vertex_index_.find(std::string(id));
        if (it == vertex_index_.end()) return std::nullopt;
        return it->second;
    }
    VertexIndex vertex_index(std::string_view id) const {
        auto v = find_vertex(id);
        if (!v) throw UnknownVertexError(std::string(id));
        return *v;
    }
    EdgeIndex edge_index(std::string_view id) const {
        auto it = edge_index_.find(std::string(id));
        if (it == edge_index_.end()) throw StructuralError("unknown edge '" + std::string(id) + "'");
        return it->second;
    }

    // Vertices reachable from `from` along (or against, if reversed) edge orientation.
    std::vector<bool> reachable(VertexIndex from, bool reversed = false) const {
        std::vector<bool> seen(vertex_count(), false);
        std::vector<VertexIndex> stack{from};
        seen[from] = true;
        while (!stack.empty()) {
            VertexIndex v = stack.back();
            stack.pop_back();
            for (EdgeIndex e : reversed ? in_[v] : out_[v]) {
                VertexIndex w = reversed ? edges_[e].tail : edges_[e].head;
                if (!seen[w]) {
                    seen[w] = true;
                    stack.push_back(w);
                }
            }
        }
        return seen;
    }

    // Double reachability sweep from the source.
    std::optional<VertexIndex> first_not_strongly_connected() const {
        auto fwd = reachable(source_, false);
        auto bwd = reachable(source_, true);
        for (VertexIndex v = 0; v < vertex_count(); ++v)
            if (!fwd[v] || !bwd[v]) return v;
        return std::nullopt;
    }
    bool is_strongly_connected() const { return !first_not_strongly_connected(); }

private:
    void check_weakly_connected() const {
        std::vector<bool> seen(vertex_count(), false);
        std::vector<VertexIndex> stack{source_};
        seen[source_] = true;
        while (!stack.empty()) {
            VertexIndex v = stack.back();
            stack.pop_back();
            auto visit = [&](VertexIndex w) {
                if (!seen[w]) {
                    seen[w] = true;
                    stack.push_back(w);
                }
            };
            for (EdgeIndex e : out_[v]) visit(edges_[e].head);
            for (EdgeIndex e : in_[v]) visit(edges_[e].tail);
        }
        for (VertexIndex v = 0; v < vertex_count(); ++v)
            if (!seen[v])
                throw StructuralError("graph is not weakly connected: vertex '" + vertex_ids_[v] +
                                      "' is isolated from the source");
    }

    std::vector<std::string> vertex_ids_;
    std::vector<Edge> edges_;
    std::unordered_map<std::string, VertexIndex> vertex_index_;
    std::unordered_map<std::string, EdgeIndex> edge_index_;
    std::vector<std::vector<EdgeIndex>> out_;
    std::vector<std::vector<EdgeIndex>> in_;
    VertexIndex source_ = 0;
};

struct SpernerCertificate {
    bool is_sperner = false;
    std::vector<EdgeIndex> tree_edges;
    std::vector<EdgeIndex> back_edges;  // input order; cycle i closes with back_edges[i]
    std::optional<std::string> violation;
    // Tree edge entering each vertex; nullopt for the source.
    std::vector<std::optional<EdgeIndex>> parent_edge;
};

namespace detail {

inline std::string describe_edge(const MetricDigraph& g, EdgeIndex e) {
    const Edge& edge = g.edge(e);
    return "'" + edge.id + "' (" + g.vertex_id(edge.tail) + "->" + g.vertex_id(edge.head) + ")";
}

inline void require_sperner(const SpernerCertificate& cert) {
    if (!cert.is_sperner)
        throw ClassError("operation requires a one-way Sperner graph" +
                         (cert.violation ? ": " + *cert.violation : std::string{}));
}

}  // namespace detail

// Decides membership in the one-way Sperner class: an out-tree from the source
// spanning every vertex, plus back edges whose head is the source, and strong
// connectivity. On failure `violation` names the first failing condition.
inline SpernerCertificate validate_sperner(const MetricDigraph& g) {
    SpernerCertificate cert;
    cert.parent_edge.assign(g.vertex_count(), std::nullopt);
    auto reject = [&](std::string why) {
        SpernerCertificate failed;
        failed.violation = std::move(why);
        return failed;
    };

    if (g.edge_count() == 0) return reject("graph has no edges");

    for (EdgeIndex e = 0; e < g.edge_count(); ++e) {
        const Edge& edge = g.edge(e);
        if (edge.head == g.source()) {
            cert.back_edges.push_back(e);
            continue;
        }
        if (cert.parent_edge[edge.head])
            return reject("vertex '" + g.vertex_id(edge.head) +
                          "' has a second incoming non-back edge " + detail::describe_edge(g, e) +
                          " besides " + detail::describe_edge(g, *cert.parent_edge[edge.head]));
        cert.parent_edge[edge.head] = e;
        cert.tree_edges.push_back(e);
    }

    for (VertexIndex v = 0; v < g.vertex_count(); ++v)
        if (v != g.source() && !cert.parent_edge[v])
            return reject("vertex '" + g.vertex_id(v) + "' has no incoming tree edge");

    // Every parent chain must reach the source; otherwise tree edges close a cycle.
    std::vector<int> state(g.vertex_count(), 0);  // 0 unknown, 1 on current chain, 2 rooted
    state[g.source()] = 2;
    for (VertexIndex start = 0; start < g.vertex_count(); ++start) {
        std::vector<VertexIndex> chain;
        VertexIndex v = start;
        while (state[v] == 0) {
            state[v] = 1;
            chain.push_back(v);
            v = g.edge(*cert.parent_edge[v]).tail;
        }
        if (state[v] == 1)
            return reject("tree edges form a cycle avoiding the source through vertex '" +
                          g.vertex_id(v) + "', entered by " +
                          detail::describe_edge(g, *cert.parent_edge[v]));
        for (VertexIndex w : chain) state[w] = 2;
    }

    if (auto bad = g.first_not_strongly_connected())
        return reject("graph is not strongly connected: vertex '" + g.vertex_id(*bad) +
                      "' cannot return to the source");

    cert.is_sperner = true;
    return cert;
}

// The unique tree route from the source to v, as edges in travel order.
inline std::vector<EdgeIndex> simple_chain(const MetricDigraph& g, const SpernerCertificate& cert,
                                           VertexIndex v) {
    detail::require_sperner(cert);
    if (v >= g.vertex_count()) throw IndexError("vertex index " + std::to_string(v) + " out of range");
    std::vector<EdgeIndex> chain;
    while (v != g.source()) {
        EdgeIndex e = *cert.parent_edge[v];
        chain.push_back(e);
        v = g.edge(e).tail;
    }
    std::reverse(chain.begin(), chain.end());
    return chain;
}

inline std::vector<EdgeIndex> simple_chain(const MetricDigraph& g, const SpernerCertificate& cert,
                                           std::string_view vertex_id) {
    return simple_chain(g, cert, g.vertex_index(vertex_id));
}

struct DegreePair {
    std::size_t rho_in = 0;
    std::size_t rho_out = 0;
    friend bool operator==(const DegreePair&, const DegreePair&) = default;
};

// In/out degree of v inside the subgraph spanned by `edge_subset`.
inline DegreePair degrees(const MetricDigraph& g, std::span<const EdgeIndex> edge_subset,
                          VertexIndex v) {
    if (v >= g.vertex_count()) throw IndexError("vertex index " + std::to_string(v) + " out of range");
    DegreePair d;
    for (EdgeIndex e : edge_subset) {
        if (e >= g.edge_count())
            throw StructuralError("edge index " + std::to_string(e) + " is not in the graph");
        if (g.edge(e).head == v) ++d.rho_in;
        if (g.edge(e).tail == v) ++d.rho_out;
    }
    return d;
}

inline std::vector<EdgeIndex> all_edges(const MetricDigraph& g) {
    std::vector<EdgeIndex> all(g.edge_count());
    for (EdgeIndex e = 0; e < all.size(); ++e) all[e] = e;
    return all;
}

// Edges of the chain to v united with the elementary cycles listed in
// `cycle_indices` (0-based, in back-edge order). Sorted, duplicate-free.
inline std::vector<EdgeIndex> formula_subgraph(const MetricDigraph& g,
                                               const SpernerCertificate& cert, VertexIndex v,
                                               std::span<const std::size_t> cycle_indices) {
    detail::require_sperner(cert);
    std::vector<EdgeIndex> edges = simple_chain(g, cert, v);
    for (std::size_t i : cycle_indices) {
        if (i >= cert.back_edges.size())
            throw IndexError("cycle index " + std::to_string(i) + " out of range (k = " +
                             std::to_string(cert.back_edges.size()) + ")");
        EdgeIndex back = cert.back_edges[i];
        auto chain = simple_chain(g, cert, g.edge(back).tail);
        edges.insert(edges.end(), chain.begin(), chain.end());
        edges.push_back(back);
    }
    std::sort(edges.begin(), edges.end());
    edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
    return edges;
}

// Σ_v (ρ_out − ρ_in) over the whole graph; zero for every digraph.
inline long long handshake_sum(const MetricDigraph& g) {
    long long total = 0;
    for (VertexIndex v = 0; v < g.vertex_count(); ++v)
        total += static_cast<long long>(g.out_edges(v).size()) -
                 static_cast<long long>(g.in_edges(v).size());
    return total;
}

}  // namespace sperner
