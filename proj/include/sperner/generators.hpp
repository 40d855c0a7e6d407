#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "sperner/error.hpp"
#include "sperner/graph.hpp"

namespace sperner {

// floor(sqrt(n) · 10^digits) rendered as a decimal with `digits` places.
inline std::string truncated_sqrt(std::uint64_t n, int digits = 12) {
    if (digits < 0 || digits > 15) throw ArgumentError("digits must be in [0, 15]");
    unsigned __int128 scale = 1;
    for (int i = 0; i < digits; ++i) scale *= 10;
    const unsigned __int128 target = static_cast<unsigned __int128>(n) * scale * scale;
    unsigned __int128 lo = 0, hi = static_cast<unsigned __int128>(n + 1) * scale;
    while (lo < hi) {
        unsigned __int128 mid = lo + (hi - lo + 1) / 2;
        if (mid * mid <= target) lo = mid;
        else hi = mid - 1;
    }
    const auto whole = static_cast<std::uint64_t>(lo / scale);
    auto frac = static_cast<std::uint64_t>(lo % scale);
    std::string out = std::to_string(whole);
    if (digits > 0) {
        std::string f = std::to_string(frac);
        out += "." + std::string(static_cast<std::size_t>(digits) - f.size(), '0') + f;
    }
    return out;
}

inline std::vector<std::uint64_t> first_primes(std::size_t count) {
    std::vector<std::uint64_t> primes;
    for (std::uint64_t n = 2; primes.size() < count; ++n) {
        bool prime = true;
        for (auto p : primes) {
            if (p * p > n) break;
            if (n % p == 0) {
                prime = false;
                break;
            }
        }
        if (prime) primes.push_back(n);
    }
    return primes;
}

// √2, √3, √5, ... truncated to 12 decimals.
inline std::vector<std::string> surd_lengths(std::size_t count) {
    std::vector<std::string> out;
    for (auto p : first_primes(count)) out.push_back(truncated_sqrt(p));
    return out;
}

namespace generator_detail {

inline std::vector<std::string> lengths_or_default(const std::vector<std::string>& given,
                                                   std::size_t needed, const char* what) {
    if (given.empty()) return surd_lengths(needed);
    if (given.size() != needed)
        throw ArgumentError(std::string(what) + " needs " + std::to_string(needed) +
                            " lengths, got " + std::to_string(given.size()));
    return given;
}

}  // namespace generator_detail

// k two-vertex loops s -> v_i -> s glued at the source. With `loop_lengths`
// (one q_i per loop) both edges of loop i get length q_i, which is the
// directed counterpart of an undirected star with edge lengths q_i. Without
// it, the 2k edges take distinct surds.
inline MetricDigraph star_loops(std::size_t k, const std::vector<std::string>& loop_lengths = {}) {
    if (k == 0) throw ArgumentError("star-loops needs k >= 1");
    std::vector<std::string> out_len, back_len;
    if (loop_lengths.empty()) {
        auto surds = surd_lengths(2 * k);
        for (std::size_t i = 0; i < k; ++i) {
            out_len.push_back(surds[2 * i]);
            back_len.push_back(surds[2 * i + 1]);
        }
    } else {
        if (loop_lengths.size() != k)
            throw ArgumentError("star-loops needs " + std::to_string(k) + " lengths, got " +
                                std::to_string(loop_lengths.size()));
        out_len = back_len = loop_lengths;
    }
    std::vector<std::string> vertices{"s"};
    std::vector<EdgeSpec> edges;
    for (std::size_t i = 1; i <= k; ++i) {
        const std::string v = "v" + std::to_string(i);
        vertices.push_back(v);
        edges.push_back({"out" + std::to_string(i), "s", v, out_len[i - 1]});
        edges.push_back({"back" + std::to_string(i), v, "s", back_len[i - 1]});
    }
    return MetricDigraph(std::move(vertices), edges, "s");
}

// Directed cycle v0 -> v1 -> ... -> v{n-1} -> v0 with source v0.
inline MetricDigraph path_cycle(std::size_t n, const std::vector<std::string>& lengths = {}) {
    if (n == 0) throw ArgumentError("path-cycle needs n >= 1");
    const auto len = generator_detail::lengths_or_default(lengths, n, "path-cycle");
    std::vector<std::string> vertices;
    for (std::size_t i = 0; i < n; ++i) vertices.push_back("v" + std::to_string(i));
    std::vector<EdgeSpec> edges;
    for (std::size_t i = 0; i < n; ++i)
        edges.push_back({"e" + std::to_string(i + 1), vertices[i], vertices[(i + 1) % n], len[i]});
    return MetricDigraph(vertices, edges, "v0");
}

// Circle A -> C -> B -> A (f3, f2, f1) with chords t1: A -> B and t2: A -> C.
// Lengths are given in the order f1, f2, f3, t1, t2. Not one-way Sperner:
// B and C each have two incoming edges that do not end at the source.
inline MetricDigraph circle_chords(const std::vector<std::string>& lengths = {}) {
    const auto len = generator_detail::lengths_or_default(lengths, 5, "circle-chords");
    std::vector<EdgeSpec> edges{
        {"f3", "A", "C", len[2]}, {"f2", "C", "B", len[1]}, {"f1", "B", "A", len[0]},
        {"t1", "A", "B", len[3]}, {"t2", "A", "C", len[4]},
    };
    return MetricDigraph({"A", "B", "C"}, edges, "A");
}

// Random one-way Sperner graph: a random recursive out-tree on `vertices`
// vertices with at most `back_edges` leaves, one back edge from each leaf and
// the rest from random vertices (a back edge from the source is a self-loop).
// Edge lengths are distinct surds in random order.
inline MetricDigraph random_sperner(std::mt19937_64& rng, std::size_t vertices,
                                    std::size_t back_edges) {
    if (vertices == 0 || back_edges == 0) throw ArgumentError("need at least one vertex and back edge");
    std::vector<std::size_t> parent(vertices, 0);
    std::size_t leaves = 0;
    for (int attempt = 0;; ++attempt) {
        if (attempt > 10000) throw ArgumentError("cannot build a tree with that few leaves");
        std::vector<bool> has_child(vertices, false);
        for (std::size_t v = 1; v < vertices; ++v) {
            parent[v] = std::uniform_int_distribution<std::size_t>(0, v - 1)(rng);
            has_child[parent[v]] = true;
        }
        leaves = 0;
        for (std::size_t v = 1; v < vertices; ++v) leaves += has_child[v] ? 0 : 1;
        if (leaves <= back_edges) {
            std::vector<std::size_t> tails;
            for (std::size_t v = 1; v < vertices; ++v)
                if (!has_child[v]) tails.push_back(v);
            while (tails.size() < back_edges)
                tails.push_back(std::uniform_int_distribution<std::size_t>(0, vertices - 1)(rng));
            std::shuffle(tails.begin(), tails.end(), rng);

            const std::size_t edge_count = vertices - 1 + back_edges;
            auto lengths = surd_lengths(edge_count);
            std::shuffle(lengths.begin(), lengths.end(), rng);

            std::vector<std::string> ids;
            for (std::size_t v = 0; v < vertices; ++v) ids.push_back("n" + std::to_string(v));
            std::vector<EdgeSpec> edges;
            std::size_t next = 0;
            for (std::size_t v = 1; v < vertices; ++v, ++next)
                edges.push_back({"t" + std::to_string(v), ids[parent[v]], ids[v], lengths[next]});
            for (std::size_t i = 0; i < tails.size(); ++i, ++next)
                edges.push_back({"b" + std::to_string(i + 1), ids[tails[i]], ids[0], lengths[next]});
            return MetricDigraph(ids, edges, ids[0]);
        }
    }
}

// Random weakly connected digraph (any shape, parallel edges and loops allowed).
inline MetricDigraph random_digraph(std::mt19937_64& rng, std::size_t vertices, std::size_t extra_edges) {
    if (vertices == 0) throw ArgumentError("need at least one vertex");
    std::vector<std::string> ids;
    for (std::size_t v = 0; v < vertices; ++v) ids.push_back("u" + std::to_string(v));
    std::vector<EdgeSpec> edges;
    std::uniform_real_distribution<double> length(0.5, 3.0);
    auto add = [&](std::size_t a, std::size_t b) {
        edges.push_back({"e" + std::to_string(edges.size()), ids[a], ids[b], std::to_string(length(rng))});
    };
    for (std::size_t v = 1; v < vertices; ++v) {
        std::size_t u = std::uniform_int_distribution<std::size_t>(0, v - 1)(rng);
        if (rng() & 1) add(u, v);
        else add(v, u);
    }
    std::uniform_int_distribution<std::size_t> pick(0, vertices - 1);
    for (std::size_t i = 0; i < extra_edges; ++i) add(pick(rng), pick(rng));
    return MetricDigraph(ids, edges, ids[0]);
}

}  // namespace sperner
