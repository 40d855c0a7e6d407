#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <initializer_list>
#include <string_view>
#include <utility>
#include <span>
#include <string>
#include <vector>

#include "sperner/error.hpp"
#include "sperner/graph.hpp"

namespace sperner {

// Route time as edge multiplicities: t = Σ_e m_e · length(e). Two routes have
// the same time iff their TimeVectors are equal (general position), so all
// identity logic runs on these vectors and floating point is only used for
// ordering against a threshold.
class TimeVector {
public:
    using Count = std::uint32_t;

    TimeVector() = default;
    explicit TimeVector(std::size_t dimension) : counts_(dimension, 0) {}
    explicit TimeVector(std::vector<Count> counts) : counts_(std::move(counts)) {}

    static TimeVector unit(std::size_t dimension, EdgeIndex e) {
        TimeVector tv(dimension);
        tv.counts_.at(e) = 1;
        return tv;
    }
    static TimeVector of_edges(std::size_t dimension, std::span<const EdgeIndex> edges) {
        TimeVector tv(dimension);
        for (EdgeIndex e : edges) tv.counts_.at(e) += 1;
        return tv;
    }

    std::size_t dimension() const { return counts_.size(); }
    Count operator[](EdgeIndex e) const { return counts_[e]; }
    std::span<const Count> counts() const { return counts_; }

    bool is_zero() const {
        for (Count c : counts_)
            if (c != 0) return false;
        return true;
    }

    TimeVector& add(const TimeVector& other, Count times = 1) {
        if (other.dimension() != dimension())
            throw ArgumentError("TimeVector dimension mismatch");
        for (std::size_t i = 0; i < counts_.size(); ++i) counts_[i] += times * other.counts_[i];
        return *this;
    }
    TimeVector& add_edge(EdgeIndex e, Count times = 1) {
        counts_.at(e) += times;
        return *this;
    }
    TimeVector& operator+=(const TimeVector& other) { return add(other); }
    friend TimeVector operator+(TimeVector a, const TimeVector& b) { return a += b; }

    friend bool operator==(const TimeVector&, const TimeVector&) = default;
    friend auto operator<=>(const TimeVector&, const TimeVector&) = default;

private:
    std::vector<Count> counts_;
};

struct TimeVectorHash {
    std::size_t operator()(const TimeVector& tv) const noexcept {
        std::uint64_t h = 0x9e3779b97f4a7c15ULL;
        for (auto c : tv.counts()) {
            h ^= c + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
            h *= 0xff51afd7ed558ccdULL;
        }
        return static_cast<std::size_t>(h ^ (h >> 33));
    }
};

// Signed edge combination, for identities with negative coefficients.
using SignedTimeVector = std::vector<std::int64_t>;

inline SignedTimeVector to_signed(const TimeVector& tv) {
    return SignedTimeVector(tv.counts().begin(), tv.counts().end());
}

// acc += factor · tv
inline void accumulate(SignedTimeVector& acc, const TimeVector& tv, std::int64_t factor) {
    if (acc.size() != tv.dimension()) throw ArgumentError("TimeVector dimension mismatch");
    for (std::size_t i = 0; i < acc.size(); ++i)
        acc[i] += factor * static_cast<std::int64_t>(tv[i]);
}

// Builds a vector from (edge id, multiplicity) pairs; unknown ids are structural errors.
inline TimeVector make_time_vector(
    const MetricDigraph& g,
    std::initializer_list<std::pair<std::string_view, TimeVector::Count>> entries) {
    TimeVector tv(g.edge_count());
    for (const auto& [id, count] : entries) tv.add_edge(g.edge_index(id), count);
    return tv;
}

// Numeric route time Σ m_e · length(e).
inline double evaluate(const TimeVector& tv, const MetricDigraph& g) {
    if (tv.dimension() != g.edge_count())
        throw StructuralError("TimeVector has " + std::to_string(tv.dimension()) +
                              " entries but the graph has " + std::to_string(g.edge_count()) +
                              " edges");
    double t = 0.0;
    for (EdgeIndex e = 0; e < tv.dimension(); ++e)
        if (tv[e] != 0) t += static_cast<double>(tv[e]) * g.length(e);
    return t;
}

// "{a:2, b:1}" using edge ids; "{}" for the zero vector.
inline std::string format_time_vector(const TimeVector& tv, const MetricDigraph& g) {
    std::string out = "{";
    bool first = true;
    for (EdgeIndex e = 0; e < tv.dimension(); ++e) {
        if (tv[e] == 0) continue;
        if (!first) out += ", ";
        first = false;
        out += g.edge(e).id + ":" + std::to_string(tv[e]);
    }
    return out + "}";
}

}  // namespace sperner
