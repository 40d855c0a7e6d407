#pragma once

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <span>
#include <string>
#include <vector>

#include "sperner/error.hpp"

namespace sperner {

// Absolute guard for threshold comparisons and collision audits.
inline constexpr double default_epsilon = 1e-9;

// #{ integer (n_1..n_j) : n_i >= lower_bounds[i], Σ n_i · coefficients[i] <= threshold }
struct CountingProblem {
    std::vector<double> coefficients;
    double threshold = 0.0;
    std::vector<std::int64_t> lower_bounds;

    // All n_i >= 1.
    static CountingProblem natural(std::vector<double> coefficients, double threshold) {
        std::vector<std::int64_t> bounds(coefficients.size(), 1);
        return {std::move(coefficients), threshold, std::move(bounds)};
    }
    // All n_i >= 0.
    static CountingProblem nonnegative(std::vector<double> coefficients, double threshold) {
        std::vector<std::int64_t> bounds(coefficients.size(), 0);
        return {std::move(coefficients), threshold, std::move(bounds)};
    }
};

struct CountResult {
    std::uint64_t count = 0;
    // Counted tuples whose sum is within epsilon of the threshold.
    std::uint64_t boundary_hits = 0;
};

namespace lattice_detail {

inline void validate(const CountingProblem& p) {
    if (p.lower_bounds.size() != p.coefficients.size())
        throw ArgumentError("lower_bounds has " + std::to_string(p.lower_bounds.size()) +
                            " entries for " + std::to_string(p.coefficients.size()) +
                            " coefficients");
    for (std::size_t i = 0; i < p.coefficients.size(); ++i) {
        if (!(p.coefficients[i] > 0.0) || !std::isfinite(p.coefficients[i]))
            throw ArgumentError("coefficient " + std::to_string(i) + " must be positive");
        if (p.lower_bounds[i] < 0)
            throw ArgumentError("lower bound " + std::to_string(i) + " must be non-negative");
    }
    if (!std::isfinite(p.threshold)) throw ArgumentError("threshold must be finite");
}

inline std::uint64_t checked_add(std::uint64_t a, std::uint64_t b) {
    std::uint64_t out = 0;
    if (__builtin_add_overflow(a, b, &out)) throw OverflowError("lattice count exceeds 64 bits");
    return out;
}

// Largest n with n·a <= x + eps. The real quotient is verified by multiplying
// back so a floor that lands one off is corrected.
inline std::int64_t guarded_floor(double x, double a, double eps, bool& tie) {
    double q = std::floor(x / a);
    if (!(std::abs(q) < 4.0e15)) throw OverflowError("lattice count exceeds 64 bits");
    auto n = static_cast<std::int64_t>(q);
    while (static_cast<double>(n + 1) * a <= x + eps) ++n;
    while (static_cast<double>(n) * a > x + eps) --n;
    tie = std::abs(static_cast<double>(n) * a - x) <= eps;
    return n;
}

class Counter {
public:
    Counter(const CountingProblem& p, double eps) : p_(p), eps_(eps), tail_min_(p.coefficients.size() + 1, 0.0) {
        for (std::size_t j = p.coefficients.size(); j-- > 0;)
            tail_min_[j] = tail_min_[j + 1] + static_cast<double>(p.lower_bounds[j]) * p.coefficients[j];
    }

    CountResult run() {
        if (p_.coefficients.empty()) {
            if (p_.threshold >= -eps_) {
                result_.count = 1;
                result_.boundary_hits = std::abs(p_.threshold) <= eps_ ? 1 : 0;
            }
            return result_;
        }
        descend(0, p_.threshold);
        return result_;
    }

private:
    void descend(std::size_t j, double remaining) {
        const double a = p_.coefficients[j];
        const std::int64_t lo = p_.lower_bounds[j];
        if (j + 1 == p_.coefficients.size()) {
            bool tie = false;
            std::int64_t hi = guarded_floor(remaining, a, eps_, tie);
            if (hi < lo) return;
            result_.count = checked_add(result_.count, static_cast<std::uint64_t>(hi - lo + 1));
            if (tie) ++result_.boundary_hits;
            return;
        }
        const double rest = tail_min_[j + 1];
        for (std::int64_t n = lo; static_cast<double>(n) * a + rest <= remaining + eps_; ++n)
            descend(j + 1, remaining - static_cast<double>(n) * a);
    }

    const CountingProblem& p_;
    double eps_;
    std::vector<double> tail_min_;
    CountResult result_;
};

}  // namespace lattice_detail

// Exact count by recursive descent over the variables in input order; the
// last variable is closed out with a guarded floor.
inline CountResult count_detailed(const CountingProblem& p, double eps = default_epsilon) {
    lattice_detail::validate(p);
    return lattice_detail::Counter(p, eps).run();
}

inline std::uint64_t count(const CountingProblem& p, double eps = default_epsilon) {
    return count_detailed(p, eps).count;
}

// Calls visit(std::span<const std::int64_t> n, double sum) for every solution,
// in lexicographic order of n. The empty problem has one solution (the empty
// tuple, sum 0) when the threshold is non-negative.
template <class Visitor>
void for_each_solution(const CountingProblem& p, double eps, Visitor&& visit) {
    lattice_detail::validate(p);
    const std::size_t dim = p.coefficients.size();
    std::vector<std::int64_t> n(dim, 0);
    std::vector<double> tail_min(dim + 1, 0.0);
    for (std::size_t j = dim; j-- > 0;)
        tail_min[j] = tail_min[j + 1] + static_cast<double>(p.lower_bounds[j]) * p.coefficients[j];

    auto descend = [&](auto&& self, std::size_t j, double used) -> void {
        if (j == dim) {
            visit(std::span<const std::int64_t>(n), used);
            return;
        }
        const double a = p.coefficients[j];
        for (std::int64_t k = p.lower_bounds[j];
             used + static_cast<double>(k) * a + tail_min[j + 1] <= p.threshold + eps; ++k) {
            n[j] = k;
            self(self, j + 1, used + static_cast<double>(k) * a);
        }
    };
    if (dim == 0) {
        if (p.threshold >= -eps) visit(std::span<const std::int64_t>(n), 0.0);
        return;
    }
    descend(descend, 0, 0.0);
}

// Two leading terms of the count with all n_i >= 1:
//   (1/Π a_i) · (λ^β/β! − ½ Σ a_i · λ^(β−1)/(β−1)!),  β = coefficients.size().
inline double count_two_term(std::span<const double> coefficients, double lambda) {
    if (coefficients.empty()) throw ArgumentError("two-term expansion needs at least one coefficient");
    double product = 1.0;
    double sum = 0.0;
    for (double a : coefficients) {
        if (!(a > 0.0)) throw ArgumentError("coefficients must be positive");
        product *= a;
        sum += a;
    }
    const int beta = static_cast<int>(coefficients.size());
    const double lead = std::pow(lambda, beta) / std::tgamma(beta + 1.0);
    const double next = std::pow(lambda, beta - 1) / std::tgamma(static_cast<double>(beta));
    return (lead - 0.5 * sum * next) / product;
}

// Count with bounds >= 0 where, additionally, every group of variable indices
// must contain at least one variable >= 1. Inclusion–exclusion over forcing
// whole groups to zero.
inline std::uint64_t count_inclusion_exclusion(const CountingProblem& p,
                                               const std::vector<std::vector<std::size_t>>& groups,
                                               double eps = default_epsilon) {
    lattice_detail::validate(p);
    for (auto lb : p.lower_bounds)
        if (lb != 0) throw ArgumentError("inclusion-exclusion expects all lower bounds to be 0");
    if (groups.size() > 24) throw ArgumentError("too many groups");
    for (const auto& group : groups) {
        if (group.empty()) throw ArgumentError("empty group");
        for (std::size_t i : group)
            if (i >= p.coefficients.size())
                throw ArgumentError("variable index " + std::to_string(i) + " out of range");
    }

    __int128 total = 0;
    const std::size_t subsets = std::size_t{1} << groups.size();
    for (std::size_t mask = 0; mask < subsets; ++mask) {
        std::vector<bool> zeroed(p.coefficients.size(), false);
        int parity = 0;
        for (std::size_t g = 0; g < groups.size(); ++g) {
            if (!(mask >> g & 1)) continue;
            ++parity;
            for (std::size_t i : groups[g]) zeroed[i] = true;
        }
        std::vector<double> kept;
        for (std::size_t i = 0; i < p.coefficients.size(); ++i)
            if (!zeroed[i]) kept.push_back(p.coefficients[i]);
        const auto term = count(CountingProblem::nonnegative(std::move(kept), p.threshold), eps);
        total += (parity % 2 == 0) ? static_cast<__int128>(term) : -static_cast<__int128>(term);
    }
    if (total < 0) throw Error("inclusion-exclusion produced a negative count");
    if (total > static_cast<__int128>(std::numeric_limits<std::uint64_t>::max()))
        throw OverflowError("lattice count exceeds 64 bits");
    return static_cast<std::uint64_t>(total);
}

}  // namespace sperner
