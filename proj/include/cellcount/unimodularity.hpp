#pragma once

#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "cellcount/exact_linalg.hpp"

namespace cellcount {

// Totally unimodular: every square minor lies in {-1, 0, 1}. Exhaustive
// check with early exit; guarded because the search is exponential.
inline std::optional<MinorWitness> tu_witness(IntMatrix const &m,
                                              std::size_t minor_size_bound = 8) {
    if (std::min(m.rows(), m.cols()) > minor_size_bound)
        throw SizeLimitExceeded("is_TU minor bound: min(rows, cols) > " +
                                std::to_string(minor_size_bound));
    return detail::find_non_unit_minor(m);
}

inline bool is_TU(IntMatrix const &m, std::size_t minor_size_bound = 8) {
    return !tu_witness(m, minor_size_bound).has_value();
}

// Quasi-unimodular: the gcd of the maximal-rank minors is 1, equivalently
// every invariant factor is 1.
inline bool is_QU(IntMatrix const &m) {
    for (auto const &f : invariant_factors(m))
        if (f != 1)
            return false;
    return true;
}

struct SubsetWitness {
    std::vector<std::size_t> columns;
    std::vector<Int> invariant_factors;
};

namespace detail {

template <typename Fn> void for_each_column_subset(std::size_t m, Fn &&fn) {
    for (unsigned long mask = 0; mask < (1ul << m); ++mask) {
        std::vector<std::size_t> cols;
        for (std::size_t j = 0; j < m; ++j)
            if (mask & (1ul << j))
                cols.push_back(j);
        fn(cols);
    }
}

} // namespace detail

// Strongly quasi-unimodular: every column subset is quasi-unimodular.
inline std::optional<SubsetWitness> squ_witness(IntMatrix const &m,
                                                std::size_t subset_bits = 20) {
    if (m.cols() > subset_bits)
        throw SizeLimitExceeded("is_SQU subset bound: cols > " + std::to_string(subset_bits));
    std::optional<SubsetWitness> witness;
    detail::for_each_column_subset(m.cols(), [&](std::vector<std::size_t> const &cols) {
        if (witness)
            return;
        auto factors = invariant_factors(m.select_columns(cols));
        for (auto const &f : factors)
            if (f != 1) {
                witness = SubsetWitness{cols, factors};
                return;
            }
    });
    return witness;
}

inline bool is_SQU(IntMatrix const &m, std::size_t subset_bits = 20) {
    return !squ_witness(m, subset_bits).has_value();
}

// Least common multiple of the invariant factors over all column subsets;
// the counting quasipolynomial periods divide this.
inline Int period_bound(IntMatrix const &m, std::size_t subset_bits = 20) {
    if (m.cols() > subset_bits)
        throw SizeLimitExceeded("period_bound subset bound: cols > " +
                                std::to_string(subset_bits));
    Int bound = 1;
    detail::for_each_column_subset(m.cols(), [&](std::vector<std::size_t> const &cols) {
        for (auto const &f : invariant_factors(m.select_columns(cols)))
            bound = int_lcm(bound, f);
    });
    return bound;
}

namespace detail {

inline bool is_ish_memo(IntMatrix const &m, std::unordered_map<std::string, bool> &memo) {
    if (m.cols() == 0 || m.is_zero())
        return true;
    std::string key = m.serialize();
    auto it = memo.find(key);
    if (it != memo.end())
        return it->second;
    bool result = false;
    for (std::size_t r = 0; r < m.rows() && !result; ++r)
        for (std::size_t f = 0; f < m.cols() && !result; ++f) {
            Int const &v = m.at(r, f);
            if (v != 1 && v != -1)
                continue;
            if (is_ish_memo(m.delete_column(f), memo) &&
                is_ish_memo(pivot(m, r, f), memo))
                result = true;
        }
    memo[key] = result;
    return result;
}

} // namespace detail

// Iteratively shrinkable: empty or zero, or some unit entry (r, f) exists
// such that both the deletion of column f and the pivot at (r, f) are again
// iteratively shrinkable.
inline bool is_ISH(IntMatrix const &m, std::size_t col_bound = 12) {
    if (m.cols() > col_bound)
        throw SizeLimitExceeded("is_ISH column bound: cols > " + std::to_string(col_bound));
    std::unordered_map<std::string, bool> memo;
    return detail::is_ish_memo(m, memo);
}

struct UnimodularityReport {
    bool tu = false;
    bool squ = false;
    bool ish = false;
    bool qu = false;
    Int period_lcm = 1; // lcm of invariant factors over all column subsets
    std::optional<MinorWitness> tu_counterexample;
    std::optional<SubsetWitness> squ_counterexample;
};

inline UnimodularityReport classify(IntMatrix const &m, std::size_t minor_size_bound = 8,
                                    std::size_t subset_bits = 20,
                                    std::size_t ish_col_bound = 12) {
    UnimodularityReport report;
    report.tu_counterexample = tu_witness(m, minor_size_bound);
    report.tu = !report.tu_counterexample.has_value();
    report.squ_counterexample = squ_witness(m, subset_bits);
    report.squ = !report.squ_counterexample.has_value();
    report.ish = is_ISH(m, ish_col_bound);
    report.qu = is_QU(m);
    report.period_lcm = period_bound(m, subset_bits);
    return report;
}

} // namespace cellcount
