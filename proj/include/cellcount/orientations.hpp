#pragma once

#include <set>
#include <string>
#include <utility>
#include <vector>

#include "cellcount/complex.hpp"
#include "cellcount/feasibility.hpp"
#include "cellcount/modular_counts.hpp"
#include "cellcount/unimodularity.hpp"
#include "cellcount/verification.hpp"

namespace cellcount {

// An orientation assigns +1 or -1 to every facet; reorienting facet f flips
// the sign of column f of the boundary.
using Orientation = std::vector<int>;

inline std::string orientation_to_string(Orientation const &eps) {
    std::string s;
    s.reserve(eps.size());
    for (int v : eps)
        s.push_back(v > 0 ? '+' : '-');
    return s;
}

// Sign vector of a nowhere-zero integer vector.
inline Orientation orientation_from_vector(std::vector<Int> const &v) {
    Orientation eps(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (v[i] == 0)
            throw ZeroEntry("orientation_from_vector needs a nowhere-zero vector");
        eps[i] = v[i] > 0 ? 1 : -1;
    }
    return eps;
}

namespace detail {

inline void check_orientation(CellComplex const &x, Orientation const &eps) {
    if (eps.size() != x.num_facets())
        throw DimensionMismatch("orientation length must equal the facet count");
    for (int s : eps)
        if (s != 1 && s != -1)
            throw ZeroEntry("orientation entries must be +1 or -1");
}

inline void check_enumeration_size(std::size_t m, unsigned max_bits) {
    if (m > max_bits)
        throw SizeLimitExceeded("2^" + std::to_string(m) +
                                " orientations exceed the enumeration bound");
}

} // namespace detail

// eps is acyclic iff the reoriented complex has no nontrivial nonnegative
// real flow, i.e. { boundary (eps o w) = 0, w >= 0, sum w = 1 } is infeasible.
inline bool is_acyclic(CellComplex const &x, Orientation const &eps) {
    detail::check_orientation(x, eps);
    std::size_t n = x.num_ridges(), m = x.num_facets();
    LinearFeasibilityProblem p;
    p.num_vars = m;
    for (std::size_t i = 0; i < n; ++i) {
        std::vector<Rat> row(m);
        for (std::size_t f = 0; f < m; ++f)
            row[f] = Rat(x.boundary.at(i, f) * eps[f]);
        p.add_eq(std::move(row), Rat(0));
    }
    for (std::size_t f = 0; f < m; ++f) {
        std::vector<Rat> row(m, Rat(0));
        row[f] = 1;
        p.add_ineq(std::move(row), Rat(0));
    }
    p.add_eq(std::vector<Rat>(m, Rat(1)), Rat(1));
    return !rational_feasible(p).feasible;
}

// eps is totally cyclic iff the reoriented complex has a strictly positive
// real flow, i.e. { boundary w = 0, eps_f w_f >= 1 for every f } is feasible.
inline bool is_totally_cyclic(CellComplex const &x, Orientation const &eps) {
    detail::check_orientation(x, eps);
    std::size_t n = x.num_ridges(), m = x.num_facets();
    LinearFeasibilityProblem p;
    p.num_vars = m;
    for (std::size_t i = 0; i < n; ++i) {
        std::vector<Rat> row(m);
        for (std::size_t f = 0; f < m; ++f)
            row[f] = Rat(x.boundary.at(i, f));
        p.add_eq(std::move(row), Rat(0));
    }
    for (std::size_t f = 0; f < m; ++f) {
        std::vector<Rat> row(m, Rat(0));
        row[f] = eps[f];
        p.add_ineq(std::move(row), Rat(1));
    }
    return rational_feasible(p).feasible;
}

namespace detail {

// All 2^m orientations in mask order: bit f of the mask set means eps_f = -1.
template <typename Pred>
std::vector<Orientation> enumerate_orientations(CellComplex const &x, unsigned max_bits,
                                                Pred &&keep) {
    std::size_t m = x.num_facets();
    check_enumeration_size(m, max_bits);
    std::vector<Orientation> out;
    for (unsigned long mask = 0; mask < (1ul << m); ++mask) {
        Orientation eps(m);
        for (std::size_t f = 0; f < m; ++f)
            eps[f] = (mask >> f) & 1 ? -1 : 1;
        if (keep(eps))
            out.push_back(std::move(eps));
    }
    return out;
}

} // namespace detail

inline std::vector<Orientation> enumerate_acyclic(CellComplex const &x,
                                                  unsigned max_bits = 20) {
    return detail::enumerate_orientations(
        x, max_bits, [&](Orientation const &eps) { return is_acyclic(x, eps); });
}

inline std::vector<Orientation> enumerate_totally_cyclic(CellComplex const &x,
                                                         unsigned max_bits = 20) {
    return detail::enumerate_orientations(
        x, max_bits, [&](Orientation const &eps) { return is_totally_cyclic(x, eps); });
}

// A sign choice on a subset of facets, listed by ascending facet index.
struct PartialSignMap {
    std::vector<std::size_t> domain;
    std::vector<int> signs;
};

namespace detail {

inline void check_sign_map(CellComplex const &x, PartialSignMap const &sigma) {
    if (sigma.domain.size() != sigma.signs.size())
        throw DimensionMismatch("sign map domain and signs differ in length");
    for (std::size_t i = 0; i < sigma.domain.size(); ++i) {
        if (sigma.domain[i] >= x.num_facets())
            throw IndexOutOfRange("sign map facet index out of range");
        if (i > 0 && sigma.domain[i] <= sigma.domain[i - 1])
            throw IndexOutOfRange("sign map domain must be strictly ascending");
        if (sigma.signs[i] != 1 && sigma.signs[i] != -1)
            throw ZeroEntry("sign map entries must be +1 or -1");
    }
}

// Distinct restrictions of the listed orientations to the given indices.
inline std::set<std::vector<int>> restriction_set(std::vector<Orientation> const &list,
                                                  std::vector<std::size_t> const &idx) {
    std::set<std::vector<int>> out;
    std::vector<int> r(idx.size());
    for (auto const &eps : list) {
        for (std::size_t i = 0; i < idx.size(); ++i)
            r[i] = eps[idx[i]];
        out.insert(r);
    }
    return out;
}

inline std::vector<std::size_t> zero_positions(std::vector<long> const &v) {
    std::vector<std::size_t> zero;
    for (std::size_t i = 0; i < v.size(); ++i)
        if (v[i] == 0)
            zero.push_back(i);
    return zero;
}

} // namespace detail

inline bool extends_to_acyclic(CellComplex const &x, PartialSignMap const &sigma,
                               unsigned max_bits = 20) {
    detail::check_sign_map(x, sigma);
    auto rs = detail::restriction_set(enumerate_acyclic(x, max_bits), sigma.domain);
    return rs.count(sigma.signs) > 0;
}

inline bool extends_to_totally_cyclic(CellComplex const &x, PartialSignMap const &sigma,
                                      unsigned max_bits = 20) {
    detail::check_sign_map(x, sigma);
    auto rs = detail::restriction_set(enumerate_totally_cyclic(x, max_bits), sigma.domain);
    return rs.count(sigma.signs) > 0;
}

// |{(w, sigma)}| where w is a Z_k-flow and sigma is a sign map on the zero
// set of w extending to a totally cyclic orientation. Equals
// (-1)^(m - rho) * flow_ie(x)(-k) when x has no coloops.
inline Int count_flow_pairs(CellComplex const &x, Int const &k, unsigned max_bits = 20,
                            Int const &cap = Int(20000000)) {
    if (has_coloops(x))
        throw HasColoop("flow orientation pairs need a coloop-free complex");
    long kk = detail::brute_k(k);
    detail::check_brute_bound(k, x.num_facets(), cap);
    auto tc = enumerate_totally_cyclic(x, max_bits);
    auto t = detail::mod_table(x.boundary, kk, true);
    Int count = 0;
    detail::for_each_mod_vector(
        t, x.num_facets(), kk, x.num_ridges(),
        [&](std::vector<long> const &w, std::vector<long> const &psums) {
            for (long s : psums)
                if (s != 0)
                    return;
            auto zero = detail::zero_positions(w);
            count += Int(static_cast<long>(detail::restriction_set(tc, zero).size()));
        });
    return count;
}

// |{(psi, sigma)}| where psi is a Z_k-tension and sigma is a sign map on the
// zero set of psi extending to an acyclic orientation. Equals
// (-1)^rho * tension_qp(x)(-k) when x has no loops.
inline Int count_tension_pairs(CellComplex const &x, Int const &k, unsigned max_bits = 20,
                               Int const &cap = Int(20000000)) {
    if (has_loops(x))
        throw HasLoop("tension orientation pairs need a loop-free complex");
    long kk = detail::brute_k(k);
    detail::check_brute_bound(k, x.num_facets(), cap);
    auto kernel = detail::mod_kernel_vectors(x, kk);
    detail::check_brute_bound(k, x.num_facets(),
                              cap / Int(static_cast<long>(kernel.size()) + 1));
    auto acyclic = enumerate_acyclic(x, max_bits);
    std::size_t m = x.num_facets();
    Int count = 0;
    std::vector<std::vector<long>> empty_t(m, std::vector<long>(0));
    detail::for_each_mod_vector(
        empty_t, m, kk, 0, [&](std::vector<long> const &psi, std::vector<long> const &) {
            for (auto const &w : kernel) {
                long dot = 0;
                for (std::size_t i = 0; i < m; ++i)
                    dot = (dot + psi[i] * w[i]) % kk;
                if (dot != 0)
                    return;
            }
            auto zero = detail::zero_positions(psi);
            count += Int(static_cast<long>(detail::restriction_set(acyclic, zero).size()));
        });
    return count;
}

// |{(c, sigma)}| where c is any Z_k-coloring and sigma is a sign map on the
// zero set of the induced cut c * boundary extending to an acyclic
// orientation. Equals (-1)^n * chromatic_ie(x)(-k) when x has no loops.
inline Int count_coloring_pairs(CellComplex const &x, Int const &k, unsigned max_bits = 20,
                                Int const &cap = Int(20000000)) {
    if (has_loops(x))
        throw HasLoop("coloring orientation pairs need a loop-free complex");
    long kk = detail::brute_k(k);
    detail::check_brute_bound(k, x.num_ridges(), cap);
    auto acyclic = enumerate_acyclic(x, max_bits);
    auto t = detail::mod_table(x.boundary, kk, false);
    Int count = 0;
    detail::for_each_mod_vector(
        t, x.num_ridges(), kk, x.num_facets(),
        [&](std::vector<long> const &, std::vector<long> const &psums) {
            auto zero = detail::zero_positions(psums);
            count += Int(static_cast<long>(detail::restriction_set(acyclic, zero).size()));
        });
    return count;
}

// Contract the facets with the given labels, one at a time: a facet whose
// column has become zero is removed as a loop, otherwise it is contracted
// through a unit pivot in its column.
inline CellComplex contract_set(CellComplex const &x, std::vector<std::string> const &labels) {
    CellComplex cur = x;
    for (auto const &label : labels) {
        std::size_t f = facet_index(cur, label);
        std::size_t pivot_row = cur.num_ridges();
        bool zero_column = true;
        for (std::size_t i = 0; i < cur.num_ridges(); ++i) {
            Int const &e = cur.boundary.at(i, f);
            if (e == 0)
                continue;
            zero_column = false;
            if (e == 1 || e == -1) {
                pivot_row = i;
                break;
            }
        }
        if (zero_column) {
            cur = delete_facet(cur, f);
            continue;
        }
        if (pivot_row == cur.num_ridges())
            throw NonUnitPivot("contract_set needs a unit entry in column " + label);
        cur = contract(cur, pivot_row, f);
    }
    return cur;
}

namespace detail {

inline std::string digits_to_string(std::vector<long> const &v) {
    std::string s = "[";
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (i)
            s += ",";
        s += std::to_string(v[i]);
    }
    return s + "]";
}

} // namespace detail

// For a totally unimodular complex, a sign map on the zero set of a Z_k-flow
// extends to a totally cyclic orientation iff it is itself a totally cyclic
// orientation of the contraction through the flow's support; dually, a sign
// map on the zero set of a Z_k-tension extends to an acyclic orientation iff
// it is an acyclic orientation of the deletion of the tension's support.
// Checks both equivalences over every flow/tension and sign map.
inline VerificationReport verify_tu_support_corollaries(CellComplex const &x, Int const &k,
                                                        unsigned max_bits = 20,
                                                        Int const &cap = Int(1000000)) {
    if (!is_TU(x.boundary))
        throw NotTotallyUnimodular("support corollaries assume a TU boundary");
    long kk = detail::brute_k(k);
    detail::check_brute_bound(k, x.num_facets(), cap);
    VerificationReport report;
    std::size_t m = x.num_facets();

    auto tc = enumerate_totally_cyclic(x, max_bits);
    auto acyclic = enumerate_acyclic(x, max_bits);

    auto sign_maps_consistent = [&](std::vector<long> const &obj,
                                    std::vector<Orientation> const &full_list,
                                    bool flow_side, std::size_t &pairs,
                                    std::string &witness) {
        auto zero = detail::zero_positions(obj);
        detail::check_enumeration_size(zero.size(), max_bits);
        std::vector<std::string> support;
        for (std::size_t f = 0; f < m; ++f)
            if (obj[f] != 0)
                support.push_back(x.facets[f]);
        CellComplex minor = flow_side ? contract_set(x, support) : x;
        if (!flow_side)
            for (auto const &label : support)
                minor = delete_facet(minor, label);
        auto extendable = detail::restriction_set(full_list, zero);
        for (unsigned long mask = 0; mask < (1ul << zero.size()); ++mask) {
            std::vector<int> sigma(zero.size());
            for (std::size_t i = 0; i < zero.size(); ++i)
                sigma[i] = (mask >> i) & 1 ? -1 : 1;
            bool lhs = extendable.count(sigma) > 0;
            bool rhs = flow_side ? is_totally_cyclic(minor, sigma) : is_acyclic(minor, sigma);
            ++pairs;
            if (lhs != rhs) {
                witness = (flow_side ? "flow " : "tension ") + detail::digits_to_string(obj) +
                          " sign map " + orientation_to_string(sigma) +
                          (lhs ? " extends but minor disagrees" : " fails to extend");
                return false;
            }
        }
        return true;
    };

    std::size_t flow_pairs = 0;
    std::string flow_witness;
    bool flows_ok = true;
    auto t = detail::mod_table(x.boundary, kk, true);
    detail::for_each_mod_vector(t, m, kk, x.num_ridges(),
                                [&](std::vector<long> const &w, std::vector<long> const &psums) {
                                    if (!flows_ok)
                                        return;
                                    for (long s : psums)
                                        if (s != 0)
                                            return;
                                    flows_ok = sign_maps_consistent(w, tc, true, flow_pairs,
                                                                    flow_witness);
                                });
    if (flows_ok)
        report.add_pass("flow support contraction", std::to_string(flow_pairs) + " sign maps",
                        std::to_string(flow_pairs) + " sign maps");
    else
        report.add_fail("flow support contraction", "extends to totally cyclic",
                        "totally cyclic on contraction", flow_witness);

    std::size_t tension_pairs = 0;
    std::string tension_witness;
    bool tensions_ok = true;
    auto kernel = detail::mod_kernel_vectors(x, kk);
    std::vector<std::vector<long>> empty_t(m, std::vector<long>(0));
    detail::for_each_mod_vector(
        empty_t, m, kk, 0, [&](std::vector<long> const &psi, std::vector<long> const &) {
            if (!tensions_ok)
                return;
            for (auto const &w : kernel) {
                long dot = 0;
                for (std::size_t i = 0; i < m; ++i)
                    dot = (dot + psi[i] * w[i]) % kk;
                if (dot != 0)
                    return;
            }
            tensions_ok = sign_maps_consistent(psi, acyclic, false, tension_pairs,
                                               tension_witness);
        });
    if (tensions_ok)
        report.add_pass("tension support deletion", std::to_string(tension_pairs) + " sign maps",
                        std::to_string(tension_pairs) + " sign maps");
    else
        report.add_fail("tension support deletion", "extends to acyclic",
                        "acyclic on deletion", tension_witness);

    return report;
}

} // namespace cellcount
