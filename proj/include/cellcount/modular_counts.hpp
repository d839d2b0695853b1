#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "cellcount/complex.hpp"
#include "cellcount/quasipoly.hpp"
#include "cellcount/unimodularity.hpp"

namespace cellcount {

namespace detail {

// Rank and invariant factors for every column subset of the boundary, plus
// the lcm of all invariant factors (a period bound for all three counting
// quasipolynomials).
struct SubsetProfile {
    std::size_t size;
    std::size_t rho;
    std::vector<Int> factors;
};

struct SubsetProfiles {
    std::vector<SubsetProfile> profiles;
    Int factor_lcm = 1;
};

inline SubsetProfiles subset_profiles(IntMatrix const &boundary, unsigned subset_bits) {
    if (boundary.cols() > subset_bits)
        throw SizeLimitExceeded("facet count " + std::to_string(boundary.cols()) +
                                " exceeds the 2^" + std::to_string(subset_bits) +
                                " subset enumeration bound");
    SubsetProfiles out;
    for_each_column_subset(boundary.cols(), [&](std::vector<std::size_t> const &cols) {
        SubsetProfile p;
        p.size = cols.size();
        p.factors = invariant_factors(boundary.select_columns(cols));
        p.rho = p.factors.size();
        for (auto const &f : p.factors)
            out.factor_lcm = int_lcm(out.factor_lcm, f);
        out.profiles.push_back(std::move(p));
    });
    return out;
}

// gamma(X_J, k) is constant on each residue class mod any multiple of all
// invariant factors; this evaluates it at the class representative r.
inline Int gamma_at_residue(std::vector<Int> const &factors, Int const &r) {
    Int g = 1;
    for (auto const &a : factors)
        g *= int_gcd(r, a);
    return g;
}

inline std::size_t period_from_lcm(Int const &factor_lcm) {
    if (factor_lcm < 1 || factor_lcm > 1000000)
        throw SizeLimitExceeded("quasipolynomial period bound " + factor_lcm.str() +
                                " out of range");
    return static_cast<std::size_t>(static_cast<unsigned long>(factor_lcm));
}

} // namespace detail

// Number of proper Z_k-colorings: vectors c in Z_k^ridges with c * boundary
// nowhere zero mod k. Inclusion-exclusion over facet subsets J:
// sum_J (-1)^|J| k^(n - rho(J)) gamma(X_J, k), built exactly per residue
// class of the period bound.
inline Quasipolynomial chromatic_ie(CellComplex const &x, unsigned subset_bits = 20) {
    auto data = detail::subset_profiles(x.boundary, subset_bits);
    std::size_t n = x.num_ridges();
    std::size_t period = detail::period_from_lcm(data.factor_lcm);
    std::vector<std::vector<Rat>> cs(period, std::vector<Rat>(n + 1, Rat(0)));
    for (std::size_t r = 0; r < period; ++r) {
        Int rr(static_cast<long>(r));
        for (auto const &p : data.profiles) {
            Int term = detail::gamma_at_residue(p.factors, rr);
            if (p.size % 2)
                term = -term;
            cs[r][n - p.rho] += Rat(term);
        }
    }
    return Quasipolynomial::from_constituents(std::move(cs));
}

// Number of nowhere-zero Z_k-flows: vectors w in Z_k^facets with
// boundary * w = 0 mod k. sum_J (-1)^(m-|J|) k^(|J| - rho(J)) gamma(X_J, k).
inline Quasipolynomial flow_ie(CellComplex const &x, unsigned subset_bits = 20) {
    auto data = detail::subset_profiles(x.boundary, subset_bits);
    std::size_t m = x.num_facets();
    std::size_t period = detail::period_from_lcm(data.factor_lcm);
    std::vector<std::vector<Rat>> cs(period, std::vector<Rat>(m + 1, Rat(0)));
    for (std::size_t r = 0; r < period; ++r) {
        Int rr(static_cast<long>(r));
        for (auto const &p : data.profiles) {
            Int term = detail::gamma_at_residue(p.factors, rr);
            if ((m - p.size) % 2)
                term = -term;
            cs[r][p.size - p.rho] += Rat(term);
        }
    }
    return Quasipolynomial::from_constituents(std::move(cs));
}

// Number of nowhere-zero Z_k-tensions, via
// tau*(k) = (1 / gamma(X,k)) sum_J (-1)^|J| k^(rho - rho(J)) gamma(X_J, k).
// Division happens per residue class; the values are counts, so an internal
// integrality check guards against drift.
inline Quasipolynomial tension_qp(CellComplex const &x, unsigned subset_bits = 20) {
    auto data = detail::subset_profiles(x.boundary, subset_bits);
    std::size_t rho = complex_rank(x);
    std::size_t period = detail::period_from_lcm(data.factor_lcm);
    auto full_factors = invariant_factors(x.boundary);
    std::vector<std::vector<Rat>> cs(period, std::vector<Rat>(rho + 1, Rat(0)));
    for (std::size_t r = 0; r < period; ++r) {
        Int rr(static_cast<long>(r));
        Rat divisor(detail::gamma_at_residue(full_factors, rr));
        for (auto const &p : data.profiles) {
            Int term = detail::gamma_at_residue(p.factors, rr);
            if (p.size % 2)
                term = -term;
            cs[r][rho - p.rho] += Rat(term) / divisor;
        }
    }
    Quasipolynomial q = Quasipolynomial::from_constituents(std::move(cs));
    for (long k = 1; k <= static_cast<long>(2 * period) + 2; ++k) {
        Rat v = q.evaluate(k);
        if (!rat_is_integer(v) || v < 0)
            throw Error("tension count must be a nonnegative integer at k=" +
                        std::to_string(k) + ", got " + rat_to_string(v));
    }
    return q;
}

namespace detail {

struct DelconMemo {
    std::map<std::string, Quasipolynomial> chromatic;
    std::map<std::string, Quasipolynomial> flow;
    std::unordered_map<std::string, bool> ish;
};

// A unit entry whose deletion and contraction branches are both iteratively
// shrinkable; recursing through such pivots is guaranteed to terminate in
// base cases whenever the matrix itself is ISH.
inline std::optional<std::pair<std::size_t, std::size_t>>
find_shrink_pivot(IntMatrix const &m, std::unordered_map<std::string, bool> &ish) {
    for (std::size_t f = 0; f < m.cols(); ++f)
        for (std::size_t r = 0; r < m.rows(); ++r)
            if (int_abs(m.at(r, f)) == 1 && is_ish_memo(m.delete_column(f), ish) &&
                is_ish_memo(pivot(m, r, f), ish))
                return std::make_pair(r, f);
    return std::nullopt;
}

// The coloop shortcut applies when the pivoted row (row r without column f)
// is a Z-linear combination of the rows of the contracted matrix.
inline bool coloop_shortcut_applies(IntMatrix const &m, std::size_t r, std::size_t f) {
    std::size_t full = rank(m);
    if (rank(m.delete_column(f)) + 1 != full)
        return false; // not a coloop
    IntMatrix contracted = pivot(m, r, f);
    std::vector<Int> v;
    for (std::size_t j = 0; j < m.cols(); ++j)
        if (j != f)
            v.push_back(m.at(r, j));
    return integer_solve(contracted.transpose(), v).has_value();
}

inline Quasipolynomial chromatic_delcon_impl(IntMatrix const &m, DelconMemo &memo) {
    std::string key = m.serialize();
    auto it = memo.chromatic.find(key);
    if (it != memo.chromatic.end())
        return it->second;

    Quasipolynomial result;
    if (m.cols() == 0) {
        result = Quasipolynomial::monomial(Rat(1), m.rows()); // k^n
    } else {
        bool loop = false;
        for (std::size_t f = 0; f < m.cols() && !loop; ++f)
            loop = m.column_is_zero(f);
        if (loop) {
            result = Quasipolynomial(); // a loop kills every proper coloring
        } else {
            auto p = find_shrink_pivot(m, memo.ish);
            if (!p)
                throw NotShrinkable("no unit pivot with shrinkable branches (" + key + ")");
            auto [r, f] = *p;
            if (coloop_shortcut_applies(m, r, f)) {
                Quasipolynomial km1 =
                    Quasipolynomial::monomial(Rat(1), 1) - Quasipolynomial::constant(Rat(1));
                result = km1 * chromatic_delcon_impl(pivot(m, r, f), memo);
            } else {
                result = chromatic_delcon_impl(m.delete_column(f), memo) -
                         chromatic_delcon_impl(pivot(m, r, f), memo);
            }
        }
    }
    memo.chromatic[key] = result;
    return result;
}

inline Quasipolynomial flow_delcon_impl(IntMatrix const &m, DelconMemo &memo) {
    std::string key = m.serialize();
    auto it = memo.flow.find(key);
    if (it != memo.flow.end())
        return it->second;

    Quasipolynomial result;
    if (m.cols() == 0) {
        result = Quasipolynomial::constant(Rat(1)); // the empty flow
    } else {
        std::optional<std::size_t> loop;
        for (std::size_t f = 0; f < m.cols() && !loop; ++f)
            if (m.column_is_zero(f))
                loop = f;
        if (loop) {
            // A loop's value is unconstrained and must be nonzero: factor k-1.
            Quasipolynomial km1 =
                Quasipolynomial::monomial(Rat(1), 1) - Quasipolynomial::constant(Rat(1));
            result = km1 * flow_delcon_impl(m.delete_column(*loop), memo);
        } else {
            auto p = find_shrink_pivot(m, memo.ish);
            if (!p)
                throw NotShrinkable("no unit pivot with shrinkable branches (" + key + ")");
            auto [r, f] = *p;
            result = flow_delcon_impl(pivot(m, r, f), memo) -
                     flow_delcon_impl(m.delete_column(f), memo);
        }
    }
    memo.flow[key] = result;
    return result;
}

// tau*(k) = k^(rho - n) chi*(k) / gamma(X, k), applied per residue class.
inline Quasipolynomial chromatic_to_tension(CellComplex const &x, Quasipolynomial const &chi) {
    std::size_t n = x.num_ridges();
    auto factors = invariant_factors(x.boundary);
    std::size_t rho = factors.size();
    Int factor_lcm = 1;
    for (auto const &f : factors)
        factor_lcm = int_lcm(factor_lcm, f);
    std::size_t gperiod = period_from_lcm(factor_lcm);

    Quasipolynomial shifted = chi.divided_by_power(n - rho);
    std::size_t period = 1;
    {
        // lcm of the chi period and the gamma period
        std::size_t a = shifted.period(), b = gperiod, g = 1;
        for (std::size_t d = 1; d <= std::min(a, b); ++d)
            if (a % d == 0 && b % d == 0)
                g = d;
        period = a / g * b;
    }
    std::vector<std::vector<Rat>> cs(period);
    for (std::size_t r = 0; r < period; ++r) {
        Rat divisor(gamma_at_residue(factors, Int(static_cast<long>(r))));
        cs[r] = shifted.constituents()[r % shifted.period()];
        for (auto &c : cs[r])
            c /= divisor;
    }
    return Quasipolynomial::from_constituents(std::move(cs));
}

} // namespace detail

// Deletion-contraction route: chi*_X = chi*_{X minus f} - chi*_{X/rf} at a
// unit pivot, with the coloop shortcut chi*_X = (k-1) chi*_{X/rf} when the
// integrality condition holds. Terminates on every ISH complex.
inline Quasipolynomial chromatic_delcon(CellComplex const &x) {
    detail::DelconMemo memo;
    return detail::chromatic_delcon_impl(x.boundary, memo);
}

// phi*_X = phi*_{X/rf} - phi*_{X minus f}; loops contribute a factor k-1.
inline Quasipolynomial flow_delcon(CellComplex const &x) {
    detail::DelconMemo memo;
    return detail::flow_delcon_impl(x.boundary, memo);
}

// Tension quasipolynomial via the deletion-contraction chromatic route.
inline Quasipolynomial tension_delcon(CellComplex const &x) {
    return detail::chromatic_to_tension(x, chromatic_delcon(x));
}

namespace detail {

// Iterate over all vectors v in Z_k^len, maintaining the partial products
// psum[q] = sum_i v_i * t[i][q] mod k. Every odometer digit change is +1
// mod k (a reset from k-1 to 0 included), so each step adds row t[pos] once.
template <typename Fn>
void for_each_mod_vector(std::vector<std::vector<long>> const &t, std::size_t len, long k,
                         std::size_t forms, Fn &&fn) {
    std::vector<long> digits(len, 0), psums(forms, 0);
    while (true) {
        fn(static_cast<std::vector<long> const &>(digits),
           static_cast<std::vector<long> const &>(psums));
        std::size_t pos = 0;
        while (pos < len) {
            for (std::size_t q = 0; q < forms; ++q)
                psums[q] = (psums[q] + t[pos][q]) % k;
            if (digits[pos] + 1 < k) {
                ++digits[pos];
                break;
            }
            digits[pos] = 0;
            ++pos;
        }
        if (pos == len)
            break;
    }
}

inline long brute_k(Int const &k) {
    if (k < 1)
        throw IndexOutOfRange("modulus must be >= 1");
    if (k > 1000000)
        throw SizeLimitExceeded("modulus too large for enumeration");
    return static_cast<long>(k);
}

inline void check_brute_bound(Int const &k, std::size_t len, Int const &cap) {
    if (int_pow(k, static_cast<unsigned long>(len)) > cap)
        throw SizeLimitExceeded("enumeration k^" + std::to_string(len) +
                                " exceeds the brute-force bound");
}

// Boundary entries reduced mod k; rows index the enumerated coordinate.
inline std::vector<std::vector<long>> mod_table(IntMatrix const &m, long k, bool transpose) {
    std::size_t rows = transpose ? m.cols() : m.rows();
    std::size_t cols = transpose ? m.rows() : m.cols();
    std::vector<std::vector<long>> t(rows, std::vector<long>(cols));
    for (std::size_t i = 0; i < rows; ++i)
        for (std::size_t j = 0; j < cols; ++j)
            t[i][j] = static_cast<long>(
                mod_canonical(transpose ? m.at(j, i) : m.at(i, j), Int(k)));
    return t;
}

// All vectors of the Z_k-kernel of the boundary, as digit vectors.
inline std::vector<std::vector<long>> mod_kernel_vectors(CellComplex const &x, long k) {
    auto t = mod_table(x.boundary, k, true); // enumerate over facets
    std::vector<std::vector<long>> kernel;
    for_each_mod_vector(t, x.num_facets(), k, x.num_ridges(),
                        [&](std::vector<long> const &w, std::vector<long> const &psums) {
                            for (long s : psums)
                                if (s != 0)
                                    return;
                            kernel.push_back(w);
                        });
    return kernel;
}

} // namespace detail

// Exhaustive count of proper Z_k-colorings.
inline Int brute_chromatic(CellComplex const &x, Int const &k,
                           Int const &cap = Int(50000000)) {
    long kk = detail::brute_k(k);
    detail::check_brute_bound(k, x.num_ridges(), cap);
    auto t = detail::mod_table(x.boundary, kk, false);
    Int count = 0;
    detail::for_each_mod_vector(t, x.num_ridges(), kk, x.num_facets(),
                                [&](std::vector<long> const &, std::vector<long> const &psums) {
                                    for (long s : psums)
                                        if (s == 0)
                                            return;
                                    ++count;
                                });
    return count;
}

// Exhaustive count of nowhere-zero Z_k-flows.
inline Int brute_flow(CellComplex const &x, Int const &k, Int const &cap = Int(50000000)) {
    long kk = detail::brute_k(k);
    detail::check_brute_bound(k, x.num_facets(), cap);
    auto t = detail::mod_table(x.boundary, kk, true);
    Int count = 0;
    detail::for_each_mod_vector(t, x.num_facets(), kk, x.num_ridges(),
                                [&](std::vector<long> const &w, std::vector<long> const &psums) {
                                    for (long d : w)
                                        if (d == 0)
                                            return;
                                    for (long s : psums)
                                        if (s != 0)
                                            return;
                                    ++count;
                                });
    return count;
}

// Exhaustive count of nowhere-zero Z_k-tensions: vectors orthogonal mod k to
// the whole Z_k-kernel of the boundary (not merely to the integer kernel
// basis, which can miss torsion kernel elements).
inline Int brute_tension(CellComplex const &x, Int const &k, Int const &cap = Int(20000000)) {
    long kk = detail::brute_k(k);
    detail::check_brute_bound(k, x.num_facets(), cap);
    auto kernel = detail::mod_kernel_vectors(x, kk);
    detail::check_brute_bound(k, x.num_facets(),
                              cap / Int(static_cast<long>(kernel.size()) + 1));
    std::size_t m = x.num_facets();
    Int count = 0;
    std::vector<std::vector<long>> empty_t(m, std::vector<long>(0));
    detail::for_each_mod_vector(
        empty_t, m, kk, 0, [&](std::vector<long> const &psi, std::vector<long> const &) {
            for (long d : psi)
                if (d == 0)
                    return;
            for (auto const &w : kernel) {
                long dot = 0;
                for (std::size_t i = 0; i < m; ++i)
                    dot = (dot + psi[i] * w[i]) % kk;
                if (dot != 0)
                    return;
            }
            ++count;
        });
    return count;
}

// The cut space {c * boundary mod k} must equal the tension space
// {psi : psi orthogonal to the Z_k-kernel}.
inline bool verify_cut_equals_tension_mod(CellComplex const &x, Int const &k,
                                          Int const &cap = Int(20000000)) {
    long kk = detail::brute_k(k);
    detail::check_brute_bound(k, x.num_ridges(), cap);
    detail::check_brute_bound(k, x.num_facets(), cap);
    std::set<std::vector<long>> cuts;
    auto t = detail::mod_table(x.boundary, kk, false);
    detail::for_each_mod_vector(t, x.num_ridges(), kk, x.num_facets(),
                                [&](std::vector<long> const &, std::vector<long> const &psums) {
                                    cuts.insert(psums);
                                });
    auto kernel = detail::mod_kernel_vectors(x, kk);
    std::size_t m = x.num_facets();
    std::set<std::vector<long>> tensions;
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
            tensions.insert(psi);
        });
    return cuts == tensions;
}

} // namespace cellcount
