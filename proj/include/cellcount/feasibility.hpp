#pragma once

#include <algorithm>
#include <map>
#include <vector>

#include "cellcount/errors.hpp"
#include "cellcount/numeric.hpp"

namespace cellcount {

// Decide { eq_lhs x = eq_rhs, ineq_lhs x >= ineq_rhs } over Q, with
// per-row strictness on the inequalities (strict[i] turns row i into >).
struct LinearFeasibilityProblem {
    std::size_t num_vars = 0;
    std::vector<std::vector<Rat>> eq_lhs;
    std::vector<Rat> eq_rhs;
    std::vector<std::vector<Rat>> ineq_lhs;
    std::vector<Rat> ineq_rhs;
    std::vector<bool> strict; // one flag per inequality row

    void add_eq(std::vector<Rat> lhs, Rat rhs) {
        eq_lhs.push_back(std::move(lhs));
        eq_rhs.push_back(std::move(rhs));
    }
    void add_ineq(std::vector<Rat> lhs, Rat rhs, bool is_strict = false) {
        ineq_lhs.push_back(std::move(lhs));
        ineq_rhs.push_back(std::move(rhs));
        strict.push_back(is_strict);
    }
};

struct FeasibilityResult {
    bool feasible = false;
    std::vector<Rat> witness; // satisfies every constraint exactly when feasible
};

namespace detail {

struct FmConstraint {
    std::vector<Rat> a;
    Rat rhs;
    bool strict;
};

// Keep only the strongest constraint per coefficient vector and normalize
// scale so duplicates collapse.
inline void fm_normalize(std::vector<FmConstraint> &cs, bool &infeasible) {
    std::map<std::vector<Rat>, std::pair<Rat, bool>> strongest;
    for (auto &c : cs) {
        Rat lead = 0;
        for (auto const &v : c.a)
            if (v != 0) {
                lead = v < 0 ? Rat(-v) : v;
                break;
            }
        if (lead == 0) {
            // Constant row: 0 >= rhs.
            if (c.rhs > 0 || (c.rhs == 0 && c.strict))
                infeasible = true;
            continue;
        }
        for (auto &v : c.a)
            v /= lead;
        c.rhs /= lead;
        auto it = strongest.find(c.a);
        if (it == strongest.end()) {
            strongest.emplace(c.a, std::make_pair(c.rhs, c.strict));
        } else {
            Rat &rhs = it->second.first;
            bool &st = it->second.second;
            if (c.rhs > rhs) {
                rhs = c.rhs;
                st = c.strict;
            } else if (c.rhs == rhs) {
                st = st || c.strict;
            }
        }
    }
    cs.clear();
    for (auto const &[a, rs] : strongest)
        cs.push_back(FmConstraint{a, rs.first, rs.second});
}

struct FmStep {
    std::size_t var;
    std::vector<FmConstraint> lowers; // coefficient of var positive
    std::vector<FmConstraint> uppers; // coefficient of var negative
};

} // namespace detail

// Exact feasibility by Gaussian elimination of the equalities followed by
// Fourier-Motzkin elimination with strictness tracking. Intended for the
// small systems that arise from orientation tests; the constraint count is
// capped and SizeLimitExceeded is raised beyond it.
inline FeasibilityResult rational_feasible(LinearFeasibilityProblem const &problem,
                                           std::size_t constraint_cap = 200000) {
    std::size_t nv = problem.num_vars;
    for (auto const &row : problem.eq_lhs)
        if (row.size() != nv)
            throw DimensionMismatch("equality row width");
    for (auto const &row : problem.ineq_lhs)
        if (row.size() != nv)
            throw DimensionMismatch("inequality row width");
    if (problem.eq_lhs.size() != problem.eq_rhs.size() ||
        problem.ineq_lhs.size() != problem.ineq_rhs.size() ||
        problem.ineq_lhs.size() != problem.strict.size())
        throw DimensionMismatch("constraint row counts");

    // --- Reduced row echelon form of [eq_lhs | eq_rhs] ---
    std::vector<std::vector<Rat>> eq;
    for (std::size_t i = 0; i < problem.eq_lhs.size(); ++i) {
        auto row = problem.eq_lhs[i];
        row.push_back(problem.eq_rhs[i]);
        eq.push_back(std::move(row));
    }
    std::vector<std::size_t> pivot_col_of_row;
    std::size_t r = 0;
    for (std::size_t c = 0; c < nv && r < eq.size(); ++c) {
        std::size_t piv = r;
        while (piv < eq.size() && eq[piv][c] == 0)
            ++piv;
        if (piv == eq.size())
            continue;
        std::swap(eq[r], eq[piv]);
        Rat p = eq[r][c];
        for (auto &v : eq[r])
            v /= p;
        for (std::size_t i = 0; i < eq.size(); ++i) {
            if (i == r || eq[i][c] == 0)
                continue;
            Rat f = eq[i][c];
            for (std::size_t j = 0; j <= nv; ++j)
                eq[i][j] -= f * eq[r][j];
        }
        pivot_col_of_row.push_back(c);
        ++r;
    }
    for (std::size_t i = r; i < eq.size(); ++i)
        if (eq[i][nv] != 0)
            return {}; // 0 = nonzero
    eq.resize(r);

    std::vector<bool> is_pivot(nv, false);
    for (auto c : pivot_col_of_row)
        is_pivot[c] = true;
    std::vector<std::size_t> free_vars;
    for (std::size_t c = 0; c < nv; ++c)
        if (!is_pivot[c])
            free_vars.push_back(c);
    std::vector<std::size_t> free_index(nv, 0);
    for (std::size_t i = 0; i < free_vars.size(); ++i)
        free_index[free_vars[i]] = i;

    // x_pivot = eq[row][nv] - sum over free vars of eq[row][free] * y_free.
    std::size_t nf = free_vars.size();
    auto substitute = [&](std::vector<Rat> const &lhs, Rat const &rhs) {
        detail::FmConstraint c;
        c.a.assign(nf, Rat(0));
        c.rhs = rhs;
        c.strict = false;
        for (std::size_t j = 0; j < nv; ++j) {
            if (lhs[j] == 0)
                continue;
            if (!is_pivot[j]) {
                c.a[free_index[j]] += lhs[j];
                continue;
            }
            std::size_t row = 0;
            while (pivot_col_of_row[row] != j)
                ++row;
            c.rhs -= lhs[j] * eq[row][nv];
            for (std::size_t t = 0; t < nf; ++t)
                if (eq[row][free_vars[t]] != 0)
                    c.a[t] -= lhs[j] * eq[row][free_vars[t]];
        }
        return c;
    };

    std::vector<detail::FmConstraint> cs;
    for (std::size_t i = 0; i < problem.ineq_lhs.size(); ++i) {
        auto c = substitute(problem.ineq_lhs[i], problem.ineq_rhs[i]);
        c.strict = problem.strict[i];
        cs.push_back(std::move(c));
    }

    // --- Fourier-Motzkin over the free variables ---
    bool infeasible = false;
    detail::fm_normalize(cs, infeasible);
    if (infeasible)
        return {};

    std::vector<bool> eliminated(nf, false);
    std::vector<detail::FmStep> steps;
    for (std::size_t round = 0; round < nf; ++round) {
        // Pick the variable with the fewest lower*upper products.
        std::size_t best_var = nf;
        std::size_t best_cost = 0;
        for (std::size_t v = 0; v < nf; ++v) {
            if (eliminated[v])
                continue;
            std::size_t lo = 0, hi = 0;
            for (auto const &c : cs) {
                if (c.a[v] > 0)
                    ++lo;
                else if (c.a[v] < 0)
                    ++hi;
            }
            std::size_t cost = lo * hi + lo + hi;
            if (best_var == nf || cost < best_cost) {
                best_var = v;
                best_cost = cost;
            }
        }
        std::size_t v = best_var;
        eliminated[v] = true;

        detail::FmStep step;
        step.var = v;
        std::vector<detail::FmConstraint> rest;
        for (auto const &c : cs) {
            if (c.a[v] > 0)
                step.lowers.push_back(c);
            else if (c.a[v] < 0)
                step.uppers.push_back(c);
            else
                rest.push_back(c);
        }
        for (auto const &lo : step.lowers)
            for (auto const &up : step.uppers) {
                detail::FmConstraint combo;
                combo.a.assign(nf, Rat(0));
                Rat cl = lo.a[v];        // > 0
                Rat cu = Rat(-up.a[v]);  // > 0
                for (std::size_t t = 0; t < nf; ++t)
                    combo.a[t] = cu * lo.a[t] + cl * up.a[t];
                combo.a[v] = 0;
                combo.rhs = cu * lo.rhs + cl * up.rhs;
                combo.strict = lo.strict || up.strict;
                rest.push_back(std::move(combo));
                if (rest.size() > constraint_cap)
                    throw SizeLimitExceeded("Fourier-Motzkin constraint cap");
            }
        cs = std::move(rest);
        detail::fm_normalize(cs, infeasible);
        if (infeasible)
            return {};
        steps.push_back(std::move(step));
    }

    // --- Witness by back-substitution, last eliminated variable first ---
    std::vector<Rat> y(nf, Rat(0));
    for (std::size_t si = steps.size(); si-- > 0;) {
        auto const &step = steps[si];
        bool has_lo = false, has_hi = false, lo_strict = false, hi_strict = false;
        Rat lo = 0, hi = 0;
        for (auto const &c : step.lowers) {
            Rat bound = c.rhs;
            for (std::size_t t = 0; t < nf; ++t)
                if (t != step.var && c.a[t] != 0)
                    bound -= c.a[t] * y[t];
            bound /= c.a[step.var];
            if (!has_lo || bound > lo || (bound == lo && c.strict)) {
                lo_strict = (has_lo && bound == lo) ? (lo_strict || c.strict) : c.strict;
                lo = bound;
                has_lo = true;
            }
        }
        for (auto const &c : step.uppers) {
            Rat bound = c.rhs;
            for (std::size_t t = 0; t < nf; ++t)
                if (t != step.var && c.a[t] != 0)
                    bound -= c.a[t] * y[t];
            bound /= c.a[step.var]; // negative coefficient flips to an upper bound
            if (!has_hi || bound < hi || (bound == hi && c.strict)) {
                hi_strict = (has_hi && bound == hi) ? (hi_strict || c.strict) : c.strict;
                hi = bound;
                has_hi = true;
            }
        }
        Rat value = 0;
        if (has_lo && has_hi) {
            if (lo > hi || (lo == hi && (lo_strict || hi_strict)))
                throw Error("rational_feasible: interval collapsed during witness build");
            value = lo == hi ? lo : Rat((lo + hi) / 2);
        } else if (has_lo) {
            value = lo_strict ? Rat(lo + 1) : lo;
        } else if (has_hi) {
            value = hi_strict ? Rat(hi - 1) : hi;
        }
        y[step.var] = value;
    }

    FeasibilityResult result;
    result.feasible = true;
    result.witness.assign(nv, Rat(0));
    for (std::size_t t = 0; t < nf; ++t)
        result.witness[free_vars[t]] = y[t];
    for (std::size_t row = 0; row < eq.size(); ++row) {
        Rat v = eq[row][nv];
        for (std::size_t t = 0; t < nf; ++t)
            if (eq[row][free_vars[t]] != 0)
                v -= eq[row][free_vars[t]] * y[t];
        result.witness[pivot_col_of_row[row]] = v;
    }

    // Exact verification of the witness against the original system.
    for (std::size_t i = 0; i < problem.eq_lhs.size(); ++i) {
        Rat v = 0;
        for (std::size_t j = 0; j < nv; ++j)
            v += problem.eq_lhs[i][j] * result.witness[j];
        if (v != problem.eq_rhs[i])
            throw Error("rational_feasible: witness violates an equality");
    }
    for (std::size_t i = 0; i < problem.ineq_lhs.size(); ++i) {
        Rat v = 0;
        for (std::size_t j = 0; j < nv; ++j)
            v += problem.ineq_lhs[i][j] * result.witness[j];
        if (v < problem.ineq_rhs[i] || (v == problem.ineq_rhs[i] && problem.strict[i]))
            throw Error("rational_feasible: witness violates an inequality");
    }
    return result;
}

} // namespace cellcount
