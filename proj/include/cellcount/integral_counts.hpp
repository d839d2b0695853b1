#pragma once

#include <algorithm>
#include <map>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "cellcount/complex.hpp"
#include "cellcount/orientations.hpp"
#include "cellcount/quasipoly.hpp"

namespace cellcount {

namespace detail {

enum class FormConstraint { eq_zero, nonzero };

// Count integer vectors v with lo_i <= v_i <= hi_i (v_i != 0 where excluded)
// satisfying one constraint per row of `forms`: the linear form either
// vanishes or is required not to vanish. Dynamic programming over a greedy
// variable order; a state is the vector of partial sums of the forms that
// have been started but not finished, so the live width stays small whenever
// the forms have local support.
inline Int count_box_solutions(std::vector<std::pair<long long, long long>> const &domains,
                               std::vector<bool> const &exclude_zero, IntMatrix const &forms,
                               std::vector<FormConstraint> const &kinds,
                               std::size_t state_cap = 2000000) {
    std::size_t nv = domains.size();
    std::size_t nf = forms.rows();
    if (forms.cols() != nv || exclude_zero.size() != nv || kinds.size() != nf)
        throw DimensionMismatch("count_box_solutions input shapes");
    for (auto const &[lo, hi] : domains)
        if (lo > hi)
            return 0;

    // Forms with empty support never accumulate anything.
    std::vector<std::vector<std::size_t>> form_vars(nf);
    for (std::size_t q = 0; q < nf; ++q) {
        for (std::size_t v = 0; v < nv; ++v)
            if (forms.at(q, v) != 0)
                form_vars[q].push_back(v);
        if (form_vars[q].empty() && kinds[q] == FormConstraint::nonzero)
            return 0;
    }

    // Partial sums are tracked in long long; reject inputs that could overflow.
    for (std::size_t q = 0; q < nf; ++q) {
        Int bound = 0;
        for (std::size_t v : form_vars[q]) {
            Int scale = std::max(domains[v].first < 0 ? -domains[v].first : domains[v].first,
                                 domains[v].second < 0 ? -domains[v].second : domains[v].second);
            Int coeff = forms.at(q, v);
            bound += (coeff < 0 ? -coeff : coeff) * scale;
        }
        if (bound > Int(1) << 62)
            throw SizeLimitExceeded("form partial sums exceed 64 bits");
    }

    // Greedy elimination order: at each step pick the variable that leaves
    // the fewest forms simultaneously started and unfinished.
    std::vector<std::size_t> order;
    std::vector<bool> done(nv, false);
    for (std::size_t step = 0; step < nv; ++step) {
        std::size_t best = nv, best_active = nf + 1;
        for (std::size_t v = 0; v < nv; ++v) {
            if (done[v])
                continue;
            std::size_t active = 0;
            for (std::size_t q = 0; q < nf; ++q) {
                bool started = false, unfinished = false;
                for (std::size_t u : form_vars[q]) {
                    if (done[u] || u == v)
                        started = true;
                    else
                        unfinished = true;
                }
                if (started && unfinished)
                    ++active;
            }
            if (active < best_active) {
                best_active = active;
                best = v;
            }
        }
        done[best] = true;
        order.push_back(best);
    }

    std::vector<std::size_t> step_of(nv);
    for (std::size_t s = 0; s < nv; ++s)
        step_of[order[s]] = s;

    std::vector<std::size_t> first_step(nf, 0), last_step(nf, 0);
    for (std::size_t q = 0; q < nf; ++q) {
        if (form_vars[q].empty())
            continue;
        std::size_t lo = nv, hi = 0;
        for (std::size_t v : form_vars[q]) {
            lo = std::min(lo, step_of[v]);
            hi = std::max(hi, step_of[v]);
        }
        first_step[q] = lo;
        last_step[q] = hi;
    }

    constexpr std::size_t fresh = static_cast<std::size_t>(-1);
    struct StepPlan {
        std::size_t var;
        long long lo, hi;
        bool skip_zero;
        // (source index in the previous state or `fresh`, coefficient)
        std::vector<std::pair<std::size_t, long long>> carry;
        std::vector<std::tuple<std::size_t, long long, FormConstraint>> finals;
    };
    std::vector<StepPlan> plan(nv);
    std::vector<std::size_t> prev_active;
    for (std::size_t s = 0; s < nv; ++s) {
        StepPlan &sp = plan[s];
        sp.var = order[s];
        sp.lo = domains[sp.var].first;
        sp.hi = domains[sp.var].second;
        sp.skip_zero = exclude_zero[sp.var];
        std::vector<std::size_t> active;
        for (std::size_t q = 0; q < nf; ++q) {
            if (form_vars[q].empty() || first_step[q] > s)
                continue;
            std::size_t src = fresh;
            for (std::size_t i = 0; i < prev_active.size(); ++i)
                if (prev_active[i] == q)
                    src = i;
            long long coeff = static_cast<long long>(forms.at(q, sp.var));
            if (last_step[q] == s) {
                sp.finals.emplace_back(src, coeff, kinds[q]);
            } else if (last_step[q] > s) {
                sp.carry.emplace_back(src, coeff);
                active.push_back(q);
            }
        }
        prev_active = std::move(active);
    }

    std::map<std::vector<long long>, Int> states{{{}, Int(1)}};
    std::vector<long long> key;
    for (auto const &sp : plan) {
        std::map<std::vector<long long>, Int> next;
        for (auto const &[ps, cnt] : states) {
            for (long long val = sp.lo; val <= sp.hi; ++val) {
                if (val == 0 && sp.skip_zero)
                    continue;
                bool ok = true;
                for (auto const &[src, coeff, kind] : sp.finals) {
                    long long total = (src == fresh ? 0 : ps[src]) + coeff * val;
                    if (kind == FormConstraint::eq_zero ? total != 0 : total == 0) {
                        ok = false;
                        break;
                    }
                }
                if (!ok)
                    continue;
                key.clear();
                for (auto const &[src, coeff] : sp.carry)
                    key.push_back((src == fresh ? 0 : ps[src]) + coeff * val);
                next[key] += cnt;
            }
        }
        if (next.size() > state_cap)
            throw SizeLimitExceeded("box counting state cap");
        states = std::move(next);
    }

    Int total = 0;
    for (auto const &[ps, cnt] : states)
        total += cnt;
    return total;
}

inline long long open_palette_radius(Int const &k) {
    if (k < 1)
        throw IndexOutOfRange("palette size must be >= 1");
    if (k > 1000000)
        throw SizeLimitExceeded("palette too large for counting");
    return static_cast<long long>(k) - 1;
}

} // namespace detail

// Proper integral k-colorings: c in (-k, k)^ridges with c * boundary nowhere
// zero.
inline Int integral_chromatic(CellComplex const &x, Int const &k,
                              std::size_t state_cap = 2000000) {
    long long r = detail::open_palette_radius(k);
    std::size_t n = x.num_ridges(), m = x.num_facets();
    std::vector<std::pair<long long, long long>> domains(n, {-r, r});
    std::vector<bool> exclude(n, false);
    IntMatrix forms = x.boundary.transpose(); // one form per facet column
    std::vector<detail::FormConstraint> kinds(m, detail::FormConstraint::nonzero);
    return detail::count_box_solutions(domains, exclude, forms, kinds, state_cap);
}

// Nowhere-zero integral k-tensions: psi in (-k, k)^facets, nowhere zero and
// orthogonal to every row of the flow basis.
inline Int integral_tension(CellComplex const &x, Int const &k,
                            std::size_t state_cap = 2000000) {
    long long r = detail::open_palette_radius(k);
    std::size_t m = x.num_facets();
    std::vector<std::pair<long long, long long>> domains(m, {-r, r});
    std::vector<bool> exclude(m, true);
    IntMatrix basis = flow_basis(x);
    std::vector<detail::FormConstraint> kinds(basis.rows(), detail::FormConstraint::eq_zero);
    return detail::count_box_solutions(domains, exclude, basis, kinds, state_cap);
}

// Nowhere-zero integral k-flows: w in (-k, k)^facets, nowhere zero with
// boundary w = 0.
inline Int integral_flow(CellComplex const &x, Int const &k,
                         std::size_t state_cap = 2000000) {
    long long r = detail::open_palette_radius(k);
    std::size_t m = x.num_facets();
    std::vector<std::pair<long long, long long>> domains(m, {-r, r});
    std::vector<bool> exclude(m, true);
    std::vector<detail::FormConstraint> kinds(x.num_ridges(), detail::FormConstraint::eq_zero);
    return detail::count_box_solutions(domains, exclude, x.boundary, kinds, state_cap);
}

enum class CountKind { chromatic, tension, flow };

inline Int integral_count(CellComplex const &x, CountKind kind, Int const &k,
                          std::size_t state_cap = 2000000) {
    switch (kind) {
    case CountKind::chromatic:
        return integral_chromatic(x, k, state_cap);
    case CountKind::tension:
        return integral_tension(x, k, state_cap);
    default:
        return integral_flow(x, k, state_cap);
    }
}

namespace detail {

// Iterate over [-k, k]^len maintaining partial form sums exactly; each
// odometer move is either +1 on a digit or a reset from k to -k.
template <typename Fn>
void for_each_box_vector(std::vector<std::vector<long long>> const &t, std::size_t len,
                         long long k, std::size_t forms, Fn &&fn) {
    std::vector<long long> digits(len, -k), psums(forms, 0);
    for (std::size_t i = 0; i < len; ++i)
        for (std::size_t q = 0; q < forms; ++q)
            psums[q] -= k * t[i][q];
    while (true) {
        fn(static_cast<std::vector<long long> const &>(digits),
           static_cast<std::vector<long long> const &>(psums));
        std::size_t pos = 0;
        while (pos < len) {
            if (digits[pos] < k) {
                ++digits[pos];
                for (std::size_t q = 0; q < forms; ++q)
                    psums[q] += t[pos][q];
                break;
            }
            digits[pos] = -k;
            for (std::size_t q = 0; q < forms; ++q)
                psums[q] -= 2 * k * t[pos][q];
            ++pos;
        }
        if (pos == len)
            break;
    }
}

inline long long closed_box_radius(Int const &k) {
    if (k < 0)
        throw IndexOutOfRange("closed box radius must be >= 0");
    if (k > 1000000)
        throw SizeLimitExceeded("closed box too large for enumeration");
    return static_cast<long long>(k);
}

inline void check_box_bound(Int const &k, std::size_t len, Int const &cap) {
    if (int_pow(2 * k + 1, static_cast<unsigned long>(len)) > cap)
        throw SizeLimitExceeded("enumeration (2k+1)^" + std::to_string(len) +
                                " exceeds the box bound");
}

inline std::vector<std::vector<long long>> box_table(IntMatrix const &m, bool transpose) {
    std::size_t rows = transpose ? m.cols() : m.rows();
    std::size_t cols = transpose ? m.rows() : m.cols();
    std::vector<std::vector<long long>> t(rows, std::vector<long long>(cols));
    for (std::size_t i = 0; i < rows; ++i)
        for (std::size_t j = 0; j < cols; ++j)
            t[i][j] = static_cast<long long>(transpose ? m.at(j, i) : m.at(i, j));
    return t;
}

inline int sign_of(long long v) { return v > 0 ? 1 : v < 0 ? -1 : 0; }

// Number of (orientation, pattern) pairs where the sign pattern never
// opposes the orientation.
inline Int compatible_pairs(std::vector<Orientation> const &orientations,
                            std::map<std::vector<int>, Int> const &pattern_counts) {
    Int total = 0;
    for (auto const &eps : orientations)
        for (auto const &[pattern, cnt] : pattern_counts) {
            bool ok = true;
            for (std::size_t f = 0; f < eps.size(); ++f)
                if (pattern[f] != 0 && pattern[f] != eps[f]) {
                    ok = false;
                    break;
                }
            if (ok)
                total += cnt;
        }
    return total;
}

} // namespace detail

// Pairs (eps, c) with eps an acyclic orientation and c in [-k, k]^ridges a
// coloring whose induced cut c * boundary is compatible with eps
// (eps_f (c boundary)_f >= 0 on every facet).
inline Int closed_pairs_chromatic(CellComplex const &x, Int const &k, unsigned max_bits = 20,
                                  Int const &cap = Int(50000000)) {
    long long r = detail::closed_box_radius(k);
    detail::check_box_bound(k, x.num_ridges(), cap);
    auto acyclic = enumerate_acyclic(x, max_bits);
    auto t = detail::box_table(x.boundary, false);
    std::map<std::vector<int>, Int> patterns;
    std::vector<int> pattern(x.num_facets());
    detail::for_each_box_vector(
        t, x.num_ridges(), r, x.num_facets(),
        [&](std::vector<long long> const &, std::vector<long long> const &psums) {
            for (std::size_t f = 0; f < psums.size(); ++f)
                pattern[f] = detail::sign_of(psums[f]);
            patterns[pattern] += 1;
        });
    return detail::compatible_pairs(acyclic, patterns);
}

// Pairs (eps, psi) with eps acyclic and psi an integral tension in
// [-k, k]^facets compatible with eps.
inline Int closed_pairs_tension(CellComplex const &x, Int const &k, unsigned max_bits = 20,
                                Int const &cap = Int(50000000)) {
    long long r = detail::closed_box_radius(k);
    detail::check_box_bound(k, x.num_facets(), cap);
    auto acyclic = enumerate_acyclic(x, max_bits);
    IntMatrix basis = flow_basis(x);
    auto t = detail::box_table(basis, true); // rows: facets, cols: basis rows
    std::map<std::vector<int>, Int> patterns;
    std::vector<int> pattern(x.num_facets());
    detail::for_each_box_vector(
        t, x.num_facets(), r, basis.rows(),
        [&](std::vector<long long> const &psi, std::vector<long long> const &psums) {
            for (long long s : psums)
                if (s != 0)
                    return;
            for (std::size_t f = 0; f < psi.size(); ++f)
                pattern[f] = detail::sign_of(psi[f]);
            patterns[pattern] += 1;
        });
    return detail::compatible_pairs(acyclic, patterns);
}

// Pairs (eps, w) with eps totally cyclic and w an integral flow in
// [-k, k]^facets compatible with eps.
inline Int closed_pairs_flow(CellComplex const &x, Int const &k, unsigned max_bits = 20,
                             Int const &cap = Int(50000000)) {
    long long r = detail::closed_box_radius(k);
    detail::check_box_bound(k, x.num_facets(), cap);
    auto tc = enumerate_totally_cyclic(x, max_bits);
    auto t = detail::box_table(x.boundary, true);
    std::map<std::vector<int>, Int> patterns;
    std::vector<int> pattern(x.num_facets());
    detail::for_each_box_vector(
        t, x.num_facets(), r, x.num_ridges(),
        [&](std::vector<long long> const &w, std::vector<long long> const &psums) {
            for (long long s : psums)
                if (s != 0)
                    return;
            for (std::size_t f = 0; f < w.size(); ++f)
                pattern[f] = detail::sign_of(w[f]);
            patterns[pattern] += 1;
        });
    return detail::compatible_pairs(tc, patterns);
}

inline Int closed_pairs_count(CellComplex const &x, CountKind kind, Int const &k,
                              unsigned max_bits = 20, Int const &cap = Int(50000000)) {
    switch (kind) {
    case CountKind::chromatic:
        return closed_pairs_chromatic(x, k, max_bits, cap);
    case CountKind::tension:
        return closed_pairs_tension(x, k, max_bits, cap);
    default:
        return closed_pairs_flow(x, k, max_bits, cap);
    }
}

// A quasipolynomial interpolated from integral counts. The period is only
// certified against the sampled window (two held-out samples per residue
// class), so it is flagged as heuristic.
struct IntegralFit {
    Quasipolynomial qp;
    std::size_t period = 1;
    bool period_is_heuristic = true;
    std::size_t samples_used = 0;
};

// Fit the integral counting function of the given kind: degree is bounded by
// the dimension of the underlying inside-out polytope, and candidate periods
// are tried in increasing order until the interpolation is consistent with
// every extra sample.
inline IntegralFit fit_integral_qp(CellComplex const &x, CountKind kind,
                                   std::size_t max_period = 6,
                                   std::size_t state_cap = 2000000) {
    std::size_t rho = complex_rank(x);
    std::size_t degree = kind == CountKind::chromatic ? x.num_ridges()
                         : kind == CountKind::tension ? rho
                                                      : x.num_facets() - rho;
    if (max_period < 1)
        throw IndexOutOfRange("max_period must be >= 1");
    std::vector<std::pair<Int, Rat>> samples;
    for (std::size_t period = 1; period <= max_period; ++period) {
        std::size_t needed = period * (degree + 3);
        while (samples.size() < needed) {
            Int k(static_cast<long>(samples.size() + 1));
            samples.emplace_back(k, Rat(integral_count(x, kind, k, state_cap)));
        }
        try {
            IntegralFit result;
            result.qp = fit(std::vector<std::pair<Int, Rat>>(samples.begin(),
                                                             samples.begin() + needed),
                            period, degree);
            result.period = period;
            result.samples_used = needed;
            return result;
        } catch (InconsistentSamples const &) {
            continue;
        }
    }
    throw PeriodSearchExhausted("no period up to " + std::to_string(max_period) +
                                " fits the integral counts");
}

} // namespace cellcount
