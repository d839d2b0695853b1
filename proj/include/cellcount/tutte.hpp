#pragma once

#include <json.hpp>

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "cellcount/complex.hpp"
#include "cellcount/modular_counts.hpp"
#include "cellcount/unimodularity.hpp"
#include "cellcount/verification.hpp"

namespace cellcount {

// Sparse bivariate polynomial with rational coefficients, keyed by exponent
// pair; only nonzero coefficients are stored.
struct BivariatePolynomial {
    std::map<std::pair<std::size_t, std::size_t>, Rat> terms;

    void add_term(std::size_t i, std::size_t j, Rat const &c) {
        if (c == 0)
            return;
        auto key = std::make_pair(i, j);
        auto it = terms.find(key);
        if (it == terms.end()) {
            terms.emplace(key, c);
            return;
        }
        it->second += c;
        if (it->second == 0)
            terms.erase(it);
    }

    Rat coefficient(std::size_t i, std::size_t j) const {
        auto it = terms.find({i, j});
        return it == terms.end() ? Rat(0) : it->second;
    }

    Rat evaluate(Rat const &xv, Rat const &yv) const {
        Rat total = 0;
        for (auto const &[key, c] : terms) {
            Rat t = c;
            for (std::size_t i = 0; i < key.first; ++i)
                t *= xv;
            for (std::size_t j = 0; j < key.second; ++j)
                t *= yv;
            total += t;
        }
        return total;
    }

    bool operator==(BivariatePolynomial const &other) const { return terms == other.terms; }
    bool operator!=(BivariatePolynomial const &other) const { return !(*this == other); }

    // Terms in descending degree order, e.g. "x^4 + x^3 + x^2 + x + y".
    std::string to_string() const {
        if (terms.empty())
            return "0";
        std::string s;
        for (auto it = terms.rbegin(); it != terms.rend(); ++it) {
            auto const &[key, c] = *it;
            Rat a = c;
            if (s.empty()) {
                if (a < 0) {
                    s += "-";
                    a = -a;
                }
            } else {
                s += a < 0 ? " - " : " + ";
                if (a < 0)
                    a = -a;
            }
            bool has_vars = key.first > 0 || key.second > 0;
            if (a != 1 || !has_vars)
                s += rat_to_string(a);
            if (key.first > 0) {
                if (a != 1)
                    s += " ";
                s += "x";
                if (key.first > 1)
                    s += "^" + std::to_string(key.first);
            }
            if (key.second > 0) {
                if (a != 1 || key.first > 0)
                    s += " ";
                s += "y";
                if (key.second > 1)
                    s += "^" + std::to_string(key.second);
            }
        }
        return s;
    }
};

inline nlohmann::ordered_json to_json(BivariatePolynomial const &p) {
    nlohmann::ordered_json terms = nlohmann::ordered_json::array();
    for (auto const &[key, c] : p.terms) {
        nlohmann::ordered_json t;
        t["x"] = key.first;
        t["y"] = key.second;
        t["coeff"] = rat_to_string(c);
        terms.push_back(std::move(t));
    }
    nlohmann::ordered_json j;
    j["terms"] = std::move(terms);
    return j;
}

namespace detail {

inline Int binomial(std::size_t n, std::size_t k) {
    if (k > n)
        return 0;
    Int result = 1;
    for (std::size_t i = 0; i < k; ++i) {
        result *= Int(static_cast<long>(n - i));
        result /= Int(static_cast<long>(i + 1));
    }
    return result;
}

// Accumulate weight * (x-1)^a * (y-1)^b.
inline void add_shifted_term(BivariatePolynomial &p, std::size_t a, std::size_t b,
                             Rat const &weight) {
    for (std::size_t i = 0; i <= a; ++i)
        for (std::size_t j = 0; j <= b; ++j) {
            Rat c = weight * Rat(binomial(a, i) * binomial(b, j));
            if ((a - i + b - j) % 2 == 1)
                c = -c;
            p.add_term(i, j, c);
        }
}

// Corank-nullity sum over all column subsets; weight 1 for the classical
// polynomial, torsion order of the subset for the arithmetic one.
inline BivariatePolynomial tutte_sum(CellComplex const &x, bool arithmetic,
                                     unsigned subset_bits) {
    auto profiles = detail::subset_profiles(x.boundary, subset_bits);
    std::size_t rho = complex_rank(x);
    BivariatePolynomial p;
    for (auto const &pr : profiles.profiles) {
        Rat weight(1);
        if (arithmetic)
            for (auto const &a : pr.factors)
                weight *= Rat(a);
        add_shifted_term(p, rho - pr.rho, pr.size - pr.rho, weight);
    }
    return p;
}

} // namespace detail

// Corank-nullity polynomial sum_J (x-1)^(rho - rho(J)) (y-1)^(|J| - rho(J)).
inline BivariatePolynomial tutte(CellComplex const &x, unsigned subset_bits = 20) {
    return detail::tutte_sum(x, false, subset_bits);
}

// Same sum with each subset weighted by its torsion order, the product of
// the invariant factors of the subset's boundary columns.
inline BivariatePolynomial arithmetic_tutte(CellComplex const &x, unsigned subset_bits = 20) {
    return detail::tutte_sum(x, true, subset_bits);
}

namespace detail {

// Substitute x = 1-k (keeping only y-degree-0 terms) or y = 1-k (keeping
// only x-degree-0 terms), producing a polynomial in k.
inline Quasipolynomial substitute_one_minus_k(BivariatePolynomial const &p, bool in_x) {
    std::size_t degree = 0;
    for (auto const &[key, c] : p.terms) {
        std::size_t main = in_x ? key.first : key.second;
        std::size_t other = in_x ? key.second : key.first;
        if (other == 0)
            degree = std::max(degree, main);
    }
    std::vector<Rat> coeffs(degree + 1, Rat(0));
    for (auto const &[key, c] : p.terms) {
        std::size_t main = in_x ? key.first : key.second;
        std::size_t other = in_x ? key.second : key.first;
        if (other != 0)
            continue;
        // (1-k)^main contributes C(main, t) (-1)^t k^t.
        for (std::size_t t = 0; t <= main; ++t) {
            Rat term = c * Rat(binomial(main, t));
            if (t % 2 == 1)
                term = -term;
            coeffs[t] += term;
        }
    }
    return Quasipolynomial::from_constituents({std::move(coeffs)});
}

inline void require_specializable(CellComplex const &x) {
    if (!is_SQU(x.boundary))
        throw NotSQU("specializations need a strongly quasi-unimodular boundary");
    if (has_loops(x))
        throw NotSQU("specializations need a boundary without zero columns");
}

} // namespace detail

// (-1)^rho k^(n - rho) T(1-k, 0).
inline Quasipolynomial chromatic_from_tutte(CellComplex const &x, unsigned subset_bits = 20) {
    detail::require_specializable(x);
    std::size_t rho = complex_rank(x);
    Quasipolynomial sub = detail::substitute_one_minus_k(tutte(x, subset_bits), true);
    if (rho % 2 == 1)
        sub = sub.scaled(Rat(-1));
    return sub * Quasipolynomial::monomial(Rat(1), x.num_ridges() - rho);
}

// (-1)^(m - rho) T(0, 1-k).
inline Quasipolynomial flow_from_tutte(CellComplex const &x, unsigned subset_bits = 20) {
    detail::require_specializable(x);
    Quasipolynomial sub = detail::substitute_one_minus_k(tutte(x, subset_bits), false);
    if ((x.num_facets() - complex_rank(x)) % 2 == 1)
        sub = sub.scaled(Rat(-1));
    return sub;
}

// (-1)^rho T(1-k, 0).
inline Quasipolynomial tension_from_tutte(CellComplex const &x, unsigned subset_bits = 20) {
    detail::require_specializable(x);
    Quasipolynomial sub = detail::substitute_one_minus_k(tutte(x, subset_bits), true);
    if (complex_rank(x) % 2 == 1)
        sub = sub.scaled(Rat(-1));
    return sub;
}

// Verify the three counting specializations of the corank-nullity polynomial
// against the independently computed quasipolynomials.
inline VerificationReport check_specializations(CellComplex const &x,
                                                unsigned subset_bits = 20) {
    detail::require_specializable(x);
    VerificationReport report;
    Quasipolynomial chi = chromatic_ie(x, subset_bits);
    Quasipolynomial phi = flow_ie(x, subset_bits);
    Quasipolynomial tau = tension_qp(x, subset_bits);
    Quasipolynomial chi_t = chromatic_from_tutte(x, subset_bits);
    Quasipolynomial phi_t = flow_from_tutte(x, subset_bits);
    Quasipolynomial tau_t = tension_from_tutte(x, subset_bits);
    report.add_equal("chromatic corank specialization", chi.to_string(), chi_t.to_string(),
                     "inclusion-exclusion and Tutte routes disagree");
    report.add_equal("flow nullity specialization", phi.to_string(), phi_t.to_string(),
                     "inclusion-exclusion and Tutte routes disagree");
    report.add_equal("tension corank specialization", tau.to_string(), tau_t.to_string(),
                     "direct and Tutte routes disagree");
    return report;
}

} // namespace cellcount
