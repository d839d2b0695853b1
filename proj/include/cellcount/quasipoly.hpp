#pragma once

#include <json.hpp>

#include <algorithm>
#include <map>
#include <string>
#include <vector>

#include "cellcount/errors.hpp"
#include "cellcount/numeric.hpp"

namespace cellcount {

namespace detail {

inline void trim_poly(std::vector<Rat> &coeffs) {
    while (!coeffs.empty() && coeffs.back() == 0)
        coeffs.pop_back();
}

inline std::vector<Rat> poly_add(std::vector<Rat> const &a, std::vector<Rat> const &b,
                                 Rat const &scale_b) {
    std::vector<Rat> out(std::max(a.size(), b.size()), Rat(0));
    for (std::size_t i = 0; i < a.size(); ++i)
        out[i] += a[i];
    for (std::size_t i = 0; i < b.size(); ++i)
        out[i] += scale_b * b[i];
    trim_poly(out);
    return out;
}

inline std::vector<Rat> poly_mul(std::vector<Rat> const &a, std::vector<Rat> const &b) {
    if (a.empty() || b.empty())
        return {};
    std::vector<Rat> out(a.size() + b.size() - 1, Rat(0));
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j)
            out[i + j] += a[i] * b[j];
    trim_poly(out);
    return out;
}

inline Rat poly_eval(std::vector<Rat> const &coeffs, Rat const &x) {
    Rat v = 0;
    for (std::size_t i = coeffs.size(); i-- > 0;)
        v = v * x + coeffs[i];
    return v;
}

} // namespace detail

// A quasipolynomial of period p: p polynomial constituents with exact
// rational coefficients (ascending powers), indexed by the canonical residue
// of the argument in [0, p-1]. Always stored in normalized form: trailing
// zero coefficients trimmed and the period minimal.
class Quasipolynomial {
  public:
    Quasipolynomial() : period_(1), constituents_(1) {}

    static Quasipolynomial constant(Rat const &c) {
        Quasipolynomial q;
        if (c != 0)
            q.constituents_[0] = {c};
        return q;
    }

    // coeff * k^power
    static Quasipolynomial monomial(Rat const &coeff, std::size_t power) {
        Quasipolynomial q;
        if (coeff != 0) {
            q.constituents_[0].assign(power + 1, Rat(0));
            q.constituents_[0][power] = coeff;
        }
        return q;
    }

    static Quasipolynomial from_constituents(std::vector<std::vector<Rat>> constituents) {
        if (constituents.empty())
            throw DimensionMismatch("quasipolynomial needs at least one constituent");
        Quasipolynomial q;
        q.period_ = constituents.size();
        q.constituents_ = std::move(constituents);
        q.normalize();
        return q;
    }

    std::size_t period() const { return period_; }
    std::vector<std::vector<Rat>> const &constituents() const { return constituents_; }

    bool is_zero() const {
        for (auto const &c : constituents_)
            if (!c.empty())
                return false;
        return true;
    }

    bool is_polynomial() const { return period_ == 1; }

    // Max constituent degree; -1 for the zero quasipolynomial.
    int degree() const {
        int d = -1;
        for (auto const &c : constituents_)
            d = std::max(d, static_cast<int>(c.size()) - 1);
        return d;
    }

    // Negative arguments use the canonical residue in [0, p-1].
    Rat evaluate(Int const &k) const {
        Int p(static_cast<long>(period_));
        std::size_t r = static_cast<std::size_t>(static_cast<unsigned long>(mod_canonical(k, p)));
        return detail::poly_eval(constituents_[r], Rat(k));
    }

    // Evaluate where the value is known to be an integer (counting uses).
    Int evaluate_int(Int const &k) const {
        Rat v = evaluate(k);
        if (!rat_is_integer(v))
            throw Error("quasipolynomial value is not an integer at k=" + k.str());
        return rat_numerator(v);
    }

    Quasipolynomial operator+(Quasipolynomial const &other) const {
        return combined(other, Rat(1));
    }
    Quasipolynomial operator-(Quasipolynomial const &other) const {
        return combined(other, Rat(-1));
    }

    Quasipolynomial operator*(Quasipolynomial const &other) const {
        std::size_t p = lcm_period(other);
        std::vector<std::vector<Rat>> cs(p);
        for (std::size_t r = 0; r < p; ++r)
            cs[r] = detail::poly_mul(constituents_[r % period_],
                                     other.constituents_[r % other.period_]);
        return from_constituents(std::move(cs));
    }

    Quasipolynomial scaled(Rat const &s) const {
        std::vector<std::vector<Rat>> cs = constituents_;
        for (auto &c : cs)
            for (auto &v : c)
                v *= s;
        return from_constituents(std::move(cs));
    }

    // Exact division by k^power; every constituent must have its low
    // coefficients zero.
    Quasipolynomial divided_by_power(std::size_t power) const {
        std::vector<std::vector<Rat>> cs(period_);
        for (std::size_t r = 0; r < period_; ++r) {
            auto const &c = constituents_[r];
            for (std::size_t i = 0; i < std::min(power, c.size()); ++i)
                if (c[i] != 0)
                    throw Error("inexact division by k^" + std::to_string(power));
            if (c.size() > power)
                cs[r].assign(c.begin() + static_cast<std::ptrdiff_t>(power), c.end());
        }
        return from_constituents(std::move(cs));
    }

    bool operator==(Quasipolynomial const &other) const {
        return period_ == other.period_ && constituents_ == other.constituents_;
    }
    bool operator!=(Quasipolynomial const &other) const { return !(*this == other); }

    std::string to_string() const {
        std::string s = "period " + std::to_string(period_) + ":";
        for (std::size_t r = 0; r < period_; ++r) {
            s += " [";
            for (std::size_t i = 0; i < constituents_[r].size(); ++i)
                s += (i ? "," : "") + rat_to_string(constituents_[r][i]);
            s += "]";
        }
        return s;
    }

  private:
    std::size_t lcm_period(Quasipolynomial const &other) const {
        std::size_t a = period_, b = other.period_;
        std::size_t g = 1;
        for (std::size_t d = 1; d <= std::min(a, b); ++d)
            if (a % d == 0 && b % d == 0)
                g = d;
        return a / g * b;
    }

    Quasipolynomial combined(Quasipolynomial const &other, Rat const &scale) const {
        std::size_t p = lcm_period(other);
        std::vector<std::vector<Rat>> cs(p);
        for (std::size_t r = 0; r < p; ++r)
            cs[r] = detail::poly_add(constituents_[r % period_],
                                     other.constituents_[r % other.period_], scale);
        return from_constituents(std::move(cs));
    }

    void normalize() {
        for (auto &c : constituents_)
            detail::trim_poly(c);
        for (std::size_t d = 1; d < period_; ++d) {
            if (period_ % d != 0)
                continue;
            bool collapses = true;
            for (std::size_t r = d; r < period_ && collapses; ++r)
                if (constituents_[r] != constituents_[r % d])
                    collapses = false;
            if (collapses) {
                constituents_.resize(d);
                period_ = d;
                return;
            }
        }
    }

    std::size_t period_;
    std::vector<std::vector<Rat>> constituents_;
};

// True when the two agree on every integer in [lo, lo + count).
inline bool agrees_on_range(Quasipolynomial const &a, Quasipolynomial const &b, Int lo,
                            std::size_t count) {
    for (std::size_t i = 0; i < count; ++i)
        if (a.evaluate(lo + Int(static_cast<long>(i))) !=
            b.evaluate(lo + Int(static_cast<long>(i))))
            return false;
    return true;
}

// Interpolate a quasipolynomial of the given period and degree bound from
// (k, value) samples. Each residue class needs degree+1 samples; any extra
// samples are cross-checked against the interpolant.
inline Quasipolynomial fit(std::vector<std::pair<Int, Rat>> const &samples, std::size_t period,
                           std::size_t degree) {
    if (period < 1)
        throw DimensionMismatch("fit period must be >= 1");
    // Deduplicate by argument, rejecting contradictory duplicates.
    std::map<Int, Rat> by_k;
    for (auto const &[k, v] : samples) {
        auto it = by_k.find(k);
        if (it != by_k.end() && it->second != v)
            throw InconsistentSamples("contradictory samples at k=" + k.str());
        by_k[k] = v;
    }
    std::vector<std::vector<std::pair<Int, Rat>>> classes(period);
    for (auto const &[k, v] : by_k) {
        std::size_t r =
            static_cast<std::size_t>(static_cast<unsigned long>(mod_canonical(k, Int(static_cast<long>(period)))));
        classes[r].emplace_back(k, v);
    }

    std::vector<std::vector<Rat>> cs(period);
    for (std::size_t r = 0; r < period; ++r) {
        auto const &pts = classes[r];
        std::size_t need = degree + 1;
        if (pts.size() < need)
            throw InsufficientSamples("residue class " + std::to_string(r) + " mod " +
                                      std::to_string(period) + " has " +
                                      std::to_string(pts.size()) + " samples, needs " +
                                      std::to_string(need));
        // Solve the Vandermonde system on the first degree+1 nodes.
        std::size_t n = need;
        std::vector<std::vector<Rat>> m(n, std::vector<Rat>(n + 1, Rat(0)));
        for (std::size_t i = 0; i < n; ++i) {
            Rat x(pts[i].first);
            Rat pw = 1;
            for (std::size_t j = 0; j < n; ++j) {
                m[i][j] = pw;
                pw *= x;
            }
            m[i][n] = pts[i].second;
        }
        for (std::size_t col = 0; col < n; ++col) {
            std::size_t piv = col;
            while (piv < n && m[piv][col] == 0)
                ++piv;
            if (piv == n)
                throw Error("fit: singular interpolation system");
            std::swap(m[col], m[piv]);
            Rat p = m[col][col];
            for (auto &v : m[col])
                v /= p;
            for (std::size_t i = 0; i < n; ++i) {
                if (i == col || m[i][col] == 0)
                    continue;
                Rat f = m[i][col];
                for (std::size_t j = col; j <= n; ++j)
                    m[i][j] -= f * m[col][j];
            }
        }
        std::vector<Rat> coeffs(n);
        for (std::size_t i = 0; i < n; ++i)
            coeffs[i] = m[i][n];
        // Held-out samples must match exactly.
        for (std::size_t i = n; i < pts.size(); ++i)
            if (detail::poly_eval(coeffs, Rat(pts[i].first)) != pts[i].second)
                throw InconsistentSamples("sample at k=" + pts[i].first.str() +
                                          " contradicts the fitted constituent");
        detail::trim_poly(coeffs);
        cs[r] = std::move(coeffs);
    }
    return Quasipolynomial::from_constituents(std::move(cs));
}

// --- JSON form: {"period": p, "constituents": [["c0", "c1", ...], ...]} ---

inline nlohmann::ordered_json to_json(Quasipolynomial const &q) {
    nlohmann::ordered_json j;
    j["period"] = q.period();
    nlohmann::ordered_json cs = nlohmann::ordered_json::array();
    for (auto const &c : q.constituents()) {
        nlohmann::ordered_json row = nlohmann::ordered_json::array();
        for (auto const &v : c)
            row.push_back(rat_to_string(v));
        cs.push_back(std::move(row));
    }
    j["constituents"] = std::move(cs);
    return j;
}

inline Quasipolynomial quasipoly_from_json(nlohmann::json const &j) {
    if (!j.is_object() || !j.contains("period") || !j.contains("constituents"))
        throw DimensionMismatch("quasipolynomial JSON must have period and constituents");
    std::size_t period = j.at("period").get<std::size_t>();
    auto const &cs = j.at("constituents");
    if (!cs.is_array() || cs.size() != period)
        throw DimensionMismatch("quasipolynomial JSON needs one constituent per residue");
    std::vector<std::vector<Rat>> out;
    for (auto const &row : cs) {
        std::vector<Rat> coeffs;
        for (auto const &v : row)
            coeffs.push_back(rat_from_string(v.get<std::string>()));
        out.push_back(std::move(coeffs));
    }
    return Quasipolynomial::from_constituents(std::move(out));
}

} // namespace cellcount
