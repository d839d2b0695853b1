#include <catch2/catch_amalgamated.hpp>

#include "cellcount/quasipoly.hpp"
#include "oracles.hpp"

using namespace cellcount;

namespace {

Quasipolynomial k_minus_gcd_k_2() {
    // k - gcd(k,2): constituent k-1 on odd residues, k-2 on even.
    return Quasipolynomial::from_constituents({{Rat(-2), Rat(1)}, {Rat(-1), Rat(1)}});
}

} // namespace

TEST_CASE("constituent selection uses the canonical residue") {
    Quasipolynomial q = k_minus_gcd_k_2();
    CHECK(q.period() == 2);
    CHECK(q.evaluate(4) == Rat(2));
    CHECK(q.evaluate(5) == Rat(4));
    CHECK(q.evaluate(-1) == Rat(-2));  // -1 lies in residue class 1
    CHECK(q.evaluate(-2) == Rat(-4));
    CHECK(q.evaluate_int(6) == 4);
    CHECK(q.degree() == 1);
    CHECK_FALSE(q.is_polynomial());
}

TEST_CASE("normalization collapses redundant periods and trims zeros") {
    // Same constituent repeated four times collapses to period 1.
    std::vector<Rat> c{Rat(0), Rat(1), Rat(0)};
    Quasipolynomial q = Quasipolynomial::from_constituents({c, c, c, c});
    CHECK(q.period() == 1);
    CHECK(q.constituents()[0] == std::vector<Rat>{Rat(0), Rat(1)});

    // Period 4 with pattern a,b,a,b collapses to period 2.
    Quasipolynomial r = Quasipolynomial::from_constituents(
        {{Rat(1)}, {Rat(2)}, {Rat(1)}, {Rat(2)}});
    CHECK(r.period() == 2);

    // Genuine period 4 survives.
    Quasipolynomial s = Quasipolynomial::from_constituents(
        {{Rat(1)}, {Rat(2)}, {Rat(3)}, {Rat(2)}});
    CHECK(s.period() == 4);

    CHECK(Quasipolynomial::constant(Rat(0)).is_zero());
    CHECK(Quasipolynomial().degree() == -1);
}

TEST_CASE("arithmetic lifts to the lcm period") {
    Quasipolynomial q = k_minus_gcd_k_2();
    Quasipolynomial k = Quasipolynomial::monomial(Rat(1), 1);
    Quasipolynomial gcd2 = k - q;  // gcd(k,2)
    CHECK(gcd2.period() == 2);
    CHECK(gcd2.evaluate(7) == Rat(1));
    CHECK(gcd2.evaluate(8) == Rat(2));

    // (k - gcd(k,2)) + gcd(k,2) == k collapses back to period 1.
    Quasipolynomial back = q + gcd2;
    CHECK(back.is_polynomial());
    CHECK(back == k);

    Quasipolynomial prod = q * q;
    CHECK(prod.degree() == 2);
    for (long v = -3; v <= 3; ++v)
        CHECK(prod.evaluate(v) == q.evaluate(v) * q.evaluate(v));

    Quasipolynomial tripled = q.scaled(Rat(3));
    CHECK(tripled.evaluate(5) == Rat(12));

    // Period-2 times period-3 gives period 6.
    Quasipolynomial p3 = Quasipolynomial::from_constituents({{Rat(1)}, {Rat(0)}, {Rat(0)}});
    CHECK((q * p3).period() == 6);
}

TEST_CASE("division by a power of k") {
    // k^2 * (k - gcd(k,2)) / k^2 round-trips.
    Quasipolynomial q = k_minus_gcd_k_2();
    Quasipolynomial shifted = q * Quasipolynomial::monomial(Rat(1), 2);
    CHECK(shifted.divided_by_power(2) == q);
    CHECK_THROWS_AS(q.divided_by_power(1), Error);
}

TEST_CASE("interpolation recovers exact quasipolynomials") {
    // Fit k^2 from three samples, period 1.
    std::vector<std::pair<Int, Rat>> sq;
    for (long v = 1; v <= 5; ++v)
        sq.emplace_back(v, Rat(v * v));
    Quasipolynomial q = fit(sq, 1, 2);
    CHECK(q == Quasipolynomial::monomial(Rat(1), 2));

    // Fit k - gcd(k,2) with period 2, degree 1.
    Quasipolynomial target = k_minus_gcd_k_2();
    std::vector<std::pair<Int, Rat>> samples;
    for (long v = 1; v <= 8; ++v)
        samples.emplace_back(v, target.evaluate(v));
    CHECK(fit(samples, 2, 1) == target);

    // Too few samples in one residue class.
    std::vector<std::pair<Int, Rat>> thin{{1, Rat(0)}, {3, Rat(2)}, {2, Rat(0)}};
    CHECK_THROWS_AS(fit(thin, 2, 1), InsufficientSamples);

    // Held-out sample that contradicts the interpolant.
    std::vector<std::pair<Int, Rat>> bad;
    for (long v = 1; v <= 3; ++v)
        bad.emplace_back(v, Rat(v * v));
    bad.emplace_back(4, Rat(17));
    CHECK_THROWS_AS(fit(bad, 1, 2), InconsistentSamples);

    // Contradictory duplicate samples.
    std::vector<std::pair<Int, Rat>> dup{{1, Rat(1)}, {1, Rat(2)}};
    CHECK_THROWS_AS(fit(dup, 1, 0), InconsistentSamples);
}

TEST_CASE("fitting beyond the true period still finds the function") {
    Quasipolynomial target = k_minus_gcd_k_2();
    std::vector<std::pair<Int, Rat>> samples;
    for (long v = 1; v <= 16; ++v)
        samples.emplace_back(v, target.evaluate(v));
    // Period 4 is a multiple of the true period; normalization collapses it.
    Quasipolynomial q = fit(samples, 4, 1);
    CHECK(q == target);
    CHECK(q.period() == 2);
}

TEST_CASE("equal quasipolynomials agree everywhere and vice versa") {
    oracles::Rng rng(271828);
    for (int round = 0; round < 20; ++round) {
        std::size_t period = static_cast<std::size_t>(rng.range(1, 3));
        std::size_t deg = static_cast<std::size_t>(rng.range(0, 2));
        std::vector<std::vector<Rat>> cs(period);
        for (auto &c : cs) {
            c.resize(deg + 1);
            for (auto &v : c)
                v = Rat(rng.range(-4, 4));
        }
        Quasipolynomial a = Quasipolynomial::from_constituents(cs);
        Quasipolynomial b = Quasipolynomial::from_constituents(cs);
        CHECK(a == b);
        CHECK(agrees_on_range(a, b, -6, 13));
        Quasipolynomial c = a + Quasipolynomial::constant(Rat(1));
        CHECK(a != c);
        CHECK_FALSE(agrees_on_range(a, c, -6, 13));
    }
}

TEST_CASE("quasipolynomial JSON round trip") {
    Quasipolynomial q = Quasipolynomial::from_constituents(
        {{Rat(-2), Rat(1, 2)}, {Rat(-1), Rat(1)}});
    nlohmann::ordered_json j = to_json(q);
    CHECK(j.dump() == R"({"period":2,"constituents":[["-2","1/2"],["-1","1"]]})");
    CHECK(quasipoly_from_json(nlohmann::json::parse(j.dump())) == q);

    CHECK_THROWS_AS(quasipoly_from_json(nlohmann::json::parse(R"({"period":2})")),
                    DimensionMismatch);
    CHECK_THROWS_AS(
        quasipoly_from_json(nlohmann::json::parse(R"({"period":2,"constituents":[["1"]]})")),
        DimensionMismatch);
}
