#include <catch2/catch_amalgamated.hpp>

#include "cellcount/feasibility.hpp"

#include "oracles.hpp"

using cellcount::LinearFeasibilityProblem;
using cellcount::Rat;

TEST_CASE("interval systems", "[feasibility]") {
    LinearFeasibilityProblem p;
    p.num_vars = 1;
    p.add_ineq({Rat(1)}, Rat(1));   // x >= 1
    p.add_ineq({Rat(-1)}, Rat(-2)); // x <= 2
    auto r = cellcount::rational_feasible(p);
    REQUIRE(r.feasible);
    REQUIRE(r.witness[0] >= 1);
    REQUIRE(r.witness[0] <= 2);

    LinearFeasibilityProblem q;
    q.num_vars = 1;
    q.add_ineq({Rat(1)}, Rat(1));               // x >= 1
    q.add_ineq({Rat(-1)}, Rat(-1), true);       // x < 1
    REQUIRE_FALSE(cellcount::rational_feasible(q).feasible);

    LinearFeasibilityProblem touching;
    touching.num_vars = 1;
    touching.add_ineq({Rat(1)}, Rat(1));
    touching.add_ineq({Rat(-1)}, Rat(-1)); // x <= 1, point system
    auto rt = cellcount::rational_feasible(touching);
    REQUIRE(rt.feasible);
    REQUIRE(rt.witness[0] == 1);

    LinearFeasibilityProblem open_ray;
    open_ray.num_vars = 1;
    open_ray.add_ineq({Rat(1)}, Rat(5), true); // x > 5
    auto ro = cellcount::rational_feasible(open_ray);
    REQUIRE(ro.feasible);
    REQUIRE(ro.witness[0] > 5);
}

TEST_CASE("equalities and strict positivity", "[feasibility]") {
    LinearFeasibilityProblem p;
    p.num_vars = 2;
    p.add_eq({Rat(1), Rat(1)}, Rat(1)); // x + y = 1
    p.add_ineq({Rat(1), Rat(0)}, Rat(0), true);
    p.add_ineq({Rat(0), Rat(1)}, Rat(0), true);
    auto r = cellcount::rational_feasible(p);
    REQUIRE(r.feasible);
    REQUIRE(r.witness[0] > 0);
    REQUIRE(r.witness[1] > 0);
    REQUIRE(r.witness[0] + r.witness[1] == 1);

    LinearFeasibilityProblem q = p;
    q.eq_rhs[0] = 0; // x + y = 0 with x, y > 0
    REQUIRE_FALSE(cellcount::rational_feasible(q).feasible);

    LinearFeasibilityProblem inconsistent;
    inconsistent.num_vars = 1;
    inconsistent.add_eq({Rat(0)}, Rat(1)); // 0 = 1
    REQUIRE_FALSE(cellcount::rational_feasible(inconsistent).feasible);

    LinearFeasibilityProblem scaled;
    scaled.num_vars = 1;
    scaled.add_eq({Rat(2)}, Rat(4));
    auto rs = cellcount::rational_feasible(scaled);
    REQUIRE(rs.feasible);
    REQUIRE(rs.witness[0] == 2);
}

TEST_CASE("empty systems", "[feasibility]") {
    LinearFeasibilityProblem empty;
    REQUIRE(cellcount::rational_feasible(empty).feasible);

    LinearFeasibilityProblem zero_vars;
    zero_vars.num_vars = 0;
    zero_vars.add_ineq({}, Rat(1)); // 0 >= 1
    REQUIRE_FALSE(cellcount::rational_feasible(zero_vars).feasible);

    LinearFeasibilityProblem zero_strict;
    zero_strict.num_vars = 0;
    zero_strict.add_ineq({}, Rat(0), true); // 0 > 0
    REQUIRE_FALSE(cellcount::rational_feasible(zero_strict).feasible);
}

TEST_CASE("randomized feasibility properties", "[feasibility]") {
    oracles::Rng rng(31337);
    for (int round = 0; round < 60; ++round) {
        std::size_t nv = static_cast<std::size_t>(rng.range(1, 4));
        // Build a system satisfied by a known witness: always feasible, and
        // the solver's witness is verified exactly inside rational_feasible.
        std::vector<Rat> w(nv);
        for (auto &v : w)
            v = Rat(rng.range(-5, 5), rng.range(1, 3));
        LinearFeasibilityProblem p;
        p.num_vars = nv;
        for (int c = 0; c < 5; ++c) {
            std::vector<Rat> row(nv);
            Rat value = 0;
            for (std::size_t j = 0; j < nv; ++j) {
                row[j] = Rat(rng.range(-3, 3));
                value += row[j] * w[j];
            }
            if (c % 2 == 0)
                p.add_eq(row, value);
            else
                p.add_ineq(row, value - Rat(rng.range(0, 4)), false);
        }
        REQUIRE(cellcount::rational_feasible(p).feasible);

        // Adding a directly contradictory strict pair makes it infeasible.
        std::vector<Rat> row(nv, Rat(0));
        row[0] = 1;
        std::vector<Rat> neg(nv, Rat(0));
        neg[0] = -1;
        p.add_ineq(row, w[0], true);  // x0 > w0
        p.add_ineq(neg, -w[0]);       // x0 <= w0
        REQUIRE_FALSE(cellcount::rational_feasible(p).feasible);
    }
}
