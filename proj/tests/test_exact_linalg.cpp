#include <catch2/catch_amalgamated.hpp>

#include "cellcount/exact_linalg.hpp"

#include "oracles.hpp"

using cellcount::Int;
using cellcount::IntMatrix;

namespace {

IntMatrix mat(std::vector<std::vector<long long>> rows) { return IntMatrix::from_rows(rows); }

void check_smith_contract(IntMatrix const &m) {
    auto s = cellcount::snf(m);
    INFO("matrix:\n" << m.to_string());
    // left * M * right equals the diagonal matrix.
    auto product = s.left.multiply(m).multiply(s.right);
    REQUIRE(product == s.diagonal_matrix(m.rows(), m.cols()));
    // Transforms are unimodular.
    REQUIRE(cellcount::int_abs(cellcount::det_bareiss(s.left)) == 1);
    REQUIRE(cellcount::int_abs(cellcount::det_bareiss(s.right)) == 1);
    // Nonnegative diagonal with divisibility chain, zeros trailing.
    for (std::size_t i = 0; i < s.diagonal.size(); ++i) {
        REQUIRE(s.diagonal[i] >= 0);
        if (i + 1 < s.diagonal.size()) {
            if (s.diagonal[i] == 0)
                REQUIRE(s.diagonal[i + 1] == 0);
            else if (s.diagonal[i + 1] != 0)
                REQUIRE(s.diagonal[i + 1] % s.diagonal[i] == 0);
        }
    }
    // Independent minor-gcd oracle agrees.
    REQUIRE(s.invariant_factors() == oracles::invariant_factors_by_minors(m));
    // Invariant factors are transpose-invariant.
    REQUIRE(cellcount::invariant_factors(m) == cellcount::invariant_factors(m.transpose()));
}

} // namespace

TEST_CASE("smith normal form on pinned matrices", "[exact_linalg]") {
    check_smith_contract(mat({{2}}));
    check_smith_contract(mat({{1, 2}, {2, 4}}));
    check_smith_contract(oracles::pyramid_boundary());
    check_smith_contract(IntMatrix(0, 3));
    check_smith_contract(IntMatrix(3, 0));
    check_smith_contract(IntMatrix(2, 2));

    REQUIRE(cellcount::invariant_factors(mat({{2}})) == std::vector<Int>{2});
    REQUIRE(cellcount::invariant_factors(mat({{1, 2}, {2, 4}})) == std::vector<Int>{1});
    REQUIRE(cellcount::snf(mat({{1, 2}, {2, 4}})).diagonal == std::vector<Int>({1, 0}));
    REQUIRE(cellcount::invariant_factors(oracles::pyramid_boundary()) ==
            std::vector<Int>({1, 1, 1, 1}));
}

TEST_CASE("smith normal form on random matrices", "[exact_linalg]") {
    oracles::Rng rng(20240817);
    for (int round = 0; round < 25; ++round) {
        std::size_t rows = static_cast<std::size_t>(rng.range(1, 5));
        std::size_t cols = static_cast<std::size_t>(rng.range(1, 5));
        check_smith_contract(oracles::random_matrix(rng, rows, cols, -9, 9));
    }
}

TEST_CASE("rank via fraction-free elimination", "[exact_linalg]") {
    REQUIRE(cellcount::rank(oracles::pyramid_boundary()) == 4);
    REQUIRE(cellcount::rank(mat({{1, 2}, {2, 4}})) == 1);
    REQUIRE(cellcount::rank(IntMatrix(0, 4)) == 0);
    REQUIRE(cellcount::rank(IntMatrix::identity(3)) == 3);
    oracles::Rng rng(7);
    for (int round = 0; round < 25; ++round) {
        auto m = oracles::random_matrix(rng, static_cast<std::size_t>(rng.range(1, 4)),
                                        static_cast<std::size_t>(rng.range(1, 4)), -5, 5);
        REQUIRE(cellcount::rank(m) == cellcount::invariant_factors(m).size());
    }
}

TEST_CASE("gamma and kernel counts", "[exact_linalg]") {
    REQUIRE(cellcount::gamma(mat({{2}}), 2) == 2);
    REQUIRE(cellcount::gamma(mat({{2}}), 3) == 1);
    REQUIRE(cellcount::gamma(oracles::pyramid_boundary(), 6) == 1);

    REQUIRE(cellcount::count_kernel_mod(mat({{2}}), 4) == 2);
    REQUIRE(cellcount::count_kernel_mod(IntMatrix::identity(2), 5) == 1);
    REQUIRE(cellcount::count_kernel_mod(oracles::pyramid_boundary(), 3) == 3);

    oracles::Rng rng(99);
    for (int round = 0; round < 20; ++round) {
        std::size_t rows = static_cast<std::size_t>(rng.range(1, 3));
        std::size_t cols = static_cast<std::size_t>(rng.range(1, 4));
        auto m = oracles::random_matrix(rng, rows, cols, -4, 4);
        for (long long k = 1; k <= 5; ++k)
            REQUIRE(cellcount::count_kernel_mod(m, k) ==
                    oracles::count_kernel_mod_exhaustive(m, k));
    }
}

TEST_CASE("integer kernel basis", "[exact_linalg]") {
    auto pyramid = oracles::pyramid_boundary();
    auto basis = cellcount::kernel_basis(pyramid);
    REQUIRE(basis.rows() == 1);
    REQUIRE(basis.row(0) == std::vector<Int>({1, 1, 1, -1, -1}));

    REQUIRE(cellcount::kernel_basis(mat({{1, 2}, {2, 4}})).row(0) ==
            std::vector<Int>({2, -1}));
    REQUIRE(cellcount::kernel_basis(mat({{2}})).rows() == 0);
    // Kernel of an empty constraint set is everything; canonical order is
    // lexicographic, so the unit rows come out reversed.
    REQUIRE(cellcount::kernel_basis(IntMatrix(0, 3)) ==
            mat({{0, 0, 1}, {0, 1, 0}, {1, 0, 0}}));

    oracles::Rng rng(4242);
    for (int round = 0; round < 20; ++round) {
        auto m = oracles::random_matrix(rng, static_cast<std::size_t>(rng.range(1, 4)),
                                        static_cast<std::size_t>(rng.range(1, 5)), -5, 5);
        auto b = cellcount::kernel_basis(m);
        REQUIRE(b.rows() == m.cols() - cellcount::rank(m));
        for (std::size_t i = 0; i < b.rows(); ++i)
            REQUIRE(m.mul_vec(b.row(i)) == std::vector<Int>(m.rows(), Int(0)));
        if (b.rows() > 0) {
            // Basis of a saturated lattice: all invariant factors are 1.
            auto factors = cellcount::invariant_factors(b);
            REQUIRE(factors.size() == b.rows());
            for (auto const &f : factors)
                REQUIRE(f == 1);
        }
    }
}

TEST_CASE("pivot produces the contracted boundary", "[exact_linalg]") {
    auto pyramid = oracles::pyramid_boundary();
    auto contracted = cellcount::pivot(pyramid, 1, 0);
    REQUIRE(contracted == mat({
                              {1, 0, 1, 0},
                              {-1, 1, 0, 0},
                              {0, -1, -1, 0},
                              {1, 0, 0, 1},
                              {0, 0, 1, -1},
                              {1, 0, 0, 1},
                              {0, 1, 0, 1},
                          }));
    REQUIRE(cellcount::pivot(mat({{1, 2}, {2, 4}}), 0, 0) == mat({{0}}));
    REQUIRE_THROWS_AS(cellcount::pivot(mat({{2}}), 0, 0), cellcount::NonUnitPivot);
    REQUIRE_THROWS_AS(cellcount::pivot(mat({{1}}), 1, 0), cellcount::IndexOutOfRange);
}

TEST_CASE("integer solve", "[exact_linalg]") {
    REQUIRE_FALSE(cellcount::integer_solve(mat({{2}}), {Int(3)}).has_value());
    auto x = cellcount::integer_solve(mat({{2}}), {Int(4)});
    REQUIRE(x.has_value());
    REQUIRE((*x)[0] == 2);

    REQUIRE(cellcount::integer_solve(mat({{1, 2}, {2, 4}}), {Int(1), Int(2)}).has_value());
    REQUIRE_FALSE(
        cellcount::integer_solve(mat({{1, 2}, {2, 4}}), {Int(1), Int(1)}).has_value());

    oracles::Rng rng(555);
    for (int round = 0; round < 20; ++round) {
        auto m = oracles::random_matrix(rng, static_cast<std::size_t>(rng.range(1, 4)),
                                        static_cast<std::size_t>(rng.range(1, 4)), -5, 5);
        std::vector<Int> x0(m.cols());
        for (auto &v : x0)
            v = rng.range(-6, 6);
        auto solved = cellcount::integer_solve(m, m.mul_vec(x0));
        REQUIRE(solved.has_value());
        REQUIRE(m.mul_vec(*solved) == m.mul_vec(x0));
    }
}

TEST_CASE("totally unimodular kernel basis", "[exact_linalg]") {
    // Signed incidence matrix of the triangle (edges 12, 13, 23).
    auto k3 = mat({{-1, -1, 0}, {1, 0, -1}, {0, 1, 1}});
    auto basis = cellcount::tu_kernel_basis(k3);
    REQUIRE(basis.basis.rows() == 1);
    auto row = basis.basis.row(0);
    if (row[0] < 0)
        for (auto &v : row)
            v = -v;
    REQUIRE(row == std::vector<Int>({1, -1, 1}));

    auto pyramid = oracles::pyramid_boundary();
    auto pbasis = cellcount::tu_kernel_basis(pyramid);
    REQUIRE(pbasis.basis.rows() == 1);
    auto prow = pbasis.basis.row(0);
    if (prow[0] < 0)
        for (auto &v : prow)
            v = -v;
    REQUIRE(prow == std::vector<Int>({1, 1, 1, -1, -1}));
    // The returned basis is itself totally unimodular.
    REQUIRE_FALSE(cellcount::detail::find_non_unit_minor(pbasis.basis).has_value());

    REQUIRE_THROWS_AS(cellcount::tu_kernel_basis(mat({{2}})),
                      cellcount::NotTotallyUnimodular);
}
