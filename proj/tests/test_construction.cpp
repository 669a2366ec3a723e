#include <doctest.h>

#include "cforge/family.hpp"

using namespace cforge;

namespace {

DenseMatrix from_rows(std::vector<std::vector<long>> rows) {
    DenseMatrix M(static_cast<int>(rows.size()), static_cast<int>(rows[0].size()));
    for (size_t i = 0; i < rows.size(); ++i)
        for (size_t j = 0; j < rows[i].size(); ++j)
            M.at(static_cast<int>(i), static_cast<int>(j)) = make_rational(rows[i][j]);
    return M;
}

}  // namespace

TEST_CASE("base families match the printed matrices entry for entry") {
    CHECK(base_family(1, 0).mats[0].to_dense() == from_rows({{1}}));
    CHECK(base_family(1, 1).mats[0].to_dense() == from_rows({{0, -1}, {1, 0}}));

    const auto f20 = base_family(2, 0);
    CHECK(f20.mats[0].to_dense() == from_rows({{1, 0}, {0, -1}}));
    CHECK(f20.mats[1].to_dense() == from_rows({{0, -1}, {-1, 0}}));

    const auto f21 = base_family(2, 1);
    CHECK(f21.mats[0].to_dense() == from_rows({{0, 1}, {-1, 0}}));
    CHECK(f21.mats[1].to_dense() == from_rows({{1, 0}, {0, -1}}));

    const auto f22 = base_family(2, 2);
    CHECK(f22.order == 4);
    CHECK(f22.mats[0].to_dense() ==
          from_rows({{0, -1, 0, 0}, {1, 0, 0, 0}, {0, 0, 0, -1}, {0, 0, 1, 0}}));
    CHECK(f22.mats[1].to_dense() ==
          from_rows({{0, 0, -1, 0}, {0, 0, 0, 1}, {1, 0, 0, 0}, {0, -1, 0, 0}}));

    CHECK_THROWS_AS((void)base_family(3, 0), input_error);
    CHECK_THROWS_AS((void)base_family(2, 3), input_error);
}

TEST_CASE("extension steps") {
    SUBCASE("r plus one") {
        const auto f31 = extend_r_plus_one(base_family(1, 0));
        CHECK(f31.m == 3);
        CHECK(f31.r == 1);
        CHECK(f31.order == 2);
        // slot r+1 is always [[0,1],[-1,0]] ⊗ E_l
        CHECK(f31.mats[0].to_dense() == from_rows({{0, 1}, {-1, 0}}));

        const auto f42 = extend_r_plus_one(base_family(2, 1));
        CHECK(f42.m == 4);
        CHECK(f42.r == 2);
        CHECK(f42.order == 4);
        CHECK(f42.mats[1].to_dense() ==
              kronecker(from_rows({{0, 1}, {-1, 0}}), DenseMatrix::identity(2)));
    }
    SUBCASE("to full") {
        const auto f33 = extend_to_full(base_family(1, 0));
        CHECK(f33.m == 3);
        CHECK(f33.r == 3);
        CHECK(f33.order == 4);
        for (const auto& A : f33.mats) CHECK(A.transpose() == A.negated());

        const auto f44 = extend_to_full(base_family(2, 0));
        CHECK(f44.order == 8);
        for (const auto& A : f44.mats) CHECK(A.transpose() == A.negated());

        CHECK_THROWS_AS((void)extend_to_full(base_family(1, 1)), input_error);
    }
    SUBCASE("to zero") {
        const auto f40 = extend_to_zero(base_family(2, 2));
        CHECK(f40.m == 4);
        CHECK(f40.r == 0);
        CHECK(f40.order == 8);
        for (const auto& A : f40.mats) CHECK(A.transpose() == A);

        const auto f30 = extend_to_zero(base_family(1, 1));
        CHECK(f30.order == 4);

        CHECK_THROWS_AS((void)extend_to_zero(base_family(2, 0)), input_error);
    }
}

TEST_CASE("construction sweep for every signature with m <= 10") {
    // check_family inside each step re-verifies the anticommutation relations,
    // orthogonality and the skew/symmetric split exactly.
    for (int m = 1; m <= 10; ++m)
        for (int r = 0; r <= m; ++r) {
            auto [fam, trace] = construct_family(m, r);
            CHECK(fam.m == m);
            CHECK(fam.r == r);
            check_family(fam);

            // order recursion agrees with a trace replay
            const OrthogonalFamily replayed = replay_trace(trace);
            CHECK(replayed.order == fam.order);
            REQUIRE(replayed.m == fam.m);
            for (int i = 0; i < fam.m; ++i) CHECK(replayed.mats[i] == fam.mats[i]);
        }
}

TEST_CASE("anchor orders and determinism") {
    auto [f40, t40] = construct_family(4, 0);
    CHECK(f40.order == 8);
    auto [f44, t44] = construct_family(4, 4);
    CHECK(f44.order == 8);
    auto [f11, t11] = construct_family(1, 1);
    CHECK(f11.mats[0].to_dense() == from_rows({{0, -1}, {1, 0}}));

    // bit-identical across calls
    auto [f40b, t40b] = construct_family(4, 0);
    REQUIRE(t40.steps.size() == t40b.steps.size());
    for (size_t i = 0; i < t40.steps.size(); ++i)
        CHECK(t40.steps[i].name() == t40b.steps[i].name());
    for (int i = 0; i < 4; ++i) CHECK(f40.mats[i] == f40b.mats[i]);
}

TEST_CASE("lift to Clifford systems") {
    auto [f40, t40] = construct_family(4, 0);
    const CliffordSystem s51 = lift_to_clifford_system(f40, 1);
    CHECK(s51.l == 8);
    CHECK(s51.s == 8);
    CHECK(verify_system(s51).pass);

    auto [f44, t44] = construct_family(4, 4);
    const CliffordSystem s52 = lift_to_clifford_system(f44, 1);
    CHECK(s52.l == 8);
    CHECK(verify_system(s52).pass);

    // base (2,1) with d = 2 lives on R^8_4
    const CliffordSystem s21 = lift_to_clifford_system(base_family(2, 1), 2);
    CHECK(s21.ambient_dim() == 8);
    CHECK(s21.s == 4);
    CHECK(verify_system(s21).pass);

    // the lift doubles 2d-fold: operators are signed permutations throughout
    CHECK(s21.all_signed_perm());
}

TEST_CASE("minimal order lookup") {
    const long expect[8] = {1, 2, 4, 4, 8, 8, 8, 8};
    for (int m = 0; m <= 7; ++m) CHECK(minimal_order_lookup(m) == expect[m]);
    CHECK(minimal_order_lookup(9) == 32);   // 16 * l(1)
    CHECK(minimal_order_lookup(8) == 16);   // 16 * l(0)
    CHECK(minimal_order_lookup(12) == 128); // 16 * l(4)
    CHECK_THROWS_AS((void)minimal_order_lookup(-1), input_error);
}

TEST_CASE("step order growth matches the three lemmas") {
    for (int m = 1; m <= 6; ++m) {
        for (int r = 0; r <= m; ++r) {
            auto [fam, trace] = construct_family(m, r);
            if (1 <= r && r <= m - 1 && m > 2) {
                auto [prev, pt] = construct_family(m - 2, r - 1);
                CHECK(fam.order == 2 * prev.order);
            }
            if (r == m && m > 2) {
                auto [prev, pt] = construct_family(m - 2, 0);
                CHECK(fam.order == 4 * prev.order);
            }
            if (r == 0 && m > 2) {
                auto [prev, pt] = construct_family(m - 2, m - 2);
                CHECK(fam.order == 2 * prev.order);
            }
        }
    }
}
