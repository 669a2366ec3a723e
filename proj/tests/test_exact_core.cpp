#include <doctest.h>

#include "cforge/dense.hpp"
#include "cforge/family.hpp"
#include "cforge/operator_matrix.hpp"
#include "cforge/prng.hpp"
#include "cforge/rational_points.hpp"

using namespace cforge;

namespace {

RatVec basis16(int i) { return rat_basis_vec(16, i - 1); }  // 1-based helper

DenseMatrix from_rows(std::vector<std::vector<long>> rows) {
    DenseMatrix M(static_cast<int>(rows.size()), static_cast<int>(rows[0].size()));
    for (size_t i = 0; i < rows.size(); ++i)
        for (size_t j = 0; j < rows[i].size(); ++j)
            M.at(static_cast<int>(i), static_cast<int>(j)) = make_rational(rows[i][j]);
    return M;
}

}  // namespace

TEST_CASE("pseudo inner products against J_{8,8}") {
    const Metric g{8, 8};
    CHECK(pseudo_inner(basis16(1), basis16(1), g) == -1);
    CHECK(pseudo_inner(basis16(9), basis16(9), g) == 1);
    CHECK(pseudo_inner(basis16(1), basis16(9), g) == 0);

    // (e1 + e8)/sqrt(2) carried unnormalized with squared scale 1/2.
    RatVec u = vec_add(basis16(1), basis16(8));
    CHECK(pseudo_inner(u, u, g) == -2);
    const ScaledVector su{u, make_rational(1, 2)};
    CHECK(pseudo_inner(su, su, g) == -1);
}

TEST_CASE("pseudo inner is symmetric and bilinear on random rationals") {
    Prng rng(11);
    const Metric g{3, 4};
    for (int trial = 0; trial < 50; ++trial) {
        RatVec u(7), v(7), w(7);
        for (int i = 0; i < 7; ++i) {
            u[i] = rng.rational();
            v[i] = rng.rational();
            w[i] = rng.rational();
        }
        const Rational a = rng.rational(), b = rng.rational();
        CHECK(pseudo_inner(u, v, g) == pseudo_inner(v, u, g));
        const RatVec lin = vec_add(vec_scale(a, u), vec_scale(b, v));
        CHECK(pseudo_inner(lin, w, g) ==
              a * pseudo_inner(u, w, g) + b * pseudo_inner(v, w, g));
    }
}

TEST_CASE("kronecker products") {
    const SignedPermMatrix E2 = SignedPermMatrix::identity(2);
    const SignedPermMatrix E3 = SignedPermMatrix::identity(3);
    CHECK(kronecker(E2, E3) == SignedPermMatrix::identity(6));

    const DenseMatrix swap01 = from_rows({{0, 1}, {1, 0}});
    const DenseMatrix one = from_rows({{1}});
    CHECK(kronecker(swap01, one) == swap01);

    // [[0,1],[-1,0]] ⊗ E2 expanded by hand.
    const DenseMatrix rot = from_rows({{0, 1}, {-1, 0}});
    const DenseMatrix expect =
        from_rows({{0, 0, 1, 0}, {0, 0, 0, 1}, {-1, 0, 0, 0}, {0, -1, 0, 0}});
    CHECK(kronecker(rot, DenseMatrix::identity(2)) == expect);

    // The signed-permutation fast path agrees with the dense expansion.
    Prng rng(5);
    for (int trial = 0; trial < 10; ++trial) {
        auto rand_sp = [&](int n) {
            std::vector<int> img(n), sg(n);
            for (int i = 0; i < n; ++i) img[i] = i;
            for (int i = n - 1; i > 0; --i)
                std::swap(img[i], img[rng.integer(0, i)]);
            for (int i = 0; i < n; ++i) sg[i] = rng.integer(0, 1) ? 1 : -1;
            return SignedPermMatrix(img, sg);
        };
        const SignedPermMatrix A = rand_sp(3), B = rand_sp(4);
        CHECK(kronecker(A, B).to_dense() == kronecker(A.to_dense(), B.to_dense()));
        // mixed-product property (A ⊗ B)(C ⊗ D) = AC ⊗ BD
        const SignedPermMatrix C = rand_sp(3), D = rand_sp(4);
        CHECK((kronecker(A, B) * kronecker(C, D)) == kronecker(A * C, B * D));
    }
}

TEST_CASE("kronecker associativity on dense rationals") {
    Prng rng(17);
    auto rand_dense = [&](int rows, int cols) {
        DenseMatrix M(rows, cols);
        for (int i = 0; i < rows; ++i)
            for (int j = 0; j < cols; ++j) M.at(i, j) = rng.rational();
        return M;
    };
    const DenseMatrix A = rand_dense(2, 2), B = rand_dense(2, 3), C = rand_dense(3, 2);
    CHECK(kronecker(kronecker(A, B), C) == kronecker(A, kronecker(B, C)));
}

TEST_CASE("is_symmetric_wrt") {
    CHECK(is_symmetric_wrt(DenseMatrix::identity(4), Metric{2, 2}));
    CHECK(is_symmetric_wrt(from_rows({{1, 0}, {0, -1}}), Metric{0, 2}));
    // every constructed P_i is symmetric with respect to the neutral metric
    auto [fam, trace] = construct_family(3, 1);
    const CliffordSystem sys = lift_to_clifford_system(fam, 1);
    for (const auto& P : sys.ops) CHECK(is_symmetric_wrt(P, sys.ambient()));
}

TEST_CASE("is_pseudo_orthogonal") {
    CHECK(is_pseudo_orthogonal(DenseMatrix::identity(3), Metric{0, 3}));
    CHECK_FALSE(is_pseudo_orthogonal(from_rows({{2, 0}, {0, 1}}), Metric{0, 2}));
    // rational hyperbolic pair (cosh, sinh) = (5/4, 3/4)
    DenseMatrix H(2, 2);
    H.at(0, 0) = make_rational(5, 4);
    H.at(0, 1) = make_rational(3, 4);
    H.at(1, 0) = make_rational(3, 4);
    H.at(1, 1) = make_rational(5, 4);
    CHECK(is_pseudo_orthogonal(H, Metric{1, 1}));
}

TEST_CASE("kernel_basis") {
    CHECK(kernel_basis(DenseMatrix(2, 2)).size() == 2);
    CHECK(kernel_basis(DenseMatrix::identity(5)).empty());

    // (I - P)/2 for the first worked system: kernel spans E_+(P), dimension 8.
    auto [fam, trace] = construct_family(4, 0);
    const CliffordSystem sys = lift_to_clifford_system(fam, 1);
    const DenseMatrix P = full_product(sys).to_dense();
    const DenseMatrix M = (DenseMatrix::identity(16) - P).scaled(make_rational(1, 2));
    const auto basis = kernel_basis(M);
    REQUIRE(basis.size() == 8);
    for (const auto& v : basis) CHECK(full_product(sys).apply(v) == v);

    // exactness + rank/nullity on random matrices
    Prng rng(23);
    for (int trial = 0; trial < 20; ++trial) {
        const int rows = static_cast<int>(rng.integer(1, 6)), cols = static_cast<int>(rng.integer(1, 6));
        DenseMatrix A(rows, cols);
        for (int i = 0; i < rows; ++i)
            for (int j = 0; j < cols; ++j)
                A.at(i, j) = rng.integer(0, 2) ? rng.rational() : Rational(0);
        const auto ker = kernel_basis(A);
        CHECK(static_cast<int>(ker.size()) == cols - rank_of(A));
        for (const auto& v : ker) CHECK(is_zero_vec(A.apply(v)));
    }
}

TEST_CASE("signature_of_gram") {
    DenseMatrix J11(2, 2);
    J11.at(0, 0) = -1;
    J11.at(1, 1) = 1;
    CHECK(signature_of_gram(J11) == std::tuple<int, int, int>{1, 0, 1});
    CHECK(signature_of_gram(DenseMatrix(3, 3)) == std::tuple<int, int, int>{0, 3, 0});

    // hollow symmetric matrix exercises the zero-diagonal congruence step
    CHECK(signature_of_gram(from_rows({{0, 1}, {1, 0}})) == std::tuple<int, int, int>{1, 0, 1});

    CHECK_THROWS_AS((void)signature_of_gram(from_rows({{0, 1}, {2, 0}})), input_error);

    // Gram of the E_+(P) basis of the first worked system has inertia (4,0,4).
    auto [fam, trace] = construct_family(4, 0);
    const CliffordSystem sys = lift_to_clifford_system(fam, 1);
    const auto basis = involution_eigenbasis(full_product(sys).sp(), +1);
    REQUIRE(basis.size() == 8);
    DenseMatrix G(8, 8);
    for (int i = 0; i < 8; ++i)
        for (int j = 0; j < 8; ++j) G.at(i, j) = pseudo_inner(basis[i], basis[j], sys.ambient());
    CHECK(signature_of_gram(G) == std::tuple<int, int, int>{4, 0, 4});
}

TEST_CASE("signature invariance under exact congruence") {
    Prng rng(31);
    for (int trial = 0; trial < 15; ++trial) {
        const int n = 4;
        DenseMatrix G(n, n);
        for (int i = 0; i < n; ++i)
            for (int j = i; j < n; ++j) {
                G.at(i, j) = rng.rational();
                G.at(j, i) = G.at(i, j);
            }
        // random invertible S: unit triangular times unit triangular with
        // a signed diagonal, invertible by construction
        DenseMatrix L = DenseMatrix::identity(n), U = DenseMatrix::identity(n);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < i; ++j) {
                L.at(i, j) = rng.rational();
                U.at(j, i) = rng.rational();
            }
        const DenseMatrix S = L * U;
        const DenseMatrix G2 = S.transpose() * G * S;
        CHECK(signature_of_gram(G) == signature_of_gram(G2));
    }
}

TEST_CASE("signed perm product fast path equals dense multiplication") {
    Prng rng(41);
    for (int trial = 0; trial < 20; ++trial) {
        const int n = static_cast<int>(rng.integer(2, 8));
        auto rand_sp = [&]() {
            std::vector<int> img(n), sg(n);
            for (int i = 0; i < n; ++i) img[i] = i;
            for (int i = n - 1; i > 0; --i) std::swap(img[i], img[rng.integer(0, i)]);
            for (int i = 0; i < n; ++i) sg[i] = rng.integer(0, 1) ? 1 : -1;
            return SignedPermMatrix(img, sg);
        };
        const SignedPermMatrix A = rand_sp(), B = rand_sp();
        CHECK((A * B).to_dense() == A.to_dense() * B.to_dense());
        CHECK(A.transpose().to_dense() == A.to_dense().transpose());
    }
}

TEST_CASE("rational string round trips") {
    CHECK(rational_to_string(make_rational(-6, 4)) == "-3/2");
    CHECK(rational_from_string("-3/2") == make_rational(-3, 2));
    CHECK(rational_from_string("7") == 7);
    CHECK_THROWS_AS((void)rational_from_string("1/0"), input_error);
    CHECK(exact_sqrt(make_rational(9, 4)).value() == make_rational(3, 2));
    CHECK_FALSE(exact_sqrt(make_rational(2)).has_value());
    CHECK_FALSE(exact_sqrt(make_rational(-1)).has_value());
}
