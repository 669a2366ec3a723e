#include <doctest.h>

#include <cmath>

#include "cforge/decompose.hpp"
#include "cforge/family.hpp"
#include "cforge/focal.hpp"
#include "cforge/gram_schmidt.hpp"

using namespace cforge;

namespace {

CliffordSystem sys51() {
    auto [fam, trace] = construct_family(4, 0);
    return lift_to_clifford_system(fam, 1);
}
CliffordSystem sys52() {
    auto [fam, trace] = construct_family(4, 4);
    return lift_to_clifford_system(fam, 1);
}

SigmaElement unit_sigma(const CliffordSystem& sys, int i) {
    SigmaElement Q{&sys, rat_zero_vec(sys.m)};
    Q.coeffs[static_cast<size_t>(i)] = 1;
    return Q;
}

}  // namespace

TEST_CASE("sigma metric through the trace") {
    const CliffordSystem s1 = sys51();
    CHECK(sigma_metric(unit_sigma(s1, 0), unit_sigma(s1, 0)) == 1);
    CHECK(sigma_metric(unit_sigma(s1, 0), unit_sigma(s1, 1)) == 0);

    const CliffordSystem s2 = sys52();
    CHECK(sigma_metric(unit_sigma(s2, 0), unit_sigma(s2, 0)) == -1);

    // trace route agrees with the coefficient route on random elements
    Prng rng(3);
    for (int trial = 0; trial < 25; ++trial) {
        SigmaElement Q{&s1, rat_zero_vec(4)}, Q2{&s1, rat_zero_vec(4)};
        for (auto& c : Q.coeffs) c = rng.rational();
        for (auto& c : Q2.coeffs) c = rng.rational();
        CHECK(sigma_metric(Q, Q2) == sigma_metric_coeff(Q, Q2));
    }
}

TEST_CASE("verify_system certifies and localizes failures") {
    CHECK(verify_system(sys51()).pass);
    CHECK(verify_system(sys52()).pass);

    // doubling P_2 breaks its square relation first
    CliffordSystem bad = sys51();
    bad.ops[1] = OperatorMatrix(bad.ops[1].to_dense().scaled(Rational(2)));
    const SystemCertificate cert = verify_system(bad);
    CHECK_FALSE(cert.pass);
    bool found = false;
    for (const auto& c : cert.checks)
        if (c.check == "clifford_relations") {
            found = true;
            CHECK_FALSE(c.pass);
            CHECK(c.counterexample == "relation fails at (2,2)");
        }
    CHECK(found);
}

TEST_CASE("change of basis") {
    const CliffordSystem s2 = sys52();  // r = 4, eta = J_{4,0}
    SUBCASE("identity is the identity") {
        const CliffordSystem same = change_basis(s2, DenseMatrix::identity(4));
        for (int i = 0; i < 4; ++i) CHECK(same.ops[i].equals(s2.ops[i]));
    }
    SUBCASE("T1 flips the sign of P_r") {
        const CliffordSystem flipped = change_basis(s2, t1_generator(s2.eta()));
        CHECK(flipped.ops[3].equals(s2.ops[3].negated()));
        for (int i = 0; i < 3; ++i) CHECK(flipped.ops[i].equals(s2.ops[i]));
        CHECK(verify_system(flipped).pass);
    }
    SUBCASE("rational hyperbolic rotation gives a new exact system") {
        auto [fam, trace] = construct_family(4, 2);
        const CliffordSystem s42 = lift_to_clifford_system(fam, 1);
        const DenseMatrix S =
            hyperbolic_generator(s42.eta(), make_rational(5, 4), make_rational(3, 4));
        const CliffordSystem moved = change_basis(s42, S);
        CHECK(verify_system(moved).pass);
    }
    SUBCASE("non-pseudo-orthogonal input is rejected") {
        DenseMatrix A = DenseMatrix::identity(4);
        A.at(0, 0) = 2;
        CHECK_THROWS_AS((void)change_basis(s2, A), input_error);
    }
}

TEST_CASE("product operators certify the four product identities") {
    const CliffordSystem s1 = sys51();
    const OperatorMatrix P = product_operator(s1, 1, 4);
    const OperatorMatrix id(SignedPermMatrix::identity(16));
    CHECK((P * P).equals(id));
    for (int a = 0; a < 4; ++a)
        CHECK((s1.ops[a] * P).equals((P * s1.ops[a]).negated()));

    const CliffordSystem s2 = sys52();
    const OperatorMatrix P2 = product_operator(s2, 1, 4);
    CHECK((P2 * P2).equals(id));
    CHECK(is_symmetric_wrt(P2, s2.ambient()));

    auto [fam84, tr] = construct_family(8, 4);
    const CliffordSystem s84 = lift_to_clifford_system(fam84, 1);
    for (const auto [q, p] :
         {std::pair{1, 4}, std::pair{3, 4}, std::pair{5, 4}, std::pair{1, 8}})
        CHECK_NOTHROW((void)product_operator(s84, q, p));

    CHECK_THROWS_AS((void)product_operator(s1, 2, 4), input_error);  // even q
    CHECK_THROWS_AS((void)product_operator(s1, 1, 2), input_error);  // p not 0 mod 4
    CHECK_THROWS_AS((void)product_operator(s1, 3, 4), input_error);  // q+p-1 > m
}

TEST_CASE("basis product sign") {
    const CliffordSystem s2 = sys52();
    CHECK(basis_product_sign(s2, DenseMatrix::identity(4)) == 1);
    CHECK(basis_product_sign(s2, t1_generator(s2.eta())) == -1);
    CHECK(basis_product_sign(sys51(), t2_generator(Metric{0, 4})) == -1);

    // planar rotation with the rational point (cos, sin) = (3/5, 4/5)
    const DenseMatrix R = rotation_generator(s2.eta(), 0, make_rational(3, 5), make_rational(4, 5));
    CHECK(basis_product_sign(s2, R) == 1);

    // the two-sided lemma as a property: never an error, always ±1
    Prng rng(19);
    for (int trial = 0; trial < 200; ++trial) {
        const DenseMatrix A = random_pseudo_orthogonal(s2.eta(), rng, 6);
        const int sign = basis_product_sign(s2, A);
        CHECK((sign == 1 || sign == -1));
    }
}

TEST_CASE("H depends only on the span") {
    Prng rng(29);
    for (const CliffordSystem& sys : {sys51(), sys52()}) {
        for (int trial = 0; trial < 100; ++trial) {
            const DenseMatrix A = random_pseudo_orthogonal(sys.eta(), rng, 5);
            const CliffordSystem moved = change_basis(sys, A);
            RatVec x(static_cast<size_t>(sys.ambient_dim()));
            for (auto& c : x) c = rng.rational();
            CHECK(eval_H(sys, x) == eval_H(moved, x));
            CHECK(eval_F(sys, x) == eval_F(moved, x));
        }
    }
}

TEST_CASE("generalized Gram-Schmidt, exact layer") {
    const Metric g{2, 2};
    SUBCASE("pseudo-orthonormal input is returned unchanged up to scale") {
        const std::vector<RatVec> basis = {rat_basis_vec(4, 0), rat_basis_vec(4, 1),
                                           rat_basis_vec(4, 2), rat_basis_vec(4, 3)};
        const auto out = gram_schmidt_pseudo(basis, g);
        REQUIRE(out.size() == 4);
        for (size_t i = 0; i < 4; ++i) {
            CHECK(out[i].coords == basis[i]);
            CHECK(out[i].scale2 == 1);
        }
    }
    SUBCASE("a pair from the kernel-intersection setting") {
        const CliffordSystem s1 = sys51();
        // rational sphere point of E_+(P), then {P_1 x, P_1 P_2 x}
        const auto basis = involution_eigenbasis(full_product(s1).sp(), +1);
        const auto x = find_vector_with_norm(basis, s1.ambient(), Rational(1));
        REQUIRE(x.has_value());
        const RatVec P1x = s1.ops[0].apply(*x);
        const RatVec v = s1.ops[0].apply(s1.ops[1].apply(*x));
        const auto out = gram_schmidt_pseudo({P1x, v}, s1.ambient());
        REQUIRE(out.size() == 2);
        for (size_t i = 0; i < 2; ++i)
            for (size_t j = 0; j < 2; ++j) {
                const Rational raw = pseudo_inner(out[i].coords, out[j].coords, s1.ambient());
                if (i == j)
                    CHECK(abs(raw) * out[i].scale2 == 1);
                else
                    CHECK(raw == 0);
            }
    }
    SUBCASE("proportional vectors are a degenerate span") {
        const RatVec v = {1, 2, 3, 4};
        CHECK_THROWS_AS((void)gram_schmidt_pseudo({v, vec_scale(Rational(2), v)}, g), input_error);
    }
    SUBCASE("random spans give exactly ±1 Gram diagonals") {
        Prng rng(37);
        for (int trial = 0; trial < 30; ++trial) {
            std::vector<RatVec> vecs;
            for (int k = 0; k < 3; ++k) {
                RatVec v(4);
                for (auto& c : v) c = rng.rational();
                vecs.push_back(std::move(v));
            }
            std::vector<ScaledVector> out;
            try {
                out = gram_schmidt_pseudo(vecs, g);
            } catch (const input_error&) {
                continue;  // degenerate random span, correctly rejected
            }
            REQUIRE(out.size() == 3);
            for (size_t i = 0; i < out.size(); ++i)
                for (size_t j = 0; j < out.size(); ++j) {
                    const Rational raw = pseudo_inner(out[i].coords, out[j].coords, g);
                    if (i == j)
                        CHECK(abs(raw) * out[i].scale2 == 1);
                    else
                        CHECK(raw == 0);
                }
        }
    }
    SUBCASE("null pivot repair: two crossing null vectors") {
        // e1 + e3 and e1 - e3 are both null for J_{2,2}; their span is
        // non-degenerate, so the repair path must succeed.
        RatVec n1 = {1, 0, 1, 0}, n2 = {1, 0, -1, 0};
        const auto out = gram_schmidt_pseudo({n1, n2}, g);
        REQUIRE(out.size() == 2);
        CHECK(pseudo_inner(out[0].coords, out[1].coords, g) == 0);
    }
    SUBCASE("double-precision layer normalizes to ±1") {
        std::vector<RealVec> vecs = {{1.0, 0.2, 0.3, 0.0}, {0.1, 1.0, 0.0, 0.4},
                                     {0.0, 0.3, 1.0, 0.1}};
        const auto out = gram_schmidt_pseudo(vecs, g);
        REQUIRE(out.size() == 3);
        for (size_t i = 0; i < out.size(); ++i)
            for (size_t j = 0; j < out.size(); ++j) {
                const double raw = pseudo_inner(out[i], out[j], g);
                if (i == j)
                    CHECK(std::abs(std::abs(raw) - 1.0) < 1e-10);
                else
                    CHECK(std::abs(raw) < 1e-10);
            }
    }
}

TEST_CASE("generator decomposition of pseudo-orthogonal matrices") {
    SUBCASE("identity decomposes to the empty word") {
        const Metric eta{2, 2};
        CHECK(decompose_pseudo_orthogonal(Eigen::MatrixXd::Identity(4, 4), eta).empty());
    }
    SUBCASE("a single rotation is recovered") {
        const Metric eta{2, 2};
        POGenerator r{POGenerator::Rotation, 0, 0.7};
        const auto gens = decompose_pseudo_orthogonal(r.matrix(eta), eta);
        REQUIRE(gens.size() == 1);
        CHECK(gens[0].kind == POGenerator::Rotation);
        CHECK(gens[0].a == 0);
        CHECK(gens[0].t == doctest::Approx(0.7).epsilon(1e-9));
    }
    SUBCASE("T2 is recovered") {
        const Metric eta{1, 3};
        POGenerator t2{POGenerator::T2, 0, 0};
        const auto gens = decompose_pseudo_orthogonal(t2.matrix(eta), eta);
        REQUIRE(gens.size() == 1);
        CHECK(gens[0].kind == POGenerator::T2);
    }
    SUBCASE("random words of up to 20 generators round trip within 1e-8") {
        Prng rng(43);
        for (const Metric eta :
             {Metric{0, 4}, Metric{4, 0}, Metric{2, 2}, Metric{2, 6}, Metric{1, 3}}) {
            for (int trial = 0; trial < 12; ++trial) {
                std::vector<POGenerator> word;
                const int len = static_cast<int>(rng.integer(1, 20));
                for (int k = 0; k < len; ++k) {
                    const int kind = static_cast<int>(rng.integer(0, 3));
                    if (kind == 0) {
                        std::vector<int> slots;
                        for (int a = 0; a + 1 < eta.dim(); ++a)
                            if (a + 1 != eta.neg) slots.push_back(a);
                        if (slots.empty()) continue;
                        word.push_back({POGenerator::Rotation,
                                        slots[static_cast<size_t>(rng.integer(
                                            0, static_cast<long>(slots.size()) - 1))],
                                        rng.uniform(-2.5, 2.5)});
                    } else if (kind == 1 && eta.neg >= 1 && eta.pos >= 1) {
                        word.push_back({POGenerator::Hyperbolic, 0, rng.uniform(-1.5, 1.5)});
                    } else if (kind == 2 && eta.neg >= 1) {
                        word.push_back({POGenerator::T1, 0, 0});
                    } else if (eta.pos >= 1) {
                        word.push_back({POGenerator::T2, 0, 0});
                    }
                }
                const Eigen::MatrixXd A = product_of(word, eta);
                const auto gens = decompose_pseudo_orthogonal(A, eta);
                CHECK((product_of(gens, eta) - A).norm() < 1e-8);
            }
        }
    }
    SUBCASE("non-pseudo-orthogonal input is rejected") {
        const Metric eta{1, 1};
        Eigen::MatrixXd bad = Eigen::MatrixXd::Identity(2, 2) * 1.5;
        CHECK_THROWS_AS((void)decompose_pseudo_orthogonal(bad, eta), input_error);
    }
}
