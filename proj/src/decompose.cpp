#include "cforge/decompose.hpp"

#include <cmath>

#include "cforge/errors.hpp"

namespace cforge {

Eigen::MatrixXd POGenerator::matrix(const Metric& eta) const {
    const int m = eta.dim();
    Eigen::MatrixXd G = Eigen::MatrixXd::Identity(m, m);
    switch (kind) {
        case Rotation:
            G(a, a) = std::cos(t);
            G(a, a + 1) = -std::sin(t);
            G(a + 1, a) = std::sin(t);
            G(a + 1, a + 1) = std::cos(t);
            break;
        case Hyperbolic:
            G(0, 0) = std::cosh(t);
            G(0, eta.neg) = std::sinh(t);
            G(eta.neg, 0) = std::sinh(t);
            G(eta.neg, eta.neg) = std::cosh(t);
            break;
        case T1:
            G(eta.neg - 1, eta.neg - 1) = -1.0;
            break;
        case T2:
            G(m - 1, m - 1) = -1.0;
            break;
    }
    return G;
}

std::string POGenerator::name() const {
    switch (kind) {
        case Rotation:
            return "R(" + std::to_string(a + 1) + "," + std::to_string(a + 2) + ";" +
                   std::to_string(t) + ")";
        case Hyperbolic:
            return "S(" + std::to_string(t) + ")";
        case T1:
            return "T1";
        case T2:
            return "T2";
    }
    return "?";
}

Eigen::MatrixXd product_of(const std::vector<POGenerator>& gens, const Metric& eta) {
    Eigen::MatrixXd P = Eigen::MatrixXd::Identity(eta.dim(), eta.dim());
    for (const auto& g : gens) P = P * g.matrix(eta);
    return P;
}

namespace {

constexpr double kZeroTol = 1e-11;

bool pseudo_orthogonal_within(const Eigen::MatrixXd& A, const Metric& eta, double tol) {
    const int m = eta.dim();
    Eigen::MatrixXd J = Eigen::MatrixXd::Zero(m, m);
    for (int i = 0; i < m; ++i) J(i, i) = eta.diag(i);
    return ((A.transpose() * J * A) - J).cwiseAbs().maxCoeff() < tol;
}

}  // namespace

std::vector<POGenerator> decompose_pseudo_orthogonal(const Eigen::MatrixXd& A0, const Metric& eta) {
    const int m = eta.dim();
    const int r = eta.neg;
    CFORGE_REQUIRE(A0.rows() == m && A0.cols() == m, "decompose: shape mismatch");
    CFORGE_REQUIRE(pseudo_orthogonal_within(A0, eta, 1e-9),
                   "decompose: input is not pseudo-orthogonal w.r.t. eta");

    Eigen::MatrixXd A = A0;
    // We reduce A to the identity by left-multiplying generators; the answer
    // is then the list of inverses in reverse application order, i.e. if
    // G_k ... G_1 A = E then A = G_1^{-1} ... G_k^{-1}.
    std::vector<POGenerator> left;  // generators applied, in application order

    auto apply_left = [&](POGenerator g) {
        A = g.matrix(eta) * A;
        left.push_back(g);
    };
    // Zeroes A(row+1, col) against A(row, col) with a plane rotation.
    auto givens = [&](int row, int col) {
        if (std::abs(A(row + 1, col)) < kZeroTol) return;
        const double theta = std::atan2(A(row + 1, col), A(row, col));
        apply_left({POGenerator::Rotation, row, -theta});
        A(row + 1, col) = 0.0;
    };
    // Adjacent quarter-turns that cycle row `src` up to row `dst` (< src).
    auto roll_up = [&](int src, int dst, std::vector<POGenerator>& chain) {
        for (int a = src - 1; a >= dst; --a) {
            POGenerator g{POGenerator::Rotation, a, 1.5707963267948966};
            A = g.matrix(eta) * A;
            chain.push_back(g);
        }
    };

    // Timelike columns first: their hyperbolic corrections use the spacelike
    // pivot row r, which no spacelike column owns yet.
    for (int c = 0; c < r; ++c) {
        for (int row = r - 2; row >= c; --row) givens(row, c);
        for (int row = m - 2; row >= r; --row) givens(row, c);
        if (r < m && std::abs(A(r, c)) > kZeroTol) {
            // Column c now holds (x at row c, y at row r) with x^2 - y^2 = 1,
            // so |y/x| < 1 and the rapidity is well-defined.
            std::vector<POGenerator> chain;
            if (c != 0) roll_up(c, 0, chain);
            const double x = A(0, c), y = A(r, c);
            CFORGE_REQUIRE(std::abs(x) > std::abs(y) + 1e-12,
                           "decompose: hyperbolic pivot degenerate");
            const double rap = std::atanh(y / x);
            POGenerator hyp{POGenerator::Hyperbolic, 0, -rap};
            A = hyp.matrix(eta) * A;
            A(r, c) = 0.0;
            std::vector<POGenerator> inverse_chain;
            for (auto it = chain.rbegin(); it != chain.rend(); ++it) {
                POGenerator g = *it;
                g.t = -g.t;
                A = g.matrix(eta) * A;
                inverse_chain.push_back(g);
            }
            for (const auto& g : chain) left.push_back(g);
            left.push_back(hyp);
            for (const auto& g : inverse_chain) left.push_back(g);
        }
    }
    // Spacelike columns: their timelike entries vanish by orthogonality to
    // the finished timelike columns; rotations inside the positive block.
    for (int c = r; c < m; ++c)
        for (int row = m - 2; row >= c; --row) givens(row, c);

    // Residual diagonal of ±1; clear sign pairs with half-turns and walk a
    // leftover flip to the block edge where T1 / T2 live.
    auto clear_block = [&](int lo, int hi, POGenerator::Kind edge_kind) {
        std::vector<int> flips;
        for (int i = lo; i < hi; ++i)
            if (A(i, i) < 0) flips.push_back(i);
        for (size_t k = 0; k + 1 < flips.size(); k += 2) {
            // flip(i) flip(j) = prod of adjacent half-turns along [i, j].
            for (int a = flips[k]; a < flips[k + 1]; ++a)
                apply_left({POGenerator::Rotation, a, 3.14159265358979323846});
        }
        if (flips.size() % 2 == 1) {
            const int i = flips.back();
            for (int a = i; a < hi - 1; ++a)
                apply_left({POGenerator::Rotation, a, 3.14159265358979323846});
            apply_left({edge_kind, 0, 0.0});
        }
    };
    clear_block(0, r, POGenerator::T1);
    clear_block(r, m, POGenerator::T2);

    CFORGE_CHECK((A - Eigen::MatrixXd::Identity(m, m)).cwiseAbs().maxCoeff() < 1e-7,
                 "decompose: reduction did not reach the identity");

    std::vector<POGenerator> out;
    out.reserve(left.size());
    for (const auto& g : left) {
        POGenerator inv = g;
        if (g.kind == POGenerator::Rotation || g.kind == POGenerator::Hyperbolic) inv.t = -g.t;
        out.push_back(inv);
    }
    CFORGE_CHECK((product_of(out, eta) - A0).norm() < 1e-8,
                 "decompose: generator product does not reproduce the input");
    return out;
}

}  // namespace cforge
