#include "cforge/dense.hpp"

#include <algorithm>

namespace cforge {

std::vector<int> bareiss_echelon(std::vector<std::vector<Integer>>& M) {
    const int rows = static_cast<int>(M.size());
    const int cols = rows ? static_cast<int>(M[0].size()) : 0;
    std::vector<int> pivots;
    Integer prev = 1;
    int row = 0;
    for (int col = 0; col < cols && row < rows; ++col) {
        int p = -1;
        for (int r = row; r < rows; ++r)
            if (M[r][col] != 0) {
                p = r;
                break;
            }
        if (p < 0) continue;
        std::swap(M[p], M[row]);
        for (int r = row + 1; r < rows; ++r) {
            for (int c = col + 1; c < cols; ++c) {
                Integer t = M[row][col] * M[r][c] - M[r][col] * M[row][c];
                mpz_divexact(t.get_mpz_t(), t.get_mpz_t(), prev.get_mpz_t());
                M[r][c] = t;
            }
            M[r][col] = 0;
        }
        prev = M[row][col];
        pivots.push_back(col);
        ++row;
    }
    return pivots;
}

namespace {

// Clear row denominators, returning an integer matrix with the same row space.
std::vector<std::vector<Integer>> integerize_rows(const DenseMatrix& M) {
    std::vector<std::vector<Integer>> out(static_cast<size_t>(M.rows()));
    for (int i = 0; i < M.rows(); ++i) {
        Integer lcm = 1;
        for (int j = 0; j < M.cols(); ++j)
            mpz_lcm(lcm.get_mpz_t(), lcm.get_mpz_t(), M.at(i, j).get_den().get_mpz_t());
        out[i].resize(static_cast<size_t>(M.cols()));
        for (int j = 0; j < M.cols(); ++j) {
            Rational q = M.at(i, j) * lcm;
            out[i][j] = q.get_num();  // denominator is 1 by construction
        }
    }
    return out;
}

}  // namespace

std::vector<RatVec> kernel_basis(const DenseMatrix& M) {
    const int cols = M.cols();
    auto W = integerize_rows(M);
    const std::vector<int> pivots = bareiss_echelon(W);
    const int rank = static_cast<int>(pivots.size());

    std::vector<bool> is_pivot(static_cast<size_t>(cols), false);
    for (int c : pivots) is_pivot[static_cast<size_t>(c)] = true;

    std::vector<RatVec> basis;
    for (int fc = 0; fc < cols; ++fc) {
        if (is_pivot[static_cast<size_t>(fc)]) continue;
        RatVec v = rat_zero_vec(cols);
        v[static_cast<size_t>(fc)] = 1;
        // Back-substitute through the echelon rows, bottom-up.
        for (int i = rank - 1; i >= 0; --i) {
            const int pc = pivots[static_cast<size_t>(i)];
            Rational acc = 0;
            for (int j = pc + 1; j < cols; ++j)
                if (W[i][static_cast<size_t>(j)] != 0 && v[static_cast<size_t>(j)] != 0)
                    acc += Rational(W[i][static_cast<size_t>(j)]) * v[static_cast<size_t>(j)];
            v[static_cast<size_t>(pc)] = -acc / Rational(W[i][static_cast<size_t>(pc)]);
        }
        basis.push_back(std::move(v));
    }
    return basis;
}

int rank_of(const DenseMatrix& M) {
    auto W = integerize_rows(M);
    return static_cast<int>(bareiss_echelon(W).size());
}

std::tuple<int, int, int> signature_of_gram(const DenseMatrix& G0) {
    CFORGE_REQUIRE(G0.is_symmetric(), "signature_of_gram: non-symmetric input");
    DenseMatrix G = G0;
    const int n = G.rows();
    int neg = 0, zero = 0, pos = 0;
    int k = 0;
    while (k < n) {
        int p = -1;
        for (int i = k; i < n; ++i)
            if (G.at(i, i) != 0) {
                p = i;
                break;
            }
        if (p < 0) {
            // All remaining diagonal entries vanish. If some off-diagonal
            // entry survives, the congruence e_i <- e_i + e_j makes the
            // diagonal entry 2 G_ij nonzero; otherwise the block is zero.
            int qi = -1, qj = -1;
            for (int i = k; i < n && qi < 0; ++i)
                for (int j = i + 1; j < n; ++j)
                    if (G.at(i, j) != 0) {
                        qi = i;
                        qj = j;
                        break;
                    }
            if (qi < 0) {
                zero += n - k;
                break;
            }
            for (int t = k; t < n; ++t) G.at(qi, t) += G.at(qj, t);
            for (int t = k; t < n; ++t) G.at(t, qi) += G.at(t, qj);
            continue;
        }
        if (p != k) {
            for (int t = k; t < n; ++t) std::swap(G.at(k, t), G.at(p, t));
            for (int t = k; t < n; ++t) std::swap(G.at(t, k), G.at(t, p));
        }
        const Rational d = G.at(k, k);
        for (int i = k + 1; i < n; ++i) {
            if (G.at(i, k) == 0) continue;
            const Rational f = G.at(i, k) / d;
            for (int j = k; j < n; ++j) G.at(i, j) -= f * G.at(k, j);
        }
        for (int j = k + 1; j < n; ++j) {
            if (G.at(k, j) == 0) continue;
            const Rational f = G.at(k, j) / d;
            for (int i = k; i < n; ++i) G.at(i, j) -= f * G.at(i, k);
        }
        (sgn(d) > 0 ? pos : neg) += 1;
        ++k;
    }
    return {neg, zero, pos};
}

DenseMatrix kronecker(const DenseMatrix& A, const DenseMatrix& B) {
    DenseMatrix C(A.rows() * B.rows(), A.cols() * B.cols());
    for (int i = 0; i < A.rows(); ++i)
        for (int j = 0; j < A.cols(); ++j) {
            if (A.at(i, j) == 0) continue;
            for (int k = 0; k < B.rows(); ++k)
                for (int t = 0; t < B.cols(); ++t)
                    if (B.at(k, t) != 0)
                        C.at(i * B.rows() + k, j * B.cols() + t) = A.at(i, j) * B.at(k, t);
        }
    return C;
}

}  // namespace cforge
