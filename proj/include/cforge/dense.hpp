#pragma once

#include <tuple>
#include <vector>

#include "cforge/vec.hpp"

namespace cforge {

// Dense matrix over exact rationals, row-major.
class DenseMatrix {
  public:
    DenseMatrix() = default;
    DenseMatrix(int rows, int cols)
        : rows_(rows), cols_(cols), data_(static_cast<size_t>(rows) * cols, Rational(0)) {
        CFORGE_REQUIRE(rows >= 0 && cols >= 0, "negative matrix shape");
    }

    static DenseMatrix identity(int n) {
        DenseMatrix M(n, n);
        for (int i = 0; i < n; ++i) M.at(i, i) = 1;
        return M;
    }

    int rows() const { return rows_; }
    int cols() const { return cols_; }

    Rational& at(int i, int j) { return data_[static_cast<size_t>(i) * cols_ + j]; }
    const Rational& at(int i, int j) const { return data_[static_cast<size_t>(i) * cols_ + j]; }

    bool operator==(const DenseMatrix& o) const {
        return rows_ == o.rows_ && cols_ == o.cols_ && data_ == o.data_;
    }

    DenseMatrix transpose() const {
        DenseMatrix T(cols_, rows_);
        for (int i = 0; i < rows_; ++i)
            for (int j = 0; j < cols_; ++j) T.at(j, i) = at(i, j);
        return T;
    }

    DenseMatrix operator*(const DenseMatrix& B) const {
        CFORGE_REQUIRE(cols_ == B.rows_, "matrix product shape mismatch");
        DenseMatrix C(rows_, B.cols_);
        for (int i = 0; i < rows_; ++i)
            for (int k = 0; k < cols_; ++k) {
                const Rational& a = at(i, k);
                if (a == 0) continue;
                for (int j = 0; j < B.cols_; ++j) {
                    if (B.at(k, j) != 0) C.at(i, j) += a * B.at(k, j);
                }
            }
        return C;
    }

    DenseMatrix operator+(const DenseMatrix& B) const {
        CFORGE_REQUIRE(rows_ == B.rows_ && cols_ == B.cols_, "matrix sum shape mismatch");
        DenseMatrix C(rows_, cols_);
        for (size_t i = 0; i < data_.size(); ++i) C.data_[i] = data_[i] + B.data_[i];
        return C;
    }

    DenseMatrix operator-(const DenseMatrix& B) const {
        CFORGE_REQUIRE(rows_ == B.rows_ && cols_ == B.cols_, "matrix diff shape mismatch");
        DenseMatrix C(rows_, cols_);
        for (size_t i = 0; i < data_.size(); ++i) C.data_[i] = data_[i] - B.data_[i];
        return C;
    }

    DenseMatrix scaled(const Rational& c) const {
        DenseMatrix C(rows_, cols_);
        for (size_t i = 0; i < data_.size(); ++i) C.data_[i] = c * data_[i];
        return C;
    }

    RatVec apply(const RatVec& v) const {
        CFORGE_REQUIRE(static_cast<int>(v.size()) == cols_, "matrix apply shape mismatch");
        RatVec out(static_cast<size_t>(rows_), Rational(0));
        for (int i = 0; i < rows_; ++i)
            for (int j = 0; j < cols_; ++j)
                if (at(i, j) != 0) out[i] += at(i, j) * v[j];
        return out;
    }

    Rational trace() const {
        CFORGE_REQUIRE(rows_ == cols_, "trace of non-square matrix");
        Rational t = 0;
        for (int i = 0; i < rows_; ++i) t += at(i, i);
        return t;
    }

    bool is_zero() const {
        for (const auto& x : data_)
            if (x != 0) return false;
        return true;
    }

    bool is_symmetric() const {
        if (rows_ != cols_) return false;
        for (int i = 0; i < rows_; ++i)
            for (int j = i + 1; j < cols_; ++j)
                if (at(i, j) != at(j, i)) return false;
        return true;
    }

  private:
    int rows_ = 0, cols_ = 0;
    std::vector<Rational> data_;
};

// tQ = J Q J, the matrix form of self-adjointness with respect to J.
inline bool is_symmetric_wrt(const DenseMatrix& Q, const Metric& g) {
    CFORGE_REQUIRE(Q.rows() == Q.cols() && Q.rows() == g.dim(),
                   "is_symmetric_wrt: dimension mismatch");
    for (int i = 0; i < Q.rows(); ++i)
        for (int j = 0; j < Q.cols(); ++j) {
            // (tQ)_{ij} = Q_{ji};  (JQJ)_{ij} = J_ii Q_ij J_jj
            Rational lhs = Q.at(j, i);
            Rational rhs = Q.at(i, j);
            if (g.diag(i) * g.diag(j) < 0) rhs = -rhs;
            if (lhs != rhs) return false;
        }
    return true;
}

// tA J A = J.
inline bool is_pseudo_orthogonal(const DenseMatrix& A, const Metric& g) {
    CFORGE_REQUIRE(A.rows() == A.cols() && A.rows() == g.dim(),
                   "is_pseudo_orthogonal: dimension mismatch");
    const int n = A.rows();
    for (int i = 0; i < n; ++i)
        for (int j = i; j < n; ++j) {
            Rational acc = 0;
            for (int k = 0; k < n; ++k) {
                if (A.at(k, i) == 0 || A.at(k, j) == 0) continue;
                if (g.diag(k) < 0)
                    acc -= A.at(k, i) * A.at(k, j);
                else
                    acc += A.at(k, i) * A.at(k, j);
            }
            const Rational want = (i == j) ? Rational(g.diag(i)) : Rational(0);
            if (acc != want) return false;
        }
    return true;
}

// Fraction-free (Bareiss) row echelon of an integer matrix. Returns the pivot
// column list; rows of M are modified in place. Bounding the pivot growth is
// the point: naive rational elimination explodes denominators.
std::vector<int> bareiss_echelon(std::vector<std::vector<Integer>>& M);

// Exact basis of { v : Mv = 0 }. Empty result means M is injective.
std::vector<RatVec> kernel_basis(const DenseMatrix& M);

// Rank via the same elimination.
int rank_of(const DenseMatrix& M);

// Sylvester inertia (neg, zero, pos) of a symmetric matrix by exact congruence
// diagonalization with symmetric pivoting.
std::tuple<int, int, int> signature_of_gram(const DenseMatrix& G);

// Kronecker product.
DenseMatrix kronecker(const DenseMatrix& A, const DenseMatrix& B);

}  // namespace cforge
