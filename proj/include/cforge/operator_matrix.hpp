#pragma once

#include <variant>

#include "cforge/signed_perm.hpp"

namespace cforge {

// A system operator: signed permutation on the constructed fast path, dense
// rational for derived operators such as changed bases or (I ± P)/2.
class OperatorMatrix {
  public:
    OperatorMatrix() = default;
    explicit OperatorMatrix(SignedPermMatrix sp) : m_(std::move(sp)) {}
    explicit OperatorMatrix(DenseMatrix dn) : m_(std::move(dn)) {}

    bool is_signed_perm() const { return std::holds_alternative<SignedPermMatrix>(m_); }
    const SignedPermMatrix& sp() const { return std::get<SignedPermMatrix>(m_); }
    const DenseMatrix& dn() const { return std::get<DenseMatrix>(m_); }

    int order() const {
        return is_signed_perm() ? sp().order() : dn().rows();
    }

    DenseMatrix to_dense() const { return is_signed_perm() ? sp().to_dense() : dn(); }

    RatVec apply(const RatVec& v) const {
        return is_signed_perm() ? sp().apply(v) : dn().apply(v);
    }

    RealVec apply(const RealVec& v) const {
        if (is_signed_perm()) return sp().apply(v);
        const DenseMatrix& M = dn();
        RealVec out(static_cast<size_t>(M.rows()), 0.0);
        for (int i = 0; i < M.rows(); ++i) {
            double acc = 0;
            for (int j = 0; j < M.cols(); ++j)
                if (M.at(i, j) != 0) acc += to_double(M.at(i, j)) * v[static_cast<size_t>(j)];
            out[static_cast<size_t>(i)] = acc;
        }
        return out;
    }

    OperatorMatrix operator*(const OperatorMatrix& B) const {
        if (is_signed_perm() && B.is_signed_perm()) return OperatorMatrix(sp() * B.sp());
        return OperatorMatrix(to_dense() * B.to_dense());
    }

    OperatorMatrix transpose() const {
        if (is_signed_perm()) return OperatorMatrix(sp().transpose());
        return OperatorMatrix(dn().transpose());
    }

    OperatorMatrix negated() const {
        if (is_signed_perm()) return OperatorMatrix(sp().negated());
        return OperatorMatrix(dn().scaled(Rational(-1)));
    }

    Rational trace() const { return is_signed_perm() ? sp().trace() : dn().trace(); }

    bool equals(const OperatorMatrix& o) const {
        if (is_signed_perm() && o.is_signed_perm()) return sp() == o.sp();
        return to_dense() == o.to_dense();
    }

  private:
    std::variant<SignedPermMatrix, DenseMatrix> m_;
};

inline bool is_symmetric_wrt(const OperatorMatrix& Q, const Metric& g) {
    return Q.is_signed_perm() ? is_symmetric_wrt(Q.sp(), g) : is_symmetric_wrt(Q.dn(), g);
}

inline bool is_pseudo_orthogonal(const OperatorMatrix& A, const Metric& g) {
    return is_pseudo_orthogonal(A.to_dense(), g);
}

inline OperatorMatrix kronecker(const OperatorMatrix& A, const OperatorMatrix& B) {
    if (A.is_signed_perm() && B.is_signed_perm())
        return OperatorMatrix(kronecker(A.sp(), B.sp()));
    return OperatorMatrix(kronecker(A.to_dense(), B.to_dense()));
}

}  // namespace cforge
