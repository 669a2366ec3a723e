#pragma once

#include <vector>

#include "cforge/dense.hpp"
#include "cforge/vec.hpp"

namespace cforge {

// Square matrix with exactly one ±1 entry per row and column: column j holds
// sign[j] in row image[j]. Every constructed family member stays in this
// class, which keeps the relation checks for m <= 16, l <= 2^10 subsecond.
// Indices are 0-based here; the JSON schema is 1-based.
class SignedPermMatrix {
  public:
    SignedPermMatrix() = default;
    SignedPermMatrix(std::vector<int> image, std::vector<int> sign)
        : image_(std::move(image)), sign_(std::move(sign)) {
        validate();
    }

    static SignedPermMatrix identity(int n) {
        std::vector<int> img(static_cast<size_t>(n)), sg(static_cast<size_t>(n), 1);
        for (int i = 0; i < n; ++i) img[static_cast<size_t>(i)] = i;
        return SignedPermMatrix(std::move(img), std::move(sg));
    }

    int order() const { return static_cast<int>(image_.size()); }
    int image(int j) const { return image_[static_cast<size_t>(j)]; }
    int sign(int j) const { return sign_[static_cast<size_t>(j)]; }
    const std::vector<int>& image_vec() const { return image_; }
    const std::vector<int>& sign_vec() const { return sign_; }

    bool operator==(const SignedPermMatrix&) const = default;

    // (A*B): column j goes through B then A.
    SignedPermMatrix operator*(const SignedPermMatrix& B) const {
        CFORGE_REQUIRE(order() == B.order(), "signed perm product shape mismatch");
        const int n = order();
        std::vector<int> img(static_cast<size_t>(n)), sg(static_cast<size_t>(n));
        for (int j = 0; j < n; ++j) {
            const int mid = B.image(j);
            img[static_cast<size_t>(j)] = image(mid);
            sg[static_cast<size_t>(j)] = sign(mid) * B.sign(j);
        }
        return SignedPermMatrix(std::move(img), std::move(sg));
    }

    SignedPermMatrix transpose() const {
        const int n = order();
        std::vector<int> img(static_cast<size_t>(n)), sg(static_cast<size_t>(n));
        for (int j = 0; j < n; ++j) {
            img[static_cast<size_t>(image(j))] = j;
            sg[static_cast<size_t>(image(j))] = sign(j);
        }
        return SignedPermMatrix(std::move(img), std::move(sg));
    }

    SignedPermMatrix negated() const {
        std::vector<int> sg = sign_;
        for (int& s : sg) s = -s;
        return SignedPermMatrix(image_, std::move(sg));
    }

    template <typename Vec>
    Vec apply(const Vec& v) const {
        CFORGE_REQUIRE(static_cast<int>(v.size()) == order(), "signed perm apply shape mismatch");
        Vec out(v.size());
        for (int j = 0; j < order(); ++j) {
            out[static_cast<size_t>(image(j))] =
                sign(j) > 0 ? v[static_cast<size_t>(j)] : -v[static_cast<size_t>(j)];
        }
        return out;
    }

    Rational trace() const {
        Rational t = 0;
        for (int j = 0; j < order(); ++j)
            if (image(j) == j) t += sign(j);
        return t;
    }

    DenseMatrix to_dense() const {
        DenseMatrix M(order(), order());
        for (int j = 0; j < order(); ++j) M.at(image(j), j) = sign(j);
        return M;
    }

  private:
    void validate() const {
        CFORGE_REQUIRE(image_.size() == sign_.size(), "signed perm: image/sign length mismatch");
        const int n = order();
        std::vector<bool> hit(static_cast<size_t>(n), false);
        for (int j = 0; j < n; ++j) {
            CFORGE_REQUIRE(image(j) >= 0 && image(j) < n, "signed perm: image out of range");
            CFORGE_REQUIRE(sign(j) == 1 || sign(j) == -1, "signed perm: sign not ±1");
            CFORGE_REQUIRE(!hit[static_cast<size_t>(image(j))], "signed perm: image not a bijection");
            hit[static_cast<size_t>(image(j))] = true;
        }
    }

    std::vector<int> image_;
    std::vector<int> sign_;
};

inline SignedPermMatrix kronecker(const SignedPermMatrix& A, const SignedPermMatrix& B) {
    const int na = A.order(), nb = B.order();
    std::vector<int> img(static_cast<size_t>(na) * nb), sg(static_cast<size_t>(na) * nb);
    for (int j = 0; j < na; ++j)
        for (int t = 0; t < nb; ++t) {
            img[static_cast<size_t>(j) * nb + t] = A.image(j) * nb + B.image(t);
            sg[static_cast<size_t>(j) * nb + t] = A.sign(j) * B.sign(t);
        }
    return SignedPermMatrix(std::move(img), std::move(sg));
}

inline bool is_symmetric_wrt(const SignedPermMatrix& Q, const Metric& g) {
    CFORGE_REQUIRE(Q.order() == g.dim(), "is_symmetric_wrt: dimension mismatch");
    // tQ = JQJ forces the support to be symmetric, so the permutation part
    // must be an involution; then Q_{j,i} = J_ii Q_{i,j} J_jj entrywise.
    for (int j = 0; j < Q.order(); ++j) {
        const int i = Q.image(j);
        if (Q.image(i) != j) return false;
        if (Q.sign(i) != Q.sign(j) * g.diag(i) * g.diag(j)) return false;
    }
    return true;
}

}  // namespace cforge
