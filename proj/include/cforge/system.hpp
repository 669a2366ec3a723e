#pragma once

#include <optional>
#include <string>
#include <vector>

#include "cforge/operator_matrix.hpp"
#include "cforge/prng.hpp"

namespace cforge {

// Clifford system of signature (m, r) on R^{2l}_s: m operators symmetric with
// respect to J_{s,2l-s} satisfying P_i P_j + P_j P_i = 2 eta_ij I with
// eta = J_{r,m-r}. eta_ii = -1 for i < r (0-based), matching J_{r,m-r}.
struct CliffordSystem {
    int l = 0;
    int s = 0;
    int m = 0;
    int r = 0;
    std::vector<OperatorMatrix> ops;

    int ambient_dim() const { return 2 * l; }
    Metric ambient() const { return Metric{s, 2 * l - s}; }
    Metric eta() const { return Metric{r, m - r}; }
    int eta_diag(int i) const { return i < r ? -1 : 1; }

    bool all_signed_perm() const {
        for (const auto& P : ops)
            if (!P.is_signed_perm()) return false;
        return true;
    }
};

// An element Q = sum_i c_i P_i of Sigma = span{P_i}.
struct SigmaElement {
    const CliffordSystem* sys = nullptr;
    RatVec coeffs;

    RatVec apply(const RatVec& x) const;
    RealVec apply(const RealVec& x) const;
    DenseMatrix to_dense() const;
};

struct CheckRecord {
    std::string check;
    bool pass = true;
    std::string counterexample;  // empty when pass
};

struct SystemCertificate {
    bool pass = true;
    std::vector<CheckRecord> checks;

    void add(std::string name, bool ok, std::string detail = "") {
        pass = pass && ok;
        checks.push_back({std::move(name), ok, std::move(detail)});
    }
};

// (2l)^{-1} trace(QQ'), evaluated through the trace; equals tc eta c'.
Rational sigma_metric(const SigmaElement& Q, const SigmaElement& Q2);

// Coefficient route tc eta c' (used as the cross-check of sigma_metric).
Rational sigma_metric_coeff(const SigmaElement& Q, const SigmaElement& Q2);

struct VerifyOptions {
    bool relations_only = false;  // skip the sampled property checks
    int sample_count = 4;
    std::uint64_t seed = 0;
};

// Defining relations and J-symmetry exactly; properties (3) and (4) of the
// span on sampled rational Sigma-elements and points. Failures are data, not
// exceptions.
SystemCertificate verify_system(const CliffordSystem& sys, const VerifyOptions& opt = {});

// Q_k = sum_i P_i A_{ik} for exact A in O(r, m-r).
CliffordSystem change_basis(const CliffordSystem& sys, const DenseMatrix& A);

// Q_{q,p} = P_q ... P_{q+p-1} (1-based q odd, p = 0 mod 4, q+p-1 <= m).
// Certifies the product identities exactly before returning: the reversed
// product equality, J-symmetry, involutivity and anticommutation with each
// factor.
OperatorMatrix product_operator(const CliffordSystem& sys, int q, int p);

// For the changed basis {Q_k} by A, returns the sign eps with
// Q_1 Q_2 ... Q_m = eps * P_1 P_2 ... P_m; throws invariant_error if neither
// sign matches (that would falsify the two-sided product lemma).
int basis_product_sign(const CliffordSystem& sys, const DenseMatrix& A);

// H(x) = sum_j eta_jj <P_j x, x>^2, exact and double versions.
Rational eval_H(const CliffordSystem& sys, const RatVec& x);
double eval_H(const CliffordSystem& sys, const RealVec& x);

// Product P_1 P_2 ... P_m.
OperatorMatrix full_product(const CliffordSystem& sys);

// Random exact pseudo-orthogonal matrix in O(r, m-r), built as a product of
// rational rotation/hyperbolic/reflection generators.
DenseMatrix random_pseudo_orthogonal(const Metric& eta, Prng& rng, int generator_count = 8);

// Named generators of O(r, m-r) with rational entries (cos, sin) or
// (cosh, sinh) supplied by the caller.
DenseMatrix rotation_generator(const Metric& eta, int a, const Rational& c, const Rational& sn);
DenseMatrix hyperbolic_generator(const Metric& eta, const Rational& ch, const Rational& sh);
DenseMatrix t1_generator(const Metric& eta);
DenseMatrix t2_generator(const Metric& eta);

}  // namespace cforge
