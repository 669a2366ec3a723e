#include "cforge/system.hpp"

#include <sstream>

namespace cforge {

RatVec SigmaElement::apply(const RatVec& x) const {
    RatVec acc = rat_zero_vec(static_cast<int>(x.size()));
    for (int i = 0; i < sys->m; ++i) {
        if (coeffs[static_cast<size_t>(i)] == 0) continue;
        RatVec Px = sys->ops[static_cast<size_t>(i)].apply(x);
        for (size_t k = 0; k < acc.size(); ++k) acc[k] += coeffs[static_cast<size_t>(i)] * Px[k];
    }
    return acc;
}

RealVec SigmaElement::apply(const RealVec& x) const {
    RealVec acc(x.size(), 0.0);
    for (int i = 0; i < sys->m; ++i) {
        const double c = to_double(coeffs[static_cast<size_t>(i)]);
        if (c == 0.0) continue;
        RealVec Px = sys->ops[static_cast<size_t>(i)].apply(x);
        for (size_t k = 0; k < acc.size(); ++k) acc[k] += c * Px[k];
    }
    return acc;
}

DenseMatrix SigmaElement::to_dense() const {
    const int n = sys->ambient_dim();
    DenseMatrix M(n, n);
    for (int i = 0; i < sys->m; ++i) {
        const Rational& c = coeffs[static_cast<size_t>(i)];
        if (c == 0) continue;
        const auto& P = sys->ops[static_cast<size_t>(i)];
        if (P.is_signed_perm()) {
            const auto& sp = P.sp();
            for (int j = 0; j < n; ++j) M.at(sp.image(j), j) += c * sp.sign(j);
        } else {
            const auto& D = P.dn();
            for (int a = 0; a < n; ++a)
                for (int b = 0; b < n; ++b)
                    if (D.at(a, b) != 0) M.at(a, b) += c * D.at(a, b);
        }
    }
    return M;
}

Rational sigma_metric(const SigmaElement& Q, const SigmaElement& Q2) {
    CFORGE_REQUIRE(Q.sys == Q2.sys, "sigma_metric: elements of different systems");
    const CliffordSystem& sys = *Q.sys;
    Rational tr = 0;
    for (int i = 0; i < sys.m; ++i) {
        if (Q.coeffs[static_cast<size_t>(i)] == 0) continue;
        for (int j = 0; j < sys.m; ++j) {
            if (Q2.coeffs[static_cast<size_t>(j)] == 0) continue;
            const auto PiPj = sys.ops[static_cast<size_t>(i)] * sys.ops[static_cast<size_t>(j)];
            tr += Q.coeffs[static_cast<size_t>(i)] * Q2.coeffs[static_cast<size_t>(j)] * PiPj.trace();
        }
    }
    return tr / Rational(sys.ambient_dim());
}

Rational sigma_metric_coeff(const SigmaElement& Q, const SigmaElement& Q2) {
    CFORGE_REQUIRE(Q.sys == Q2.sys, "sigma_metric: elements of different systems");
    return pseudo_inner(Q.coeffs, Q2.coeffs, Q.sys->eta());
}

namespace {

std::string pair_str(int i, int j) {
    std::ostringstream os;
    os << "(" << i + 1 << "," << j + 1 << ")";
    return os.str();
}

// Relation P_i P_j + P_j P_i = 2 eta_ij I on the signed-perm fast path:
// for i != j compare P_i P_j with -(P_j P_i); for i == j compare P_i^2 with
// eta_ii I.
bool relation_holds(const CliffordSystem& sys, int i, int j) {
    const auto& Pi = sys.ops[static_cast<size_t>(i)];
    const auto& Pj = sys.ops[static_cast<size_t>(j)];
    if (Pi.is_signed_perm() && Pj.is_signed_perm()) {
        if (i == j) {
            SignedPermMatrix sq = Pi.sp() * Pi.sp();
            SignedPermMatrix want = SignedPermMatrix::identity(sys.ambient_dim());
            if (sys.eta_diag(i) < 0) want = want.negated();
            return sq == want;
        }
        return (Pi.sp() * Pj.sp()) == (Pj.sp() * Pi.sp()).negated();
    }
    DenseMatrix S = Pi.to_dense() * Pj.to_dense() + Pj.to_dense() * Pi.to_dense();
    DenseMatrix want = DenseMatrix::identity(sys.ambient_dim())
                           .scaled(Rational(i == j ? 2 * sys.eta_diag(i) : 0));
    return S == want;
}

}  // namespace

SystemCertificate verify_system(const CliffordSystem& sys, const VerifyOptions& opt) {
    SystemCertificate cert;
    const int n = sys.ambient_dim();

    if (sys.m < 2) {
        cert.add("shape", false, "m must exceed 1");
        return cert;
    }
    if (static_cast<int>(sys.ops.size()) != sys.m) {
        cert.add("shape", false, "operator count differs from m");
        return cert;
    }
    for (const auto& P : sys.ops)
        if (P.order() != n) {
            cert.add("shape", false, "operator order differs from 2l");
            return cert;
        }
    cert.add("shape", true);
    if (sys.r > 0 && sys.s != sys.l) {
        cert.add("index", false, "r > 0 requires s = l");
        return cert;
    }

    bool rel_ok = true;
    std::string rel_bad;
    for (int i = 0; i < sys.m && rel_ok; ++i)
        for (int j = i; j < sys.m && rel_ok; ++j)
            if (!relation_holds(sys, i, j)) {
                rel_ok = false;
                rel_bad = "relation fails at " + pair_str(i, j);
            }
    cert.add("clifford_relations", rel_ok, rel_bad);

    bool sym_ok = true;
    std::string sym_bad;
    const Metric J = sys.ambient();
    for (int i = 0; i < sys.m; ++i)
        if (!is_symmetric_wrt(sys.ops[static_cast<size_t>(i)], J)) {
            sym_ok = false;
            sym_bad = "operator " + std::to_string(i + 1) + " not symmetric w.r.t. J";
            break;
        }
    cert.add("j_symmetry", sym_ok, sym_bad);

    if (opt.relations_only || !cert.pass) return cert;

    Prng rng(opt.seed);
    auto random_sigma = [&]() {
        SigmaElement Q{&sys, RatVec(static_cast<size_t>(sys.m))};
        for (auto& c : Q.coeffs) c = rng.rational();
        return Q;
    };

    // Property (3): QQ' + Q'Q = 2 <Q,Q'> I for sampled Sigma-elements,
    // assembled sparsely through the m^2 products P_i P_j.
    bool p3_ok = true;
    std::string p3_bad;
    for (int trial = 0; trial < opt.sample_count && p3_ok; ++trial) {
        SigmaElement Q = random_sigma(), Q2 = random_sigma();
        DenseMatrix S(n, n);
        for (int i = 0; i < sys.m; ++i)
            for (int j = 0; j < sys.m; ++j) {
                const Rational c = Q.coeffs[static_cast<size_t>(i)] * Q2.coeffs[static_cast<size_t>(j)] +
                                   Q2.coeffs[static_cast<size_t>(i)] * Q.coeffs[static_cast<size_t>(j)];
                if (c == 0) continue;
                const auto PiPj = sys.ops[static_cast<size_t>(i)] * sys.ops[static_cast<size_t>(j)];
                if (PiPj.is_signed_perm()) {
                    const auto& sp = PiPj.sp();
                    for (int t = 0; t < n; ++t) S.at(sp.image(t), t) += c * sp.sign(t);
                } else {
                    const auto D = PiPj.to_dense();
                    for (int a = 0; a < n; ++a)
                        for (int b = 0; b < n; ++b)
                            if (D.at(a, b) != 0) S.at(a, b) += c * D.at(a, b);
                }
            }
        const Rational g = sigma_metric_coeff(Q, Q2);
        if (!(S == DenseMatrix::identity(n).scaled(2 * g))) {
            p3_ok = false;
            p3_bad = "span relation fails on sampled pair, trial " + std::to_string(trial);
        }
    }
    cert.add("span_relation", p3_ok, p3_bad);

    // Property (4): <Qx, Q'x> = <Q,Q'><x,x> for sampled x.
    bool p4_ok = true;
    std::string p4_bad;
    for (int trial = 0; trial < opt.sample_count && p4_ok; ++trial) {
        SigmaElement Q = random_sigma(), Q2 = random_sigma();
        RatVec x(static_cast<size_t>(n));
        for (auto& c : x) c = rng.rational();
        const Rational lhs = pseudo_inner(Q.apply(x), Q2.apply(x), J);
        const Rational rhs = sigma_metric_coeff(Q, Q2) * pseudo_inner(x, x, J);
        if (lhs != rhs) {
            p4_ok = false;
            p4_bad = "isometry property fails on sampled x, trial " + std::to_string(trial);
        }
    }
    cert.add("span_isometry", p4_ok, p4_bad);

    return cert;
}

CliffordSystem change_basis(const CliffordSystem& sys, const DenseMatrix& A) {
    CFORGE_REQUIRE(A.rows() == sys.m && A.cols() == sys.m, "change_basis: A must be m x m");
    CFORGE_REQUIRE(is_pseudo_orthogonal(A, sys.eta()),
                   "change_basis: A is not pseudo-orthogonal w.r.t. eta");
    const int n = sys.ambient_dim();
    CliffordSystem out = sys;
    out.ops.clear();
    for (int k = 0; k < sys.m; ++k) {
        DenseMatrix Qk(n, n);
        for (int i = 0; i < sys.m; ++i) {
            const Rational& c = A.at(i, k);
            if (c == 0) continue;
            const auto& P = sys.ops[static_cast<size_t>(i)];
            if (P.is_signed_perm()) {
                const auto& sp = P.sp();
                for (int t = 0; t < n; ++t) Qk.at(sp.image(t), t) += c * sp.sign(t);
            } else {
                const auto& D = P.dn();
                for (int a = 0; a < n; ++a)
                    for (int b = 0; b < n; ++b)
                        if (D.at(a, b) != 0) Qk.at(a, b) += c * D.at(a, b);
            }
        }
        out.ops.emplace_back(std::move(Qk));
    }
    return out;
}

OperatorMatrix product_operator(const CliffordSystem& sys, int q, int p) {
    CFORGE_REQUIRE(sys.m % 4 == 0 && sys.r % 2 == 0,
                   "product_operator requires m = 0 mod 4 and even r");
    CFORGE_REQUIRE(q >= 1 && q % 2 == 1, "product_operator: q must be odd and positive");
    CFORGE_REQUIRE(p >= 4 && p % 4 == 0, "product_operator: p must be a positive multiple of 4");
    CFORGE_REQUIRE(q + p - 1 <= sys.m, "product_operator: q + p - 1 exceeds m");

    OperatorMatrix Q = sys.ops[static_cast<size_t>(q - 1)];
    for (int t = q; t < q + p - 1; ++t) Q = Q * sys.ops[static_cast<size_t>(t)];

    OperatorMatrix rev = sys.ops[static_cast<size_t>(q + p - 2)];
    for (int t = q + p - 3; t >= q - 1; --t) rev = rev * sys.ops[static_cast<size_t>(t)];
    CFORGE_CHECK(Q.equals(rev), "product operator: reversed product differs");

    CFORGE_CHECK(is_symmetric_wrt(Q, sys.ambient()), "product operator: not J-symmetric");

    OperatorMatrix sq = Q * Q;
    OperatorMatrix id(SignedPermMatrix::identity(sys.ambient_dim()));
    CFORGE_CHECK(sq.equals(id), "product operator: square differs from identity");

    for (int a = q - 1; a <= q + p - 2; ++a) {
        const auto& Pa = sys.ops[static_cast<size_t>(a)];
        CFORGE_CHECK((Pa * Q).equals((Q * Pa).negated()),
                     "product operator: anticommutation fails at factor " + std::to_string(a + 1));
    }
    return Q;
}

OperatorMatrix full_product(const CliffordSystem& sys) {
    OperatorMatrix Q = sys.ops[0];
    for (int t = 1; t < sys.m; ++t) Q = Q * sys.ops[static_cast<size_t>(t)];
    return Q;
}

int basis_product_sign(const CliffordSystem& sys, const DenseMatrix& A) {
    CFORGE_REQUIRE(sys.m % 4 == 0 && sys.r % 2 == 0,
                   "basis_product_sign requires m = 0 mod 4 and even r");
    const CliffordSystem changed = change_basis(sys, A);
    DenseMatrix prod = changed.ops[0].to_dense();
    for (int t = 1; t < sys.m; ++t) prod = prod * changed.ops[static_cast<size_t>(t)].to_dense();
    const DenseMatrix P = full_product(sys).to_dense();
    if (prod == P) return 1;
    if (prod == P.scaled(Rational(-1))) return -1;
    throw invariant_error("basis product is neither P nor -P: two-sided product lemma violated");
}

Rational eval_H(const CliffordSystem& sys, const RatVec& x) {
    const Metric J = sys.ambient();
    Rational acc = 0;
    for (int j = 0; j < sys.m; ++j) {
        const Rational v = pseudo_inner(sys.ops[static_cast<size_t>(j)].apply(x), x, J);
        acc += Rational(sys.eta_diag(j)) * v * v;
    }
    return acc;
}

double eval_H(const CliffordSystem& sys, const RealVec& x) {
    const Metric J = sys.ambient();
    double acc = 0;
    for (int j = 0; j < sys.m; ++j) {
        const double v = pseudo_inner(sys.ops[static_cast<size_t>(j)].apply(x), x, J);
        acc += sys.eta_diag(j) * v * v;
    }
    return acc;
}

DenseMatrix rotation_generator(const Metric& eta, int a, const Rational& c, const Rational& sn) {
    const int m = eta.dim();
    CFORGE_REQUIRE(a >= 0 && a + 1 < m && a + 1 != eta.neg,
                   "rotation generator must stay inside one block");
    CFORGE_REQUIRE(c * c + sn * sn == 1, "rotation generator needs cos^2 + sin^2 = 1");
    DenseMatrix R = DenseMatrix::identity(m);
    R.at(a, a) = c;
    R.at(a, a + 1) = -sn;
    R.at(a + 1, a) = sn;
    R.at(a + 1, a + 1) = c;
    return R;
}

DenseMatrix hyperbolic_generator(const Metric& eta, const Rational& ch, const Rational& sh) {
    const int m = eta.dim();
    const int rr = eta.neg;
    CFORGE_REQUIRE(rr >= 1 && rr < m, "hyperbolic generator needs both blocks nonempty");
    CFORGE_REQUIRE(ch * ch - sh * sh == 1, "hyperbolic generator needs cosh^2 - sinh^2 = 1");
    DenseMatrix S = DenseMatrix::identity(m);
    S.at(0, 0) = ch;
    S.at(0, rr) = sh;
    S.at(rr, 0) = sh;
    S.at(rr, rr) = ch;
    return S;
}

DenseMatrix t1_generator(const Metric& eta) {
    CFORGE_REQUIRE(eta.neg >= 1, "T1 needs r >= 1");
    DenseMatrix T = DenseMatrix::identity(eta.dim());
    T.at(eta.neg - 1, eta.neg - 1) = -1;
    return T;
}

DenseMatrix t2_generator(const Metric& eta) {
    CFORGE_REQUIRE(eta.pos >= 1, "T2 needs r <= m - 1");
    DenseMatrix T = DenseMatrix::identity(eta.dim());
    T.at(eta.dim() - 1, eta.dim() - 1) = -1;
    return T;
}

DenseMatrix random_pseudo_orthogonal(const Metric& eta, Prng& rng, int generator_count) {
    const int m = eta.dim();
    DenseMatrix A = DenseMatrix::identity(m);
    for (int g = 0; g < generator_count; ++g) {
        // Rational points on the circle and the hyperbola via the tangent
        // half-parameter: cos = (1-t^2)/(1+t^2), sin = 2t/(1+t^2) and
        // cosh = (1+t^2)/(1-t^2), sinh = 2t/(1-t^2).
        const Rational t = make_rational(rng.integer(-4, 4), rng.integer(1, 4));
        const int kind = static_cast<int>(rng.integer(0, 3));
        if (kind == 0 && m >= 2) {
            std::vector<int> slots;
            for (int a = 0; a + 1 < m; ++a)
                if (a + 1 != eta.neg) slots.push_back(a);
            if (slots.empty()) continue;
            const int a = slots[static_cast<size_t>(rng.integer(0, static_cast<long>(slots.size()) - 1))];
            const Rational den = 1 + t * t;
            A = A * rotation_generator(eta, a, (1 - t * t) / den, 2 * t / den);
        } else if (kind == 1 && eta.neg >= 1 && eta.pos >= 1) {
            if (t * t == 1) continue;
            const Rational den = 1 - t * t;
            A = A * hyperbolic_generator(eta, (1 + t * t) / den, 2 * t / den);
        } else if (kind == 2 && eta.neg >= 1) {
            A = A * t1_generator(eta);
        } else if (eta.pos >= 1) {
            A = A * t2_generator(eta);
        }
    }
    return A;
}

}  // namespace cforge
