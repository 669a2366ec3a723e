#include "cforge/focal.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>

namespace cforge {

namespace {

Eigen::VectorXd to_eigen(const RealVec& v) {
    Eigen::VectorXd out(static_cast<Eigen::Index>(v.size()));
    for (size_t i = 0; i < v.size(); ++i) out[static_cast<Eigen::Index>(i)] = v[i];
    return out;
}

RealVec real_axpy(double c, const RealVec& x, const RealVec& y) {
    RealVec out(y.size());
    for (size_t i = 0; i < y.size(); ++i) out[i] = y[i] + c * x[i];
    return out;
}

}  // namespace

// ---------------------------------------------------------------------------
// Isoparametric function layer
// ---------------------------------------------------------------------------

Rational eval_F(const CliffordSystem& sys, const RatVec& x) {
    const Rational xx = pseudo_inner(x, x, sys.ambient());
    return xx * xx - 2 * eval_H(sys, x);
}

double eval_F(const CliffordSystem& sys, const RealVec& x) {
    const double xx = pseudo_inner(x, x, sys.ambient());
    return xx * xx - 2.0 * eval_H(sys, x);
}

Rational eval_f(const CliffordSystem& sys, const RatVec& x) {
    CFORGE_REQUIRE(pseudo_inner(x, x, sys.ambient()) == 1, "eval_f: point not on the sphere");
    return eval_F(sys, x);
}

double eval_f(const CliffordSystem& sys, const RealVec& x, double tol) {
    CFORGE_REQUIRE(std::abs(pseudo_inner(x, x, sys.ambient()) - 1.0) < tol,
                   "eval_f: point not on the sphere");
    return eval_F(sys, x);
}

RealVec grad_F_symbolic(const CliffordSystem& sys, const RealVec& x) {
    // grad F = 4 <x,x> x - 8 sum_j eta_jj <P_j x, x> P_j x  (index raised by J).
    const Metric J = sys.ambient();
    const double xx = pseudo_inner(x, x, J);
    RealVec g(x.size(), 0.0);
    for (size_t i = 0; i < x.size(); ++i) g[i] = 4.0 * xx * x[i];
    for (int j = 0; j < sys.m; ++j) {
        const RealVec Px = sys.ops[static_cast<size_t>(j)].apply(x);
        const double c = -8.0 * sys.eta_diag(j) * pseudo_inner(Px, x, J);
        for (size_t i = 0; i < x.size(); ++i) g[i] += c * Px[i];
    }
    return g;
}

RealVec grad_f_numeric(const CliffordSystem& sys, const RealVec& x) {
    constexpr double h = 1e-6;
    const Metric J = sys.ambient();
    RealVec grad(x.size(), 0.0);
    RealVec xp = x, xm = x;
    for (size_t i = 0; i < x.size(); ++i) {
        xp[i] = x[i] + h;
        xm[i] = x[i] - h;
        const double dFi = (eval_F(sys, xp) - eval_F(sys, xm)) / (2.0 * h);
        // Raise the Euclidean partial with J to get the pseudo-gradient.
        grad[i] = (J.diag(static_cast<int>(i)) < 0 ? -dFi : dFi);
        xp[i] = x[i];
        xm[i] = x[i];
    }
    // Project to the sphere tangent space with respect to <.,.>.
    const double gx = pseudo_inner(grad, x, J);
    return real_axpy(-gx, x, grad);
}

bool m_plus_membership(const CliffordSystem& sys, const RatVec& x) {
    const Metric J = sys.ambient();
    if (pseudo_inner(x, x, J) != 1) return false;
    for (int j = 0; j < sys.m; ++j)
        if (pseudo_inner(sys.ops[static_cast<size_t>(j)].apply(x), x, J) != 0) return false;
    return true;
}

bool m_plus_membership(const CliffordSystem& sys, const ScaledVector& x) {
    const Metric J = sys.ambient();
    if (pseudo_inner(x.coords, x.coords, J) * x.scale2 != 1) return false;
    for (int j = 0; j < sys.m; ++j)
        if (pseudo_inner(sys.ops[static_cast<size_t>(j)].apply(x.coords), x.coords, J) != 0)
            return false;
    return true;
}

bool m_plus_membership(const CliffordSystem& sys, const RealVec& x, double tol) {
    const Metric J = sys.ambient();
    if (std::abs(pseudo_inner(x, x, J) - 1.0) >= tol) return false;
    for (int j = 0; j < sys.m; ++j)
        if (std::abs(pseudo_inner(sys.ops[static_cast<size_t>(j)].apply(x), x, J)) >= tol)
            return false;
    return true;
}

// ---------------------------------------------------------------------------
// Geodesics and the focal diffeomorphism
// ---------------------------------------------------------------------------

RealVec geodesic(const RealVec& x, const RealVec& v, double t, double kappa, const Metric& g) {
    const double tau = kappa * pseudo_inner(v, v, g);
    RealVec out(x.size());
    if (tau > 0) {
        const double rt = std::sqrt(tau);
        for (size_t i = 0; i < x.size(); ++i)
            out[i] = std::cos(rt * t) * x[i] + std::sin(rt * t) / rt * v[i];
    } else if (tau == 0) {
        for (size_t i = 0; i < x.size(); ++i) out[i] = x[i] + t * v[i];
    } else {
        const double rt = std::sqrt(-tau);
        for (size_t i = 0; i < x.size(); ++i)
            out[i] = std::cosh(rt * t) * x[i] + std::sinh(rt * t) / rt * v[i];
    }
    return out;
}

RealVec geodesic_velocity(const RealVec& x, const RealVec& v, double t, double kappa,
                          const Metric& g) {
    const double tau = kappa * pseudo_inner(v, v, g);
    RealVec out(x.size());
    if (tau > 0) {
        const double rt = std::sqrt(tau);
        for (size_t i = 0; i < x.size(); ++i)
            out[i] = -rt * std::sin(rt * t) * x[i] + std::cos(rt * t) * v[i];
    } else if (tau == 0) {
        out = v;
    } else {
        const double rt = std::sqrt(-tau);
        for (size_t i = 0; i < x.size(); ++i)
            out[i] = rt * std::sinh(rt * t) * x[i] + std::cosh(rt * t) * v[i];
    }
    return out;
}

RatVec solve_Q_v(const CliffordSystem& sys, const RatVec& x, const RatVec& v) {
    const Metric J = sys.ambient();
    RatVec coeffs(static_cast<size_t>(sys.m));
    for (int i = 0; i < sys.m; ++i)
        coeffs[static_cast<size_t>(i)] =
            Rational(sys.eta_diag(i)) * pseudo_inner(v, sys.ops[static_cast<size_t>(i)].apply(x), J);
    const SigmaElement Q{&sys, coeffs};
    CFORGE_REQUIRE(Q.apply(x) == v, "solve_Q_v: v is not in the normal space at x");
    return coeffs;
}

RealVec solve_Q_v(const CliffordSystem& sys, const RealVec& x, const RealVec& v, double tol) {
    const Metric J = sys.ambient();
    RealVec coeffs(static_cast<size_t>(sys.m));
    RealVec rebuilt(x.size(), 0.0);
    for (int i = 0; i < sys.m; ++i) {
        const RealVec Px = sys.ops[static_cast<size_t>(i)].apply(x);
        coeffs[static_cast<size_t>(i)] = sys.eta_diag(i) * pseudo_inner(v, Px, J);
        for (size_t t = 0; t < x.size(); ++t) rebuilt[t] += coeffs[static_cast<size_t>(i)] * Px[t];
    }
    double worst = 0;
    for (size_t t = 0; t < x.size(); ++t) worst = std::max(worst, std::abs(rebuilt[t] - v[t]));
    CFORGE_REQUIRE(worst < tol, "solve_Q_v: residual after projection is nonzero");
    return coeffs;
}

WRnInterval w_rn_interval(const CliffordSystem& sys) {
    WRnInterval w;
    if (sys.r == 0) {
        w.hi = 1.0;
        w.text = "(-1, 1)";
    } else if (sys.r == sys.m) {
        w.lo = 1.0;
        w.text = "(1, inf)";
    } else {
        w.excludes_one = true;
        w.text = "(-1, inf) \\ {1}";
    }
    return w;
}

bool w_rn_contains(const WRnInterval& w, double c) {
    if (c <= w.lo) return false;
    if (w.hi && c >= *w.hi) return false;
    if (w.excludes_one && c == 1.0) return false;
    return true;
}

FocalImage focal_map_phi(const CliffordSystem& sys, const RealVec& x, const RealVec& v, double c,
                         double tol) {
    CFORGE_REQUIRE(w_rn_contains(w_rn_interval(sys), c),
                   "focal_map_phi: c outside W_RN(f) for this signature");
    const Metric J = sys.ambient();
    const double vv = pseudo_inner(v, v, J);
    FocalImage img;
    if (c > -1.0 && c < 1.0) {
        CFORGE_REQUIRE(std::abs(vv - 1.0) < 1e-8, "focal_map_phi: c in (-1,1) needs <v,v> = 1");
        img.delta = 1;
        img.t_c = std::acos(c) / 4.0;  // in (0, pi/4)
    } else {
        CFORGE_REQUIRE(std::abs(vv + 1.0) < 1e-8, "focal_map_phi: c > 1 needs <v,v> = -1");
        img.delta = -1;
        img.t_c = std::acosh(c) / 4.0;
    }
    img.point = geodesic(x, v, img.t_c, 1.0, J);
    img.velocity = geodesic_velocity(x, v, img.t_c, 1.0, J);
    const double f = eval_f(sys, img.point, 1e-6);
    CFORGE_CHECK(std::abs(f - c) < tol, "focal_map_phi: image does not lie on the requested level set");
    return img;
}

RealVec unit_normal_xi(const CliffordSystem& sys, const RealVec& x, double c) {
    CFORGE_REQUIRE(w_rn_contains(w_rn_interval(sys), c), "unit_normal_xi: c outside W_RN(f)");
    const int delta = (c > -1.0 && c < 1.0) ? 1 : -1;
    const double denom = delta * (1.0 - c * c);
    CFORGE_REQUIRE(denom > 0, "unit_normal_xi: delta(1 - c^2) must be positive");
    const Metric J = sys.ambient();
    RealVec acc(x.size(), 0.0);
    for (size_t i = 0; i < x.size(); ++i) acc[i] = (1.0 - c) * x[i];
    for (int j = 0; j < sys.m; ++j) {
        const RealVec Px = sys.ops[static_cast<size_t>(j)].apply(x);
        const double w = -2.0 * sys.eta_diag(j) * pseudo_inner(Px, x, J);
        for (size_t i = 0; i < x.size(); ++i) acc[i] += w * Px[i];
    }
    const double scale = 1.0 / std::sqrt(denom);
    for (auto& t : acc) t *= scale;
    return acc;
}

// ---------------------------------------------------------------------------
// Shape operator kernel
// ---------------------------------------------------------------------------

namespace {

// eta-orthocomplement of the coefficient vector c in Sigma.
std::vector<RatVec> eta_orthocomplement(const CliffordSystem& sys, const RatVec& c) {
    DenseMatrix row(1, sys.m);
    for (int i = 0; i < sys.m; ++i) row.at(0, i) = Rational(sys.eta_diag(i)) * c[static_cast<size_t>(i)];
    return kernel_basis(row);
}

}  // namespace

std::vector<RatVec> shape_kernel(const CliffordSystem& sys, const RatVec& x, const RatVec& v) {
    const RatVec c = solve_Q_v(sys, x, v);
    const Rational delta = pseudo_inner(c, c, sys.eta());
    CFORGE_REQUIRE(delta != 0, "shape_kernel: null normal directions are not supported");
    const RatVec qvx = SigmaElement{&sys, c}.apply(x);
    std::vector<RatVec> out;
    for (const RatVec& k : eta_orthocomplement(sys, c))
        out.push_back(SigmaElement{&sys, k}.apply(qvx));
    CFORGE_CHECK(static_cast<int>(out.size()) == sys.m - 1, "shape_kernel: expected m-1 vectors");
    DenseMatrix rows(sys.m - 1, sys.ambient_dim());
    for (int i = 0; i < sys.m - 1; ++i)
        for (int j = 0; j < sys.ambient_dim(); ++j)
            rows.at(i, j) = out[static_cast<size_t>(i)][static_cast<size_t>(j)];
    CFORGE_CHECK(rank_of(rows) == sys.m - 1,
                 "shape_kernel: the m-1 kernel vectors are linearly dependent");
    return out;
}

std::vector<RealVec> shape_kernel(const CliffordSystem& sys, const RealVec& x, const RealVec& v) {
    const RealVec c = solve_Q_v(sys, x, v);
    double delta = 0;
    for (int i = 0; i < sys.m; ++i)
        delta += sys.eta_diag(i) * c[static_cast<size_t>(i)] * c[static_cast<size_t>(i)];
    CFORGE_REQUIRE(std::abs(delta) > 1e-8, "shape_kernel: null normal directions are not supported");
    // Q_v x, then one kernel vector per eta-orthocomplement direction. The
    // complement basis mirrors the exact path: kernel of the single row
    // (eta_ii c_i).
    RealVec qvx(x.size(), 0.0);
    for (int i = 0; i < sys.m; ++i) {
        const RealVec Px = sys.ops[static_cast<size_t>(i)].apply(x);
        for (size_t t = 0; t < x.size(); ++t) qvx[t] += c[static_cast<size_t>(i)] * Px[t];
    }
    // Build complement directions numerically: for a pivot index p with
    // eta_pp c_p != 0, the vectors e_j - (eta_jj c_j / eta_pp c_p) e_p, j != p.
    int p = -1;
    double best = 1e-12;
    for (int i = 0; i < sys.m; ++i) {
        const double w = std::abs(c[static_cast<size_t>(i)]);
        if (w > best) {
            best = w;
            p = i;
        }
    }
    CFORGE_REQUIRE(p >= 0, "shape_kernel: zero normal coefficients");
    std::vector<RealVec> out;
    for (int j = 0; j < sys.m; ++j) {
        if (j == p) continue;
        RealVec k(static_cast<size_t>(sys.m), 0.0);
        k[static_cast<size_t>(j)] = 1.0;
        k[static_cast<size_t>(p)] = -(sys.eta_diag(j) * c[static_cast<size_t>(j)]) /
                                    (sys.eta_diag(p) * c[static_cast<size_t>(p)]);
        RealVec kv(x.size(), 0.0);
        for (int i = 0; i < sys.m; ++i) {
            if (k[static_cast<size_t>(i)] == 0.0) continue;
            const RealVec Pq = sys.ops[static_cast<size_t>(i)].apply(qvx);
            for (size_t t = 0; t < x.size(); ++t) kv[t] += k[static_cast<size_t>(i)] * Pq[t];
        }
        out.push_back(std::move(kv));
    }
    return out;
}

// ---------------------------------------------------------------------------
// Sampling and projection (needed by the shape oracle below)
// ---------------------------------------------------------------------------

std::optional<RealVec> project_to_m_plus(const CliffordSystem& sys, RealVec x, double tol) {
    const Metric J = sys.ambient();
    const int n = sys.ambient_dim();
    const int k = sys.m + 1;
    for (int iter = 0; iter < 100; ++iter) {
        Eigen::VectorXd c(k);
        Eigen::MatrixXd A(k, n);
        c[0] = pseudo_inner(x, x, J) - 1.0;
        for (int i = 0; i < n; ++i) A(0, i) = 2.0 * J.diag(i) * x[static_cast<size_t>(i)];
        for (int j = 0; j < sys.m; ++j) {
            const RealVec Px = sys.ops[static_cast<size_t>(j)].apply(x);
            c[j + 1] = pseudo_inner(Px, x, J);
            for (int i = 0; i < n; ++i) A(j + 1, i) = 2.0 * J.diag(i) * Px[static_cast<size_t>(i)];
        }
        if (c.lpNorm<Eigen::Infinity>() < tol) return x;
        // Minimum-norm Euclidean least-squares step through the normal
        // equations of the constraint Jacobian.
        const Eigen::MatrixXd AAt = A * A.transpose();
        const Eigen::VectorXd lambda = AAt.fullPivLu().solve(-c);
        const Eigen::VectorXd delta = A.transpose() * lambda;
        if (!delta.allFinite()) return std::nullopt;
        for (int i = 0; i < n; ++i) x[static_cast<size_t>(i)] += delta[i];
    }
    return std::nullopt;
}

SampleReport sample_m_plus(const CliffordSystem& sys, int count, std::uint64_t seed, double tol) {
    Prng rng(seed);
    SampleReport rep;
    const int n = sys.ambient_dim();
    int guard = 0;
    while (static_cast<int>(rep.points.size()) < count) {
        CFORGE_CHECK(++guard < 200 * count + 1000, "sample_m_plus: rejection budget exhausted");
        RealVec x(static_cast<size_t>(n));
        for (auto& t : x) t = rng.gaussian();
        const double xx = pseudo_inner(x, x, sys.ambient());
        if (xx <= 0.1) {
            ++rep.discarded;
            continue;
        }
        const double inv = 1.0 / std::sqrt(xx);
        for (auto& t : x) t *= inv;
        auto proj = project_to_m_plus(sys, x, 1e-13);
        if (!proj || !m_plus_membership(sys, *proj, tol)) {
            ++rep.discarded;
            continue;
        }
        rep.max_f_residual = std::max(rep.max_f_residual, std::abs(eval_f(sys, *proj, 1e-6) - 1.0));
        rep.strata.push_back(stratum_of(sys, *proj));
        rep.points.push_back(std::move(*proj));
    }
    return rep;
}

RealVec random_normal_coeffs(const CliffordSystem& sys, int delta, Prng& rng) {
    CFORGE_REQUIRE(delta == 1 || delta == -1, "normal type must be ±1");
    CFORGE_REQUIRE(!(delta == 1 && sys.r == sys.m), "no spacelike normals when r = m");
    CFORGE_REQUIRE(!(delta == -1 && sys.r == 0), "no timelike normals when r = 0");
    for (int attempt = 0; attempt < 1000; ++attempt) {
        RealVec c(static_cast<size_t>(sys.m));
        for (auto& t : c) t = rng.gaussian();
        double q = 0;
        for (int i = 0; i < sys.m; ++i)
            q += sys.eta_diag(i) * c[static_cast<size_t>(i)] * c[static_cast<size_t>(i)];
        if (delta * q <= 1e-6) continue;
        const double inv = 1.0 / std::sqrt(std::abs(q));
        for (auto& t : c) t *= inv;
        return c;
    }
    throw invariant_error("random_normal_coeffs: rejection sampling failed");
}

ShapeOracleReport fd_shape_kernel_check(const CliffordSystem& sys, const RealVec& x,
                                        const RealVec& v,
                                        const std::vector<RealVec>& kernel_vectors) {
    const Metric J = sys.ambient();
    const int n = sys.ambient_dim();

    // Tangent space of M_+ at x: Euclidean kernel of the constraint gradients.
    Eigen::MatrixXd C(sys.m + 1, n);
    for (int i = 0; i < n; ++i) C(0, i) = J.diag(i) * x[static_cast<size_t>(i)];
    for (int j = 0; j < sys.m; ++j) {
        const RealVec Px = sys.ops[static_cast<size_t>(j)].apply(x);
        for (int i = 0; i < n; ++i) C(j + 1, i) = J.diag(i) * Px[static_cast<size_t>(i)];
    }
    Eigen::FullPivLU<Eigen::MatrixXd> lu(C);
    Eigen::MatrixXd K = lu.kernel();
    Eigen::HouseholderQR<Eigen::MatrixXd> qr(K);
    Eigen::MatrixXd T =
        qr.householderQ() * Eigen::MatrixXd::Identity(n, static_cast<int>(K.cols()));
    const int td = static_cast<int>(T.cols());

    // Second differences of Newton-projected curves; step sized for one level
    // of differentiation of machine-accurate projections.
    const double h = 1e-3;
    auto accel = [&](const Eigen::VectorXd& X) {
        RealVec xp = x, xm = x;
        for (int i = 0; i < n; ++i) {
            xp[static_cast<size_t>(i)] += h * X[i];
            xm[static_cast<size_t>(i)] -= h * X[i];
        }
        auto pp = project_to_m_plus(sys, xp, 1e-13);
        auto pm = project_to_m_plus(sys, xm, 1e-13);
        CFORGE_CHECK(pp && pm, "shape oracle: Newton projection failed");
        Eigen::VectorXd a(n);
        for (int i = 0; i < n; ++i)
            a[i] = ((*pp)[static_cast<size_t>(i)] - 2.0 * x[static_cast<size_t>(i)] +
                    (*pm)[static_cast<size_t>(i)]) /
                   (h * h);
        return a;
    };

    std::vector<Eigen::VectorXd> diag_acc(static_cast<size_t>(td));
    for (int a = 0; a < td; ++a) diag_acc[static_cast<size_t>(a)] = accel(T.col(a));

    auto j_inner = [&](const Eigen::VectorXd& u, const Eigen::VectorXd& w) {
        double acc = 0;
        for (int i = 0; i < n; ++i) acc += J.diag(i) * u[i] * w[i];
        return acc;
    };

    // B_ab = <II(t_a, t_b), v> via polarization, G_ab = <t_a, t_b>.
    Eigen::MatrixXd B(td, td), G(td, td);
    Eigen::VectorXd ve = to_eigen(v);
    for (int a = 0; a < td; ++a)
        for (int b = a; b < td; ++b) {
            double Bab;
            if (a == b) {
                Bab = j_inner(diag_acc[static_cast<size_t>(a)], ve);
            } else {
                const Eigen::VectorXd apb = accel(T.col(a) + T.col(b));
                Bab = 0.5 * (j_inner(apb, ve) - j_inner(diag_acc[static_cast<size_t>(a)], ve) -
                             j_inner(diag_acc[static_cast<size_t>(b)], ve));
            }
            B(a, b) = B(b, a) = Bab;
            G(a, b) = G(b, a) = j_inner(T.col(a), T.col(b));
        }

    Eigen::FullPivLU<Eigen::MatrixXd> gsolve(G);
    ShapeOracleReport rep;
    rep.tangent_dim = td;
    for (const RealVec& k0 : kernel_vectors) {
        Eigen::VectorXd k = to_eigen(k0);
        const double nk = k.norm();
        CFORGE_CHECK(nk > 1e-12, "shape oracle: zero kernel vector");
        k /= nk;
        Eigen::VectorXd rhs(td);
        for (int a = 0; a < td; ++a) rhs[a] = j_inner(k, T.col(a));
        const Eigen::VectorXd coef = gsolve.solve(rhs);
        const double resid = (B * coef).lpNorm<Eigen::Infinity>();
        rep.max_kernel_residual = std::max(rep.max_kernel_residual, resid);
    }
    return rep;
}

// ---------------------------------------------------------------------------
// Eigensplit, case classification, strata
// ---------------------------------------------------------------------------

Eigensplit eigensplit(const CliffordSystem& sys) {
    CFORGE_REQUIRE(sys.m % 4 == 0 && sys.r % 2 == 0,
                   "eigensplit requires m = 0 mod 4 and even r");
    const OperatorMatrix P = full_product(sys);
    Eigensplit es;
    if (P.is_signed_perm()) {
        es.plus = involution_eigenbasis(P.sp(), +1);
        es.minus = involution_eigenbasis(P.sp(), -1);
    } else {
        const DenseMatrix Pd = P.to_dense();
        const DenseMatrix I = DenseMatrix::identity(sys.ambient_dim());
        es.plus = kernel_basis(I - Pd);
        es.minus = kernel_basis(I + Pd);
    }
    CFORGE_CHECK(static_cast<int>(es.plus.size()) == sys.l &&
                     static_cast<int>(es.minus.size()) == sys.l,
                 "eigensplit: eigenspace dimensions differ from l");
    const Metric J = sys.ambient();
    auto inertia_of = [&](const std::vector<RatVec>& basis) {
        DenseMatrix G(static_cast<int>(basis.size()), static_cast<int>(basis.size()));
        for (size_t i = 0; i < basis.size(); ++i)
            for (size_t j = i; j < basis.size(); ++j) {
                G.at(static_cast<int>(i), static_cast<int>(j)) = pseudo_inner(basis[i], basis[j], J);
                G.at(static_cast<int>(j), static_cast<int>(i)) = G.at(static_cast<int>(i), static_cast<int>(j));
            }
        return signature_of_gram(G);
    };
    const auto [n1, z1, p1] = inertia_of(es.plus);
    const auto [n2, z2, p2] = inertia_of(es.minus);
    (void)p1;
    (void)p2;
    CFORGE_CHECK(z1 == 0 && z2 == 0, "eigensplit: degenerate eigenspace");
    es.s1 = n1;
    es.s2 = n2;
    return es;
}

std::string case_name(CaseLabel c) {
    switch (c) {
        case CaseLabel::A: return "a";
        case CaseLabel::B: return "b";
        case CaseLabel::C1: return "c1";
        case CaseLabel::C2: return "c2";
        case CaseLabel::D1: return "d1";
        case CaseLabel::D2: return "d2";
        case CaseLabel::D3: return "d3";
    }
    return "?";
}

CaseLabel classify_case(const CliffordSystem& sys) {
    CFORGE_REQUIRE(sys.m % 4 == 0 && sys.r % 2 == 0,
                   "classify_case requires m = 0 mod 4 and even r");
    const Eigensplit es = eigensplit(sys);
    const int l = sys.l, s = sys.s, m = sys.m, r = sys.r;
    const int s1 = es.s1, s2 = es.s2;
    CFORGE_CHECK(s1 + s2 == s, "case bounds violated: s1 + s2 != s");
    if (r == 0) {
        CFORGE_CHECK(s % 2 == 0 && s1 == s2 && s1 == s / 2, "case bounds violated: s1 = s2 = s/2");
        CFORGE_CHECK(s / 2 <= l - m, "case bounds violated: s/2 <= l - m");
        return (s / 2 == l - m) ? CaseLabel::A : CaseLabel::D1;
    }
    if (r < m) {
        CFORGE_CHECK(s == l, "case bounds violated: interior r needs s = l");
        CFORGE_CHECK(s1 == s2 && s1 == s / 2, "case bounds violated: s1 = s2 = s/2");
        CFORGE_CHECK(m - r <= l / 2, "case bounds violated: m - r <= l/2");
        return (m - r == l / 2) ? CaseLabel::B : CaseLabel::D2;
    }
    CFORGE_CHECK(s == l, "case bounds violated: r = m needs s = l");
    if (s1 == 0 && s2 == l) return CaseLabel::C1;
    if (s1 == l && s2 == 0) return CaseLabel::C2;
    CFORGE_CHECK(m <= s1 && s1 <= l - m && m <= s2 && s2 <= l - m,
                 "case bounds violated: r = m middle range");
    return CaseLabel::D3;
}

std::string stratum_name(Stratum s) {
    switch (s) {
        case Stratum::One: return "M+,1";
        case Stratum::Two: return "M+,2";
        case Stratum::Three: return "M+,3";
    }
    return "?";
}

namespace {

// z_+ = (I + P) z / 2.
RatVec plus_part(const CliffordSystem& sys, const RatVec& z) {
    const RatVec Pz = full_product(sys).apply(z);
    RatVec out(z.size());
    for (size_t i = 0; i < z.size(); ++i) out[i] = (z[i] + Pz[i]) / 2;
    return out;
}

RealVec plus_part(const CliffordSystem& sys, const RealVec& z) {
    const RealVec Pz = full_product(sys).apply(z);
    RealVec out(z.size());
    for (size_t i = 0; i < z.size(); ++i) out[i] = 0.5 * (z[i] + Pz[i]);
    return out;
}

Stratum stratum_from_norm_exact(const Rational& npp) {
    if (npp >= 1) return Stratum::One;
    if (npp <= 0) return Stratum::Two;
    return Stratum::Three;
}

}  // namespace

Stratum stratum_of(const CliffordSystem& sys, const RatVec& z) {
    CFORGE_REQUIRE(m_plus_membership(sys, z), "stratum_of: point is not in M_+");
    const RatVec zp = plus_part(sys, z);
    return stratum_from_norm_exact(pseudo_inner(zp, zp, sys.ambient()));
}

Stratum stratum_of(const CliffordSystem& sys, const ScaledVector& z) {
    CFORGE_REQUIRE(m_plus_membership(sys, z), "stratum_of: point is not in M_+");
    const RatVec zp = plus_part(sys, z.coords);
    return stratum_from_norm_exact(pseudo_inner(zp, zp, sys.ambient()) * z.scale2);
}

Stratum stratum_of(const CliffordSystem& sys, const RealVec& z) {
    CFORGE_REQUIRE(m_plus_membership(sys, z, 1e-8), "stratum_of: point is not in M_+");
    const RealVec zp = plus_part(sys, z);
    const double npp = pseudo_inner(zp, zp, sys.ambient());
    if (npp >= 1.0) return Stratum::One;
    if (npp <= 0.0) return Stratum::Two;
    return Stratum::Three;
}

// ---------------------------------------------------------------------------
// N_+ machinery
// ---------------------------------------------------------------------------

NPlusDecision n_plus_membership(const CliffordSystem& sys, const RatVec& x) {
    CFORGE_REQUIRE(m_plus_membership(sys, x), "n_plus_membership: point is not in M_+");
    const int n = sys.ambient_dim();
    std::vector<RatVec> constraint_rows;
    for (int i = 0; i < sys.m; ++i) {
        const RatVec Pix = sys.ops[static_cast<size_t>(i)].apply(x);
        std::vector<RatVec> span;
        for (int j = 0; j < sys.m; ++j) {
            if (j == i) continue;
            span.push_back(sys.ops[static_cast<size_t>(j)].apply(Pix));
        }
        DenseMatrix rows(static_cast<int>(span.size()), n);
        for (size_t a = 0; a < span.size(); ++a)
            for (int b = 0; b < n; ++b) rows.at(static_cast<int>(a), b) = span[a][static_cast<size_t>(b)];
        CFORGE_CHECK(rank_of(rows) == sys.m - 1,
                     "n_plus_membership: shape kernel basis unexpectedly dependent");
        // v lies in span{rows} iff it annihilates the Euclidean complement of
        // the span; those complement vectors become stacked constraints.
        for (RatVec& nrm : kernel_basis(rows)) constraint_rows.push_back(std::move(nrm));
    }
    DenseMatrix C(static_cast<int>(constraint_rows.size()), n);
    for (size_t a = 0; a < constraint_rows.size(); ++a)
        for (int b = 0; b < n; ++b) C.at(static_cast<int>(a), b) = constraint_rows[a][static_cast<size_t>(b)];
    NPlusDecision dec;
    dec.intersection_basis = kernel_basis(C);
    dec.dim = static_cast<int>(dec.intersection_basis.size());
    if (dec.dim == 0) {
        dec.member = false;
        return dec;
    }
    DenseMatrix G(dec.dim, dec.dim);
    const Metric J = sys.ambient();
    for (int i = 0; i < dec.dim; ++i)
        for (int j = i; j < dec.dim; ++j) {
            G.at(i, j) = pseudo_inner(dec.intersection_basis[static_cast<size_t>(i)],
                                      dec.intersection_basis[static_cast<size_t>(j)], J);
            G.at(j, i) = G.at(i, j);
        }
    dec.inertia = signature_of_gram(G);
    dec.member = std::get<2>(dec.inertia) > 0;
    return dec;
}

NPlusWitness n_plus_witness(const CliffordSystem& sys, int target_eps) {
    CFORGE_REQUIRE(sys.m % 4 == 0 && sys.r % 2 == 0,
                   "n_plus_witness requires m = 0 mod 4 and even r");
    CFORGE_REQUIRE(sys.all_signed_perm(), "n_plus_witness needs the constructed representation");
    const int n = sys.ambient_dim();
    const Metric J = sys.ambient();

    std::vector<SignedPermMatrix> Rs;
    for (int i = 1; i <= (sys.m - 2) / 2; ++i)
        Rs.push_back(product_operator(sys, 2 * i - 1, 4).sp());

    NPlusWitness wit;
    bool found = false;
    for (const JointEigenspace& space : joint_eigenspaces(Rs, n)) {
        DenseMatrix G(static_cast<int>(space.basis.size()), static_cast<int>(space.basis.size()));
        for (size_t i = 0; i < space.basis.size(); ++i)
            for (size_t j = i; j < space.basis.size(); ++j) {
                G.at(static_cast<int>(i), static_cast<int>(j)) =
                    pseudo_inner(space.basis[i], space.basis[j], J);
                G.at(static_cast<int>(j), static_cast<int>(i)) =
                    G.at(static_cast<int>(i), static_cast<int>(j));
            }
        if (std::get<2>(signature_of_gram(G)) == 0) continue;  // no sphere intersection
        auto x = find_vector_with_norm(space.basis, J, Rational(1));
        if (!x) continue;
        wit.x = std::move(*x);
        wit.joint_signs = space.signs;
        found = true;
        break;
    }
    CFORGE_CHECK(found, "n_plus_witness: no sphere-intersecting joint eigenspace yielded a point");

    // P = R_1 R_3 ... R_{(m-2)/2}; the witness sits in E_eps(P) for the
    // product of the odd-position signs.
    int eps = 1;
    for (size_t i = 0; i < wit.joint_signs.size(); i += 2) eps *= wit.joint_signs[i];
    if (target_eps != 0 && eps != target_eps) {
        CFORGE_REQUIRE(sys.r < sys.m, "cannot move the witness across eigenspaces when r = m");
        wit.x = sys.ops[static_cast<size_t>(sys.m - 1)].apply(wit.x);
        eps = -eps;
    }
    wit.eps = eps;

    const RatVec P2x = sys.ops[1].apply(wit.x);
    wit.v = sys.ops[0].apply(P2x);

    // Certify: x is a genuine N_+ point, v is spacelike and lies in the
    // intersection, and x is in the expected eigenspace.
    wit.decision = n_plus_membership(sys, wit.x);
    CFORGE_CHECK(wit.decision.member, "n_plus_witness: constructed point fails the inertia test");
    CFORGE_CHECK(pseudo_inner(wit.v, wit.v, J) == 1, "n_plus_witness: <v,v> != 1");
    {
        const RatVec Px = full_product(sys).apply(wit.x);
        for (size_t i = 0; i < Px.size(); ++i)
            CFORGE_CHECK(Px[i] == Rational(eps) * wit.x[i], "n_plus_witness: P x != eps x");
    }
    {
        const int dim = wit.decision.dim;
        DenseMatrix rows(dim + 1, n);
        for (int a = 0; a < dim; ++a)
            for (int b = 0; b < n; ++b)
                rows.at(a, b) = wit.decision.intersection_basis[static_cast<size_t>(a)][static_cast<size_t>(b)];
        for (int b = 0; b < n; ++b) rows.at(dim, b) = wit.v[static_cast<size_t>(b)];
        CFORGE_CHECK(rank_of(rows) == dim, "n_plus_witness: v is outside the kernel intersection");
    }
    return wit;
}

namespace {

// Basis of { w in span{E} : <P_j u, w> = 0 for all j }.
std::vector<RatVec> completion_space(const CliffordSystem& sys, const RatVec& u,
                                     const std::vector<RatVec>& E) {
    const Metric J = sys.ambient();
    DenseMatrix M(sys.m, static_cast<int>(E.size()));
    for (int j = 0; j < sys.m; ++j) {
        const RatVec Pju = sys.ops[static_cast<size_t>(j)].apply(u);
        for (size_t k = 0; k < E.size(); ++k)
            M.at(j, static_cast<int>(k)) = pseudo_inner(Pju, E[k], J);
    }
    std::vector<RatVec> out;
    for (const RatVec& c : kernel_basis(M)) {
        RatVec w = rat_zero_vec(sys.ambient_dim());
        for (size_t k = 0; k < E.size(); ++k)
            if (c[k] != 0) w = vec_axpy(c[k], E[k], w);
        out.push_back(primitive_scale(w));
    }
    return out;
}

}  // namespace

InhomogeneityWitness inhomogeneity_witness(const CliffordSystem& sys, int target_eps) {
    if (sys.l <= sys.m)
        throw hypothesis_unmet("inhomogeneity witness requires l > m; this system has l = " +
                               std::to_string(sys.l) + ", m = " + std::to_string(sys.m));
    const CaseLabel label = classify_case(sys);
    const Eigensplit es = eigensplit(sys);
    const Metric J = sys.ambient();

    const bool is_d =
        label == CaseLabel::D1 || label == CaseLabel::D2 || label == CaseLabel::D3;

    int eps = target_eps;
    if (eps == 0) {
        switch (label) {
            case CaseLabel::C2:
                eps = -1;
                break;
            case CaseLabel::D1:
            case CaseLabel::D2:
            case CaseLabel::D3: {
                // Either eigenspace works; take the first that meets the sphere.
                eps = find_vector_with_norm(es.plus, J, Rational(1)) ? 1 : -1;
                break;
            }
            default:
                eps = 1;
                break;
        }
    }

    const std::vector<RatVec>& Eown = (eps == 1) ? es.plus : es.minus;
    const std::vector<RatVec>& Eopp = (eps == 1) ? es.minus : es.plus;

    auto u = find_vector_with_norm(Eown, J, Rational(1));
    CFORGE_CHECK(u.has_value(), "inhomogeneity_witness: no rational sphere point in E_eps(P)");

    const std::vector<RatVec> W = completion_space(sys, *u, Eopp);
    CFORGE_CHECK(!W.empty(), "inhomogeneity_witness: empty completion space");
    const int want_sign = is_d ? +1 : -1;
    auto w0 = find_vector_with_sign(W, J, want_sign);
    CFORGE_CHECK(w0.has_value(), "inhomogeneity_witness: completion space has no direction of the case sign");

    const Rational nu = pseudo_inner(*w0, *w0, J);
    // Rational points on alpha^2 + nu beta^2 = 1 via the chord through (1, 0).
    Rational lam;
    if (is_d) {
        lam = (nu == 1) ? make_rational(1, 2) : Rational(1);
    } else {
        lam = abs(nu) / (abs(nu) + 1);  // lam^2 < |nu| keeps alpha^2 > 1
    }
    const Rational t = -2 * lam / (lam * lam + nu);
    const Rational alpha = 1 + lam * t;
    const Rational beta = t;
    CFORGE_CHECK(alpha * alpha + beta * beta * nu == 1, "inhomogeneity_witness: conic point failed");
    CFORGE_CHECK(beta != 0 && alpha != 0, "inhomogeneity_witness: degenerate conic point");
    if (is_d)
        CFORGE_CHECK(alpha * alpha < 1, "inhomogeneity_witness: case d needs alpha^2 in (0,1)");
    else
        CFORGE_CHECK(alpha * alpha > 1, "inhomogeneity_witness: cases a/b/c need alpha^2 > 1");

    InhomogeneityWitness wit;
    wit.eps = eps;
    wit.point = vec_axpy(beta, *w0, vec_scale(alpha, *u));

    const RatVec Pz = full_product(sys).apply(wit.point);
    RatVec zp(wit.point.size()), zm(wit.point.size());
    for (size_t i = 0; i < wit.point.size(); ++i) {
        zp[i] = (wit.point[i] + Pz[i]) / 2;
        zm[i] = (wit.point[i] - Pz[i]) / 2;
    }
    wit.x_part = zp;
    wit.y_part = zm;

    wit.in_m_plus = m_plus_membership(sys, wit.point);
    const Stratum expected =
        is_d ? Stratum::Three : (eps == 1 ? Stratum::One : Stratum::Two);
    wit.stratum = wit.in_m_plus ? stratum_of(sys, wit.point) : expected;
    wit.stratum_as_claimed = wit.in_m_plus && wit.stratum == expected;
    wit.outside_eigenspaces = !is_zero_vec(zp) && !is_zero_vec(zm);
    wit.not_in_n_plus = wit.in_m_plus && !n_plus_membership(sys, wit.point).member;
    return wit;
}

// ---------------------------------------------------------------------------
// Census and paths
// ---------------------------------------------------------------------------

CensusReport connectedness_census(const CliffordSystem& sys) {
    const CaseLabel label = classify_case(sys);
    const Eigensplit es = eigensplit(sys);
    const Metric J = sys.ambient();
    CensusReport rep;
    rep.label = label;

    auto sphere_point_in = [&](const std::vector<RatVec>& basis) {
        return find_vector_with_norm(basis, J, Rational(1));
    };
    auto certify = [&](const RatVec& z, Stratum want) {
        if (!m_plus_membership(sys, z) || stratum_of(sys, z) != want)
            throw invariant_error("census: failed to construct a promised witness point in " +
                                  stratum_name(want));
        return z;
    };

    auto add_witness = [&](Stratum lab, std::optional<RatVec> pt) {
        StratumWitness w;
        w.label = lab;
        if (pt)
            w.point = certify(*pt, lab);
        else
            w.empty_by_case = true;
        rep.strata.push_back(std::move(w));
    };

    switch (label) {
        case CaseLabel::A:
        case CaseLabel::B: {
            rep.connected = false;
            rep.components = {"M+,1", "M+,2"};
            auto p1 = sphere_point_in(es.plus);
            auto p2 = sphere_point_in(es.minus);
            CFORGE_CHECK(p1 && p2, "census: both eigenspheres must be nonempty in cases a/b");
            add_witness(Stratum::One, p1);
            add_witness(Stratum::Two, p2);
            add_witness(Stratum::Three, std::nullopt);
            break;
        }
        case CaseLabel::C1:
        case CaseLabel::C2: {
            rep.connected = true;
            const bool plus = (label == CaseLabel::C1);
            rep.components = {plus ? "M+ (= M+,1)" : "M+ (= M+,2)"};
            auto p = sphere_point_in(plus ? es.plus : es.minus);
            CFORGE_CHECK(p, "census: the definite case must meet the sphere on one side");
            add_witness(plus ? Stratum::One : Stratum::Two, p);
            add_witness(plus ? Stratum::Two : Stratum::One, std::nullopt);
            add_witness(Stratum::Three, std::nullopt);
            break;
        }
        default: {  // d-1, d-2, d-3
            rep.connected = true;
            rep.components = {"M+"};
            auto p1 = sphere_point_in(es.plus);
            auto p2 = sphere_point_in(es.minus);
            CFORGE_CHECK(p1 && p2, "census: case d requires sphere points in both eigenspaces");
            add_witness(Stratum::One, p1);
            add_witness(Stratum::Two, p2);
            // Stratum-3 point: combine a sphere point with a spacelike
            // completion, alpha^2 in (0, 1).
            const std::vector<RatVec> W = completion_space(sys, *p1, es.minus);
            auto w0 = find_vector_with_sign(W, J, +1);
            CFORGE_CHECK(w0, "census: case d completion must contain a spacelike direction");
            const Rational nu = pseudo_inner(*w0, *w0, J);
            const Rational lam = (nu == 1) ? make_rational(1, 2) : Rational(1);
            const Rational t = -2 * lam / (lam * lam + nu);
            const Rational alpha = 1 + lam * t;
            RatVec z = vec_axpy(t, *w0, vec_scale(alpha, *p1));
            add_witness(Stratum::Three, std::move(z));
            break;
        }
    }
    return rep;
}

PathWitnessReport path_witness(const CliffordSystem& sys, const RealVec& z, int samples) {
    CFORGE_REQUIRE(m_plus_membership(sys, z, 1e-8), "path_witness: point is not in M_+");
    CFORGE_REQUIRE(samples >= 2, "path_witness: need at least two samples");
    const Metric J = sys.ambient();
    const RealVec zp = plus_part(sys, z);
    RealVec zm(z.size());
    for (size_t i = 0; i < z.size(); ++i) zm[i] = z[i] - zp[i];
    const double npp = pseudo_inner(zp, zp, J);
    const double nmm = pseudo_inner(zm, zm, J);

    PathWitnessReport rep;
    rep.samples = samples;

    auto record = [&](const RealVec& pt) {
        double worst = std::abs(pseudo_inner(pt, pt, J) - 1.0);
        for (int j = 0; j < sys.m; ++j)
            worst = std::max(worst,
                             std::abs(pseudo_inner(sys.ops[static_cast<size_t>(j)].apply(pt), pt, J)));
        rep.max_membership_residual = std::max(rep.max_membership_residual, worst);
    };

    if (npp > 0.0 && npp < 1.0) {
        rep.kind = "trigonometric";
        rep.x = zp;
        rep.y = zm;
        const double cx = 1.0 / std::sqrt(npp), cy = 1.0 / std::sqrt(1.0 - npp);
        for (auto& t : rep.x) t *= cx;
        for (auto& t : rep.y) t *= cy;
        rep.t_z = std::atan2(std::sqrt(1.0 - npp), std::sqrt(npp));
        const double t_end = 1.5707963267948966;
        for (int k = 0; k < samples; ++k) {
            const double t = t_end * k / (samples - 1);
            RealVec pt(z.size());
            for (size_t i = 0; i < z.size(); ++i)
                pt[i] = std::cos(t) * rep.x[i] + std::sin(t) * rep.y[i];
            record(pt);
        }
    } else if (npp >= 1.0) {
        // Interior stratum-1 point: hyperbolic path back to E_+(P) ∩ S; the
        // boundary case <z_+, z_+> = 1 degenerates to the linear path.
        if (std::abs(npp - 1.0) < 1e-9) {
            rep.kind = "linear";
            rep.x = zp;
            rep.y = zm;
            rep.t_z = 1.0;
            for (int k = 0; k < samples; ++k) {
                const double t = static_cast<double>(k) / (samples - 1);
                record(real_axpy(t, zm, zp));
            }
        } else {
            rep.kind = "hyperbolic";
            rep.x = zp;
            rep.y = zm;
            const double cx = 1.0 / std::sqrt(npp), cy = 1.0 / std::sqrt(-nmm);
            for (auto& t : rep.x) t *= cx;
            for (auto& t : rep.y) t *= cy;
            rep.t_z = std::acosh(std::sqrt(npp));
            for (int k = 0; k < samples; ++k) {
                const double t = rep.t_z * k / (samples - 1);
                RealVec pt(z.size());
                for (size_t i = 0; i < z.size(); ++i)
                    pt[i] = std::cosh(t) * rep.x[i] + std::sinh(t) * rep.y[i];
                record(pt);
            }
        }
    } else {
        // Stratum 2 interior: swap roles of the eigenspace parts.
        if (std::abs(nmm - 1.0) < 1e-9) {
            rep.kind = "linear";
            rep.x = zm;
            rep.y = zp;
            rep.t_z = 1.0;
            for (int k = 0; k < samples; ++k) {
                const double t = static_cast<double>(k) / (samples - 1);
                record(real_axpy(t, zp, zm));
            }
        } else {
            rep.kind = "hyperbolic";
            rep.x = zm;
            rep.y = zp;
            const double cx = 1.0 / std::sqrt(nmm), cy = 1.0 / std::sqrt(-npp);
            for (auto& t : rep.x) t *= cx;
            for (auto& t : rep.y) t *= cy;
            rep.t_z = std::acosh(std::sqrt(nmm));
            for (int k = 0; k < samples; ++k) {
                const double t = rep.t_z * k / (samples - 1);
                RealVec pt(z.size());
                for (size_t i = 0; i < z.size(); ++i)
                    pt[i] = std::cosh(t) * rep.x[i] + std::sinh(t) * rep.y[i];
                record(pt);
            }
        }
    }

    // alpha(t_z) should reproduce z; orthogonality residuals max_j |<P_j x, y>|.
    {
        RealVec at(z.size());
        if (rep.kind == "trigonometric")
            for (size_t i = 0; i < z.size(); ++i)
                at[i] = std::cos(rep.t_z) * rep.x[i] + std::sin(rep.t_z) * rep.y[i];
        else if (rep.kind == "hyperbolic")
            for (size_t i = 0; i < z.size(); ++i)
                at[i] = std::cosh(rep.t_z) * rep.x[i] + std::sinh(rep.t_z) * rep.y[i];
        else
            for (size_t i = 0; i < z.size(); ++i) at[i] = rep.x[i] + rep.y[i];
        double err = 0;
        for (size_t i = 0; i < z.size(); ++i) err = std::max(err, std::abs(at[i] - z[i]));
        rep.endpoint_residual = err;
    }
    for (int j = 0; j < sys.m; ++j)
        rep.max_orthogonality_residual =
            std::max(rep.max_orthogonality_residual,
                     std::abs(pseudo_inner(sys.ops[static_cast<size_t>(j)].apply(rep.x), rep.y, J)));
    return rep;
}

}  // namespace cforge
