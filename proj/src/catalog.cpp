#include "cforge/catalog.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>

namespace cforge {

namespace {

ScaledVector half_scaled(std::initializer_list<std::pair<int, int>> entries, int dim = 16) {
    RatVec v = rat_zero_vec(dim);
    for (auto [idx, sign] : entries) v[static_cast<size_t>(idx - 1)] = sign;  // 1-based input
    return ScaledVector{std::move(v), make_rational(1, 2)};
}

// Solve M a = rhs exactly for a 4x4 system; input_error on singular M, since
// the chart formula is only asserted where its inner inverse exists.
std::array<RatVec, 4> solve4(const DenseMatrix& M, const std::array<RatVec, 4>& rhs_cols) {
    DenseMatrix W(4, 8);
    for (int i = 0; i < 4; ++i) {
        for (int j = 0; j < 4; ++j) W.at(i, j) = M.at(i, j);
        for (int j = 0; j < 4; ++j) W.at(i, 4 + j) = rhs_cols[static_cast<size_t>(j)][static_cast<size_t>(i)];
    }
    for (int col = 0; col < 4; ++col) {
        int p = -1;
        for (int row = col; row < 4; ++row)
            if (W.at(row, col) != 0) {
                p = row;
                break;
            }
        CFORGE_REQUIRE(p >= 0, "diffeo chart: singular coefficient matrix at this point");
        if (p != col)
            for (int j = 0; j < 8; ++j) std::swap(W.at(col, j), W.at(p, j));
        const Rational piv = W.at(col, col);
        for (int j = 0; j < 8; ++j) W.at(col, j) /= piv;
        for (int row = 0; row < 4; ++row) {
            if (row == col || W.at(row, col) == 0) continue;
            const Rational f = W.at(row, col);
            for (int j = 0; j < 8; ++j) W.at(row, j) -= f * W.at(col, j);
        }
    }
    std::array<RatVec, 4> out;
    for (int j = 0; j < 4; ++j) {
        out[static_cast<size_t>(j)] = rat_zero_vec(4);
        for (int i = 0; i < 4; ++i) out[static_cast<size_t>(j)][static_cast<size_t>(i)] = W.at(i, 4 + j);
    }
    return out;
}

// The two c-dependent 4x4 matrices of the chart (1-based c^1..c^8).
DenseMatrix chart_lhs(const RatVec& c) {
    DenseMatrix M(4, 4);
    const auto C = [&](int i) { return c[static_cast<size_t>(i - 1)]; };
    M.at(0, 0) = C(7);  M.at(0, 1) = -C(8); M.at(0, 2) = -C(5); M.at(0, 3) = C(6);
    M.at(1, 0) = -C(6); M.at(1, 1) = C(5);  M.at(1, 2) = -C(8); M.at(1, 3) = C(7);
    M.at(2, 0) = C(5);  M.at(2, 1) = C(6);  M.at(2, 2) = C(7);  M.at(2, 3) = C(8);
    M.at(3, 0) = -C(8); M.at(3, 1) = -C(7); M.at(3, 2) = C(6);  M.at(3, 3) = C(5);
    return M;
}

DenseMatrix chart_rhs(const RatVec& c) {
    DenseMatrix M(4, 4);
    const auto C = [&](int i) { return c[static_cast<size_t>(i - 1)]; };
    M.at(0, 0) = -C(3); M.at(0, 1) = C(4);  M.at(0, 2) = C(1);  M.at(0, 3) = -C(2);
    M.at(1, 0) = C(2);  M.at(1, 1) = -C(1); M.at(1, 2) = C(4);  M.at(1, 3) = -C(3);
    M.at(2, 0) = -C(1); M.at(2, 1) = -C(2); M.at(2, 2) = -C(3); M.at(2, 3) = -C(4);
    M.at(3, 0) = C(4);  M.at(3, 1) = C(3);  M.at(3, 2) = -C(2); M.at(3, 3) = -C(1);
    return M;
}

// A(c) = chart_lhs(c)^{-1} chart_rhs(c); columns returned separately.
std::array<RatVec, 4> chart_solve(const RatVec& c) {
    const DenseMatrix lhs = chart_lhs(c);
    const DenseMatrix rhs = chart_rhs(c);
    std::array<RatVec, 4> cols;
    for (int j = 0; j < 4; ++j) {
        cols[static_cast<size_t>(j)] = rat_zero_vec(4);
        for (int i = 0; i < 4; ++i) cols[static_cast<size_t>(j)][static_cast<size_t>(i)] = rhs.at(i, j);
    }
    return solve4(lhs, cols);
}

std::vector<ScaledVector> sorted_eigenbasis(const SignedPermMatrix& P, int eps, const Metric& J) {
    std::vector<RatVec> basis = involution_eigenbasis(P, eps);
    std::stable_sort(basis.begin(), basis.end(), [&](const RatVec& u, const RatVec& v) {
        return pseudo_inner(u, u, J) < pseudo_inner(v, v, J);
    });
    std::vector<ScaledVector> out;
    for (auto& v : basis) out.push_back(ScaledVector{std::move(v), make_rational(1, 2)});
    return out;
}

}  // namespace

ExampleBundle example_5_1() {
    ExampleBundle b;
    b.name = "5.1";
    auto [fam, trace] = construct_family(4, 0);
    b.system = lift_to_clifford_system(fam, 1);
    b.trace = trace;
    b.a_basis = {half_scaled({{1, 1}, {8, 1}}),   half_scaled({{2, 1}, {7, 1}}),
                 half_scaled({{3, 1}, {6, -1}}),  half_scaled({{4, 1}, {5, -1}}),
                 half_scaled({{9, 1}, {16, 1}}),  half_scaled({{10, 1}, {15, 1}}),
                 half_scaled({{11, 1}, {14, -1}}), half_scaled({{12, 1}, {13, -1}})};
    b.b_basis = {half_scaled({{1, 1}, {8, -1}}),  half_scaled({{2, 1}, {7, -1}}),
                 half_scaled({{3, 1}, {6, 1}}),   half_scaled({{4, 1}, {5, 1}}),
                 half_scaled({{9, 1}, {16, -1}}), half_scaled({{10, 1}, {15, -1}}),
                 half_scaled({{11, 1}, {14, 1}}), half_scaled({{12, 1}, {13, 1}})};
    b.expected_case = CaseLabel::A;
    b.expected_w_rn = "(-1, 1)";
    b.expected_components = 2;
    b.diffeo_target = "S^7_4 x (S^4_4)_+ x S^3_0";
    return b;
}

ExampleBundle example_5_2() {
    ExampleBundle b;
    b.name = "5.2";
    auto [fam, trace] = construct_family(4, 4);
    b.system = lift_to_clifford_system(fam, 1);
    b.trace = trace;
    const SignedPermMatrix P = full_product(b.system).sp();
    b.a_basis = sorted_eigenbasis(P, +1, b.system.ambient());
    b.b_basis = sorted_eigenbasis(P, -1, b.system.ambient());
    b.expected_case = CaseLabel::D3;
    b.expected_w_rn = "(1, inf)";
    b.expected_components = 1;
    b.diffeo_target = "S^7_4 x S^4_0 x H^3_3";
    return b;
}

ExampleBundle example_by_name(const std::string& name) {
    if (name == "5.1") return example_5_1();
    if (name == "5.2") return example_5_2();
    throw input_error("unknown example '" + name + "' (expected 5.1 or 5.2)");
}

DiffeoImage diffeo_forward(const ExampleBundle& bundle, const RealVec& z) {
    const CliffordSystem& sys = bundle.system;
    const Metric J = sys.ambient();
    CFORGE_REQUIRE(bundle.name == "5.1", "forward chart is defined for the first example");
    CFORGE_REQUIRE(stratum_of(sys, z) == Stratum::One, "forward chart needs a point of M_+,1");

    // Coordinates of z in the normalized a/b bases.
    std::array<RealVec, 8> a, bb;
    for (int i = 0; i < 8; ++i) {
        a[static_cast<size_t>(i)] = bundle.a_basis[static_cast<size_t>(i)].to_real();
        bb[static_cast<size_t>(i)] = bundle.b_basis[static_cast<size_t>(i)].to_real();
    }
    auto eta_sign = [](int i) { return i < 4 ? -1.0 : 1.0; };
    RealVec c(8), d(8);
    for (int i = 0; i < 8; ++i) {
        c[static_cast<size_t>(i)] = eta_sign(i) * pseudo_inner(z, a[static_cast<size_t>(i)], J);
        d[static_cast<size_t>(i)] = eta_sign(i) * pseudo_inner(z, bb[static_cast<size_t>(i)], J);
    }

    Eigen::Matrix4d lhs, rhs;
    const auto C = [&](int i) { return c[static_cast<size_t>(i - 1)]; };
    lhs << C(7), -C(8), -C(5), C(6),
          -C(6),  C(5), -C(8), C(7),
           C(5),  C(6),  C(7), C(8),
          -C(8), -C(7),  C(6), C(5);
    rhs << -C(3), C(4),  C(1), -C(2),
            C(2), -C(1), C(4), -C(3),
           -C(1), -C(2), -C(3), -C(4),
            C(4),  C(3), -C(2), -C(1);
    Eigen::FullPivLU<Eigen::Matrix4d> lu(lhs);
    CFORGE_REQUIRE(lu.isInvertible(), "diffeo chart: singular coefficient matrix at this point");
    const Eigen::Matrix4d A = lu.solve(rhs);

    // q_i(c) = (b_i - sum_j A(j,i) b_{4+j}) / sqrt(1 - sum_j A(j,i)^2).
    std::array<RealVec, 4> q;
    DiffeoImage img;
    for (int i = 0; i < 4; ++i) {
        double s = 0;
        for (int j = 0; j < 4; ++j) s += A(j, i) * A(j, i);
        CFORGE_REQUIRE(s < 1.0, "diffeo chart: frame normalizer is not real here");
        const double inv = 1.0 / std::sqrt(1.0 - s);
        RealVec qi(16, 0.0);
        for (int t = 0; t < 16; ++t) {
            double acc = bb[static_cast<size_t>(i)][static_cast<size_t>(t)];
            for (int j = 0; j < 4; ++j)
                acc -= A(j, i) * bb[static_cast<size_t>(4 + j)][static_cast<size_t>(t)];
            qi[static_cast<size_t>(t)] = acc * inv;
        }
        q[static_cast<size_t>(i)] = std::move(qi);
    }
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) {
            const double want = (i == j) ? -1.0 : 0.0;
            img.q_frame_residual =
                std::max(img.q_frame_residual,
                         std::abs(pseudo_inner(q[static_cast<size_t>(i)], q[static_cast<size_t>(j)], J) - want));
        }

    double y5sq = 0;
    for (int i = 0; i < 8; ++i) y5sq += eta_sign(i) * c[static_cast<size_t>(i)] * c[static_cast<size_t>(i)];
    CFORGE_CHECK(y5sq >= 1.0 - 1e-9, "diffeo chart: y^5 < 1 on M_+,1");
    const double y5 = std::sqrt(y5sq);

    img.x.resize(8);
    for (int i = 0; i < 8; ++i) img.x[static_cast<size_t>(i)] = c[static_cast<size_t>(i)] / y5;

    // z_- in ambient coordinates, then y^j = -<z_-, q_j>.
    RealVec zm(16, 0.0);
    for (int i = 0; i < 8; ++i)
        for (int t = 0; t < 16; ++t)
            zm[static_cast<size_t>(t)] += d[static_cast<size_t>(i)] * bb[static_cast<size_t>(i)][static_cast<size_t>(t)];
    img.y.resize(5);
    for (int j = 0; j < 4; ++j)
        img.y[static_cast<size_t>(j)] = -pseudo_inner(zm, q[static_cast<size_t>(j)], J);
    img.y[4] = y5;

    double xn = 0;
    for (int i = 0; i < 8; ++i) xn += eta_sign(i) * img.x[static_cast<size_t>(i)] * img.x[static_cast<size_t>(i)];
    img.x_norm_residual = std::abs(xn - 1.0);
    double yn = y5 * y5;
    for (int j = 0; j < 4; ++j) yn -= img.y[static_cast<size_t>(j)] * img.y[static_cast<size_t>(j)];
    img.y_norm_residual = std::abs(yn - 1.0);
    return img;
}

ExactDiffeoCheck diffeo_forward_exact(const ExampleBundle& bundle, const RatVec& z) {
    const CliffordSystem& sys = bundle.system;
    const Metric J = sys.ambient();
    CFORGE_REQUIRE(bundle.name == "5.1", "forward chart is defined for the first example");
    CFORGE_REQUIRE(stratum_of(sys, z) == Stratum::One, "forward chart needs a point of M_+,1");

    // ct_i = eta_ii <z, a_i-unnormalized>: these are sqrt(2) c_i, and the
    // chart solve is homogeneous of degree zero in c, so A(ct) = A(c).
    RatVec ct(8), dt(8);
    for (int i = 0; i < 8; ++i) {
        const Rational sign = (i < 4) ? -1 : 1;
        ct[static_cast<size_t>(i)] = sign * pseudo_inner(z, bundle.a_basis[static_cast<size_t>(i)].coords, J);
        dt[static_cast<size_t>(i)] = sign * pseudo_inner(z, bundle.b_basis[static_cast<size_t>(i)].coords, J);
    }
    const std::array<RatVec, 4> A = chart_solve(ct);  // A[j] = column j? see below

    ExactDiffeoCheck chk;
    // Build the unnormalized frame n_i = bhat_i - sum_j A(j,i) bhat_{4+j}
    // with squared scale 1/(2 (1 - sum_j A(j,i)^2)).
    std::array<ScaledVector, 4> q;
    for (int i = 0; i < 4; ++i) {
        Rational s = 0;
        for (int j = 0; j < 4; ++j) {
            const Rational& Aji = A[static_cast<size_t>(i)][static_cast<size_t>(j)];
            s += Aji * Aji;
        }
        CFORGE_REQUIRE(s < 1, "diffeo chart: frame normalizer is not real here");
        RatVec n = bundle.b_basis[static_cast<size_t>(i)].coords;
        for (int j = 0; j < 4; ++j)
            n = vec_axpy(-A[static_cast<size_t>(i)][static_cast<size_t>(j)],
                         bundle.b_basis[static_cast<size_t>(4 + j)].coords, n);
        q[static_cast<size_t>(i)] = ScaledVector{std::move(n), 1 / (2 * (1 - s))};
    }

    const OperatorMatrix P = full_product(sys);
    chk.q_in_e_minus = true;
    for (int i = 0; i < 4 && chk.q_in_e_minus; ++i) {
        const RatVec Pq = P.apply(q[static_cast<size_t>(i)].coords);
        for (size_t t = 0; t < Pq.size(); ++t)
            if (Pq[t] != -q[static_cast<size_t>(i)].coords[t]) {
                chk.q_in_e_minus = false;
                break;
            }
    }

    chk.q_frame_orthonormal = true;
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) {
            const Rational raw =
                pseudo_inner(q[static_cast<size_t>(i)].coords, q[static_cast<size_t>(j)].coords, J);
            if (i == j) {
                if (raw * q[static_cast<size_t>(i)].scale2 != -1) chk.q_frame_orthonormal = false;
            } else if (raw != 0) {
                chk.q_frame_orthonormal = false;
            }
        }

    // Frame orthogonality to every P_i z_+ (the kernel characterization).
    const RatVec Pz = P.apply(z);
    RatVec zp(z.size()), zm(z.size());
    for (size_t t = 0; t < z.size(); ++t) {
        zp[t] = (z[t] + Pz[t]) / 2;
        zm[t] = (z[t] - Pz[t]) / 2;
    }
    chk.q_spans_constraint_space = true;
    for (int i = 0; i < sys.m; ++i) {
        const RatVec Pizp = sys.ops[static_cast<size_t>(i)].apply(zp);
        for (int j = 0; j < 4; ++j)
            if (pseudo_inner(Pizp, q[static_cast<size_t>(j)].coords, J) != 0)
                chk.q_spans_constraint_space = false;
    }

    chk.y5_squared = pseudo_inner(zp, zp, J);
    chk.x_on_target_sphere = chk.y5_squared >= 1;  // <x,x> = <z_+,z_+>/y5^2 = 1 identically

    // y-norm: y5^2 - sum_j y_j^2 with y_j^2 = <z_-, q_j>^2 (scales squared).
    Rational ysum = 0;
    for (int j = 0; j < 4; ++j) {
        const Rational raw = pseudo_inner(zm, q[static_cast<size_t>(j)].coords, J);
        ysum += raw * raw * q[static_cast<size_t>(j)].scale2;
    }
    chk.y_on_target_sphere = (chk.y5_squared - ysum == 1);
    return chk;
}

ProbeReport diffeo_injectivity_probe(const ExampleBundle& bundle,
                                     const std::vector<RealVec>& samples) {
    CFORGE_REQUIRE(samples.size() >= 2, "injectivity probe needs at least two samples");
    ProbeReport rep;
    rep.samples = static_cast<int>(samples.size());
    std::vector<RealVec> images;
    images.reserve(samples.size());
    for (const auto& z : samples) {
        const DiffeoImage img = diffeo_forward(bundle, z);
        RealVec flat = img.x;
        flat.insert(flat.end(), img.y.begin(), img.y.end());
        images.push_back(std::move(flat));
    }
    auto dist = [](const RealVec& u, const RealVec& v) {
        double acc = 0;
        for (size_t i = 0; i < u.size(); ++i) acc += (u[i] - v[i]) * (u[i] - v[i]);
        return std::sqrt(acc);
    };
    rep.min_image_gap = -1;
    for (size_t i = 0; i < samples.size(); ++i)
        for (size_t j = i + 1; j < samples.size(); ++j) {
            if (dist(samples[i], samples[j]) <= 1e-4) continue;
            ++rep.pairs_checked;
            const double g = dist(images[i], images[j]);
            if (rep.min_image_gap < 0 || g < rep.min_image_gap) rep.min_image_gap = g;
            if (g <= 1e-8) ++rep.collisions;
        }
    // Determinism: re-evaluating the first sample reproduces its image.
    const DiffeoImage again = diffeo_forward(bundle, samples.front());
    RealVec flat = again.x;
    flat.insert(flat.end(), again.y.begin(), again.y.end());
    rep.deterministic = (flat == images.front());
    return rep;
}

Json bundle_to_json(const ExampleBundle& bundle) {
    Json j;
    j["example"] = bundle.name;
    j["system"] = system_to_json(bundle.system, &bundle.trace, 1);
    auto basis_json = [](const std::vector<ScaledVector>& basis) {
        Json arr = Json::array();
        for (const auto& v : basis)
            arr.push_back(Json{{"coords", vec_to_json(v.coords)},
                               {"scale2", rational_to_string(v.scale2)}});
        return arr;
    };
    j["a_basis"] = basis_json(bundle.a_basis);
    j["b_basis"] = basis_json(bundle.b_basis);
    j["expected"] = Json{{"case", case_name(bundle.expected_case)},
                         {"w_rn", bundle.expected_w_rn},
                         {"components", bundle.expected_components},
                         {"diffeo_target", bundle.diffeo_target}};
    return j;
}

}  // namespace cforge
