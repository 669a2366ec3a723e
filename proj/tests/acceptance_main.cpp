// Acceptance suite: one line per criterion, nonzero exit if any fails.
// Usage: cforge_acceptance [path-to-cli]

#include <chrono>
#include <cmath>
#include <cstdlib>
#include <iostream>
#include <string>
#include <vector>

#include "cforge/catalog.hpp"
#include "cforge/family.hpp"
#include "cforge/focal.hpp"

using namespace cforge;
using Clock = std::chrono::steady_clock;

namespace {

int failures = 0;

void report(int id, const std::string& name, bool pass, const std::string& detail = "") {
    std::cout << (pass ? "PASS" : "FAIL") << "  criterion " << id << ": " << name;
    if (!detail.empty()) std::cout << "  [" << detail << "]";
    std::cout << "\n";
    if (!pass) ++failures;
}

double seconds_since(Clock::time_point t0) {
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

CliffordSystem make_sys(int m, int r, int d = 1) {
    auto [fam, trace] = construct_family(m, r);
    return lift_to_clifford_system(fam, d);
}

DenseMatrix from_rows(std::vector<std::vector<long>> rows) {
    DenseMatrix M(static_cast<int>(rows.size()), static_cast<int>(rows[0].size()));
    for (size_t i = 0; i < rows.size(); ++i)
        for (size_t j = 0; j < rows[i].size(); ++j)
            M.at(static_cast<int>(i), static_cast<int>(j)) = make_rational(rows[i][j]);
    return M;
}

// in-scope stratum analysis sweep: m in {4, 8}, r even, d in {1, 2}
std::vector<std::tuple<int, int, int>> analysis_sweep() {
    std::vector<std::tuple<int, int, int>> out;
    for (int m : {4, 8})
        for (int r = 0; r <= m; r += 2)
            for (int d : {1, 2}) out.emplace_back(m, r, d);
    return out;
}

RealVec normal_at(const CliffordSystem& sys, const RealVec& x, const RealVec& coeffs) {
    RealVec v(x.size(), 0.0);
    for (int i = 0; i < sys.m; ++i) {
        const RealVec Px = sys.ops[static_cast<size_t>(i)].apply(x);
        for (size_t t = 0; t < v.size(); ++t) v[t] += coeffs[static_cast<size_t>(i)] * Px[t];
    }
    return v;
}

}  // namespace

int main(int argc, char** argv) {
    const std::string cli = argc > 1 ? argv[1] : "";
    const ExampleBundle b51 = example_5_1();
    const ExampleBundle b52 = example_5_2();
    const CliffordSystem& s51 = b51.system;
    const CliffordSystem& s52 = b52.system;

    // 1. construction sweep, exact relations + symmetry, d = 1, under 10 s
    {
        const auto t0 = Clock::now();
        bool ok = true;
        std::string bad;
        for (int m = 2; m <= 10 && ok; ++m)
            for (int r = 0; r <= m && ok; ++r) {
                try {
                    auto [fam, trace] = construct_family(m, r);
                    const CliffordSystem sys = lift_to_clifford_system(fam, 1);
                    const SystemCertificate cert = verify_system(sys, VerifyOptions{true, 0, 0});
                    if (!cert.pass) {
                        ok = false;
                        bad = "(" + std::to_string(m) + "," + std::to_string(r) + ")";
                    }
                } catch (const std::exception& e) {
                    ok = false;
                    bad = e.what();
                }
            }
        const double dt = seconds_since(t0);
        report(1, "construction sweep 2<=m<=10, all r, exact verification", ok && dt < 10.0,
               "time " + std::to_string(dt) + " s" + (bad.empty() ? "" : ", " + bad));
    }

    // 2. base fidelity against the five printed matrices
    {
        bool ok = true;
        ok = ok && base_family(1, 0).mats[0].to_dense() == from_rows({{1}});
        ok = ok && base_family(1, 1).mats[0].to_dense() == from_rows({{0, -1}, {1, 0}});
        const auto f20 = base_family(2, 0);
        ok = ok && f20.mats[0].to_dense() == from_rows({{1, 0}, {0, -1}});
        ok = ok && f20.mats[1].to_dense() == from_rows({{0, -1}, {-1, 0}});
        const auto f21 = base_family(2, 1);
        ok = ok && f21.mats[0].to_dense() == from_rows({{0, 1}, {-1, 0}});
        ok = ok && f21.mats[1].to_dense() == from_rows({{1, 0}, {0, -1}});
        const auto f22 = base_family(2, 2);
        ok = ok && f22.mats[0].to_dense() ==
                       from_rows({{0, -1, 0, 0}, {1, 0, 0, 0}, {0, 0, 0, -1}, {0, 0, 1, 0}});
        ok = ok && f22.mats[1].to_dense() ==
                       from_rows({{0, 0, -1, 0}, {0, 0, 0, 1}, {1, 0, 0, 0}, {0, -1, 0, 0}});
        report(2, "base families match the printed matrices", ok);
    }

    // 3. order anchors and the minimal-order table
    {
        bool ok = s51.l == 8 && s52.l == 8;
        const long expect[8] = {1, 2, 4, 4, 8, 8, 8, 8};
        for (int m = 0; m <= 7; ++m) ok = ok && minimal_order_lookup(m) == expect[m];
        report(3, "order anchors l = 8 and minimal-order table", ok);
    }

    // 4. eigensplit dimensions, non-degeneracy and exact cross-orthogonality
    {
        bool ok = true;
        std::string bad;
        for (const auto& [m, r, d] : analysis_sweep()) {
            const CliffordSystem sys = make_sys(m, r, d);
            const Eigensplit es = eigensplit(sys);
            if (static_cast<int>(es.plus.size()) != sys.l ||
                static_cast<int>(es.minus.size()) != sys.l) {
                ok = false;
                bad = "dims";
                break;
            }
            for (const auto& u : es.plus)
                for (const auto& v : es.minus)
                    if (pseudo_inner(u, v, sys.ambient()) != 0) {
                        ok = false;
                        bad = "cross-gram";
                    }
            if (!ok) break;
        }
        const Eigensplit e1 = eigensplit(s51), e2 = eigensplit(s52);
        ok = ok && e1.s1 == 4 && e1.s2 == 4 && e2.s1 == 4 && e2.s2 == 4;
        report(4, "eigensplit dims (l,l), zero cross-Gram, (s1,s2)=(4,4) anchors", ok, bad);
    }

    // 5. case classification anchors + signature bounds across the sweep
    {
        bool ok = true;
        std::string bad;
        try {
            ok = classify_case(s51) == CaseLabel::A && classify_case(s52) == CaseLabel::D3;
            if (!ok) bad = "anchors";
            for (const auto& [m, r, d] : analysis_sweep())
                (void)classify_case(make_sys(m, r, d));  // throws if any bound fails
        } catch (const std::exception& e) {
            ok = false;
            bad = e.what();
        }
        report(5, "case anchors a/d3 and signature bounds over m in {4,8}", ok, bad);
    }

    // 6. focal identities over seeded samples, under 5 s
    {
        const auto t0 = Clock::now();
        bool ok = true;
        double worst_f = 0, worst_n = 0;
        Prng rng(2024);
        for (const CliffordSystem* sysp : {&s51, &s52}) {
            const CliffordSystem& sys = *sysp;
            const int delta = (sys.r == sys.m) ? -1 : 1;
            const SampleReport rep = sample_m_plus(sys, 20, 4242);
            int count = 0;
            for (const auto& x : rep.points)
                for (int k = 0; k < 10; ++k, ++count) {
                    const RealVec v = normal_at(sys, x, random_normal_coeffs(sys, delta, rng));
                    const double t_c =
                        (delta == 1) ? rng.uniform(0.05, 0.75) : rng.uniform(0.05, 1.4);
                    const double c = (delta == 1) ? std::cos(4 * t_c) : std::cosh(4 * t_c);
                    const FocalImage img = focal_map_phi(sys, x, v, c, 1e-9);
                    worst_f = std::max(worst_f, std::abs(eval_f(sys, img.point, 1e-6) - c));
                    const RealVec xi = unit_normal_xi(sys, img.point, c);
                    for (size_t t = 0; t < xi.size(); ++t)
                        worst_n = std::max(worst_n, std::abs(img.velocity[t] + xi[t]));
                }
            ok = ok && count >= 200;
        }
        ok = ok && worst_f < 1e-9 && worst_n < 1e-8;
        const double dt = seconds_since(t0);
        report(6, "focal level and normal identities over 200 samples per system",
               ok && dt < 5.0,
               "max|f-c| " + std::to_string(worst_f) + ", max|v+xi| " + std::to_string(worst_n) +
                   ", time " + std::to_string(dt) + " s");
    }

    // 7. shape-kernel vectors annihilated by the finite-difference oracle
    {
        bool ok = true;
        double worst = 0;
        Prng rng(99);
        for (const CliffordSystem* sysp : {&s51, &s52}) {
            const CliffordSystem& sys = *sysp;
            const int delta = (sys.r == sys.m) ? -1 : 1;
            const SampleReport rep = sample_m_plus(sys, 4, 808);
            int tested = 0;
            for (const auto& x : rep.points)
                for (int k = 0; k < 5; ++k, ++tested) {
                    const RealVec v = normal_at(sys, x, random_normal_coeffs(sys, delta, rng));
                    const auto kernel = shape_kernel(sys, x, v);
                    const ShapeOracleReport r2 = fd_shape_kernel_check(sys, x, v, kernel);
                    worst = std::max(worst, r2.max_kernel_residual);
                }
            ok = ok && tested >= 20;
        }
        ok = ok && worst < 1e-5;
        report(7, "algebraic shape kernels annihilated by the numeric shape operator", ok,
               "worst residual " + std::to_string(worst));
    }

    // 8. N_+ witnesses for the worked systems and every in-scope l > m system
    {
        bool ok = true;
        std::string bad;
        try {
            for (const auto& [m, r, d] : analysis_sweep()) {
                const CliffordSystem sys = make_sys(m, r, d);
                if (sys.l <= sys.m) continue;
                const NPlusWitness w = n_plus_witness(sys, 0);
                if (!w.decision.member) {
                    ok = false;
                    bad = "membership";
                    break;
                }
                // soundness: P x = ±x exactly
                const RatVec Px = full_product(sys).apply(w.x);
                for (size_t i = 0; i < Px.size(); ++i)
                    if (Px[i] != Rational(w.eps) * w.x[i]) {
                        ok = false;
                        bad = "eigenspace soundness";
                    }
                if (pseudo_inner(w.v, w.v, sys.ambient()) != 1) {
                    ok = false;
                    bad = "<v,v> != 1";
                }
            }
        } catch (const std::exception& e) {
            ok = false;
            bad = e.what();
        }
        report(8, "N+ witnesses with exact eigenspace soundness over the sweep", ok, bad);
    }

    // 9. inhomogeneity certificates per component; (4,2) at d = 1 exits as
    //    hypothesis-unmet
    {
        bool ok = true;
        std::string bad;
        try {
            for (int eps : {+1, -1}) {
                const InhomogeneityWitness w = inhomogeneity_witness(s51, eps);
                if (!w.all_checks()) {
                    ok = false;
                    bad = "5.1 eps " + std::to_string(eps);
                }
            }
            const InhomogeneityWitness w2 = inhomogeneity_witness(s52, 0);
            if (!w2.all_checks()) {
                ok = false;
                bad = "5.2";
            }
        } catch (const std::exception& e) {
            ok = false;
            bad = e.what();
        }
        bool unmet_ok = false;
        try {
            (void)inhomogeneity_witness(make_sys(4, 2), 0);
        } catch (const hypothesis_unmet&) {
            unmet_ok = true;
        }
        bool cli_ok = true;
        if (!cli.empty()) {
            const std::string dir = "/tmp";
            const std::string f = dir + "/acc_s42.json";
            cli_ok = WEXITSTATUS(std::system(
                         (cli + " construct --m 4 --r 2 --out " + f + " >/dev/null 2>&1").c_str())) == 0;
            cli_ok = cli_ok &&
                     WEXITSTATUS(std::system(
                         (cli + " witness --in " + f + " >/dev/null 2>&1").c_str())) == 3;
        }
        report(9, "inhomogeneity certificates pass; (4,2) d=1 is hypothesis-unmet",
               ok && unmet_ok && cli_ok, bad);
    }

    // 10. census anchors
    {
        bool ok = true;
        std::string bad;
        try {
            const CensusReport c1 = connectedness_census(s51);
            ok = ok && !c1.connected && c1.components.size() == 2 && c1.strata.size() == 3 &&
                 c1.strata[0].point && c1.strata[1].point && c1.strata[2].empty_by_case;
            const CensusReport c2 = connectedness_census(s52);
            ok = ok && c2.connected && c2.components.size() == 1;
            for (const auto& s : c2.strata) ok = ok && s.point.has_value();
        } catch (const std::exception& e) {
            ok = false;
            bad = e.what();
        }
        report(10, "census: two components + empty middle stratum vs connected with three", ok,
               bad);
    }

    // 11. catalog: exact bases, frames, target spheres, injectivity probe
    {
        bool ok = true;
        std::string bad;
        try {
            const OperatorMatrix P = full_product(s51);
            for (const auto& a : b51.a_basis) ok = ok && P.apply(a.coords) == a.coords;
            for (const auto& bb : b51.b_basis)
                ok = ok && P.apply(bb.coords) == vec_scale(Rational(-1), bb.coords);
            for (const auto* basis : {&b51.a_basis, &b51.b_basis})
                for (size_t i = 0; i < basis->size(); ++i)
                    for (size_t j = 0; j < basis->size(); ++j) {
                        const Rational raw =
                            pseudo_inner((*basis)[i].coords, (*basis)[j].coords, s51.ambient());
                        if (i != j)
                            ok = ok && raw == 0;
                        else
                            ok = ok && raw * (*basis)[i].scale2 == (i < 4 ? -1 : 1);
                    }
            if (!ok) bad = "bases";

            std::vector<RealVec> stratum_one;
            std::uint64_t seed = 1111;
            while (stratum_one.size() < 100) {
                const SampleReport rep = sample_m_plus(s51, 40, seed++);
                for (size_t i = 0; i < rep.points.size() && stratum_one.size() < 100; ++i)
                    if (rep.strata[i] == Stratum::One) stratum_one.push_back(rep.points[i]);
            }
            double worst_frame = 0, worst_x = 0, worst_y = 0;
            for (const auto& z : stratum_one) {
                const DiffeoImage img = diffeo_forward(b51, z);
                worst_frame = std::max(worst_frame, img.q_frame_residual);
                worst_x = std::max(worst_x, img.x_norm_residual);
                worst_y = std::max(worst_y, img.y_norm_residual);
            }
            if (worst_frame >= 1e-9 || worst_x >= 1e-9 || worst_y >= 1e-9) {
                ok = false;
                bad = "chart residuals";
            }
            const ProbeReport probe = diffeo_injectivity_probe(b51, stratum_one);
            if (probe.collisions != 0) {
                ok = false;
                bad = "collisions";
            }
        } catch (const std::exception& e) {
            ok = false;
            bad = e.what();
        }
        report(11, "catalog bases exact, chart residuals < 1e-9, zero probe collisions", ok, bad);
    }

    // 12. invariance: H/F under exact basis changes; two-sided product sign
    {
        bool ok = true;
        std::string bad;
        try {
            Prng rng(606);
            for (const CliffordSystem* sysp : {&s51, &s52}) {
                const CliffordSystem& sys = *sysp;
                for (int trial = 0; trial < 100; ++trial) {
                    const DenseMatrix A = random_pseudo_orthogonal(sys.eta(), rng, 5);
                    const CliffordSystem moved = change_basis(sys, A);
                    RatVec x(static_cast<size_t>(sys.ambient_dim()));
                    for (auto& cc : x) cc = rng.rational();
                    if (eval_H(sys, x) != eval_H(moved, x) ||
                        eval_F(sys, x) != eval_F(moved, x)) {
                        ok = false;
                        bad = "H/F invariance";
                    }
                }
            }
            int trials = 0;
            for (const CliffordSystem* sysp : {&s51, &s52})
                for (int trial = 0; trial < 500; ++trial, ++trials) {
                    const DenseMatrix A = random_pseudo_orthogonal(sysp->eta(), rng, 6);
                    const int sign = basis_product_sign(*sysp, A);  // throws on violation
                    if (sign != 1 && sign != -1) ok = false;
                }
            if (trials < 1000) ok = false;
        } catch (const std::exception& e) {
            ok = false;
            bad = e.what();
        }
        report(12, "exact H/F invariance and the two-sided product sign over 1000 trials", ok,
               bad);
    }

    if (failures == 0) {
        std::cout << "acceptance: all criteria passed\n";
        return 0;
    }
    std::cout << "acceptance: " << failures << " criterion(s) failed\n";
    return 1;
}
