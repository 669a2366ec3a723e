#include "cforge/rational_points.hpp"

#include <algorithm>

namespace cforge {

std::vector<RatVec> involution_eigenbasis(const SignedPermMatrix& P, int eps) {
    const int n = P.order();
    CFORGE_REQUIRE(P * P == SignedPermMatrix::identity(n), "eigenbasis needs an involution");
    std::vector<bool> seen(static_cast<size_t>(n), false);
    std::vector<RatVec> basis;
    for (int j = 0; j < n; ++j) {
        if (seen[static_cast<size_t>(j)]) continue;
        const int k = P.image(j);
        if (k == j) {
            seen[static_cast<size_t>(j)] = true;
            if (P.sign(j) == eps) basis.push_back(rat_basis_vec(n, j));
        } else {
            seen[static_cast<size_t>(j)] = true;
            seen[static_cast<size_t>(k)] = true;
            RatVec v = rat_zero_vec(n);
            v[static_cast<size_t>(j)] = 1;
            v[static_cast<size_t>(k)] = eps * P.sign(j);
            basis.push_back(std::move(v));
        }
    }
    return basis;
}

namespace {

// Incremental independence filter; keeps the original vectors whose reduced
// forms are nonzero.
std::vector<RatVec> independent_subset(const std::vector<RatVec>& vecs) {
    std::vector<RatVec> reduced;
    std::vector<int> pivot_col;
    std::vector<RatVec> kept;
    for (const RatVec& v0 : vecs) {
        RatVec v = v0;
        for (size_t t = 0; t < reduced.size(); ++t) {
            const int pc = pivot_col[t];
            if (v[static_cast<size_t>(pc)] == 0) continue;
            const Rational f = v[static_cast<size_t>(pc)] / reduced[t][static_cast<size_t>(pc)];
            v = vec_axpy(-f, reduced[t], v);
        }
        int pc = -1;
        for (size_t i = 0; i < v.size(); ++i)
            if (v[i] != 0) {
                pc = static_cast<int>(i);
                break;
            }
        if (pc < 0) continue;
        reduced.push_back(v);
        pivot_col.push_back(pc);
        kept.push_back(v0);
    }
    return kept;
}

}  // namespace

std::vector<JointEigenspace> joint_eigenspaces(const std::vector<SignedPermMatrix>& Rs, int dim) {
    std::vector<JointEigenspace> spaces;
    {
        JointEigenspace whole;
        for (int i = 0; i < dim; ++i) whole.basis.push_back(rat_basis_vec(dim, i));
        spaces.push_back(std::move(whole));
    }
    for (const auto& R : Rs) {
        std::vector<JointEigenspace> next;
        for (const auto& space : spaces) {
            for (int eps : {+1, -1}) {
                std::vector<RatVec> proj;
                for (const RatVec& v : space.basis) {
                    RatVec Rv = R.apply(v);
                    RatVec w(v.size());
                    bool nonzero = false;
                    for (size_t i = 0; i < v.size(); ++i) {
                        w[i] = (v[i] + Rational(eps) * Rv[i]) / 2;
                        nonzero = nonzero || w[i] != 0;
                    }
                    if (nonzero) proj.push_back(primitive_scale(w));
                }
                auto indep = independent_subset(proj);
                if (indep.empty()) continue;
                JointEigenspace child;
                child.signs = space.signs;
                child.signs.push_back(eps);
                child.basis = std::move(indep);
                next.push_back(std::move(child));
            }
        }
        spaces = std::move(next);
    }
    // Lexicographic: +1 sorts before -1 at each position (already the
    // generation order, but make it explicit).
    std::sort(spaces.begin(), spaces.end(), [](const JointEigenspace& a, const JointEigenspace& b) {
        for (size_t i = 0; i < a.signs.size() && i < b.signs.size(); ++i)
            if (a.signs[i] != b.signs[i]) return a.signs[i] > b.signs[i];
        return false;
    });
    return spaces;
}

RatVec primitive_scale(const RatVec& v) {
    Integer lcm = 1, gcd = 0;
    for (const auto& q : v)
        mpz_lcm(lcm.get_mpz_t(), lcm.get_mpz_t(), q.get_den().get_mpz_t());
    RatVec out(v.size());
    for (size_t i = 0; i < v.size(); ++i) {
        Rational t = v[i] * lcm;
        out[i] = t;
        mpz_gcd(gcd.get_mpz_t(), gcd.get_mpz_t(), t.get_num().get_mpz_t());
    }
    if (gcd > 1)
        for (auto& q : out) q /= Rational(gcd);
    return out;
}

namespace {

std::optional<RatVec> try_scale_to(const RatVec& w, const Rational& norm, const Rational& target) {
    if (norm == 0 || sgn(norm) != sgn(target)) return std::nullopt;
    const auto root = exact_sqrt(target / norm);
    if (!root) return std::nullopt;
    return vec_scale(*root, w);
}

}  // namespace

std::optional<RatVec> find_vector_with_norm(const std::vector<RatVec>& basis, const Metric& g,
                                            const Rational& target) {
    if (basis.empty()) return std::nullopt;
    OrthogonalBasis ob = orthogonalize_span(basis, g);
    std::vector<RatVec> vecs;
    std::vector<Rational> norms;
    for (size_t i = 0; i < ob.vecs.size(); ++i) {
        RatVec w = primitive_scale(ob.vecs[i]);
        vecs.push_back(w);
        norms.push_back(pseudo_inner(w, w, g));
    }
    const size_t k = vecs.size();

    for (size_t i = 0; i < k; ++i)
        if (auto v = try_scale_to(vecs[i], norms[i], target)) return v;

    // Equal-coefficient sums of up to four same-sign vectors.
    for (size_t i = 0; i < k; ++i) {
        if (sgn(norms[i]) != sgn(target)) continue;
        Rational acc_norm = norms[i];
        RatVec acc = vecs[i];
        for (size_t j = i + 1; j < k; ++j) {
            if (sgn(norms[j]) != sgn(target)) continue;
            acc = vec_add(acc, vecs[j]);
            acc_norm += norms[j];
            if (auto v = try_scale_to(acc, acc_norm, target)) return v;
        }
    }

    // General two-term search c1^2 n1 + c2^2 n2 = target over small rationals.
    constexpr long kBound = 24;
    for (size_t i = 0; i < k; ++i)
        for (size_t j = i + 1; j < k; ++j) {
            const Rational n1 = norms[i], n2 = norms[j];
            for (long p = 1; p <= kBound; ++p)
                for (long q = 1; q <= kBound; ++q) {
                    const Rational c1 = make_rational(p, q);
                    const Rational rem = target - c1 * c1 * n1;
                    if (rem == 0) continue;  // singles already handled
                    if (sgn(rem) != sgn(n2)) continue;
                    const auto c2 = exact_sqrt(rem / n2);
                    if (!c2) continue;
                    return vec_add(vec_scale(c1, vecs[i]), vec_scale(*c2, vecs[j]));
                }
        }
    return std::nullopt;
}

std::optional<RatVec> find_vector_with_sign(const std::vector<RatVec>& basis, const Metric& g,
                                            int sign) {
    if (basis.empty()) return std::nullopt;
    OrthogonalBasis ob = orthogonalize_span(basis, g);
    for (size_t i = 0; i < ob.vecs.size(); ++i)
        if (sgn(ob.norms[i]) == sign) return primitive_scale(ob.vecs[i]);
    return std::nullopt;
}

}  // namespace cforge
