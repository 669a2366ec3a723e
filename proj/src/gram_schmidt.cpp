#include "cforge/gram_schmidt.hpp"

#include <cmath>

namespace cforge {

namespace {

// Shared elimination loop. `strict` demands independent non-degenerate input
// (the gram_schmidt_pseudo contract); otherwise dependent vectors are dropped.
OrthogonalBasis orthogonalize_impl(std::vector<RatVec> work, const Metric& g, bool strict) {
    OrthogonalBasis out;
    size_t k = 0;
    while (k < work.size()) {
        // Project the remaining vectors against the accepted ones lazily:
        // work[k] is fully projected here.
        RatVec w = work[k];
        for (size_t t = 0; t < out.vecs.size(); ++t) {
            const Rational c = pseudo_inner(w, out.vecs[t], g) / out.norms[t];
            if (c != 0) w = vec_axpy(-c, out.vecs[t], w);
        }
        if (is_zero_vec(w)) {
            if (strict) throw input_error("gram_schmidt_pseudo: dependent input vector");
            ++k;
            continue;
        }
        Rational nw = pseudo_inner(w, w, g);
        if (nw == 0) {
            // Null pivot. Project the later vectors and look for the best swap.
            size_t best = 0;
            Rational best_abs = 0;
            std::vector<RatVec> projected(work.size());
            for (size_t j = k + 1; j < work.size(); ++j) {
                RatVec u = work[j];
                for (size_t t = 0; t < out.vecs.size(); ++t) {
                    const Rational c = pseudo_inner(u, out.vecs[t], g) / out.norms[t];
                    if (c != 0) u = vec_axpy(-c, out.vecs[t], u);
                }
                projected[j] = u;
                const Rational nu = pseudo_inner(u, u, g);
                if (abs(nu) > best_abs) {
                    best_abs = abs(nu);
                    best = j;
                }
            }
            if (best_abs != 0) {
                std::swap(work[k], work[best]);
                continue;
            }
            // Everything left is null; a nonzero cross product must exist in a
            // non-degenerate remainder, and adding that vector denullifies w.
            bool repaired = false;
            for (size_t j = k + 1; j < work.size() && !repaired; ++j) {
                if (is_zero_vec(projected[j])) continue;
                if (pseudo_inner(w, projected[j], g) != 0) {
                    work[k] = vec_add(w, projected[j]);
                    repaired = true;
                }
            }
            if (!repaired)
                throw input_error(
                    "gram_schmidt_pseudo: null vector with no admissible swap (degenerate span)");
            continue;
        }
        out.vecs.push_back(std::move(w));
        out.norms.push_back(std::move(nw));
        ++k;
    }
    return out;
}

}  // namespace

OrthogonalBasis orthogonalize_span(const std::vector<RatVec>& vectors, const Metric& g) {
    return orthogonalize_impl(vectors, g, false);
}

std::vector<ScaledVector> gram_schmidt_pseudo(const std::vector<RatVec>& vectors, const Metric& g) {
    CFORGE_REQUIRE(!vectors.empty(), "gram_schmidt_pseudo: empty input");
    // Degeneracy gate: the Gram matrix of the input must have no zero
    // directions.
    const int k = static_cast<int>(vectors.size());
    DenseMatrix G(k, k);
    for (int i = 0; i < k; ++i)
        for (int j = 0; j < k; ++j)
            G.at(i, j) = pseudo_inner(vectors[static_cast<size_t>(i)],
                                      vectors[static_cast<size_t>(j)], g);
    const auto [neg, zero, pos] = signature_of_gram(G);
    (void)neg;
    (void)pos;
    CFORGE_REQUIRE(zero == 0, "gram_schmidt_pseudo: degenerate span");

    OrthogonalBasis ob = orthogonalize_impl(vectors, g, true);
    std::vector<ScaledVector> out;
    out.reserve(ob.vecs.size());
    for (size_t i = 0; i < ob.vecs.size(); ++i)
        out.push_back(ScaledVector{std::move(ob.vecs[i]), 1 / abs(ob.norms[i])});
    return out;
}

std::vector<RealVec> gram_schmidt_pseudo(const std::vector<RealVec>& vectors, const Metric& g) {
    constexpr double kNullTol = 1e-10;
    std::vector<RealVec> accepted;
    std::vector<double> norms;
    std::vector<RealVec> work = vectors;
    size_t k = 0;
    while (k < work.size()) {
        RealVec w = work[k];
        for (size_t t = 0; t < accepted.size(); ++t) {
            const double c = pseudo_inner(w, accepted[t], g) / norms[t];
            for (size_t i = 0; i < w.size(); ++i) w[i] -= c * accepted[t][i];
        }
        double nw = pseudo_inner(w, w, g);
        if (std::abs(nw) < kNullTol) {
            size_t best = 0;
            double best_abs = kNullTol;
            for (size_t j = k + 1; j < work.size(); ++j) {
                RealVec u = work[j];
                for (size_t t = 0; t < accepted.size(); ++t) {
                    const double c = pseudo_inner(u, accepted[t], g) / norms[t];
                    for (size_t i = 0; i < u.size(); ++i) u[i] -= c * accepted[t][i];
                }
                const double nu = std::abs(pseudo_inner(u, u, g));
                if (nu > best_abs) {
                    best_abs = nu;
                    best = j;
                }
            }
            if (best != 0) {
                std::swap(work[k], work[best]);
                continue;
            }
            bool repaired = false;
            for (size_t j = k + 1; j < work.size() && !repaired; ++j) {
                if (std::abs(pseudo_inner(w, work[j], g)) > kNullTol) {
                    for (size_t i = 0; i < w.size(); ++i) work[k][i] = w[i] + work[j][i];
                    repaired = true;
                }
            }
            if (!repaired)
                throw input_error("gram_schmidt_pseudo: null vector with no admissible swap");
            continue;
        }
        const double scale = 1.0 / std::sqrt(std::abs(nw));
        for (auto& x : w) x *= scale;
        norms.push_back(nw > 0 ? 1.0 : -1.0);
        accepted.push_back(std::move(w));
        ++k;
    }
    return accepted;
}

}  // namespace cforge
