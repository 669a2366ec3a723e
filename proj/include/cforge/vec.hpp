#pragma once

#include <cmath>
#include <vector>

#include "cforge/metric.hpp"
#include "cforge/rational.hpp"

namespace cforge {

using RatVec = std::vector<Rational>;
using RealVec = std::vector<double>;

// <u, v> = tu J v for the diagonal metric J.
inline Rational pseudo_inner(const RatVec& u, const RatVec& v, const Metric& g) {
    CFORGE_REQUIRE(u.size() == v.size() && static_cast<int>(u.size()) == g.dim(),
                   "pseudo_inner: dimension mismatch");
    Rational acc = 0;
    for (int i = 0; i < g.dim(); ++i) {
        if (g.diag(i) < 0)
            acc -= u[i] * v[i];
        else
            acc += u[i] * v[i];
    }
    return acc;
}

inline double pseudo_inner(const RealVec& u, const RealVec& v, const Metric& g) {
    CFORGE_REQUIRE(u.size() == v.size() && static_cast<int>(u.size()) == g.dim(),
                   "pseudo_inner: dimension mismatch");
    double acc = 0;
    for (int i = 0; i < g.dim(); ++i) acc += (g.diag(i) < 0 ? -1.0 : 1.0) * u[i] * v[i];
    return acc;
}

inline RatVec rat_zero_vec(int n) { return RatVec(static_cast<size_t>(n), Rational(0)); }

inline RatVec rat_basis_vec(int n, int i) {
    RatVec v = rat_zero_vec(n);
    v[static_cast<size_t>(i)] = 1;
    return v;
}

inline bool is_zero_vec(const RatVec& v) {
    for (const auto& x : v)
        if (x != 0) return false;
    return true;
}

inline RatVec vec_add(const RatVec& a, const RatVec& b) {
    RatVec out(a.size());
    for (size_t i = 0; i < a.size(); ++i) out[i] = a[i] + b[i];
    return out;
}

inline RatVec vec_sub(const RatVec& a, const RatVec& b) {
    RatVec out(a.size());
    for (size_t i = 0; i < a.size(); ++i) out[i] = a[i] - b[i];
    return out;
}

inline RatVec vec_scale(const Rational& c, const RatVec& a) {
    RatVec out(a.size());
    for (size_t i = 0; i < a.size(); ++i) out[i] = c * a[i];
    return out;
}

inline RatVec vec_axpy(const Rational& c, const RatVec& x, const RatVec& y) {
    RatVec out(y.size());
    for (size_t i = 0; i < y.size(); ++i) out[i] = y[i] + c * x[i];
    return out;
}

inline RealVec to_real(const RatVec& v) {
    RealVec out(v.size());
    for (size_t i = 0; i < v.size(); ++i) out[i] = to_double(v[i]);
    return out;
}

// A vector carried unnormalized together with the square of its scale factor:
// the pair (coords, scale2) stands for coords * sqrt(scale2). Irrational
// normalizers such as 1/sqrt(2) stay exact this way; every inner product the
// analysis needs is rational after squaring.
struct ScaledVector {
    RatVec coords;
    Rational scale2 = 1;  // > 0

    int dim() const { return static_cast<int>(coords.size()); }

    static ScaledVector plain(RatVec v) { return ScaledVector{std::move(v), Rational(1)}; }

    RealVec to_real() const {
        const double s = std::sqrt(to_double(scale2));
        RealVec out(coords.size());
        for (size_t i = 0; i < coords.size(); ++i) out[i] = to_double(coords[i]) * s;
        return out;
    }
};

// Inner product of two scaled vectors. Rational exactly when the product of
// the two scale squares is a perfect square (always the case for equal scales).
inline Rational pseudo_inner(const ScaledVector& a, const ScaledVector& b, const Metric& g) {
    const Rational raw = pseudo_inner(a.coords, b.coords, g);
    if (raw == 0) return Rational(0);
    const auto root = exact_sqrt(a.scale2 * b.scale2);
    CFORGE_REQUIRE(root.has_value(),
                   "pseudo_inner: scale product is not a perfect square; value is irrational");
    return raw * *root;
}

}  // namespace cforge
