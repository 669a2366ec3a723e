#pragma once

#include <vector>

#include "cforge/dense.hpp"
#include "cforge/vec.hpp"

namespace cforge {

// Generalized Gram-Schmidt for an indefinite metric, exact layer. Input must
// span a non-degenerate subspace (checked through the Gram inertia: zero
// count must vanish). Output vectors satisfy <w_i, w_j> = ±delta_ij exactly,
// carried as unnormalized coordinates plus a squared scale.
//
// Pivot rule: when the current vector is null after projection, swap in the
// later vector maximizing |self-inner-product|; if every remaining vector is
// null, add one with a nonzero cross product (such a vector exists exactly
// when the remaining span is non-degenerate).
std::vector<ScaledVector> gram_schmidt_pseudo(const std::vector<RatVec>& vectors, const Metric& g);

// Double-precision layer of the same process; null detection at 1e-10.
std::vector<RealVec> gram_schmidt_pseudo(const std::vector<RealVec>& vectors, const Metric& g);

// The projection core without the unit normalization: returns an orthogonal
// basis of span{vectors} together with the (nonzero) self-inner products.
// Unlike gram_schmidt_pseudo this accepts dependent spanning sets; dependent
// vectors project to zero and are dropped. Throws input_error when the span
// is degenerate.
struct OrthogonalBasis {
    std::vector<RatVec> vecs;
    std::vector<Rational> norms;
};
OrthogonalBasis orthogonalize_span(const std::vector<RatVec>& vectors, const Metric& g);

}  // namespace cforge
