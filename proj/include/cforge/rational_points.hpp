#pragma once

#include <optional>
#include <vector>

#include "cforge/gram_schmidt.hpp"
#include "cforge/signed_perm.hpp"

namespace cforge {

// Exact eigenbasis of an involutive signed permutation that is symmetric with
// respect to g: one integer vector per cycle (e_j for fixed points, e_j ± e_k
// for 2-cycles), mutually orthogonal by disjoint supports.
std::vector<RatVec> involution_eigenbasis(const SignedPermMatrix& P, int eps);

// Joint eigenspaces of pairwise commuting involutive signed permutations,
// keyed by sign pattern in the order given. Empty joint spaces are omitted.
struct JointEigenspace {
    std::vector<int> signs;
    std::vector<RatVec> basis;
};
std::vector<JointEigenspace> joint_eigenspaces(const std::vector<SignedPermMatrix>& Rs, int dim);

// A rational vector of exact prescribed self-inner-product inside the span of
// `basis`, or nullopt when the bounded search fails. Searches singles, equal
// and general two-term combinations of an orthogonalized basis.
std::optional<RatVec> find_vector_with_norm(const std::vector<RatVec>& basis, const Metric& g,
                                            const Rational& target);

// A rational vector whose self-inner-product has the prescribed sign (+1/-1),
// or nullopt when the span has no such direction.
std::optional<RatVec> find_vector_with_sign(const std::vector<RatVec>& basis, const Metric& g,
                                            int sign);

// Scale a rational vector to primitive integer coordinates.
RatVec primitive_scale(const RatVec& v);

}  // namespace cforge
