#pragma once

#include <Eigen/Dense>

#include <string>
#include <vector>

#include "cforge/metric.hpp"

namespace cforge {

// One factor of the generator decomposition of O(r, m-r): a plane rotation
// R_{a,a+1}(t) inside one block, the hyperbolic rotation S_{1,r+1}(t) across
// the blocks, or one of the two reflections T1 (flips slot r) and T2 (flips
// slot m).
struct POGenerator {
    enum Kind { Rotation, Hyperbolic, T1, T2 } kind = Rotation;
    int a = 0;       // 0-based first row of the rotation plane
    double t = 0.0;  // angle / rapidity

    Eigen::MatrixXd matrix(const Metric& eta) const;
    std::string name() const;
};

// Expresses A in O(r, m-r) (within 1e-9) as a finite product of named
// generators; the product of the returned list reproduces A within 1e-8 in
// Frobenius norm. Elimination order: plane rotations inside the negative
// block and inside the positive block, the hyperbolic rotation across, then
// a residual in {E, T1, T2, T1 T2}. The order of elimination is a choice of
// this implementation; the source only asserts that such a factorization
// exists.
std::vector<POGenerator> decompose_pseudo_orthogonal(const Eigen::MatrixXd& A, const Metric& eta);

// Convenience: multiply a generator list back together.
Eigen::MatrixXd product_of(const std::vector<POGenerator>& gens, const Metric& eta);

}  // namespace cforge
