#pragma once

#include <string>
#include <vector>

#include "cforge/system.hpp"

namespace cforge {

// Family of orthogonal matrices {A_i} in O(l) with A_i A_j + A_j A_i =
// 2 eta_ij E_l, eta = J_{r,m-r}; A_i skew for i < r (0-based), symmetric
// after. The representation is always a signed permutation: the base
// matrices are, and the Kronecker extension steps preserve the class.
struct OrthogonalFamily {
    int m = 0;
    int r = 0;
    int order = 0;
    std::vector<SignedPermMatrix> mats;
};

struct TraceStep {
    enum Kind { Base, StepRPlusOne, StepFull, StepZero } kind = Base;
    int base_m = 0;  // only for Base
    int base_r = 0;

    std::string name() const {
        switch (kind) {
            case Base:
                return "base(" + std::to_string(base_m) + "," + std::to_string(base_r) + ")";
            case StepRPlusOne:
                return "extend_r_plus_one";
            case StepFull:
                return "extend_to_full";
            case StepZero:
                return "extend_to_zero";
        }
        return "?";
    }
};

// Replaying the trace from its base reproduces the family bit-exactly.
struct ConstructionTrace {
    std::vector<TraceStep> steps;
};

// The five explicitly printed base families.
OrthogonalFamily base_family(int m, int r);

// (m, r) -> (m+2, r+1) of order 2l.
OrthogonalFamily extend_r_plus_one(const OrthogonalFamily& fam);

// (m, 0) -> (m+2, m+2) of order 4l.
OrthogonalFamily extend_to_full(const OrthogonalFamily& fam);

// (m, m) -> (m+2, 0) of order 2l.
OrthogonalFamily extend_to_zero(const OrthogonalFamily& fam);

// Deterministic induction: base cases m in {1,2}; r = m via extend_to_full
// from (m-2, 0); r = 0 via extend_to_zero from (m-2, m-2); interior r via
// extend_r_plus_one from (m-2, r-1). Relations are re-verified exactly after
// every step rather than trusted by induction.
std::pair<OrthogonalFamily, ConstructionTrace> construct_family(int m, int r);

// Replay a trace (used by file round-trips and determinism tests).
OrthogonalFamily replay_trace(const ConstructionTrace& trace);

// Exact relation + skew/symmetric verification of a family; throws
// invariant_error on failure.
void check_family(const OrthogonalFamily& fam);

// Block lift: P_i is the 2d-block anti-diagonal of A_i for i <= r, block
// diagonal for i > r, on R^{2dl}_{dl}. Relations and J-symmetry re-verified.
CliffordSystem lift_to_clifford_system(const OrthogonalFamily& fam, int d = 1);

// Reference orders from the minimal-order table, extended by
// l(i) = 16 l(i-8); lookup only, the minimal constructions live elsewhere.
long minimal_order_lookup(int m);

}  // namespace cforge
