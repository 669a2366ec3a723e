#pragma once

#include "cforge/focal.hpp"
#include "cforge/json_io.hpp"

namespace cforge {

// One fully worked system: construction provenance, explicit eigenbases of
// P = P_1 P_2 P_3 P_4 (integer coordinates with squared scale 1/2), and the
// expectations the analysis must reproduce.
struct ExampleBundle {
    std::string name;
    CliffordSystem system;
    ConstructionTrace trace;
    std::vector<ScaledVector> a_basis;  // pseudo-orthonormal basis of E_+(P)
    std::vector<ScaledVector> b_basis;  // pseudo-orthonormal basis of E_-(P)
    CaseLabel expected_case = CaseLabel::A;
    std::string expected_w_rn;
    int expected_components = 0;
    std::string diffeo_target;
};

// Signature (4,0) on R^16_8; case a, two components, forward chart onto
// S^7_4 x (S^4_4)_+.
ExampleBundle example_5_1();

// Signature (4,4) on R^16_8; case d3, connected M_+.
ExampleBundle example_5_2();

ExampleBundle example_by_name(const std::string& name);

// Forward chart of the first example on M_+,1: coordinates c of z_+ in the
// a-basis, the 4x4 solve A(c), the frame q_i(c), and the image pair
// (x, y) in S^7_4 x (S^4_4)_+.
struct DiffeoImage {
    RealVec x;  // 8 coordinates, metric J_{4,4}
    RealVec y;  // 5 coordinates, metric J_{4,1}
    double x_norm_residual = 0;
    double y_norm_residual = 0;
    double q_frame_residual = 0;  // max |<q_i, q_j> + delta_ij|
};
DiffeoImage diffeo_forward(const ExampleBundle& bundle, const RealVec& z);

// Exact version for rational points of M_+,1: every target identity is
// checked in rational arithmetic (scales squared).
struct ExactDiffeoCheck {
    Rational y5_squared;     // <z_+, z_+>, must be >= 1
    bool q_in_e_minus = false;
    bool q_frame_orthonormal = false;  // <q_i,q_j> = -delta_ij exactly
    bool q_spans_constraint_space = false;
    bool x_on_target_sphere = false;
    bool y_on_target_sphere = false;
};
ExactDiffeoCheck diffeo_forward_exact(const ExampleBundle& bundle, const RatVec& z);

struct ProbeReport {
    int samples = 0;
    int pairs_checked = 0;
    int collisions = 0;          // input gap > 1e-4 but image gap <= 1e-8
    double min_image_gap = 0;    // over the checked pairs
    bool deterministic = true;   // identical input reproduces identical image
};
// Statistical injectivity probe of the forward chart; not a certificate.
ProbeReport diffeo_injectivity_probe(const ExampleBundle& bundle,
                                     const std::vector<RealVec>& m_plus_one_samples);

Json bundle_to_json(const ExampleBundle& bundle);

}  // namespace cforge
