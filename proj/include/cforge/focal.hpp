#pragma once

#include <optional>
#include <string>
#include <tuple>
#include <vector>

#include "cforge/prng.hpp"
#include "cforge/rational_points.hpp"
#include "cforge/system.hpp"

namespace cforge {

// ---------------------------------------------------------------------------
// Isoparametric function layer
// ---------------------------------------------------------------------------

// F(x) = <x,x>^2 - 2 H(x), homogeneous of degree 4.
Rational eval_F(const CliffordSystem& sys, const RatVec& x);
double eval_F(const CliffordSystem& sys, const RealVec& x);

// f = F restricted to the pseudo-sphere; the input must satisfy <x,x> = 1.
Rational eval_f(const CliffordSystem& sys, const RatVec& x);
double eval_f(const CliffordSystem& sys, const RealVec& x, double tol = 1e-10);

// Sphere gradient of f by central differences (step 1e-6) on the ambient
// pseudo-gradient, projected to the tangent space of the sphere.
RealVec grad_f_numeric(const CliffordSystem& sys, const RealVec& x);

// Exact symbolic ambient pseudo-gradient of F (degree-3 polynomial map),
// the oracle grad_f_numeric is checked against.
RealVec grad_F_symbolic(const CliffordSystem& sys, const RealVec& x);

// x in M_+ iff <x,x> = 1 and <P_j x, x> = 0 for every j.
bool m_plus_membership(const CliffordSystem& sys, const RatVec& x);
bool m_plus_membership(const CliffordSystem& sys, const ScaledVector& x);
bool m_plus_membership(const CliffordSystem& sys, const RealVec& x, double tol = 1e-10);

// ---------------------------------------------------------------------------
// Geodesics and the focal diffeomorphism
// ---------------------------------------------------------------------------

// Geodesic of the space form of curvature kappa through x with velocity v,
// three-branch formula on tau = kappa <v,v>.
RealVec geodesic(const RealVec& x, const RealVec& v, double t, double kappa, const Metric& g);
RealVec geodesic_velocity(const RealVec& x, const RealVec& v, double t, double kappa,
                          const Metric& g);

// The unique Q_v in Sigma with Q_v x = v for v normal to M_+ at x; returned
// as the coefficient vector. Throws input_error when v is not in the normal
// space (nonzero residual after projection).
RatVec solve_Q_v(const CliffordSystem& sys, const RatVec& x, const RatVec& v);
RealVec solve_Q_v(const CliffordSystem& sys, const RealVec& x, const RealVec& v,
                  double tol = 1e-8);

// W_RN(f) ∩ (-1, ∞) by the three-way split on r.
struct WRnInterval {
    double lo = -1.0;              // open
    std::optional<double> hi;      // open; unbounded when absent
    bool excludes_one = false;
    std::string text;              // e.g. "(-1, 1)"
};
WRnInterval w_rn_interval(const CliffordSystem& sys);
bool w_rn_contains(const WRnInterval& w, double c);

// phi_{t_c}(x, v) = gamma_{x,v}(t_c) with c = cos(4t) for delta = 1 and
// c = cosh(4t) for delta = -1. Checks f(result) = c within tol.
struct FocalImage {
    RealVec point;
    RealVec velocity;  // gamma'(t_c)
    double t_c = 0;
    int delta = 1;
};
FocalImage focal_map_phi(const CliffordSystem& sys, const RealVec& x, const RealVec& v, double c,
                         double tol = 1e-9);

// Unit normal of M_c at x per the closed form; <xi, xi> = delta.
RealVec unit_normal_xi(const CliffordSystem& sys, const RealVec& x, double c);

// ---------------------------------------------------------------------------
// Shape operator kernel
// ---------------------------------------------------------------------------

// ker S_v = { Q Q_v x : Q in Sigma, <Q_v, Q> = 0 }: the m-1 vectors
// Q_k Q_v x for an eta-orthocomplement basis {Q_k} of Q_v. Linear
// independence is asserted; null normals are rejected.
std::vector<RatVec> shape_kernel(const CliffordSystem& sys, const RatVec& x, const RatVec& v);
std::vector<RealVec> shape_kernel(const CliffordSystem& sys, const RealVec& x, const RealVec& v);

// Finite-difference second-fundamental-form oracle: fits curves on M_+
// through Newton projection, assembles S_v from <II(X,Y), v> in a tangent
// basis, and reports the worst annihilation residual over the given kernel
// vectors (Euclidean-normalized).
struct ShapeOracleReport {
    double max_kernel_residual = 0;
    int tangent_dim = 0;
};
ShapeOracleReport fd_shape_kernel_check(const CliffordSystem& sys, const RealVec& x,
                                        const RealVec& v,
                                        const std::vector<RealVec>& kernel_vectors);

// ---------------------------------------------------------------------------
// Eigensplit, case classification, strata
// ---------------------------------------------------------------------------

struct Eigensplit {
    std::vector<RatVec> plus;   // basis of E_+(P) = ker(I - P)
    std::vector<RatVec> minus;  // basis of E_-(P) = ker(I + P)
    int s1 = 0;                 // index of the metric restricted to E_+
    int s2 = 0;
};
Eigensplit eigensplit(const CliffordSystem& sys);

enum class CaseLabel { A, B, C1, C2, D1, D2, D3 };
std::string case_name(CaseLabel c);

// The seven-way case split; asserts the signature (in)equalities first and
// throws invariant_error if any bound fails.
CaseLabel classify_case(const CliffordSystem& sys);

enum class Stratum { One = 1, Two = 2, Three = 3 };
std::string stratum_name(Stratum s);

Stratum stratum_of(const CliffordSystem& sys, const RatVec& z);
Stratum stratum_of(const CliffordSystem& sys, const ScaledVector& z);
Stratum stratum_of(const CliffordSystem& sys, const RealVec& z);

// ---------------------------------------------------------------------------
// Census, paths, witnesses
// ---------------------------------------------------------------------------

struct StratumWitness {
    Stratum label = Stratum::One;
    bool empty_by_case = false;
    std::optional<RatVec> point;  // exact, re-verified
};

struct CensusReport {
    CaseLabel label = CaseLabel::A;
    bool connected = false;
    std::vector<std::string> components;
    std::vector<StratumWitness> strata;
};
CensusReport connectedness_census(const CliffordSystem& sys);

// Path alpha(t) = (cos t) x + (sin t) y through a stratum-3 point, or the
// hyperbolic/linear variants through interior stratum-1/2 points.
struct PathWitnessReport {
    std::string kind;  // "trigonometric", "hyperbolic", "linear"
    RealVec x, y;
    double t_z = 0;
    double max_membership_residual = 0;
    double max_orthogonality_residual = 0;  // max_j |<P_j x, y>|
    double endpoint_residual = 0;           // |alpha(t_z) - z|
    int samples = 0;
};
PathWitnessReport path_witness(const CliffordSystem& sys, const RealVec& z, int samples = 65);

// Exact decision for x in N_+: Gram inertia of the metric restricted to
// V = ∩_i ker S_{P_i x}; positive directions decide membership. Sampling is
// never used here: only the inertia certifies (non-)existence.
struct NPlusDecision {
    bool member = false;
    int dim = 0;
    std::tuple<int, int, int> inertia{0, 0, 0};
    std::vector<RatVec> intersection_basis;
};
NPlusDecision n_plus_membership(const CliffordSystem& sys, const RatVec& x);

struct NPlusWitness {
    RatVec x;
    RatVec v;  // P_1 P_2 x, spacelike
    int eps = 0;
    std::vector<int> joint_signs;
    NPlusDecision decision;
};
// Constructs a point of N_+ by simultaneous eigensplitting of the commuting
// R_i = Q_{2i-1,4}. target_eps = ±1 lands the witness in E_eps(P) (flipping
// through P_m when needed, which requires r < m); 0 keeps the first hit.
NPlusWitness n_plus_witness(const CliffordSystem& sys, int target_eps = 0);

struct InhomogeneityWitness {
    RatVec point;      // z = x + y
    RatVec x_part;     // component in E_+(P), nonzero
    RatVec y_part;     // component in E_-(P), nonzero
    int eps = 0;       // eigenspace carrying the sphere point the build started from
    Stratum stratum = Stratum::One;
    bool in_m_plus = false;
    bool stratum_as_claimed = false;
    bool outside_eigenspaces = false;
    bool not_in_n_plus = false;
    bool all_checks() const {
        return in_m_plus && stratum_as_claimed && outside_eigenspaces && not_in_n_plus;
    }
};
// target_eps selects the component for the disconnected cases (a, b); pass 0
// for the connected ones. Requires l > m (hypothesis_unmet otherwise).
InhomogeneityWitness inhomogeneity_witness(const CliffordSystem& sys, int target_eps = 0);

// ---------------------------------------------------------------------------
// Sampling
// ---------------------------------------------------------------------------

struct SampleReport {
    std::vector<RealVec> points;
    std::vector<Stratum> strata;
    double max_f_residual = 0;  // max |f(x) - 1|
    int discarded = 0;
};
// Rejection + Newton projection onto the m+1 constraints <x,x> = 1,
// <P_j x, x> = 0. Deterministic per seed.
SampleReport sample_m_plus(const CliffordSystem& sys, int count, std::uint64_t seed,
                           double tol = 1e-10);

// Newton-project one ambient point onto M_+; nullopt after 100 iterations.
std::optional<RealVec> project_to_m_plus(const CliffordSystem& sys, RealVec x,
                                         double tol = 1e-12);

// Random unit/timelike normal direction at x in M_+ as Sigma coefficients
// with tc eta c = delta.
RealVec random_normal_coeffs(const CliffordSystem& sys, int delta, Prng& rng);

}  // namespace cforge
