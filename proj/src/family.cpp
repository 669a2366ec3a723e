#include "cforge/family.hpp"

namespace cforge {

namespace {

SignedPermMatrix sp_from_rows(const std::vector<std::vector<int>>& rows) {
    const int n = static_cast<int>(rows.size());
    std::vector<int> img(static_cast<size_t>(n), -1), sg(static_cast<size_t>(n), 1);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            if (rows[static_cast<size_t>(i)][static_cast<size_t>(j)] != 0) {
                img[static_cast<size_t>(j)] = i;
                sg[static_cast<size_t>(j)] = rows[static_cast<size_t>(i)][static_cast<size_t>(j)];
            }
    return SignedPermMatrix(std::move(img), std::move(sg));
}

const SignedPermMatrix& swap2() {
    static const SignedPermMatrix M = sp_from_rows({{0, 1}, {1, 0}});
    return M;
}
const SignedPermMatrix& rot2() {
    static const SignedPermMatrix M = sp_from_rows({{0, 1}, {-1, 0}});
    return M;
}
const SignedPermMatrix& diag2() {
    static const SignedPermMatrix M = sp_from_rows({{1, 0}, {0, -1}});
    return M;
}
// The three 4x4 Kronecker factors of the (m,0) -> (m+2,m+2) step.
const SignedPermMatrix& quad1() {
    static const SignedPermMatrix M =
        sp_from_rows({{0, 0, 0, -1}, {0, 0, -1, 0}, {0, 1, 0, 0}, {1, 0, 0, 0}});
    return M;
}
const SignedPermMatrix& quad2() {
    static const SignedPermMatrix M =
        sp_from_rows({{0, -1, 0, 0}, {1, 0, 0, 0}, {0, 0, 0, -1}, {0, 0, 1, 0}});
    return M;
}
const SignedPermMatrix& quad3() {
    static const SignedPermMatrix M =
        sp_from_rows({{0, 0, -1, 0}, {0, 0, 0, 1}, {1, 0, 0, 0}, {0, -1, 0, 0}});
    return M;
}

SignedPermMatrix exchange(int n) {
    std::vector<int> img(static_cast<size_t>(n)), sg(static_cast<size_t>(n), 1);
    for (int i = 0; i < n; ++i) img[static_cast<size_t>(i)] = n - 1 - i;
    return SignedPermMatrix(std::move(img), std::move(sg));
}

}  // namespace

OrthogonalFamily base_family(int m, int r) {
    OrthogonalFamily fam;
    fam.m = m;
    fam.r = r;
    if (m == 1 && r == 0) {
        fam.order = 1;
        fam.mats = {SignedPermMatrix::identity(1)};
    } else if (m == 1 && r == 1) {
        fam.order = 2;
        fam.mats = {sp_from_rows({{0, -1}, {1, 0}})};
    } else if (m == 2 && r == 0) {
        fam.order = 2;
        fam.mats = {diag2(), sp_from_rows({{0, -1}, {-1, 0}})};
    } else if (m == 2 && r == 1) {
        fam.order = 2;
        fam.mats = {sp_from_rows({{0, 1}, {-1, 0}}), diag2()};
    } else if (m == 2 && r == 2) {
        fam.order = 4;
        fam.mats = {quad2(), quad3()};
    } else {
        throw input_error("base_family: (m, r) must be one of (1,0), (1,1), (2,0), (2,1), (2,2)");
    }
    check_family(fam);
    return fam;
}

OrthogonalFamily extend_r_plus_one(const OrthogonalFamily& fam) {
    OrthogonalFamily out;
    out.m = fam.m + 2;
    out.r = fam.r + 1;
    out.order = 2 * fam.order;
    const SignedPermMatrix E = SignedPermMatrix::identity(fam.order);
    for (int j = 1; j <= out.m; ++j) {
        if (j <= fam.r)
            out.mats.push_back(kronecker(swap2(), fam.mats[static_cast<size_t>(j - 1)]));
        else if (j == fam.r + 1)
            out.mats.push_back(kronecker(rot2(), E));
        else if (j <= fam.m + 1)
            out.mats.push_back(kronecker(swap2(), fam.mats[static_cast<size_t>(j - 2)]));
        else
            out.mats.push_back(kronecker(diag2(), E));
    }
    check_family(out);
    return out;
}

OrthogonalFamily extend_to_full(const OrthogonalFamily& fam) {
    CFORGE_REQUIRE(fam.r == 0, "extend_to_full requires r = 0");
    OrthogonalFamily out;
    out.m = fam.m + 2;
    out.r = fam.m + 2;
    out.order = 4 * fam.order;
    const SignedPermMatrix E = SignedPermMatrix::identity(fam.order);
    for (const auto& A : fam.mats) out.mats.push_back(kronecker(quad1(), A));
    out.mats.push_back(kronecker(quad2(), E));
    out.mats.push_back(kronecker(quad3(), E));
    check_family(out);
    return out;
}

OrthogonalFamily extend_to_zero(const OrthogonalFamily& fam) {
    CFORGE_REQUIRE(fam.r == fam.m, "extend_to_zero requires r = m");
    OrthogonalFamily out;
    out.m = fam.m + 2;
    out.r = 0;
    out.order = 2 * fam.order;
    const SignedPermMatrix E = SignedPermMatrix::identity(fam.order);
    for (const auto& A : fam.mats) out.mats.push_back(kronecker(rot2(), A));
    out.mats.push_back(kronecker(diag2(), E));
    out.mats.push_back(kronecker(swap2(), E));
    check_family(out);
    return out;
}

void check_family(const OrthogonalFamily& fam) {
    CFORGE_CHECK(static_cast<int>(fam.mats.size()) == fam.m, "family: matrix count differs from m");
    const SignedPermMatrix E = SignedPermMatrix::identity(fam.order);
    for (int i = 0; i < fam.m; ++i) {
        const auto& Ai = fam.mats[static_cast<size_t>(i)];
        CFORGE_CHECK(Ai.order() == fam.order, "family: order mismatch");
        CFORGE_CHECK(Ai.transpose() * Ai == E, "family: matrix not orthogonal");
        if (i < fam.r)
            CFORGE_CHECK(Ai.transpose() == Ai.negated(), "family: expected skew-symmetric matrix");
        else
            CFORGE_CHECK(Ai.transpose() == Ai, "family: expected symmetric matrix");
        for (int j = 0; j < fam.m; ++j) {
            const auto& Aj = fam.mats[static_cast<size_t>(j)];
            if (i == j) {
                SignedPermMatrix want = (i < fam.r) ? E.negated() : E;
                CFORGE_CHECK(Ai * Ai == want, "family: square relation fails");
            } else {
                CFORGE_CHECK(Ai * Aj == (Aj * Ai).negated(), "family: anticommutation fails");
            }
        }
    }
}

std::pair<OrthogonalFamily, ConstructionTrace> construct_family(int m, int r) {
    CFORGE_REQUIRE(m >= 1, "construct_family: m must be positive");
    CFORGE_REQUIRE(r >= 0 && r <= m, "construct_family: r must lie in [0, m]");
    if (m <= 2) {
        ConstructionTrace trace;
        trace.steps.push_back({TraceStep::Base, m, r});
        return {base_family(m, r), trace};
    }
    if (r == m) {
        auto [prev, trace] = construct_family(m - 2, 0);
        trace.steps.push_back({TraceStep::StepFull, 0, 0});
        return {extend_to_full(prev), trace};
    }
    if (r == 0) {
        auto [prev, trace] = construct_family(m - 2, m - 2);
        trace.steps.push_back({TraceStep::StepZero, 0, 0});
        return {extend_to_zero(prev), trace};
    }
    auto [prev, trace] = construct_family(m - 2, r - 1);
    trace.steps.push_back({TraceStep::StepRPlusOne, 0, 0});
    return {extend_r_plus_one(prev), trace};
}

OrthogonalFamily replay_trace(const ConstructionTrace& trace) {
    CFORGE_REQUIRE(!trace.steps.empty() && trace.steps.front().kind == TraceStep::Base,
                   "trace must start with a base step");
    OrthogonalFamily fam = base_family(trace.steps.front().base_m, trace.steps.front().base_r);
    for (size_t i = 1; i < trace.steps.size(); ++i) {
        switch (trace.steps[i].kind) {
            case TraceStep::StepRPlusOne:
                fam = extend_r_plus_one(fam);
                break;
            case TraceStep::StepFull:
                fam = extend_to_full(fam);
                break;
            case TraceStep::StepZero:
                fam = extend_to_zero(fam);
                break;
            case TraceStep::Base:
                throw input_error("trace has a base step after the first position");
        }
    }
    return fam;
}

CliffordSystem lift_to_clifford_system(const OrthogonalFamily& fam, int d) {
    CFORGE_REQUIRE(d >= 1, "lift: d must be positive");
    CliffordSystem sys;
    sys.m = fam.m;
    sys.r = fam.r;
    sys.l = d * fam.order;
    sys.s = d * fam.order;
    const SignedPermMatrix X = exchange(2 * d);
    const SignedPermMatrix D = SignedPermMatrix::identity(2 * d);
    for (int i = 0; i < fam.m; ++i)
        sys.ops.emplace_back(kronecker(i < fam.r ? X : D, fam.mats[static_cast<size_t>(i)]));

    const SystemCertificate cert = verify_system(sys, VerifyOptions{true, 0, 0});
    CFORGE_CHECK(cert.pass, "lifted system failed verification");
    return sys;
}

long minimal_order_lookup(int m) {
    CFORGE_REQUIRE(m >= 0, "minimal_order_lookup: m must be nonnegative");
    static const long table[8] = {1, 2, 4, 4, 8, 8, 8, 8};
    if (m < 8) return table[m];
    return 16 * minimal_order_lookup(m - 8);
}

}  // namespace cforge
