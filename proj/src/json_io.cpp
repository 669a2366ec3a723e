#include "cforge/json_io.hpp"

#include <fstream>

namespace cforge {

Json matrix_to_json(const OperatorMatrix& M, const Metric& metric) {
    Json j;
    j["order"] = M.order();
    j["metric"] = {{"neg", metric.neg}, {"pos", metric.pos}};
    if (M.is_signed_perm()) {
        j["kind"] = "signed_perm";
        Json image = Json::array(), sign = Json::array();
        for (int c = 0; c < M.order(); ++c) {
            image.push_back(M.sp().image(c) + 1);
            sign.push_back(M.sp().sign(c));
        }
        j["data"] = {{"image", image}, {"sign", sign}};
    } else {
        j["kind"] = "dense";
        Json rows = Json::array();
        for (int i = 0; i < M.dn().rows(); ++i) {
            Json row = Json::array();
            for (int c = 0; c < M.dn().cols(); ++c)
                row.push_back(rational_to_string(M.dn().at(i, c)));
            rows.push_back(std::move(row));
        }
        j["data"] = std::move(rows);
    }
    return j;
}

OperatorMatrix matrix_from_json(const Json& j) {
    CFORGE_REQUIRE(j.contains("order") && j.contains("kind") && j.contains("data"),
                   "matrix json: missing fields");
    const int n = j.at("order").get<int>();
    const std::string kind = j.at("kind").get<std::string>();
    if (kind == "signed_perm") {
        const Json& data = j.at("data");
        std::vector<int> image, sign;
        for (const auto& t : data.at("image")) image.push_back(t.get<int>() - 1);
        for (const auto& t : data.at("sign")) sign.push_back(t.get<int>());
        CFORGE_REQUIRE(static_cast<int>(image.size()) == n, "matrix json: image length != order");
        return OperatorMatrix(SignedPermMatrix(std::move(image), std::move(sign)));
    }
    if (kind == "dense") {
        const Json& data = j.at("data");
        CFORGE_REQUIRE(static_cast<int>(data.size()) == n, "matrix json: row count != order");
        DenseMatrix M(n, n);
        for (int i = 0; i < n; ++i)
            for (int c = 0; c < n; ++c)
                M.at(i, c) = rational_from_string(data.at(i).at(c).get<std::string>());
        return OperatorMatrix(std::move(M));
    }
    throw input_error("matrix json: unknown kind '" + kind + "'");
}

Json trace_to_json(const ConstructionTrace& trace, int d) {
    Json steps = Json::array();
    for (const auto& s : trace.steps) {
        switch (s.kind) {
            case TraceStep::Base:
                steps.push_back(Json{{"op", "base"}, {"m", s.base_m}, {"r", s.base_r}});
                break;
            case TraceStep::StepRPlusOne:
                steps.push_back(Json{{"op", "extend_r_plus_one"}});
                break;
            case TraceStep::StepFull:
                steps.push_back(Json{{"op", "extend_to_full"}});
                break;
            case TraceStep::StepZero:
                steps.push_back(Json{{"op", "extend_to_zero"}});
                break;
        }
    }
    steps.push_back(Json{{"op", "lift"}, {"d", d}});
    return steps;
}

Json system_to_json(const CliffordSystem& sys, const ConstructionTrace* trace, int d) {
    Json j;
    j["schema"] = "cforge/system/v1";
    Json header;
    header["m"] = sys.m;
    header["r"] = sys.r;
    header["l"] = sys.l;
    header["d"] = d;
    if (trace) header["trace"] = trace_to_json(*trace, d);
    header["s"] = sys.s;
    j["header"] = std::move(header);
    Json ops = Json::array();
    for (const auto& P : sys.ops) ops.push_back(matrix_to_json(P, sys.ambient()));
    j["operators"] = std::move(ops);
    return j;
}

CliffordSystem system_from_json(const Json& j) {
    CFORGE_REQUIRE(j.contains("header") && j.contains("operators"), "system json: missing fields");
    const Json& h = j.at("header");
    CliffordSystem sys;
    sys.m = h.at("m").get<int>();
    sys.r = h.at("r").get<int>();
    sys.l = h.at("l").get<int>();
    sys.s = h.contains("s") ? h.at("s").get<int>() : sys.l;
    CFORGE_REQUIRE(sys.m >= 2, "system json: m must exceed 1");
    CFORGE_REQUIRE(sys.r >= 0 && sys.r <= sys.m, "system json: r out of range");
    CFORGE_REQUIRE(sys.l >= 1, "system json: l must be positive");
    CFORGE_REQUIRE(sys.s >= 0 && sys.s <= 2 * sys.l, "system json: s out of range");
    for (const auto& mj : j.at("operators")) {
        OperatorMatrix M = matrix_from_json(mj);
        CFORGE_REQUIRE(M.order() == sys.ambient_dim(), "system json: operator order != 2l");
        sys.ops.push_back(std::move(M));
    }
    CFORGE_REQUIRE(static_cast<int>(sys.ops.size()) == sys.m,
                   "system json: operator count != m");
    return sys;
}

Json certificate_to_json(const SystemCertificate& cert) {
    Json checks = Json::array();
    for (const auto& c : cert.checks) {
        Json e;
        e["check"] = c.check;
        e["status"] = c.pass ? "pass" : "fail";
        if (!c.pass) e["counterexample"] = c.counterexample;
        checks.push_back(std::move(e));
    }
    return Json{{"pass", cert.pass}, {"checks", std::move(checks)}};
}

void write_json_file(const std::string& path, const Json& j) {
    std::ofstream out(path);
    CFORGE_REQUIRE(out.good(), "cannot open for writing: " + path);
    out << j.dump(2) << "\n";
}

Json read_json_file(const std::string& path) {
    std::ifstream in(path);
    CFORGE_REQUIRE(in.good(), "cannot open for reading: " + path);
    Json j;
    try {
        in >> j;
    } catch (const std::exception& e) {
        throw input_error("malformed json in " + path + ": " + e.what());
    }
    return j;
}

Json vec_to_json(const RatVec& v) {
    Json a = Json::array();
    for (const auto& q : v) a.push_back(rational_to_string(q));
    return a;
}

Json vec_to_json(const RealVec& v) {
    Json a = Json::array();
    for (double t : v) a.push_back(t);
    return a;
}

RatVec rat_vec_from_json(const Json& j) {
    RatVec v;
    for (const auto& t : j) v.push_back(rational_from_string(t.get<std::string>()));
    return v;
}

}  // namespace cforge
