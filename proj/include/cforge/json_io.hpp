#pragma once

#include <json.hpp>

#include <string>

#include "cforge/family.hpp"
#include "cforge/focal.hpp"

namespace cforge {

using Json = nlohmann::ordered_json;

// Matrix schema shared by every module:
//   {order, metric: {neg, pos}, kind: "signed_perm" | "dense", data}
// where signed_perm data is {image: [1-based ints], sign: [±1]} and dense
// data is row-major arrays of "num/den" strings.
Json matrix_to_json(const OperatorMatrix& M, const Metric& metric);
OperatorMatrix matrix_from_json(const Json& j);

Json trace_to_json(const ConstructionTrace& trace, int d);

// System file: header {m, r, l, d, trace: [...]} plus the operator list.
Json system_to_json(const CliffordSystem& sys, const ConstructionTrace* trace = nullptr,
                    int d = 1);
CliffordSystem system_from_json(const Json& j);

Json certificate_to_json(const SystemCertificate& cert);

void write_json_file(const std::string& path, const Json& j);
Json read_json_file(const std::string& path);

Json vec_to_json(const RatVec& v);
Json vec_to_json(const RealVec& v);
RatVec rat_vec_from_json(const Json& j);

}  // namespace cforge
