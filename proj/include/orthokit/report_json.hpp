#pragma once

#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "orthokit/critical_pairs.hpp"
#include "orthokit/oracle.hpp"
#include "orthokit/orthogonality.hpp"
#include "orthokit/parallel_moves.hpp"

namespace orthokit {

inline constexpr const char* tool_version = "1.0.0";
inline constexpr int schema_version = 1;

using Json = nlohmann::json;

Json to_json(const Substitution& sigma);
Json to_json(const CriticalPair& cp);
Json to_json(const std::vector<CriticalPair>& cps);
Json to_json(const OrthoReport& report);
Json to_json(const ParallelStep& step);
Json to_json(const JoinWitness& witness);
Json to_json(const PropertyReport& report);

/// Readers for the same schemas. Terms are read back against `sig`; names
/// outside it are variables.
Substitution substitution_from_json(const Json& j, const Signature& sig);
CriticalPair critical_pair_from_json(const Json& j, const Signature& sig);
OrthoReport ortho_report_from_json(const Json& j, const Signature& sig);
ParallelStep parallel_step_from_json(const Json& j, const Signature& sig);
JoinWitness join_witness_from_json(const Json& j, const Signature& sig);
PropertyReport property_report_from_json(const Json& j);

/// Lowercase hex SHA-256.
std::string sha256_hex(std::string_view data);

/// Envelope around a command payload.
struct JsonReport {
    std::string tool_version = orthokit::tool_version;
    std::string command;
    std::string input_digest;
    Json payload;
};

Json to_json(const JsonReport& report);
JsonReport json_report_from_json(const Json& j);

/// Canonical text: sorted keys, two-space indent, trailing newline.
std::string emit_report(const JsonReport& report);
std::string emit_report(const std::string& command, std::string_view input, Json payload);

}  // namespace orthokit
