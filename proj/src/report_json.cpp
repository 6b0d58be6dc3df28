#include "orthokit/report_json.hpp"

#include <openssl/evp.h>

#include <array>
#include <memory>

#include "orthokit/error.hpp"
#include "orthokit/format.hpp"

namespace orthokit {

namespace {

Term term_from(const Json& j, const Signature& sig) { return parse_term_open(j.get<std::string>(), sig); }

Verdict verdict_from(const std::string& s) {
    if (s == "pass") {
        return Verdict::pass;
    }
    if (s == "fail") {
        return Verdict::fail;
    }
    return Verdict::inconclusive;
}

}  // namespace

Json to_json(const Substitution& sigma) {
    Json out = Json::object();
    for (const auto& [x, t] : sigma.bindings()) {
        out[x] = to_string(t);
    }
    return out;
}

Substitution substitution_from_json(const Json& j, const Signature& sig) {
    Substitution out;
    for (const auto& [x, t] : j.items()) {
        out.bind(x, term_from(t, sig));
    }
    return out;
}

Json to_json(const CriticalPair& cp) {
    return Json{{"outer_rule", cp.outer_rule},
                {"inner_rule", cp.inner_rule},
                {"overlap_pos", cp.overlap_pos.to_string()},
                {"mgu", to_json(cp.mgu)},
                {"peak", to_string(cp.peak)},
                {"left", to_string(cp.left)},
                {"right", to_string(cp.right)},
                {"trivial", cp.trivial}};
}

Json to_json(const std::vector<CriticalPair>& cps) {
    Json out = Json::array();
    for (const CriticalPair& cp : cps) {
        out.push_back(to_json(cp));
    }
    return out;
}

CriticalPair critical_pair_from_json(const Json& j, const Signature& sig) {
    return CriticalPair{j.at("outer_rule").get<std::size_t>(),
                        j.at("inner_rule").get<std::size_t>(),
                        Position::parse(j.at("overlap_pos").get<std::string>()),
                        substitution_from_json(j.at("mgu"), sig),
                        term_from(j.at("left"), sig),
                        term_from(j.at("right"), sig),
                        j.at("trivial").get<bool>(),
                        term_from(j.at("peak"), sig)};
}

Json to_json(const OrthoReport& report) {
    Json offending = Json::array();
    for (const auto& o : report.offending_rules) {
        offending.push_back(Json{{"rule", o.rule}, {"variable", o.variable}, {"count", o.count}});
    }
    return Json{{"left_linear", report.left_linear},
                {"right_linear", report.right_linear},
                {"linear", report.linear},
                {"ambiguous", report.ambiguous},
                {"orthogonal", report.orthogonal},
                {"all_cps_trivial", report.all_cps_trivial},
                {"offending_rules", offending},
                {"critical_pair_count", report.critical_pair_count},
                {"sample_cps", to_json(report.sample_cps)}};
}

OrthoReport ortho_report_from_json(const Json& j, const Signature& sig) {
    OrthoReport out;
    out.left_linear = j.at("left_linear").get<bool>();
    out.right_linear = j.at("right_linear").get<bool>();
    out.linear = j.at("linear").get<bool>();
    out.ambiguous = j.at("ambiguous").get<bool>();
    out.orthogonal = j.at("orthogonal").get<bool>();
    out.all_cps_trivial = j.at("all_cps_trivial").get<bool>();
    for (const Json& o : j.at("offending_rules")) {
        out.offending_rules.push_back(
            {o.at("rule").get<std::size_t>(), o.at("variable").get<std::string>(), o.at("count").get<std::size_t>()});
    }
    out.critical_pair_count = j.at("critical_pair_count").get<std::size_t>();
    for (const Json& cp : j.at("sample_cps")) {
        out.sample_cps.push_back(critical_pair_from_json(cp, sig));
    }
    return out;
}

Json to_json(const ParallelStep& step) {
    Json out = Json::array();
    for (std::size_t i = 0; i < step.size(); ++i) {
        out.push_back(Json{{"position", step.positions[i].to_string()},
                           {"rule", step.rules[i]},
                           {"subst", to_json(step.substs[i])}});
    }
    return out;
}

ParallelStep parallel_step_from_json(const Json& j, const Signature& sig) {
    std::vector<Redex> redexes;
    for (const Json& item : j) {
        redexes.push_back(Redex{Position::parse(item.at("position").get<std::string>()),
                                item.at("rule").get<std::size_t>(), substitution_from_json(item.at("subst"), sig)});
    }
    return ParallelStep::from_redexes(redexes);
}

Json to_json(const JoinWitness& w) {
    return Json{{"left_term", to_string(w.left_term)},
                {"right_term", to_string(w.right_term)},
                {"join_term", to_string(w.join_term)},
                {"step_from_left", to_json(w.step_from_left)},
                {"step_from_right", to_json(w.step_from_right)}};
}

JoinWitness join_witness_from_json(const Json& j, const Signature& sig) {
    return JoinWitness{term_from(j.at("left_term"), sig), term_from(j.at("right_term"), sig),
                       term_from(j.at("join_term"), sig), parallel_step_from_json(j.at("step_from_left"), sig),
                       parallel_step_from_json(j.at("step_from_right"), sig)};
}

Json to_json(const PropertyReport& report) {
    Json failures = Json::array();
    for (const Counterexample& c : report.failures) {
        failures.push_back(Json{{"trs", c.trs},
                                {"term", c.term},
                                {"detail", c.detail},
                                {"severity", c.severity},
                                {"seed", c.seed},
                                {"case_index", c.case_index}});
    }
    return Json{{"property_name", report.property_name},
                {"seed", report.seed},
                {"cases_run", report.cases_run},
                {"obligations", report.obligations},
                {"inconclusive", report.inconclusive},
                {"failures", failures},
                {"verdict", to_string(report.verdict())}};
}

PropertyReport property_report_from_json(const Json& j) {
    PropertyReport out;
    out.property_name = j.at("property_name").get<std::string>();
    out.seed = j.at("seed").get<std::uint64_t>();
    out.cases_run = j.at("cases_run").get<std::size_t>();
    out.obligations = j.at("obligations").get<std::size_t>();
    out.inconclusive = j.at("inconclusive").get<std::size_t>();
    for (const Json& c : j.at("failures")) {
        out.failures.push_back(Counterexample{c.at("trs").get<std::string>(), c.at("term").get<std::string>(),
                                              c.at("detail").get<std::string>(), c.at("severity").get<std::string>(),
                                              c.at("seed").get<std::uint64_t>(),
                                              c.at("case_index").get<std::size_t>()});
    }
    if (verdict_from(j.at("verdict").get<std::string>()) != out.verdict()) {
        throw Error(ErrorKind::parse_error, "verdict disagrees with the failure and case counts");
    }
    return out;
}

std::string sha256_hex(std::string_view data) {
    std::array<unsigned char, EVP_MAX_MD_SIZE> digest{};
    unsigned int length = 0;
    std::unique_ptr<EVP_MD_CTX, decltype(&EVP_MD_CTX_free)> ctx(EVP_MD_CTX_new(), EVP_MD_CTX_free);
    if (!ctx || EVP_DigestInit_ex(ctx.get(), EVP_sha256(), nullptr) != 1 ||
        EVP_DigestUpdate(ctx.get(), data.data(), data.size()) != 1 ||
        EVP_DigestFinal_ex(ctx.get(), digest.data(), &length) != 1) {
        throw std::runtime_error("sha256 failed");
    }
    static constexpr char hex[] = "0123456789abcdef";
    std::string out;
    for (unsigned int i = 0; i < length; ++i) {
        out += hex[digest[i] >> 4];
        out += hex[digest[i] & 0xf];
    }
    return out;
}

Json to_json(const JsonReport& report) {
    return Json{{"schema_version", schema_version},
                {"tool_version", report.tool_version},
                {"command", report.command},
                {"input_digest", report.input_digest},
                {"payload", report.payload}};
}

JsonReport json_report_from_json(const Json& j) {
    if (j.at("schema_version").get<int>() != schema_version) {
        throw Error(ErrorKind::parse_error, "unsupported schema_version");
    }
    return JsonReport{j.at("tool_version").get<std::string>(), j.at("command").get<std::string>(),
                      j.at("input_digest").get<std::string>(), j.at("payload")};
}

std::string emit_report(const JsonReport& report) { return to_json(report).dump(2) + "\n"; }

std::string emit_report(const std::string& command, std::string_view input, Json payload) {
    return emit_report(JsonReport{tool_version, command, sha256_hex(input), std::move(payload)});
}

}  // namespace orthokit
