#pragma once

#include "json.hpp"

#include "fuglede/lemma_suite.hpp"
#include "fuglede/verifier.hpp"

namespace fuglede {

using Json = nlohmann::ordered_json;

/// Machine reports. Both embed the tool name, version and the caller's invocation
/// record, and contain nothing that varies between runs with the same inputs.
/// {tool, version, invocation}; the common prefix of every report.
Json report_header(const Json& invocation);

Json verification_json(const VerificationReport& report, const Json& invocation);
Json lemma_json(const LemmaReport& report, const Json& invocation);

}  // namespace fuglede
