#include "fuglede/report_json.hpp"

#include "fuglede/set_literal.hpp"

namespace fuglede {

namespace {

Json literal(const CyclicGroup& g, const std::vector<Element>& elems) {
  return format_set_literal(IndicatorMultiset::from_elements(g, elems));
}

}  // namespace

Json report_header(const Json& invocation) {
  Json j;
  j["tool"] = "fuglede";
  j["version"] = kToolVersion;
  j["invocation"] = invocation;
  return j;
}

Json verification_json(const VerificationReport& r, const Json& invocation) {
  const CyclicGroup g(r.modulus);
  Json j = report_header(invocation);
  j["modulus"] = r.modulus;
  j["mode"] = to_string(r.options.mode);
  j["seed"] = r.options.seed;
  if (r.options.mode == VerifyMode::sampled) j["samples"] = r.options.samples;
  j["max_cardinality"] = r.options.max_cardinality ? Json(*r.options.max_cardinality) : Json(nullptr);
  j["tile_method"] = r.tile_method;
  j["orbit_count"] = r.orbit_count;
  j["spectral_count"] = r.spectral_count;
  j["tile_count"] = r.tile_count;
  j["subset_count"] = r.subset_count;
  j["spectral_subset_count"] = r.spectral_subset_count;
  j["tile_subset_count"] = r.tile_subset_count;

  Json d = Json::array();
  for (const auto& x : r.discrepancies) {
    Json e;
    e["set"] = literal(g, x.set);
    e["spectral"] = x.spectral;
    e["tile"] = x.tile;
    e["spectrum"] = x.spectrum ? literal(g, *x.spectrum) : Json(nullptr);
    e["complement"] = x.complement ? literal(g, *x.complement) : Json(nullptr);
    d.push_back(std::move(e));
  }
  j["discrepancies"] = std::move(d);

  const auto& c = r.checks;
  j["spectral_pair_checks"] = {
      {"spectral_pairs", c.spectral_pairs},
      {"duality_failures", c.duality_failures},
      {"translation_failures", c.translation_failures},
      {"small_spectral_checked", c.small_spectral_checked},
      {"small_spectral_failures", c.small_spectral_failures},
      {"witness_failures", c.witness_failures},
  };
  j["runtime_stats"] = {{"masks_scanned", r.masks_scanned}};
  j["clean"] = r.clean();
  return j;
}

Json lemma_json(const LemmaReport& r, const Json& invocation) {
  Json j = report_header(invocation);
  j["lemma_id"] = r.lemma_id;
  j["shape"] = r.shape;
  j["mode"] = r.mode;
  j["seed"] = r.seed;
  j["generator"] = r.generator;
  j["instances_checked"] = r.instances_checked;
  j["premise_hits"] = r.premise_hits;
  j["conclusion_failures"] = r.conclusion_failures;
  Json t = Json::object();
  for (const auto& [name, value] : r.tallies) t[name] = value;
  j["tallies"] = std::move(t);
  j["notes"] = r.notes;
  Json ce = Json::array();
  for (const auto& c : r.counterexamples) ce.push_back({{"set", c.set_literal}, {"detail", c.detail}});
  j["counterexamples"] = std::move(ce);
  j["passed"] = r.passed();
  return j;
}

}  // namespace fuglede
