#include <virasym/serialize.hpp>
#include <virasym/solver.hpp>

namespace virasym {

Json to_json(const VerificationResult& r) {
  Json j;
  j["checked"] = r.checked;
  j["failure_count"] = r.failure_count;
  Json fails = Json::array();
  for (const auto& f : r.failures) {
    Json args = Json::array();
    for (const auto& s : f.args) args.push_back(to_json(s));
    fails.push_back({{"identity", f.identity}, {"args", std::move(args)}, {"residual", to_json(f.residual)}});
  }
  j["failures"] = std::move(fails);
  return j;
}

Json to_json(const ClassificationReport& r, bool include_timings) {
  Json j;
  j["algebra"] = algebra_name(r.algebra);
  j["problem"] = problem_name(r.problem);
  j["N"] = r.radius;
  j["M"] = r.value_radius;
  j["K"] = r.core;
  j["raw_dimension"] = r.raw_dimension;
  j["core_dimension"] = r.core_dimension;
  j["core_basis"] = Json(r.core_basis);
  Json params = Json::array();
  for (const auto& p : r.parameters)
    params.push_back({{"lambda", to_fraction_string(p.lambda)}, {"mu", to_fraction_string(p.mu)}});
  j["parameters"] = std::move(params);
  if (r.quotient_dimension) j["quotient_dimension"] = *r.quotient_dimension;
  if (r.residual_failure) {
    j["residual_check"] = {{"fail", to_json(*r.residual_failure)}};
  } else {
    j["residual_check"] = "pass";
  }
  if (include_timings) {
    Json t = Json::object();
    for (const auto& [stage, ms] : r.timings_ms) t[stage] = ms;
    j["timings_ms"] = std::move(t);
  }
  return j;
}

} // namespace virasym
