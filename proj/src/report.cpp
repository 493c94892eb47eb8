#include "mirrorjac/report.hpp"

#include <fstream>
#include <sstream>

#include "mirrorjac/error.hpp"

namespace mirrorjac {

namespace {

std::vector<double> real_array(const Json& j, const char* key, const char* op) {
  if (!j.is_object() || !j.contains(key)) {
    throw DomainError(op, std::string("missing field \"") + key + "\"");
  }
  const Json& arr = j.at(key);
  if (!arr.is_array()) throw DomainError(op, std::string("\"") + key + "\" must be an array");
  std::vector<double> out;
  for (const Json& x : arr) {
    if (!x.is_number()) throw DomainError(op, std::string("\"") + key + "\" must hold numbers");
    out.push_back(x.get<double>());
  }
  return out;
}

Json complex_pair(cdouble z) { return Json::array({z.real(), z.imag()}); }

}  // namespace

MirrorJacobiSpec spec_from_json(const Json& j) {
  std::vector<double> a = real_array(j, "a", "spec_from_json");
  std::vector<double> b = real_array(j, "b", "spec_from_json");
  if (j.contains("M")) {
    if (!j.at("M").is_number_integer() || j.at("M").get<long long>() != static_cast<long long>(a.size())) {
      throw DomainError("spec_from_json", "\"M\" must equal the length of \"a\"");
    }
  }
  return MirrorJacobiSpec(std::move(a), std::move(b));
}

Potential potential_from_json(const Json& j) {
  return Potential(real_array(j, "v", "potential_from_json"));
}

Json to_json(const MirrorJacobiSpec& spec) {
  return {{"M", spec.half_size()}, {"a", spec.a()}, {"b", spec.b()}};
}

Json to_json(const Potential& pot) { return {{"J", pot.support()}, {"v", pot.values()}}; }

Json to_json(const Theorem1Report& r) {
  Json j = {{"lhs_log_abs", r.lhs_log_abs}, {"lhs_sign", r.lhs_sign},
            {"rhs_log_abs", r.rhs_log_abs}, {"rhs_sign", r.rhs_sign}};
  if (r.exact_match) j["exact_match"] = *r.exact_match;
  if (r.resultant) j["resultant"] = *r.resultant;
  j["residual"] = r.residual;
  return j;
}

Json to_json(const JostPolynomial& jost) {
  Json roots = Json::array();
  for (const cdouble& z : jost.roots) roots.push_back(complex_pair(z));
  return {{"coeffs", jost.coeffs},
          {"roots", roots},
          {"admissible", jost.admissible},
          {"min_root_modulus", jost.min_root_modulus},
          {"F_at_1", jost.value_at_one},
          {"F_at_minus_1", jost.value_at_minus_one}};
}

Json to_json(const DiscreteSpectrum& spectrum) {
  Json nonreal = Json::array();
  for (const cdouble& z : spectrum.nonreal) nonreal.push_back(complex_pair(z));
  return {{"eigenvalues", spectrum.eigenvalues}, {"nonreal", nonreal}};
}

Json to_json(const Theorem2Report& r) {
  Json j = {{"identity_expected", r.identity_expected}};
  j["eq55_residual"] = r.eq55_residual ? Json(*r.eq55_residual) : Json(nullptr);
  j["eq56_residual"] = r.eq56_residual ? Json(*r.eq56_residual) : Json(nullptr);
  j["eq57_residual"] = r.eq57_residual;
  j["quadrature_estimate"] = r.quadrature_estimate;
  return j;
}

Json to_json(const FiniteMBridgeReport& r) {
  return {{"M", r.M},
          {"sum_S", r.sum_S},
          {"S", r.S},
          {"quantization_residuals", r.quantization_residuals},
          {"spectra_crosscheck", r.spectra_crosscheck}};
}

Json to_json(const ContinuumSpectra& s) {
  return {{"A", s.A}, {"sign", s.sign}, {"count", s.count}, {"mu", s.mu}, {"nu", s.nu}};
}

Json to_json(const PairingResult& r) {
  return {{"pairing", to_string(r.pairing)}, {"lhs_log", r.lhs_log}, {"lhs_sign", r.lhs_sign},
          {"rhs_log", r.rhs_log},            {"rhs_sign", r.rhs_sign}, {"gap", r.gap}};
}

Json to_json(const HypothesisReport& r) {
  Json printed = to_json(r.printed);
  printed["tail_estimate"] = r.printed_tail;
  Json parity = to_json(r.parity);
  parity["tail_estimate"] = r.parity_tail;
  return {{"A", r.A}, {"N", r.N}, {"pairings", Json::array({printed, parity})}};
}

Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DomainError("read_json_file", "cannot open " + path);
  std::stringstream buffer;
  buffer << in.rdbuf();
  try {
    return Json::parse(buffer.str());
  } catch (const nlohmann::json::parse_error& e) {
    throw DomainError("read_json_file", path + ": " + e.what());
  }
}

}  // namespace mirrorjac
