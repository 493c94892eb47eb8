#pragma once

// JSON encoding of inputs and reports. Objects keep insertion order so the
// same report always serializes to the same bytes.

#include <string>

#include <json.hpp>

#include "mirrorjac/continuum.hpp"
#include "mirrorjac/exact_identity.hpp"
#include "mirrorjac/jacobi.hpp"
#include "mirrorjac/scattering.hpp"
#include "mirrorjac/theorem2.hpp"

namespace mirrorjac {

using Json = nlohmann::ordered_json;

/// {"M": int, "a": [...], "b": [...]}; DomainError on missing or
/// mismatched fields.
MirrorJacobiSpec spec_from_json(const Json& j);
/// {"v": [...]}.
Potential potential_from_json(const Json& j);

Json to_json(const MirrorJacobiSpec& spec);
Json to_json(const Potential& pot);
Json to_json(const Theorem1Report& report);
Json to_json(const JostPolynomial& jost);
Json to_json(const DiscreteSpectrum& spectrum);
Json to_json(const Theorem2Report& report);
Json to_json(const FiniteMBridgeReport& report);
Json to_json(const ContinuumSpectra& spectra);
Json to_json(const PairingResult& result);
Json to_json(const HypothesisReport& report);

/// Reads and parses a JSON file; DomainError with the parser diagnostics
/// on failure.
Json read_json_file(const std::string& path);

}  // namespace mirrorjac
