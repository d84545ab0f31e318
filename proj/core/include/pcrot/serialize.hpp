#ifndef PCROT_SERIALIZE_HPP
#define PCROT_SERIALIZE_HPP

#include <string>

#include <json.hpp>

#include "pcrot/experiments.hpp"

namespace pcrot {

// ordered_json keeps field order stable so reports are byte-reproducible
using json = nlohmann::ordered_json;

json rational_to_json(const Rational& x);        // "p" or "p/q" string
Rational rational_from_json(const json& j);      // accepts "p/q", decimals, ints
json rvector_to_json(const RVector& x);
RVector rvector_from_json(const json& j);
json rmatrix_to_json(const RMatrix& A);
RMatrix rmatrix_from_json(const json& j);
json intvector_to_json(const IntVector& k);

/// System file schema: {"d": n, "A": [[...]], "b": [...]}.
json system_to_json(const ContractedRotation& sys);
ContractedRotation system_from_json(const json& j);
ContractedRotation load_system(const std::string& path);

/// FNV-1a 64 over the canonical system JSON, hex string.
std::string system_hash(const ContractedRotation& sys);

json extended_to_json(const ExtendedSystem& sx);

json certificate_to_json(const PeriodicOrbitCertificate& cert, const std::string& sys_hash);
json verdict_to_json(const OrbitVerdict& v, const std::string& sys_hash);

json scan_report_to_json(const ScanReport& rep, const ContractedRotation& sys);

json sweep_spec_to_json(const SweepSpec& spec);
SweepSpec sweep_spec_from_json(const json& j);
json sweep_report_to_json(const SweepReport& rep, const SweepSpec& spec);
std::string sweep_report_csv(const SweepReport& rep);

json budget_to_json(const Budget& b);
Budget budget_from_json(const json& j);

json lemma_results_to_json(const std::vector<LemmaResult>& results);

/// Full inspect payload: norms, chi, mu, r, offset, domains. Round-trips the
/// system exactly under system_from_json(j["system"]).
json inspect_to_json(const ContractedRotation& sys);

void write_text_file(const std::string& path, const std::string& content);

}  // namespace pcrot

#endif
