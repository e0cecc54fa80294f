#pragma once

#include <string>
#include <vector>

#include "gsum/certify.hpp"
#include "gsum/density.hpp"
#include "gsum/entropy.hpp"
#include "gsum/transforms.hpp"

namespace gsum::io {

/// %.17g with quoted "+inf"/"-inf" handled by the JSON layer; plain text here.
std::string format_double(double v);

/// Canonical JSON text: fixed key order as built, doubles at 17 significant
/// digits, infinities as the quoted sentinels "+inf"/"-inf". Re-serializing a
/// parsed document reproduces it byte for byte.
std::string reserialize_json(const std::string& text);

std::string report_to_json(const CertificateReport& report);
CertificateReport report_from_json(const std::string& text);

std::string case_to_json(const CaseInput& input);
CaseInput case_from_json(const std::string& text);

std::string curve_to_csv(const DensityCurve& curve);
DensityCurve curve_from_csv(const std::string& text);

std::string entropy_results_json(const std::vector<EntropyResult>& results);
std::string moment_table_json(const MomentTable& table);
std::string max_density_json(const MaxDensityResult& result);

/// Top-level run record {"version", "config", "results"} with the resolved
/// configuration echoed as ordered key/value pairs.
std::string run_record(const std::string& command,
                       const std::vector<std::pair<std::string, std::string>>& config,
                       const std::string& results_json);

} // namespace gsum::io
