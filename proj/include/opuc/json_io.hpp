#pragma once

#include <string>

#include "json.hpp"
#include "opuc/coeffs.hpp"
#include "opuc/jacobi.hpp"
#include "opuc/moebius.hpp"
#include "opuc/spectral.hpp"

namespace opuc {

// ordered_json keeps insertion order, so serialized reports are byte-stable
// across runs.
using json = nlohmann::ordered_json;

// Strict schema guard: every key must be listed, every required key present.
// Violations surface as std::invalid_argument.
void check_fields(const json& j, const std::string& what,
                  std::initializer_list<const char*> required,
                  std::initializer_list<const char*> optional = {});

json complex_to_json(cdouble v);
// Accepts [re, im] or a bare real number.
cdouble complex_from_json(const json& j, const std::string& what);

json descriptor_to_json(const VerblunskyDescriptor& desc);
VerblunskyDescriptor descriptor_from_json(const json& j);

json jacobi_to_json(const JacobiDescriptor& desc);
JacobiDescriptor jacobi_from_json(const json& j);

json arcs_to_json(const ArcSet& s);
ArcSet arcs_from_json(const json& j, const std::string& what);

const char* path_name(BoundaryPath p);

json report_to_json(const SigmaAcEstimate& r);
json report_to_json(const DefectReport& r);  // summary; the trace goes to CSV
json report_to_json(const KhrushchevLabel& r);
json report_to_json(const SimonClassification& r);
json report_to_json(const RightLimit& r);
json report_to_json(const SparseCheckReport& r);
json report_to_json(const DeterminacyReport& r);
json report_to_json(const RandomExperimentReport& r);

}  // namespace opuc
