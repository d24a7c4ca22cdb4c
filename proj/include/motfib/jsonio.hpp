#pragma once

#include <string>

#include "json.hpp"
#include "motfib/betapoly.hpp"
#include "motfib/family.hpp"
#include "motfib/fibre_oracle.hpp"
#include "motfib/resolve.hpp"
#include "motfib/zeta.hpp"

namespace motfib {

using Json = nlohmann::json;

// Sparse map {"u^k": "p/q"}; the zero polynomial is the empty object.
Json beta_json(const BetaPoly& b);

Json resolution_json(const ResolutionData& res);
Json zeta_json(const ZetaFunction& z);
Json fibre_json(const FibreReport& r);
Json identity_json(const FibreIdentityReport& r);
Json scan_json(const ScanReport& r);

// Rows "t,beta,status"; beta column empty on failure.
std::string scan_csv(const ScanReport& r);

}  // namespace motfib
