#pragma once

// JSON encodings. Numbers are decimal strings at full working precision
// unless `digits` is nonzero.

#include <json.hpp>

#include "qzeros/pfcheck.hpp"
#include "qzeros/roots.hpp"
#include "qzeros/series.hpp"
#include "qzeros/verify.hpp"

namespace qzeros {

using Json = nlohmann::ordered_json;

Json spec_params(const SeriesSpec& spec);
Json to_json(const SeriesSpec& spec);
Json to_json(const CoefficientSequence& seq, unsigned digits = 0);
Json to_json(const TruncationCertificate& cert, unsigned digits = 0);
Json to_json(const Evaluation& ev, unsigned digits = 0);
Json to_json(const ZeroSet& zs, unsigned digits = 0);
Json to_json(const MinorReport& rep, unsigned digits = 0);
Json to_json(const RatioReport& rep, unsigned digits = 0);
Json to_json(const VerificationReport& rep, unsigned digits = 0);

/// Scientific decimal text; digits = 0 keeps every significant digit.
std::string format_real(const Real& x, unsigned digits);

}  // namespace qzeros
