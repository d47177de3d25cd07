#pragma once

#include <json.hpp>

#include "zq/qseries.hpp"

namespace zq {

/// Structured record of a series:
///   {"denom": D, "order": [num, den] | null,
///    "terms": [[exp_num, "coeff_num", "coeff_den"], ...]}
/// sorted by exponent; coefficient parts are decimal strings so arbitrary
/// precision survives the round trip.
nlohmann::json series_to_json(const QSeries& s);

QSeries series_from_json(const nlohmann::json& j);

}  // namespace zq
