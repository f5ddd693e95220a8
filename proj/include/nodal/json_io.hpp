#pragma once

#include "nodal/power_series.hpp"

#include <json.hpp>

namespace nodal {

/// Series wire format: {"variable": "q", "order": M, "coefficients": ["p/q", ...]}.
nlohmann::json series_to_json(const PowerSeries& s);
PowerSeries series_from_json(const nlohmann::json& j);

} // namespace nodal
