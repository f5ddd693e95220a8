#include "nodal/json_io.hpp"

#include "nodal/errors.hpp"

namespace nodal {

nlohmann::json series_to_json(const PowerSeries& s)
{
    nlohmann::json coeffs = nlohmann::json::array();
    for (const auto& c : s.coefficients()) coeffs.push_back(to_string(c));
    return {{"variable", std::string(1, s.variable())}, {"order", s.order()}, {"coefficients", std::move(coeffs)}};
}

PowerSeries series_from_json(const nlohmann::json& j)
{
    try {
        const auto& arr = j.at("coefficients");
        const int order = j.at("order").get<int>();
        const auto var = j.at("variable").get<std::string>();
        if (var.size() != 1) throw ValidationError("series variable must be a single character");
        if (!arr.is_array() || static_cast<int>(arr.size()) != order + 1)
            throw ValidationError("series coefficient count does not match order");
        std::vector<Rational> coeffs;
        coeffs.reserve(arr.size());
        for (const auto& c : arr) coeffs.push_back(parse_rational(c.get<std::string>()));
        return PowerSeries(std::move(coeffs), var[0]);
    } catch (const nlohmann::json::exception& e) {
        throw ValidationError(std::string("bad series document: ") + e.what());
    }
}

} // namespace nodal
