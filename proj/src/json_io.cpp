#include "phicong/json_io.hpp"

#include <stdexcept>
#include <string>

namespace phicong {

nlohmann::json series_to_json(const LaurentSeries& s)
{
    nlohmann::json j;
    auto coeffs = nlohmann::json::array();
    if (s.is_zero()) {
        j["order"] = s.is_exact() ? 0 : s.precision();
    } else {
        j["order"] = s.order();
        const Exponent end = s.is_exact() ? s.stored_end() : s.precision();
        for (Exponent e = s.order(); e < end; ++e) {
            coeffs.push_back(to_decimal(s.coeff(e)));
        }
    }
    j["precision"] = s.is_exact() ? nlohmann::json(nullptr) : nlohmann::json(s.precision());
    j["coeffs"] = std::move(coeffs);
    return j;
}

LaurentSeries series_from_json(const nlohmann::json& j)
{
    const Exponent order = j.at("order").get<Exponent>();
    const auto& p = j.at("precision");
    const Exponent precision = p.is_null() ? kExactPrecision : p.get<Exponent>();
    std::vector<Integer> coeffs;
    for (const auto& c : j.at("coeffs")) {
        coeffs.push_back(from_decimal(c.get<std::string>()));
    }
    if (!p.is_null() && order + static_cast<Exponent>(coeffs.size()) > precision) {
        throw std::invalid_argument("series JSON stores coefficients beyond its precision");
    }
    return LaurentSeries::from_coeffs(order, std::move(coeffs), precision);
}

nlohmann::json phi_polynomial_to_json(const PhiPolynomial& p, unsigned m, unsigned alpha)
{
    nlohmann::json j;
    j["m"] = m;
    j["alpha"] = alpha;
    auto coeffs = nlohmann::json::object();
    for (const auto& [deg, c] : p.terms()) {
        coeffs[std::to_string(deg)] = to_decimal(c);
    }
    j["coeffs"] = std::move(coeffs);
    return j;
}

PhiPolynomial phi_polynomial_from_json(const nlohmann::json& j)
{
    PhiPolynomial p;
    for (const auto& [key, value] : j.at("coeffs").items()) {
        const unsigned long deg = std::stoul(key);
        p.set(static_cast<Degree>(deg), from_decimal(value.get<std::string>()));
    }
    return p;
}

}  // namespace phicong
