#pragma once

#include <json.hpp>

#include "phicong/laurent_series.hpp"
#include "phicong/phi_polynomial.hpp"

namespace phicong {

// {"order": int, "precision": int, "coeffs": [decimal strings]}. coeffs[k] is the
// coefficient of q^(order + k) and runs up to precision - 1, trailing zeros included.
// Exact series (and the zero series, which has no order) encode order as the stored
// start and precision as null when exact.
nlohmann::json series_to_json(const LaurentSeries& s);
LaurentSeries series_from_json(const nlohmann::json& j);

// {"m": ..., "alpha": ..., "coeffs": {"j": "decimal string", ...}}
nlohmann::json phi_polynomial_to_json(const PhiPolynomial& p, unsigned m, unsigned alpha);
PhiPolynomial phi_polynomial_from_json(const nlohmann::json& j);

}  // namespace phicong
