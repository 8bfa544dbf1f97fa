#include "smnorm/params.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <stdexcept>

#include "smnorm/errors.hpp"

namespace smnorm {

Exponent Exponent::finite(double value) {
    if (!(value > 0.0) || !std::isfinite(value))
        throw ParamError("exponent must be a positive finite number or inf");
    Exponent e;
    e.value_ = value;
    return e;
}

Exponent Exponent::parse(std::string_view text) {
    std::string lowered(text);
    std::transform(lowered.begin(), lowered.end(), lowered.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    if (lowered == "inf" || lowered == "infinity") return infinity();
    try {
        std::size_t pos = 0;
        double v = std::stod(lowered, &pos);
        if (pos != lowered.size()) throw std::invalid_argument(lowered);
        return finite(v);
    } catch (const ParamError&) {
        throw;
    } catch (const std::exception&) {
        throw ParamError("cannot parse exponent '" + std::string(text) + "'");
    }
}

std::string Exponent::str() const {
    if (inf_) return "inf";
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", value_);
    return buf;
}

ValidatedParams ValidatedParams::validate(const SmoothnessParams& raw) {
    if (raw.dim != 1 && raw.dim != 2)
        throw ParamError("dimension must be 1 or 2");
    if (!(raw.p > 0.0) || !std::isfinite(raw.p))
        throw ParamError("p must be a positive finite number");
    if (!(raw.u > 0.0) || !std::isfinite(raw.u))
        throw ParamError("u must be a positive finite number");
    if (raw.u < raw.p)
        throw ParamError("Morrey exponents require p <= u");
    if (!std::isfinite(raw.s))
        throw ParamError("smoothness s must be finite");
    if (raw.order < 1)
        throw ParamError("order must be a positive integer");
    if (!(raw.base_radius > 0.0) || !std::isfinite(raw.base_radius))
        throw ParamError("base radius must be positive and finite");
    return ValidatedParams(raw);
}

ValidatedParams::ValidatedParams(const SmoothnessParams& raw) : raw_(raw) {
    double d = raw.dim;
    double inv_p = 1.0 / raw.p;
    double inv_q = raw.q.reciprocal();
    double inv_v = raw.v.reciprocal();
    sigma_p_ = d * std::max(0.0, inv_p - 1.0);
    sigma_pq_ = d * std::max({0.0, inv_p - 1.0, inv_q - 1.0});
    tau_ = std::min({1.0, raw.p, raw.q.value_or(1.0)});
    lower_window_ =
        d * std::max({0.0, inv_p - 1.0, inv_q - 1.0, inv_p - inv_v, inv_q - inv_v});
    window_ok_ = lower_window_ < raw.s && raw.s < static_cast<double>(raw.order);
}

} // namespace smnorm
