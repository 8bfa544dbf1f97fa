#pragma once

#include <string>
#include <string_view>

namespace smnorm {

/**
 * Integrability exponent in (0, inf].  Infinity is a distinct state (the
 * sup/max modification of a v-mean or q-sum), never a large float, so every
 * consumer branches on is_inf() instead of relying on overflow.
 */
class Exponent {
public:
    static Exponent finite(double value);
    static Exponent infinity() noexcept {
        Exponent e;
        e.inf_ = true;
        return e;
    }
    /// Accepts "inf" (case-insensitive) or a positive decimal literal.
    static Exponent parse(std::string_view text);

    bool is_inf() const noexcept { return inf_; }
    /// Finite value; calling this on an infinite exponent is a logic error.
    double value() const noexcept { return value_; }
    /// 1/value with the convention 1/inf = 0.
    double reciprocal() const noexcept { return inf_ ? 0.0 : 1.0 / value_; }
    /// min(value, cap) used where quasi-triangle exponents need min(1,p,q).
    double value_or(double if_inf) const noexcept { return inf_ ? if_inf : value_; }

    std::string str() const;

    bool operator==(const Exponent&) const = default;

private:
    Exponent() = default;
    double value_ = 0.0;
    bool inf_ = false;
};

/**
 * Parameter bundle for the smoothness quasi-norms: smoothness s, Morrey
 * exponents 0 < p <= u, fine index q, inner mean exponent v, difference /
 * polynomial order N (degree < N), time horizon T for the scale ladder, and
 * base-term radius R.
 */
struct SmoothnessParams {
    double s = 0.0;
    double u = 2.0;
    double p = 2.0;
    Exponent q = Exponent::finite(2.0);
    Exponent v = Exponent::finite(2.0);
    int order = 1;
    Exponent time_horizon = Exponent::finite(1.0);
    double base_radius = 1.0;
    int dim = 1;
};

/**
 * Validated parameters with the derived quantities used by every route.
 *
 * lower_window is the left edge of the admissible smoothness window,
 *   d * max{0, 1/p - 1, 1/q - 1, 1/p - 1/v, 1/q - 1/v},
 * and window_ok records lower_window < s < N.  The window is advisory: norms
 * are computed outside it, and reports carry the flag.
 */
class ValidatedParams {
public:
    /// Enforces 0 < p <= u < inf, q,v in (0,inf], N >= 1, T > 0, R > 0,
    /// d in {1,2}; everything else is derived.
    static ValidatedParams validate(const SmoothnessParams& raw);

    const SmoothnessParams& raw() const noexcept { return raw_; }
    double s() const noexcept { return raw_.s; }
    double u() const noexcept { return raw_.u; }
    double p() const noexcept { return raw_.p; }
    Exponent q() const noexcept { return raw_.q; }
    Exponent v() const noexcept { return raw_.v; }
    int order() const noexcept { return raw_.order; }
    Exponent time_horizon() const noexcept { return raw_.time_horizon; }
    double base_radius() const noexcept { return raw_.base_radius; }
    int dim() const noexcept { return raw_.dim; }

    double sigma_p() const noexcept { return sigma_p_; }
    double sigma_pq() const noexcept { return sigma_pq_; }
    /// Quasi-triangle exponent min{1, p, q}.
    double tau() const noexcept { return tau_; }
    double lower_window() const noexcept { return lower_window_; }
    bool window_ok() const noexcept { return window_ok_; }

private:
    explicit ValidatedParams(const SmoothnessParams& raw);

    SmoothnessParams raw_;
    double sigma_p_;
    double sigma_pq_;
    double tau_;
    double lower_window_;
    bool window_ok_;
};

} // namespace smnorm
