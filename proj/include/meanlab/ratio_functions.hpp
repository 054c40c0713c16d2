#pragma once

// Scalar functions of x in (0, pi/2) whose monotonicity and endpoint limits
// encode the sharp constants of the X-mean bounds:
//
//   H_Lemma5   h(x)  = log(x/sin x) / log(e^{1 - x cot x} sin x / x)     (1 -> beta2)
//   F_Lemma2   f(x)  = (1 - e^{x cot x - 1}) / (1 - cos x)                (2/3 -> (e-1)/e)
//   F4_Lemma3  f4(x) = sin x / (x (cos x - e^{x cot x - 1} + 1))          (1 -> c)
//   F5_XOverP  f5(x) = x e^{x cot x - 1} / sin x = X/P                    (1 -> pi/(2e))
//   C_CusaAux  c(x)  = x cot x + x^2 / sin^2 x                             (2 -> pi^2/4)
//
// Each function is evaluated as "limit at 0 plus excess"; the excess is taken
// from exact-coefficient series for x below 0.5, where f4 - 1 = O(x^6) and the
// other excesses O(x^2) would otherwise drown in rounding.

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "meanlab/series.hpp"

namespace meanlab {

enum class RatioFnId { H_Lemma5, F_Lemma2, F4_Lemma3, F5_XOverP, C_CusaAux };

inline constexpr RatioFnId kAllRatioFns[] = {RatioFnId::H_Lemma5, RatioFnId::F_Lemma2,
                                             RatioFnId::F4_Lemma3, RatioFnId::F5_XOverP,
                                             RatioFnId::C_CusaAux};

std::string_view to_string(RatioFnId id);
std::optional<RatioFnId> ratio_fn_from_name(std::string_view name);

struct NamedConstant {
    std::string name;
    std::string closed_form;  ///< in the expression grammar
    double value = 0;
};

/// Sharp constants and chain exponents, in registry order.
const std::vector<NamedConstant>& named_constants();
/// RangeError if unknown.
const NamedConstant& named_constant(std::string_view name);
const NamedConstant* find_named_constant(std::string_view name);

enum class Endpoint { Zero, HalfPi };

std::string_view to_string(Endpoint e);

struct RatioFnInfo {
    RatioFnId id;
    Monotonicity expected;
    double limit_zero;
    double limit_half_pi;
    std::string_view limit_zero_name;     ///< NamedConstant name or a literal
    std::string_view limit_half_pi_name;
};

const RatioFnInfo& ratio_fn_info(RatioFnId id);

/// Values below this x use the series excess.
inline constexpr double kRatioSeriesCutoff = 0.5;

/// f(x) for x in (0, pi/2); DomainError otherwise.
double ratio_eval(RatioFnId id, double x);
/// f(x) - lim_{x->0} f. Below the cutoff it carries full relative precision;
/// above it the error is a few ulps of f(x).
double ratio_excess(RatioFnId id, double x);
/// Direct closed-form evaluation; loses the excess to cancellation near 0.
double ratio_eval_direct(RatioFnId id, double x);

struct MonotoneVerdict {
    enum class Kind { Increasing, Decreasing, Violated };
    Kind kind = Kind::Violated;
    double x1 = 0;  ///< offending adjacent pair when Violated
    double x2 = 0;
};

std::string_view to_string(MonotoneVerdict::Kind k);

inline constexpr double kMonotoneInset = 1e-6;

/// Deterministic sample grid over (inset, pi/2 - inset), compared through ratio_excess.
MonotoneVerdict check_monotone(RatioFnId id, int samples);

struct LimitEstimate {
    double estimate = 0;
    double last_change = 0;
};

inline constexpr double kLimitOffset = 1e-2;
inline constexpr int kLimitSamples = 11;
inline constexpr int kLimitLevels = 4;

/// Richardson limit from x_k = offset 2^{-k} (towards 0) or pi/2 - offset 2^{-k}.
/// Extrapolates in x^2 at 0 (the functions are even) and in the distance at pi/2.
LimitEstimate endpoint_limit(RatioFnId id, Endpoint endpoint);

struct CusaMargin {
    double huygens = 0;      ///< (cos x + 2)/3 - sin(x)/x
    double aux_minus_two = 0;  ///< c(x) - 2
};

CusaMargin cusa_margin(double x);

}  // namespace meanlab
