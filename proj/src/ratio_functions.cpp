#include "meanlab/ratio_functions.hpp"

#include <array>
#include <cmath>

#include "meanlab/errors.hpp"
#include "meanlab/extrapolation.hpp"

namespace meanlab {

namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr double kE = 2.71828182845904523536;
constexpr double kHalfPi = kPi / 2;
constexpr int kExcessOrder = 20;
constexpr double kLimitSettle = 1e-9;

std::vector<NamedConstant> build_constants()
{
    const double l2 = std::log(2.0);
    return {
        {"alpha", "2/3", 2.0 / 3.0},
        {"beta", "(e-1)/e", (kE - 1) / kE},
        {"alpha1", "1", 1.0},
        {"beta1", "pi*(e-1)/(2*e)", kPi * (kE - 1) / (2 * kE)},
        {"alpha2", "2", 2.0},
        {"beta2", "log(pi/2)/log(2*e/pi)", std::log(kPi / 2) / std::log(2 * kE / kPi)},
        {"q", "log(2)/(1+log(2))", l2 / (1 + l2)},
        {"k", "(5*log(2)+2)/(6*(log(2)+1))", (5 * l2 + 2) / (6 * (l2 + 1))},
        {"c", "2*e/(pi*(e-1))", 2 * kE / (kPi * (kE - 1))},
        {"pi_2e", "pi/(2*e)", kPi / (2 * kE)},
        {"p_low", "1/3", 1.0 / 3.0},
        {"h_low", "1/2", 0.5},
        {"h_high", "log(3)/(1+log(2))", std::log(3.0) / (1 + l2)},
        {"m_low", "1/2", 0.5},
    };
}

std::size_t index_of(RatioFnId id) { return static_cast<std::size_t>(id); }

// Numerator and denominator of the excess as exact series.
struct ExcessSeries {
    std::vector<double> num;
    std::vector<double> den;
};

std::array<ExcessSeries, 5> build_excess_series()
{
    const int K = kExcessOrder;
    const EvenSeries one = EvenSeries::constant(1, K);
    const EvenSeries xcot = EvenSeries::from(SeriesId::XCotX, K);
    const EvenSeries xos = EvenSeries::from(SeriesId::XOverSin, K);
    const EvenSeries cosx = EvenSeries::cosine(K);
    const EvenSeries sinc = EvenSeries::sinc(K);

    const EvenSeries v = one - xcot;                 // 1 - x cot x
    const EvenSeries u = (xos - one).log1p();        // log(x / sin x)
    const EvenSeries emv = v.scaled(-1).exp();       // e^{x cot x - 1}
    const EvenSeries one_minus_cos = one - cosx;
    const EvenSeries d4 = one + cosx - emv;

    std::array<ExcessSeries, 5> out;
    out[index_of(RatioFnId::H_Lemma5)] = {(u.scaled(2) - v).to_double(), (v - u).to_double()};
    out[index_of(RatioFnId::F_Lemma2)] = {
        ((one - emv).scaled(3) - one_minus_cos.scaled(2)).to_double(),
        one_minus_cos.scaled(3).to_double()};
    out[index_of(RatioFnId::F4_Lemma3)] = {(sinc - d4).to_double(), d4.to_double()};
    out[index_of(RatioFnId::F5_XOverP)] = {(xos * emv - one).to_double(), one.to_double()};
    out[index_of(RatioFnId::C_CusaAux)] = {(xcot + xos * xos - one.scaled(2)).to_double(),
                                           one.to_double()};
    return out;
}

const std::array<ExcessSeries, 5>& excess_series()
{
    static const std::array<ExcessSeries, 5> table = build_excess_series();
    return table;
}

void check_domain(double x)
{
    if (!(x > 0 && x < kHalfPi))
        throw DomainError("ratio functions are defined on (0, pi/2), got x = " +
                          std::to_string(x));
}

}  // namespace

std::string_view to_string(RatioFnId id)
{
    switch (id) {
    case RatioFnId::H_Lemma5: return "H_Lemma5";
    case RatioFnId::F_Lemma2: return "F_Lemma2";
    case RatioFnId::F4_Lemma3: return "F4_Lemma3";
    case RatioFnId::F5_XOverP: return "F5_XOverP";
    case RatioFnId::C_CusaAux: return "C_CusaAux";
    }
    return "?";
}

std::optional<RatioFnId> ratio_fn_from_name(std::string_view name)
{
    for (RatioFnId id : kAllRatioFns)
        if (to_string(id) == name)
            return id;
    return std::nullopt;
}

std::string_view to_string(Endpoint e) { return e == Endpoint::Zero ? "zero" : "half_pi"; }

std::string_view to_string(MonotoneVerdict::Kind k)
{
    switch (k) {
    case MonotoneVerdict::Kind::Increasing: return "increasing";
    case MonotoneVerdict::Kind::Decreasing: return "decreasing";
    case MonotoneVerdict::Kind::Violated: return "violated";
    }
    return "?";
}

const std::vector<NamedConstant>& named_constants()
{
    static const std::vector<NamedConstant> table = build_constants();
    return table;
}

const NamedConstant* find_named_constant(std::string_view name)
{
    for (const auto& c : named_constants())
        if (c.name == name)
            return &c;
    return nullptr;
}

const NamedConstant& named_constant(std::string_view name)
{
    if (const NamedConstant* c = find_named_constant(name))
        return *c;
    throw RangeError("unknown named constant '" + std::string(name) + "'");
}

const RatioFnInfo& ratio_fn_info(RatioFnId id)
{
    static const std::array<RatioFnInfo, 5> table = {{
        {RatioFnId::H_Lemma5, Monotonicity::Decreasing, 1.0, named_constant("beta2").value,
         "1", "beta2"},
        {RatioFnId::F_Lemma2, Monotonicity::Decreasing, 2.0 / 3.0, named_constant("beta").value,
         "alpha", "beta"},
        {RatioFnId::F4_Lemma3, Monotonicity::Increasing, 1.0, named_constant("c").value, "1",
         "c"},
        {RatioFnId::F5_XOverP, Monotonicity::Decreasing, 1.0, named_constant("pi_2e").value,
         "1", "pi_2e"},
        {RatioFnId::C_CusaAux, Monotonicity::Increasing, 2.0, kPi * kPi / 4, "2", "pi^2/4"},
    }};
    return table[index_of(id)];
}

double ratio_eval_direct(RatioFnId id, double x)
{
    check_domain(x);
    const double s = std::sin(x);
    const double xcot = x / std::tan(x);
    const double v = 1 - xcot;
    switch (id) {
    case RatioFnId::H_Lemma5: {
        const double u = std::log(x / s);
        return u / (v - u);
    }
    case RatioFnId::F_Lemma2: {
        const double h = std::sin(x / 2);
        return -std::expm1(-v) / (2 * h * h);
    }
    case RatioFnId::F4_Lemma3:
        return (s / x) / (1 + std::cos(x) - std::exp(-v));
    case RatioFnId::F5_XOverP:
        return x * std::exp(-v) / s;
    case RatioFnId::C_CusaAux:
        return xcot + (x / s) * (x / s);
    }
    throw PreconditionError("unknown ratio function");
}

double ratio_excess(RatioFnId id, double x)
{
    check_domain(x);
    if (x >= kRatioSeriesCutoff)
        return ratio_eval_direct(id, x) - ratio_fn_info(id).limit_zero;
    const ExcessSeries& s = excess_series()[index_of(id)];
    return eval_even(s.num, x) / eval_even(s.den, x);
}

double ratio_eval(RatioFnId id, double x)
{
    check_domain(x);
    if (x >= kRatioSeriesCutoff)
        return ratio_eval_direct(id, x);
    return ratio_fn_info(id).limit_zero + ratio_excess(id, x);
}

MonotoneVerdict check_monotone(RatioFnId id, int samples)
{
    if (samples < 2)
        throw PreconditionError("check_monotone needs at least 2 samples");
    const double lo = kMonotoneInset;
    const double hi = kHalfPi - kMonotoneInset;
    auto xs = [&](int i) { return lo + (hi - lo) * i / (samples - 1); };

    MonotoneVerdict out;
    double prev_x = xs(0);
    double prev = ratio_excess(id, prev_x);
    int direction = 0;
    for (int i = 1; i < samples; ++i) {
        const double x = xs(i);
        const double cur = ratio_excess(id, x);
        const int step = cur > prev ? 1 : (cur < prev ? -1 : 0);
        if (step == 0 || (direction != 0 && step != direction)) {
            out.kind = MonotoneVerdict::Kind::Violated;
            out.x1 = prev_x;
            out.x2 = x;
            return out;
        }
        direction = step;
        prev_x = x;
        prev = cur;
    }
    out.kind = direction > 0 ? MonotoneVerdict::Kind::Increasing
                             : MonotoneVerdict::Kind::Decreasing;
    return out;
}

LimitEstimate endpoint_limit(RatioFnId id, Endpoint endpoint)
{
    RichardsonResult r;
    if (endpoint == Endpoint::Zero) {
        r = extrapolate_limit([id](double h) { return ratio_eval(id, h); }, kLimitOffset,
                              kLimitSamples, 2, kLimitLevels, kLimitSettle);
    } else {
        r = extrapolate_limit([id](double h) { return ratio_eval(id, kHalfPi - h); },
                              kLimitOffset, kLimitSamples, 1, kLimitLevels, kLimitSettle);
    }
    return {r.estimate, r.last_change};
}

CusaMargin cusa_margin(double x)
{
    check_domain(x);
    CusaMargin out;
    if (x < kRatioSeriesCutoff) {
        // sum_{k>=2} (-1)^k x^{2k} [1/(3 (2k)!) - 1/(2k+1)!]
        const double x2 = x * x;
        double term = x2 * x2;  // x^{2k}
        double fact = 24;       // (2k)!
        double acc = 0;
        for (int k = 2; k <= 16; ++k) {
            const double sign = (k % 2 == 0) ? 1.0 : -1.0;
            acc += sign * term / fact * (1.0 / 3.0 - 1.0 / (2 * k + 1));
            term *= x2;
            fact *= (2 * k + 1) * (2 * k + 2);
        }
        out.huygens = acc;
    } else {
        out.huygens = (std::cos(x) + 2) / 3 - std::sin(x) / x;
    }
    out.aux_minus_two = ratio_excess(RatioFnId::C_CusaAux, x);
    return out;
}

}  // namespace meanlab
