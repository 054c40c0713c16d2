#include "meanlab/means.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>

#include "meanlab/series.hpp"

namespace meanlab {
namespace {

// Enough series terms for t < 1e-4 at each precision (consecutive terms shrink by ~t^2).
template <class Real> constexpr int kNearTerms = 6;
template <> constexpr int kNearTerms<Quad> = 10;

template <class Real> Real clamp_to_pair(const BasicPair<Real>& pair, Real v)
{
    return std::clamp(v, pair.lo(), pair.hi());
}

template <class Real> bool near_diagonal(const BasicPair<Real>& pair, const MeanOptions& opts)
{
    return pair.t() < Real(opts.series_threshold);
}

template <class Real> Real arithmetic(const BasicPair<Real>& p)
{
    return Real(0.5) * p.hi() + Real(0.5) * p.lo();
}

template <class Real> Real geometric(const BasicPair<Real>& p)
{
    if (p.diagonal())
        return p.hi();
    const Real prod = p.hi() * p.lo();
    if (num::isfinite(prod) && prod > 0)
        return num::sqrt(prod);
    return num::sqrt(p.hi()) * num::sqrt(p.lo());
}

template <class Real> Real harmonic(const BasicPair<Real>& p)
{
    return Real(2) * p.lo() * (p.hi() / (p.hi() + p.lo()));
}

template <class Real> Real coord_x(const BasicPair<Real>& p)
{
    return num::atan2(p.spread(), Real(2) * geometric(p));
}

template <class Real> Real coord_y(const BasicPair<Real>& p)
{
    return Real(0.5) * num::log1p(p.spread() / p.lo());
}

// sinh(y)/y = sum y^{2k}/(2k+1)!
template <class Real> Real sinhc_series(Real y)
{
    const Real y2 = y * y;
    Real term = 1;
    Real acc = 1;
    for (int k = 1; k < kNearTerms<Real>; ++k) {
        term *= y2 / Real((2 * k) * (2 * k + 1));
        acc += term;
    }
    return acc;
}

// x cot x - 1, small x via the series tail.
template <class Real> Real xcot_minus_one(Real x, bool near)
{
    if (near)
        return series_tail(SeriesId::XCotX, x, kNearTerms<Real>);
    return x / num::tan(x) - Real(1);
}

// y coth y - 1 = A/L - 1.
template <class Real> Real ycoth_minus_one(Real y, bool near)
{
    if (near)
        return y * series_tail(SeriesId::CothX, y, kNearTerms<Real>);
    return y / num::tanh(y) - Real(1);
}

// log cosh z without overflow or cancellation.
template <class Real> Real log_cosh(Real z)
{
    const Real az = num::abs(z);
    if (az <= Real(1)) {
        const Real s = num::sinh(az / Real(2));
        return num::log1p(Real(2) * s * s);
    }
    return az + num::log1p(num::exp(Real(-2) * az)) - num::log(Real(2));
}

// log((1 + 2 cosh z)/3).
template <class Real> Real log_heron_kernel(Real z)
{
    const Real az = num::abs(z);
    if (az <= Real(1)) {
        const Real s = num::sinh(az / Real(2));
        return num::log1p(Real(4) / Real(3) * s * s);
    }
    const Real u = num::exp(-az);
    return az + num::log((Real(1) + u + u * u) / Real(3));
}

}  // namespace

std::string_view symbol_name(MeanSymbol s)
{
    switch (s) {
    case MeanSymbol::A: return "A";
    case MeanSymbol::G: return "G";
    case MeanSymbol::H: return "H";
    case MeanSymbol::L: return "L";
    case MeanSymbol::I: return "I";
    case MeanSymbol::P: return "P";
    case MeanSymbol::X: return "X";
    case MeanSymbol::Y: return "Y";
    case MeanSymbol::PowerMean: return "Mp";
    case MeanSymbol::Heronian: return "Hp";
    }
    return "?";
}

std::optional<MeanSymbol> symbol_from_name(std::string_view name)
{
    for (MeanSymbol s : {MeanSymbol::A, MeanSymbol::G, MeanSymbol::H, MeanSymbol::L, MeanSymbol::I,
                         MeanSymbol::P, MeanSymbol::X, MeanSymbol::Y, MeanSymbol::PowerMean,
                         MeanSymbol::Heronian})
        if (symbol_name(s) == name)
            return s;
    return std::nullopt;
}

std::string to_string(const MeanKind& kind)
{
    std::string s(symbol_name(kind.symbol));
    if (kind.parametric()) {
        char buf[40];
        std::snprintf(buf, sizeof buf, "[%.17g]", kind.exponent);
        s += buf;
    }
    return s;
}

template <class Real> Real basic_mean(const BasicPair<Real>& pair, MeanSymbol kind)
{
    switch (kind) {
    case MeanSymbol::A: return clamp_to_pair(pair, arithmetic(pair));
    case MeanSymbol::G: return clamp_to_pair(pair, geometric(pair));
    case MeanSymbol::H: return clamp_to_pair(pair, harmonic(pair));
    default: throw PreconditionError("basic_mean only evaluates A, G and H");
    }
}

namespace route {

template <class Real> Real logarithmic_direct(const BasicPair<Real>& p)
{
    if (p.diagonal())
        return p.hi();
    return p.spread() / num::log1p(p.spread() / p.lo());
}

template <class Real> Real logarithmic_param(const BasicPair<Real>& p)
{
    if (p.diagonal())
        return p.hi();
    const Real y = coord_y(p);
    return geometric(p) * num::sinh(y) / y;
}

// log I = (a log a - b log b)/(a - b) - 1 = log(hi) + lo/L - 1.
template <class Real> Real identric_direct(const BasicPair<Real>& p)
{
    if (p.diagonal())
        return p.hi();
    return p.hi() * num::exp(p.lo() / logarithmic_direct(p) - Real(1));
}

// log(I/G) = A/L - 1 = y coth y - 1.
template <class Real> Real identric_param(const BasicPair<Real>& p)
{
    if (p.diagonal())
        return p.hi();
    return geometric(p) * num::exp(ycoth_minus_one(coord_y(p), false));
}

// arcsin t, switching to the half-angle form near t = 1 where 1 - t = 2 lo/(hi + lo) is exact-ish.
template <class Real> Real arcsin_t(const BasicPair<Real>& p)
{
    const Real t = p.t();
    if (t <= Real(0.5))
        return num::asin(t);
    const Real w = num::sqrt(p.lo() / (p.hi() + p.lo()));
    return num::pi<Real>() / Real(2) - Real(2) * num::asin(w);
}

template <class Real> Real seiffert_direct(const BasicPair<Real>& p)
{
    if (p.diagonal())
        return p.hi();
    return p.spread() / (Real(2) * arcsin_t(p));
}

template <class Real> Real seiffert_param(const BasicPair<Real>& p)
{
    if (p.diagonal())
        return p.hi();
    const Real x = coord_x(p);
    return arithmetic(p) * num::sin(x) / x;
}

template <class Real> Real x_direct(const BasicPair<Real>& p)
{
    if (p.diagonal())
        return p.hi();
    return arithmetic(p) * num::exp(geometric(p) / seiffert_direct(p) - Real(1));
}

template <class Real> Real x_param(const BasicPair<Real>& p)
{
    if (p.diagonal())
        return p.hi();
    return arithmetic(p) * num::exp(xcot_minus_one(coord_x(p), false));
}

template <class Real> Real y_direct(const BasicPair<Real>& p)
{
    if (p.diagonal())
        return p.hi();
    return geometric(p) * num::exp(logarithmic_direct(p) / arithmetic(p) - Real(1));
}

template <class Real> Real y_param(const BasicPair<Real>& p)
{
    if (p.diagonal())
        return p.hi();
    const Real y = coord_y(p);
    return geometric(p) * num::exp(num::tanh(y) / y - Real(1));
}

}  // namespace route

template <class Real> Real logarithmic_mean(const BasicPair<Real>& pair, const MeanOptions& opts)
{
    if (pair.diagonal())
        return pair.hi();
    if (near_diagonal(pair, opts))
        return clamp_to_pair(pair, geometric(pair) * sinhc_series(coord_y(pair)));
    return clamp_to_pair(pair, route::logarithmic_direct(pair));
}

template <class Real> Real identric_mean(const BasicPair<Real>& pair, const MeanOptions& opts)
{
    if (pair.diagonal())
        return pair.hi();
    if (near_diagonal(pair, opts))
        return clamp_to_pair(pair, geometric(pair) * num::exp(ycoth_minus_one(coord_y(pair), true)));
    return clamp_to_pair(pair, route::identric_direct(pair));
}

template <class Real> Real seiffert_mean(const BasicPair<Real>& pair, const MeanOptions& opts)
{
    if (pair.diagonal())
        return pair.hi();
    const Real x = coord_x(pair);
    if (near_diagonal(pair, opts))
        return clamp_to_pair(
            pair, arithmetic(pair) / (Real(1) + series_tail(SeriesId::XOverSin, x, kNearTerms<Real>)));
    return clamp_to_pair(pair, arithmetic(pair) * num::sin(x) / x);
}

template <class Real> Real x_mean(const BasicPair<Real>& pair, const MeanOptions& opts)
{
    if (pair.diagonal())
        return pair.hi();
    const bool near = near_diagonal(pair, opts);
    return clamp_to_pair(pair, arithmetic(pair) * num::exp(xcot_minus_one(coord_x(pair), near)));
}

template <class Real> Real y_mean(const BasicPair<Real>& pair, const MeanOptions& opts)
{
    if (pair.diagonal())
        return pair.hi();
    const Real y = coord_y(pair);
    Real exponent;
    if (near_diagonal(pair, opts)) {
        // tanh(y)/y - 1 = -S/(1 + S) with S = y coth y - 1
        const Real s = ycoth_minus_one(y, true);
        exponent = -s / (Real(1) + s);
    } else {
        exponent = num::tanh(y) / y - Real(1);
    }
    return clamp_to_pair(pair, geometric(pair) * num::exp(exponent));
}

// M_p = G cosh(p y)^{1/p} and H_p = G ((1 + 2 cosh(p y))/3)^{1/p}: the closed
// forms after factoring out (ab)^{p/2}.
template <class Real>
Real power_mean(const BasicPair<Real>& pair, Real p, const MeanOptions&)
{
    if (!num::isfinite(p))
        throw DomainError("power mean exponent must be finite");
    if (pair.diagonal())
        return pair.hi();
    const Real g = geometric(pair);
    if (p == 0)
        return g;
    const Real y = coord_y(pair);
    if (num::abs(p) < Real(1e-8))
        return clamp_to_pair(pair, g * num::exp(p * y * y / Real(2)));
    return clamp_to_pair(pair, g * num::exp(log_cosh(p * y) / p));
}

template <class Real>
Real heronian_mean(const BasicPair<Real>& pair, Real p, const MeanOptions&)
{
    if (!num::isfinite(p))
        throw DomainError("Heronian mean exponent must be finite");
    if (pair.diagonal())
        return pair.hi();
    const Real g = geometric(pair);
    if (p == 0)
        return g;
    const Real y = coord_y(pair);
    if (num::abs(p) < Real(1e-8))
        return clamp_to_pair(pair, g * num::exp(p * y * y / Real(3)));
    return clamp_to_pair(pair, g * num::exp(log_heron_kernel(p * y) / p));
}

template <class Real> BasicParamPoint<Real> param_point(const BasicPair<Real>& pair)
{
    if (pair.diagonal())
        throw DegeneratePairError("x and y are undefined for a == b");
    return {coord_x(pair), coord_y(pair)};
}

template <class Real>
Real evaluate(const BasicPair<Real>& pair, MeanSymbol symbol, Real exponent, const MeanOptions& opts)
{
    switch (symbol) {
    case MeanSymbol::A:
    case MeanSymbol::G:
    case MeanSymbol::H: return basic_mean(pair, symbol);
    case MeanSymbol::L: return logarithmic_mean(pair, opts);
    case MeanSymbol::I: return identric_mean(pair, opts);
    case MeanSymbol::P: return seiffert_mean(pair, opts);
    case MeanSymbol::X: return x_mean(pair, opts);
    case MeanSymbol::Y: return y_mean(pair, opts);
    case MeanSymbol::PowerMean: return power_mean(pair, exponent, opts);
    case MeanSymbol::Heronian: return heronian_mean(pair, exponent, opts);
    }
    throw PreconditionError("unknown mean symbol");
}

double MeanVector::operator[](MeanSymbol s) const
{
    switch (s) {
    case MeanSymbol::A: return A;
    case MeanSymbol::G: return G;
    case MeanSymbol::H: return H;
    case MeanSymbol::L: return L;
    case MeanSymbol::I: return I;
    case MeanSymbol::P: return P;
    case MeanSymbol::X: return X;
    case MeanSymbol::Y: return Y;
    case MeanSymbol::PowerMean: return power_mean;
    case MeanSymbol::Heronian: return heronian;
    }
    return 0;
}

MeanVector evaluate_all(const PositivePair& pair, double power_exponent, double heronian_exponent,
                        const MeanOptions& opts)
{
    MeanVector v;
    v.a = pair.a();
    v.b = pair.b();
    v.A = basic_mean(pair, MeanSymbol::A);
    v.G = basic_mean(pair, MeanSymbol::G);
    v.H = basic_mean(pair, MeanSymbol::H);
    v.L = logarithmic_mean(pair, opts);
    v.I = identric_mean(pair, opts);
    v.P = seiffert_mean(pair, opts);
    v.X = x_mean(pair, opts);
    v.Y = y_mean(pair, opts);
    v.power_exponent = power_exponent;
    v.power_mean = power_mean(pair, power_exponent, opts);
    v.heronian_exponent = heronian_exponent;
    v.heronian = heronian_mean(pair, heronian_exponent, opts);
    if (!pair.diagonal())
        v.param = param_point(pair);
    return v;
}

#define MEANLAB_INSTANTIATE_MEANS(Real)                                                            \
    template Real basic_mean<Real>(const BasicPair<Real>&, MeanSymbol);                             \
    template Real logarithmic_mean<Real>(const BasicPair<Real>&, const MeanOptions&);               \
    template Real identric_mean<Real>(const BasicPair<Real>&, const MeanOptions&);                  \
    template Real seiffert_mean<Real>(const BasicPair<Real>&, const MeanOptions&);                  \
    template Real x_mean<Real>(const BasicPair<Real>&, const MeanOptions&);                         \
    template Real y_mean<Real>(const BasicPair<Real>&, const MeanOptions&);                         \
    template Real power_mean<Real>(const BasicPair<Real>&, Real, const MeanOptions&);               \
    template Real heronian_mean<Real>(const BasicPair<Real>&, Real, const MeanOptions&);            \
    template BasicParamPoint<Real> param_point<Real>(const BasicPair<Real>&);                       \
    template Real evaluate<Real>(const BasicPair<Real>&, MeanSymbol, Real, const MeanOptions&);     \
    template Real route::logarithmic_direct<Real>(const BasicPair<Real>&);                          \
    template Real route::logarithmic_param<Real>(const BasicPair<Real>&);                           \
    template Real route::identric_direct<Real>(const BasicPair<Real>&);                             \
    template Real route::identric_param<Real>(const BasicPair<Real>&);                              \
    template Real route::seiffert_direct<Real>(const BasicPair<Real>&);                             \
    template Real route::seiffert_param<Real>(const BasicPair<Real>&);                              \
    template Real route::x_direct<Real>(const BasicPair<Real>&);                                    \
    template Real route::x_param<Real>(const BasicPair<Real>&);                                     \
    template Real route::y_direct<Real>(const BasicPair<Real>&);                                    \
    template Real route::y_param<Real>(const BasicPair<Real>&);

MEANLAB_INSTANTIATE_MEANS(double)
MEANLAB_INSTANTIATE_MEANS(Quad)

}  // namespace meanlab
