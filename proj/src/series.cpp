#include "meanlab/series.hpp"

#include <boost/multiprecision/cpp_bin_float.hpp>

#include <array>
#include <cmath>

namespace meanlab {
namespace {

Rational binomial(int n, int k)
{
    Rational r = 1;
    for (int i = 1; i <= k; ++i)
        r = r * (n - k + i) / i;
    return r;
}

Rational factorial(int n)
{
    Rational r = 1;
    for (int i = 2; i <= n; ++i)
        r *= i;
    return r;
}

Rational pow2(int n)
{
    boost::multiprecision::cpp_int v = 1;
    v <<= n;
    return Rational(v);
}

Quad to_quad(const Rational& r)
{
    using Big = boost::multiprecision::cpp_bin_float_50;
    return num::parse_quad(Big(r).str(45, std::ios_base::scientific));
}

int sign_of(int n) { return (n % 2 == 0) ? 1 : -1; }

// 2^{2n} |B_{2n}| / (2n)!, shared by all six expansions.
Rational base_coefficient(int n)
{
    return pow2(2 * n) * bernoulli_even(n) / factorial(2 * n);
}

template <class Real> struct CoefficientCache {
    std::array<std::vector<Real>, std::size(kAllSeries)> table;

    CoefficientCache()
    {
        for (SeriesId id : kAllSeries) {
            auto& row = table[static_cast<std::size_t>(id)];
            row.reserve(kBernoulliMax);
            for (int n = 1; n <= kBernoulliMax; ++n) {
                const Rational c = series_coefficient(id, n);
                if constexpr (std::is_same_v<Real, double>)
                    row.push_back(static_cast<double>(c));
                else
                    row.push_back(to_quad(c));
            }
        }
    }
};

}  // namespace

BernoulliTable::BernoulliTable(int n_max)
{
    if (n_max < 1)
        throw RangeError("Bernoulli table needs at least one entry");
    // B_0..B_{2 n_max} from sum_{k=0}^{m} C(m+1,k) B_k = 0.
    const int m_max = 2 * n_max;
    std::vector<Rational> b(static_cast<std::size_t>(m_max + 1));
    b[0] = 1;
    for (int m = 1; m <= m_max; ++m) {
        Rational acc = 0;
        for (int k = 0; k < m; ++k)
            acc += binomial(m + 1, k) * b[static_cast<std::size_t>(k)];
        b[static_cast<std::size_t>(m)] = -acc / (m + 1);
    }
    for (int n = 1; n <= n_max; ++n) {
        Rational v = b[static_cast<std::size_t>(2 * n)];
        if (v < 0)
            v = -v;
        exact_.push_back(v);
        rounded_.push_back(static_cast<double>(v));
    }
}

const Rational& BernoulliTable::exact(int n) const
{
    if (n < 1 || n > size())
        throw RangeError("Bernoulli index out of range: " + std::to_string(n));
    return exact_[static_cast<std::size_t>(n - 1)];
}

double BernoulliTable::value(int n) const
{
    if (n < 1 || n > size())
        throw RangeError("Bernoulli index out of range: " + std::to_string(n));
    return rounded_[static_cast<std::size_t>(n - 1)];
}

const BernoulliTable& bernoulli_table()
{
    static const BernoulliTable table(kBernoulliMax);
    return table;
}

Rational bernoulli_even(int n) { return bernoulli_table().exact(n); }

std::string_view to_string(SeriesId id)
{
    switch (id) {
    case SeriesId::XCotX: return "XCotX";
    case SeriesId::CotX: return "CotX";
    case SeriesId::CothX: return "CothX";
    case SeriesId::InvSin2: return "InvSin2";
    case SeriesId::InvSinh2: return "InvSinh2";
    case SeriesId::XOverSin: return "XOverSin";
    }
    return "?";
}

int series_lead_power(SeriesId id)
{
    switch (id) {
    case SeriesId::XCotX:
    case SeriesId::XOverSin: return 0;
    case SeriesId::CotX:
    case SeriesId::CothX: return -1;
    case SeriesId::InvSin2:
    case SeriesId::InvSinh2: return -2;
    }
    return 0;
}

int series_power(SeriesId id, int n) { return series_lead_power(id) + 2 * n; }

// The hyperbolic expansions alternate: coth x = 1/x + x/3 - x^3/45 + ...
// and 1/sinh^2 x = 1/x^2 - 1/3 + x^2/15 - ...
Rational series_coefficient(SeriesId id, int n)
{
    if (n < 1 || n > kBernoulliMax)
        throw RangeError("series coefficient index out of range");
    const Rational c = base_coefficient(n);
    switch (id) {
    case SeriesId::XCotX: return -c;
    case SeriesId::CotX: return -c;
    case SeriesId::CothX: return sign_of(n + 1) * c;
    case SeriesId::InvSin2: return c * (2 * n - 1);
    case SeriesId::InvSinh2: return sign_of(n) * c * (2 * n - 1);
    case SeriesId::XOverSin: return (pow2(2 * n) - 2) * bernoulli_even(n) / factorial(2 * n);
    }
    return 0;
}

template <> std::span<const double> series_coefficients<double>(SeriesId id)
{
    static const CoefficientCache<double> cache;
    return cache.table[static_cast<std::size_t>(id)];
}

template <> std::span<const Quad> series_coefficients<Quad>(SeriesId id)
{
    static const CoefficientCache<Quad> cache;
    return cache.table[static_cast<std::size_t>(id)];
}

double series_direct(SeriesId id, double x)
{
    switch (id) {
    case SeriesId::XCotX: return x / std::tan(x);
    case SeriesId::CotX: return 1.0 / std::tan(x);
    case SeriesId::CothX: return 1.0 / std::tanh(x);
    case SeriesId::InvSin2: {
        const double s = std::sin(x);
        return 1.0 / (s * s);
    }
    case SeriesId::InvSinh2: {
        const double s = std::sinh(x);
        return 1.0 / (s * s);
    }
    case SeriesId::XOverSin: return x / std::sin(x);
    }
    return 0;
}

std::string_view to_string(Monotonicity m)
{
    switch (m) {
    case Monotonicity::Increasing: return "increasing";
    case Monotonicity::Decreasing: return "decreasing";
    case Monotonicity::Neither: return "neither";
    }
    return "?";
}

namespace {

template <class T>
Monotonicity classify_ratios(std::span<const T> numer, std::span<const T> denom, std::size_t n)
{
    if (n < 1 || numer.size() < n || denom.size() < n)
        throw PreconditionError("coefficient sequences shorter than N");
    std::vector<T> ratio;
    ratio.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        if (!(denom[i] > 0))
            throw PreconditionError("denominator coefficient " + std::to_string(i + 1) +
                                    " is not positive");
        ratio.push_back(numer[i] / denom[i]);
    }
    if (n < 2)
        return Monotonicity::Neither;
    bool up = true;
    bool down = true;
    for (std::size_t i = 1; i < n; ++i) {
        up = up && ratio[i] > ratio[i - 1];
        down = down && ratio[i] < ratio[i - 1];
    }
    if (up)
        return Monotonicity::Increasing;
    if (down)
        return Monotonicity::Decreasing;
    return Monotonicity::Neither;
}

}  // namespace

Monotonicity coeff_ratio_monotone(std::span<const Rational> numer, std::span<const Rational> denom,
                                  std::size_t n)
{
    return classify_ratios(numer, denom, n);
}

Monotonicity coeff_ratio_monotone(std::span<const double> numer, std::span<const double> denom,
                                  std::size_t n)
{
    return classify_ratios(numer, denom, n);
}

// ---------------------------------------------------------------------------
// EvenSeries

EvenSeries EvenSeries::constant(const Rational& v, int order)
{
    std::vector<Rational> c(static_cast<std::size_t>(order + 1));
    c[0] = v;
    return EvenSeries(std::move(c));
}

EvenSeries EvenSeries::sinc(int order)
{
    std::vector<Rational> c;
    for (int k = 0; k <= order; ++k)
        c.push_back(Rational(sign_of(k)) / factorial(2 * k + 1));
    return EvenSeries(std::move(c));
}

EvenSeries EvenSeries::cosine(int order)
{
    std::vector<Rational> c;
    for (int k = 0; k <= order; ++k)
        c.push_back(Rational(sign_of(k)) / factorial(2 * k));
    return EvenSeries(std::move(c));
}

EvenSeries EvenSeries::from(SeriesId id, int order)
{
    if (series_lead_power(id) != 0)
        throw PreconditionError("only x cot x and x/sin x are even series with a constant lead");
    if (order > kBernoulliMax)
        throw RangeError("series order exceeds the Bernoulli table");
    std::vector<Rational> c{Rational(1)};
    for (int n = 1; n <= order; ++n)
        c.push_back(series_coefficient(id, n));
    return EvenSeries(std::move(c));
}

EvenSeries EvenSeries::operator+(const EvenSeries& o) const
{
    std::vector<Rational> c(std::max(c_.size(), o.c_.size()));
    for (std::size_t k = 0; k < c.size(); ++k)
        c[k] = (k < c_.size() ? c_[k] : Rational(0)) + (k < o.c_.size() ? o.c_[k] : Rational(0));
    return EvenSeries(std::move(c));
}

EvenSeries EvenSeries::operator-(const EvenSeries& o) const { return *this + o.scaled(-1); }

EvenSeries EvenSeries::operator*(const EvenSeries& o) const
{
    const std::size_t len = std::min(c_.size(), o.c_.size());
    std::vector<Rational> c(len);
    for (std::size_t i = 0; i < len; ++i)
        for (std::size_t j = 0; i + j < len; ++j)
            c[i + j] += c_[i] * o.c_[j];
    return EvenSeries(std::move(c));
}

EvenSeries EvenSeries::scaled(const Rational& s) const
{
    std::vector<Rational> c = c_;
    for (auto& v : c)
        v *= s;
    return EvenSeries(std::move(c));
}

EvenSeries EvenSeries::exp() const
{
    if (c_.empty() || c_[0] != 0)
        throw PreconditionError("exp of a series needs a zero constant term");
    // sum_k s^k / k!; s^k starts at x^{2k}, so order+1 powers suffice.
    EvenSeries result = constant(1, order());
    EvenSeries power = constant(1, order());
    for (int k = 1; k <= order(); ++k) {
        power = power * *this;
        result = result + power.scaled(Rational(1) / factorial(k));
    }
    return result;
}

EvenSeries EvenSeries::log1p() const
{
    if (c_.empty() || c_[0] != 0)
        throw PreconditionError("log1p of a series needs a zero constant term");
    EvenSeries result = constant(0, order());
    EvenSeries power = constant(1, order());
    for (int k = 1; k <= order(); ++k) {
        power = power * *this;
        result = result + power.scaled(Rational(sign_of(k + 1), k));
    }
    return result;
}

std::vector<double> EvenSeries::to_double() const
{
    std::vector<double> out;
    out.reserve(c_.size());
    for (const auto& v : c_)
        out.push_back(static_cast<double>(v));
    return out;
}

}  // namespace meanlab
