#pragma once

// Bernoulli numbers, the six Bernoulli-number power series (x cot x, cot x,
// coth x, 1/sin^2 x, 1/sinh^2 x, x/sin x) and the coefficient-ratio
// monotonicity test for quotients of power series.

#include <boost/multiprecision/cpp_int.hpp>

#include <cstddef>
#include <span>
#include <string_view>
#include <vector>

#include "meanlab/errors.hpp"
#include "meanlab/real.hpp"

namespace meanlab {

using Rational = boost::multiprecision::cpp_rational;

inline constexpr int kBernoulliMax = 30;
inline constexpr int kDefaultSeriesTerms = kBernoulliMax;

/// |B_{2n}| for n = 1..size(), exact and rounded. Immutable after construction.
class BernoulliTable {
public:
    explicit BernoulliTable(int n_max = kBernoulliMax);

    int size() const noexcept { return static_cast<int>(exact_.size()); }
    const Rational& exact(int n) const;
    double value(int n) const;

private:
    std::vector<Rational> exact_;
    std::vector<double> rounded_;
};

const BernoulliTable& bernoulli_table();

/// |B_{2n}|, 1 <= n <= kBernoulliMax; RangeError otherwise.
Rational bernoulli_even(int n);

enum class SeriesId { XCotX, CotX, CothX, InvSin2, InvSinh2, XOverSin };

inline constexpr SeriesId kAllSeries[] = {SeriesId::XCotX,   SeriesId::CotX,     SeriesId::CothX,
                                          SeriesId::InvSin2, SeriesId::InvSinh2, SeriesId::XOverSin};

std::string_view to_string(SeriesId id);

/// Exponent of x in the lead (non-summed) term: 0 for x cot x and x/sin x,
/// -1 for the cotangents, -2 for the inverse squares.
int series_lead_power(SeriesId id);

/// Coefficient of the n-th summed term (n >= 1) and the power of x it multiplies.
Rational series_coefficient(SeriesId id, int n);
int series_power(SeriesId id, int n);

/// Rounded coefficients 1..kBernoulliMax, cached per type.
template <class Real> std::span<const Real> series_coefficients(SeriesId id);

/// Sum of the first `terms` summed terms, without the lead term.
/// Every summed power is lead + 2n, so the sum is x^lead * poly(x^2) * x^2.
template <class Real> Real series_tail(SeriesId id, Real x, int terms)
{
    const auto coeffs = series_coefficients<Real>(id);
    if (terms < 0 || static_cast<std::size_t>(terms) > coeffs.size())
        throw RangeError("series term count out of range");
    const Real x2 = x * x;
    Real acc = 0;
    for (int n = terms; n >= 1; --n)
        acc = acc * x2 + coeffs[n - 1];
    acc *= x2;
    switch (series_lead_power(id)) {
    case -1: return acc / x;
    case -2: return acc / x2;
    default: return acc;
    }
}

/// Truncated series value. |x| >= pi is outside the disc of convergence;
/// x = 0 is rejected for the series with a singular lead term.
template <class Real> Real series_eval(SeriesId id, Real x, int terms = kDefaultSeriesTerms)
{
    if (!(num::abs(x) < num::pi<Real>()))
        throw DomainError("series argument outside |x| < pi");
    const int lead = series_lead_power(id);
    if (lead < 0 && x == 0)
        throw DomainError("series has a pole at x = 0");
    const Real lead_term = lead == 0 ? Real(1) : (lead == -1 ? Real(1) / x : Real(1) / (x * x));
    return lead_term + series_tail(id, x, terms);
}

/// Closed-form value of the function each series expands, via <cmath>.
double series_direct(SeriesId id, double x);

enum class Monotonicity { Increasing, Decreasing, Neither };

std::string_view to_string(Monotonicity m);

/// Strict monotonicity of a_n / c_n over the first n entries. A constant
/// ratio is reported as Neither. Requires c_k > 0.
Monotonicity coeff_ratio_monotone(std::span<const Rational> numer, std::span<const Rational> denom,
                                  std::size_t n);
Monotonicity coeff_ratio_monotone(std::span<const double> numer, std::span<const double> denom,
                                  std::size_t n);

/// Truncated power series in x^2 with exact coefficients: c[k] multiplies x^{2k}.
class EvenSeries {
public:
    EvenSeries() = default;
    explicit EvenSeries(std::vector<Rational> coeffs) : c_(std::move(coeffs)) {}

    static EvenSeries constant(const Rational& v, int order);
    /// sin(x)/x, cos(x), x cot(x), x/sin(x) through x^{2 order}.
    static EvenSeries sinc(int order);
    static EvenSeries cosine(int order);
    static EvenSeries from(SeriesId id, int order);

    int order() const noexcept { return static_cast<int>(c_.size()) - 1; }
    const std::vector<Rational>& coefficients() const noexcept { return c_; }
    const Rational& operator[](int k) const { return c_.at(static_cast<std::size_t>(k)); }

    EvenSeries operator+(const EvenSeries& o) const;
    EvenSeries operator-(const EvenSeries& o) const;
    EvenSeries operator*(const EvenSeries& o) const;
    EvenSeries scaled(const Rational& s) const;

    /// exp(s) and log(1 + s) for a series with zero constant term.
    EvenSeries exp() const;
    EvenSeries log1p() const;

    std::vector<double> to_double() const;

private:
    std::vector<Rational> c_;
};

/// Horner evaluation of sum c[k] x^{2k}.
inline double eval_even(std::span<const double> c, double x)
{
    const double x2 = x * x;
    double acc = 0;
    for (std::size_t k = c.size(); k-- > 0;)
        acc = acc * x2 + c[k];
    return acc;
}

}  // namespace meanlab
