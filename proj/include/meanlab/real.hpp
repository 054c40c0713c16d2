#pragma once

// Uniform math vocabulary over the two floating types used by the library:
// `double` for everyday evaluation and `Quad` (IEEE binary128) for the
// extended-precision margin path of the inequality checker.

#include <cmath>
#include <quadmath.h>
#include <string>

namespace meanlab {

using Quad = __float128;

namespace num {

inline double sqrt(double v) { return std::sqrt(v); }
inline double log(double v) { return std::log(v); }
inline double log1p(double v) { return std::log1p(v); }
inline double exp(double v) { return std::exp(v); }
inline double expm1(double v) { return std::expm1(v); }
inline double sin(double v) { return std::sin(v); }
inline double cos(double v) { return std::cos(v); }
inline double tan(double v) { return std::tan(v); }
inline double sinh(double v) { return std::sinh(v); }
inline double cosh(double v) { return std::cosh(v); }
inline double tanh(double v) { return std::tanh(v); }
inline double asin(double v) { return std::asin(v); }
inline double atan2(double y, double x) { return std::atan2(y, x); }
inline double pow(double b, double e) { return std::pow(b, e); }
inline double abs(double v) { return std::fabs(v); }
inline bool isfinite(double v) { return std::isfinite(v); }

inline Quad sqrt(Quad v) { return ::sqrtq(v); }
inline Quad log(Quad v) { return ::logq(v); }
inline Quad log1p(Quad v) { return ::log1pq(v); }
inline Quad exp(Quad v) { return ::expq(v); }
inline Quad expm1(Quad v) { return ::expm1q(v); }
inline Quad sin(Quad v) { return ::sinq(v); }
inline Quad cos(Quad v) { return ::cosq(v); }
inline Quad tan(Quad v) { return ::tanq(v); }
inline Quad sinh(Quad v) { return ::sinhq(v); }
inline Quad cosh(Quad v) { return ::coshq(v); }
inline Quad tanh(Quad v) { return ::tanhq(v); }
inline Quad asin(Quad v) { return ::asinq(v); }
inline Quad atan2(Quad y, Quad x) { return ::atan2q(y, x); }
inline Quad pow(Quad b, Quad e) { return ::powq(b, e); }
inline Quad abs(Quad v) { return ::fabsq(v); }
inline bool isfinite(Quad v) { return ::finiteq(v) != 0; }

template <class Real> Real pi();
template <> inline double pi<double>() { return 3.14159265358979323846; }
template <> inline Quad pi<Quad>()
{
    static const Quad v = ::strtoflt128("3.14159265358979323846264338327950288", nullptr);
    return v;
}

template <class Real> Real euler_e();
template <> inline double euler_e<double>() { return 2.71828182845904523536; }
template <> inline Quad euler_e<Quad>()
{
    static const Quad v = ::strtoflt128("2.71828182845904523536028747135266250", nullptr);
    return v;
}

/// Unit roundoff of the type.
template <class Real> Real epsilon();
template <> inline double epsilon<double>() { return 0x1p-52; }
template <> inline Quad epsilon<Quad>() { return static_cast<Quad>(0x1p-112); }

inline Quad parse_quad(const std::string& text) { return ::strtoflt128(text.c_str(), nullptr); }

inline std::string to_string(Quad v, int digits = 36)
{
    char buf[96];
    ::quadmath_snprintf(buf, sizeof buf, "%.*Qg", digits, v);
    return buf;
}

}  // namespace num
}  // namespace meanlab
