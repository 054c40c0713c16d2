#pragma once

// Bivariate means of two positive arguments.
//
// Every mean is evaluated on the canonical ordering hi >= lo, which makes the
// coordinates
//     x = arcsin((hi - lo)/(hi + lo)) in (0, pi/2),   y = (1/2) log(hi/lo) > 0
// well defined. Near the diagonal (t = (hi - lo)/(hi + lo) below the series
// threshold) the removable 0/0 forms are replaced by truncated series in x or y.
// At hi == lo every mean takes its continuity value.

#include <optional>
#include <string>
#include <string_view>

#include "meanlab/errors.hpp"
#include "meanlab/real.hpp"

namespace meanlab {

template <class Real> class BasicPair {
public:
    BasicPair(Real a, Real b) : a_(a), b_(b)
    {
        if (!(a > 0) || !(b > 0) || !num::isfinite(a) || !num::isfinite(b))
            throw DomainError("means need two positive finite arguments");
    }

    Real a() const noexcept { return a_; }
    Real b() const noexcept { return b_; }
    Real hi() const noexcept { return a_ >= b_ ? a_ : b_; }
    Real lo() const noexcept { return a_ >= b_ ? b_ : a_; }
    /// hi - lo; exact whenever lo >= hi/2.
    Real spread() const noexcept { return hi() - lo(); }
    /// (hi - lo)/(hi + lo), in [0, 1).
    Real t() const noexcept { return spread() / (hi() + lo()); }
    bool diagonal() const noexcept { return a_ == b_; }

private:
    Real a_;
    Real b_;
};

using PositivePair = BasicPair<double>;
using QuadPair = BasicPair<Quad>;

template <class Real> struct BasicParamPoint {
    Real x;  ///< arcsin((hi - lo)/(hi + lo))
    Real y;  ///< log(hi/lo)/2
};

using ParamPoint = BasicParamPoint<double>;

enum class MeanSymbol { A, G, H, L, I, P, X, Y, PowerMean, Heronian };

inline constexpr MeanSymbol kFixedMeans[] = {MeanSymbol::A, MeanSymbol::G, MeanSymbol::H,
                                             MeanSymbol::L, MeanSymbol::I, MeanSymbol::P,
                                             MeanSymbol::X, MeanSymbol::Y};

struct MeanKind {
    MeanSymbol symbol = MeanSymbol::A;
    double exponent = 0;  ///< only read for PowerMean / Heronian

    static MeanKind fixed(MeanSymbol s) { return {s, 0}; }
    static MeanKind power_mean(double p) { return {MeanSymbol::PowerMean, p}; }
    static MeanKind heronian(double p) { return {MeanSymbol::Heronian, p}; }

    bool parametric() const noexcept
    {
        return symbol == MeanSymbol::PowerMean || symbol == MeanSymbol::Heronian;
    }
};

/// "A", "G", ..., "Mp", "Hp".
std::string_view symbol_name(MeanSymbol s);
std::optional<MeanSymbol> symbol_from_name(std::string_view name);
std::string to_string(const MeanKind& kind);

struct MeanOptions {
    /// Below this |t| the series forms replace the direct ones.
    double series_threshold = 1e-4;
};

/// A, G or H; PreconditionError for any other symbol.
template <class Real> Real basic_mean(const BasicPair<Real>& pair, MeanSymbol kind);

template <class Real> Real logarithmic_mean(const BasicPair<Real>& pair, const MeanOptions& opts = {});
template <class Real> Real identric_mean(const BasicPair<Real>& pair, const MeanOptions& opts = {});
template <class Real> Real seiffert_mean(const BasicPair<Real>& pair, const MeanOptions& opts = {});
template <class Real> Real x_mean(const BasicPair<Real>& pair, const MeanOptions& opts = {});
template <class Real> Real y_mean(const BasicPair<Real>& pair, const MeanOptions& opts = {});

/// M_p; the geometric mean at p = 0 and a second-order log-space limit for |p| < 1e-8.
template <class Real>
Real power_mean(const BasicPair<Real>& pair, Real p, const MeanOptions& opts = {});

/// H_p, same conventions as power_mean.
template <class Real>
Real heronian_mean(const BasicPair<Real>& pair, Real p, const MeanOptions& opts = {});

/// DegeneratePairError when a == b.
template <class Real> BasicParamPoint<Real> param_point(const BasicPair<Real>& pair);

template <class Real>
Real evaluate(const BasicPair<Real>& pair, MeanSymbol symbol, Real exponent = 0,
              const MeanOptions& opts = {});

inline double evaluate(const PositivePair& pair, const MeanKind& kind, const MeanOptions& opts = {})
{
    return evaluate<double>(pair, kind.symbol, kind.exponent, opts);
}

/// Independent closed forms used to cross-check the main evaluation paths.
/// "direct" routes follow the textbook definitions (rearranged only to avoid
/// overflow and 0/0); "param" routes go through x and y.
namespace route {
template <class Real> Real logarithmic_direct(const BasicPair<Real>& pair);
template <class Real> Real logarithmic_param(const BasicPair<Real>& pair);
template <class Real> Real identric_direct(const BasicPair<Real>& pair);
template <class Real> Real identric_param(const BasicPair<Real>& pair);
template <class Real> Real seiffert_direct(const BasicPair<Real>& pair);
template <class Real> Real seiffert_param(const BasicPair<Real>& pair);
template <class Real> Real x_direct(const BasicPair<Real>& pair);
template <class Real> Real x_param(const BasicPair<Real>& pair);
template <class Real> Real y_direct(const BasicPair<Real>& pair);
template <class Real> Real y_param(const BasicPair<Real>& pair);
}  // namespace route

struct MeanVector {
    double a = 0;
    double b = 0;
    double A = 0, G = 0, H = 0, L = 0, I = 0, P = 0, X = 0, Y = 0;
    double power_exponent = 0;
    double power_mean = 0;
    double heronian_exponent = 0;
    double heronian = 0;
    std::optional<ParamPoint> param;  ///< empty on the diagonal

    double operator[](MeanSymbol s) const;
};

MeanVector evaluate_all(const PositivePair& pair, double power_exponent = 1.0 / 3.0,
                        double heronian_exponent = 0.5, const MeanOptions& opts = {});

#define MEANLAB_DECLARE_MEANS(Real)                                                                \
    extern template Real basic_mean<Real>(const BasicPair<Real>&, MeanSymbol);                      \
    extern template Real logarithmic_mean<Real>(const BasicPair<Real>&, const MeanOptions&);        \
    extern template Real identric_mean<Real>(const BasicPair<Real>&, const MeanOptions&);           \
    extern template Real seiffert_mean<Real>(const BasicPair<Real>&, const MeanOptions&);           \
    extern template Real x_mean<Real>(const BasicPair<Real>&, const MeanOptions&);                  \
    extern template Real y_mean<Real>(const BasicPair<Real>&, const MeanOptions&);                  \
    extern template Real power_mean<Real>(const BasicPair<Real>&, Real, const MeanOptions&);        \
    extern template Real heronian_mean<Real>(const BasicPair<Real>&, Real, const MeanOptions&);     \
    extern template BasicParamPoint<Real> param_point<Real>(const BasicPair<Real>&);                \
    extern template Real evaluate<Real>(const BasicPair<Real>&, MeanSymbol, Real, const MeanOptions&);

MEANLAB_DECLARE_MEANS(double)
MEANLAB_DECLARE_MEANS(Quad)
#undef MEANLAB_DECLARE_MEANS

}  // namespace meanlab
