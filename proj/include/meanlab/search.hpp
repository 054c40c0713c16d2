#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "meanlab/chains.hpp"

namespace meanlab {

enum class TightenDirection { TightenUpper, TightenLower };

std::string_view to_string(TightenDirection d);

struct SharpnessOutcome {
    std::string chain_id;
    std::string constant;
    TightenDirection direction = TightenDirection::TightenUpper;
    double epsilon = 0;
    double delta = 0;  ///< signed shift applied to the constant
    std::vector<std::size_t> links;  ///< links whose bound uses the constant
    bool violation_found = false;
    double ratio = 0;   ///< a/b of the most negative margin
    double margin = 0;
    std::size_t link = 0;
    std::size_t points = 0;
};

/// Re-evaluates the chain with the constant moved by epsilon towards the
/// inequality it bounds and searches the refined grid for a margin <= -guard.
/// The sign of the shift is the one that shrinks the relevant margins at (4, 1).
/// UnknownChainError, RangeError for an unknown constant, PreconditionError if
/// no link on that side uses it.
SharpnessOutcome sharpness_probe(std::string_view chain_id, std::string_view constant,
                                 TightenDirection direction, double epsilon,
                                 const GridSpec& grid = {}, const VerifyOptions& opts = {});

enum class BracketSide { Lower, Upper };

std::string_view to_string(BracketSide s);

struct BracketOptions {
    GridSpec grid;
    VerifyOptions verify;
    double s_min = -8;
    double s_max = 8;
    double step = 0.25;
};

struct BracketResult {
    BracketSide side = BracketSide::Lower;
    double estimate = 0;  ///< feasible end of [lo, hi]
    double lo = 0;
    double hi = 0;
    int bisections = 0;
};

/// Lower: largest s with M_s < target on the refined grid. Upper: smallest s
/// with target < M_s. Feasible means every margin > -guard. The coarse scan
/// over [s_min, s_max] must switch feasibility exactly once, otherwise
/// NonMonotonePredicateError. PreconditionError for tolerance <= 0.
BracketResult bracket_best_exponent(const MeanExpr& target, BracketSide side, double tolerance,
                                    const BracketOptions& opts = {});

/// P*X - I*L at one pair, in binary128.
Quad conjecture_margin(double a, double b, const MeanOptions& opts = {});

struct ConjectureReport {
    std::string statement = "P*X > I*L";
    std::string status = "unresolved";
    std::size_t points = 0;
    double min_margin = 0;  ///< min of P*X - I*L
    double argmin_ratio = 0;
    double min_relative = 0;  ///< min of (P*X - I*L)/(P*X)
    double argmin_relative_ratio = 0;
    std::size_t negative_points = 0;
    /// Points where |P*X - I*L| is within the binary128 resolution of P*X.
    std::size_t unresolved_points = 0;
    double resolution_floor = 0;  ///< relative
    /// Minimum relative margin over the resolved points only.
    double resolved_min_relative = 0;
    double resolved_argmin_ratio = 0;
    std::string note;
    double r_min = 0;
    double r_max = 0;
    double scale = 1;
};

ConjectureReport conjecture_scan(const GridSpec& grid, const MeanOptions& opts = {});

}  // namespace meanlab
