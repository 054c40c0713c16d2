#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "meanlab/expr.hpp"

namespace meanlab {

/// members[0] < members[1] < ... at every pair off the diagonal.
struct InequalityChain {
    std::string id;
    std::vector<MeanExpr> members;
    std::string citation;
    std::string domain_note;
    /// Per link: both sides agree at a = b. False for links that stay strict there.
    std::vector<bool> collapses;
    /// Member values at the diagonal (1, 1), or next to it where 0/0 occurs.
    std::vector<double> diagonal_values;

    std::size_t link_count() const noexcept { return members.empty() ? 0 : members.size() - 1; }
    std::string to_string() const;
};

/// Parses the members and checks the diagonal: each link either collapses or
/// is already strict at a = b. PreconditionError for a reversed link, fewer
/// than two members, or members that cannot be evaluated near the diagonal.
InequalityChain make_chain(std::string id, const std::vector<std::string>& members,
                           std::string citation, std::string domain_note = {});

/// The registry, in a fixed order.
const std::vector<InequalityChain>& builtin_suite();
/// UnknownChainError if absent.
const InequalityChain& find_chain(std::string_view id);

/// b = 1 (times scale), a = scale * r with r log-spaced in [1 + r_min, r_max].
struct GridSpec {
    double r_min = 1e-6;
    double r_max = 1e8;
    std::size_t n = 10000;
    double scale = 1;

    /// PreconditionError unless n >= 2, r_min > 0, r_max > 1 + r_min, scale > 0.
    void validate() const;
    /// Strictly increasing ratios a/b.
    std::vector<double> ratios() const;
    /// ratios() plus 100 points with r - 1 log-spaced in [1e-12, 1e-6] and 100
    /// log-spaced in [1e8, 1e12], merged and deduplicated.
    std::vector<double> refined_ratios() const;
};

inline constexpr double kDefaultGuard = 1e-13;

struct VerifyOptions {
    double guard = kDefaultGuard;
    MeanOptions means;
    /// Points with t below this, or a double margin below quad_margin, are redone in binary128.
    double quad_t = 1e-2;
    double quad_margin = 1e-8;
    Environment env;
};

struct LinkReport {
    std::string lhs;
    std::string rhs;
    bool collapses = true;
    double min_margin = 0;     ///< min over the grid of (rhs - lhs)/|rhs|
    double argmin_ratio = 0;   ///< a/b at the minimum (first index on ties)
    std::size_t argmin_index = 0;
    std::size_t below_guard = 0;  ///< -guard < margin <= guard
    std::size_t violations = 0;   ///< margin <= -guard
};

struct ChainReport {
    std::string chain_id;
    std::string citation;
    std::vector<LinkReport> links;
    bool pass = false;
    std::size_t worst_link = 0;
    double min_margin = 0;
    double argmin_ratio = 0;
    std::size_t points = 0;
    std::size_t quad_points = 0;
    std::size_t eval_errors = 0;
    std::optional<double> first_error_ratio;
    std::string first_error;
    // Grid echo.
    double r_min = 0;
    double r_max = 0;
    double scale = 1;
    bool refined = false;
};

/// Relative margins of every link at one pair. EvaluationError propagates.
std::vector<double> link_margins(const InequalityChain& chain, double a, double b,
                                 const VerifyOptions& opts, bool* used_quad = nullptr);

ChainReport verify_chain(const InequalityChain& chain, const GridSpec& grid,
                         const VerifyOptions& opts = {});

/// Same, over an explicit ratio list (b = scale).
ChainReport verify_chain_at(const InequalityChain& chain, const std::vector<double>& ratios,
                            double scale, const VerifyOptions& opts = {});

}  // namespace meanlab
