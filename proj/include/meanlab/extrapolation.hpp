#pragma once

#include <functional>
#include <span>
#include <vector>

namespace meanlab {

/// Richardson extrapolation to h -> 0 from samples f(h_k), h_k = h_0 / 2^k.
///
/// The error model is f(h) = f(0) + c_1 h^p + c_2 h^{2p} + ... with p the
/// leading power (p = 2 for even functions). `levels` columns of the
/// Neville table are built; the returned estimate is the deepest entry on the
/// last row.
struct RichardsonResult {
    double estimate = 0;
    /// |deepest - same column one row up|, the a-posteriori error indicator.
    double last_change = 0;
    std::vector<double> diagonal;  ///< deepest-column entry for each row that has one
};

RichardsonResult richardson(std::span<const double> samples, int power, int levels);

/// Samples f at h_0 / 2^k for k = 0..count-1 and extrapolates. Throws
/// NumericalInstabilityError when the deepest column has not settled below
/// `settle_tol` or its successive changes grow over the last rows.
RichardsonResult extrapolate_limit(const std::function<double(double)>& f, double h0, int count,
                                   int power, int levels, double settle_tol);

}  // namespace meanlab
