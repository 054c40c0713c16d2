#include "meanlab/extrapolation.hpp"

#include <cmath>
#include <string>

#include "meanlab/errors.hpp"

namespace meanlab {

RichardsonResult richardson(std::span<const double> samples, int power, int levels)
{
    if (power < 1 || levels < 0)
        throw PreconditionError("Richardson needs power >= 1 and levels >= 0");
    if (samples.size() < static_cast<std::size_t>(levels) + 1)
        throw PreconditionError("Richardson needs at least levels + 1 samples");

    // Row k holds the extrapolants built from samples 0..k; keep only the previous row.
    std::vector<double> prev;
    RichardsonResult out;
    for (std::size_t k = 0; k < samples.size(); ++k) {
        std::vector<double> row(std::min<std::size_t>(k, static_cast<std::size_t>(levels)) + 1);
        row[0] = samples[k];
        double factor = 1;
        for (std::size_t j = 1; j < row.size(); ++j) {
            factor *= std::ldexp(1.0, power);
            row[j] = row[j - 1] + (row[j - 1] - prev[j - 1]) / (factor - 1);
        }
        if (row.size() == static_cast<std::size_t>(levels) + 1) {
            if (!out.diagonal.empty())
                out.last_change = std::fabs(row.back() - out.diagonal.back());
            out.diagonal.push_back(row.back());
        }
        prev = std::move(row);
    }
    out.estimate = out.diagonal.back();
    return out;
}

RichardsonResult extrapolate_limit(const std::function<double(double)>& f, double h0, int count,
                                   int power, int levels, double settle_tol)
{
    std::vector<double> samples;
    samples.reserve(static_cast<std::size_t>(count));
    for (int k = 0; k < count; ++k)
        samples.push_back(f(std::ldexp(h0, -k)));
    for (double v : samples)
        if (!std::isfinite(v))
            throw NumericalInstabilityError("non-finite sample in limit sequence");

    RichardsonResult r = richardson(samples, power, levels);
    const auto& d = r.diagonal;
    if (d.size() >= 2 && !(r.last_change <= settle_tol * std::max(1.0, std::fabs(r.estimate))))
        throw NumericalInstabilityError("extrapolated limit did not settle: last change " +
                                        std::to_string(r.last_change));
    if (d.size() >= 4) {
        // Changes must not grow steadily at the tail of the sequence.
        const double c1 = std::fabs(d[d.size() - 3] - d[d.size() - 4]);
        const double c2 = std::fabs(d[d.size() - 2] - d[d.size() - 3]);
        const double c3 = std::fabs(d[d.size() - 1] - d[d.size() - 2]);
        const double floor = 64 * 0x1p-52 * std::max(1.0, std::fabs(r.estimate));
        if (c3 > floor && c2 > c1 && c3 > c2)
            throw NumericalInstabilityError("extrapolated estimates diverge");
    }
    return r;
}

}  // namespace meanlab
