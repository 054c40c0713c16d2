#include "meanlab/search.hpp"

#include <cmath>
#include <cstdio>
#include <limits>

#include "meanlab/errors.hpp"
#include "meanlab/parallel.hpp"
#include "meanlab/ratio_functions.hpp"

namespace meanlab {

namespace {

constexpr double kReferenceA = 4;
constexpr double kReferenceB = 1;

double min_over(const std::vector<double>& m, const std::vector<std::size_t>& links)
{
    double out = std::numeric_limits<double>::infinity();
    for (std::size_t k : links)
        out = std::min(out, m[k]);
    return out;
}

InequalityChain bracket_chain(const MeanExpr& target, double s, BracketSide side)
{
    char buf[64];
    std::snprintf(buf, sizeof buf, "Mp[%.17g]", s);
    InequalityChain c;
    c.id = "bracket";
    const MeanExpr m = MeanExpr::parse(buf);
    if (side == BracketSide::Lower)
        c.members = {m, target};
    else
        c.members = {target, m};
    c.collapses = {true};
    return c;
}

}  // namespace

std::string_view to_string(TightenDirection d)
{
    return d == TightenDirection::TightenUpper ? "tighten_upper" : "tighten_lower";
}

std::string_view to_string(BracketSide s) { return s == BracketSide::Lower ? "lower" : "upper"; }

SharpnessOutcome sharpness_probe(std::string_view chain_id, std::string_view constant,
                                 TightenDirection direction, double epsilon, const GridSpec& grid,
                                 const VerifyOptions& opts)
{
    if (!(epsilon > 0))
        throw PreconditionError("sharpness epsilon must be positive");
    const InequalityChain& chain = find_chain(chain_id);
    named_constant(constant);

    SharpnessOutcome out;
    out.chain_id = chain.id;
    out.constant = std::string(constant);
    out.direction = direction;
    out.epsilon = epsilon;
    for (std::size_t k = 0; k < chain.link_count(); ++k) {
        const MeanExpr& side =
            direction == TightenDirection::TightenUpper ? chain.members[k + 1] : chain.members[k];
        if (side.references(constant))
            out.links.push_back(k);
    }
    if (out.links.empty())
        throw PreconditionError("chain " + chain.id + " has no " + std::string(to_string(direction)) +
                                " bound using '" + std::string(constant) + "'");

    const Quad base = named_constant_quad(constant);
    auto shifted = [&](double sign) {
        VerifyOptions o = opts;
        o.env.set(std::string(constant), base + static_cast<Quad>(sign * epsilon));
        return o;
    };
    const VerifyOptions plus = shifted(1);
    const VerifyOptions minus = shifted(-1);
    const double m_plus = min_over(link_margins(chain, kReferenceA, kReferenceB, plus), out.links);
    const double m_minus = min_over(link_margins(chain, kReferenceA, kReferenceB, minus), out.links);
    const bool use_plus = m_plus <= m_minus;
    out.delta = use_plus ? epsilon : -epsilon;
    const VerifyOptions& probe = use_plus ? plus : minus;

    const ChainReport rep = verify_chain_at(chain, grid.refined_ratios(), grid.scale, probe);
    out.points = rep.points;
    out.margin = std::numeric_limits<double>::infinity();
    for (std::size_t k : out.links) {
        const LinkReport& l = rep.links[k];
        if (l.min_margin < out.margin) {
            out.margin = l.min_margin;
            out.ratio = l.argmin_ratio;
            out.link = k;
        }
    }
    out.violation_found = out.margin <= -probe.guard;
    return out;
}

BracketResult bracket_best_exponent(const MeanExpr& target, BracketSide side, double tolerance,
                                    const BracketOptions& opts)
{
    if (!(tolerance > 0))
        throw PreconditionError("bracket tolerance must be positive");
    if (!(opts.step > 0) || !(opts.s_max > opts.s_min))
        throw PreconditionError("bracket scan needs s_min < s_max and step > 0");
    const std::vector<double> ratios = opts.grid.refined_ratios();
    auto feasible = [&](double s) {
        const ChainReport rep =
            verify_chain_at(bracket_chain(target, s, side), ratios, opts.grid.scale, opts.verify);
        return rep.eval_errors == 0 && rep.links[0].violations == 0;
    };

    const auto steps = static_cast<int>(std::llround((opts.s_max - opts.s_min) / opts.step));
    std::vector<double> s(steps + 1);
    std::vector<bool> ok(steps + 1);
    for (int i = 0; i <= steps; ++i) {
        s[i] = opts.s_min + opts.step * i;
        ok[i] = feasible(s[i]);
    }
    // Lower side: feasible for small s. Upper side: feasible for large s.
    const bool leading = side == BracketSide::Lower;
    int switches = 0;
    int at = -1;
    for (int i = 1; i <= steps; ++i)
        if (ok[i] != ok[i - 1]) {
            ++switches;
            at = i;
        }
    if (switches != 1 || ok[0] != leading)
        throw NonMonotonePredicateError(
            "feasibility of " + std::string(to_string(side)) + " exponent for '" + target.to_string() +
            "' does not switch exactly once on the scan (" + std::to_string(switches) + " switches)");

    double good = leading ? s[at - 1] : s[at];
    double bad = leading ? s[at] : s[at - 1];
    BracketResult out;
    out.side = side;
    while (std::fabs(good - bad) > tolerance) {
        const double mid = 0.5 * (good + bad);
        (feasible(mid) ? good : bad) = mid;
        ++out.bisections;
    }
    out.estimate = good;
    out.lo = std::min(good, bad);
    out.hi = std::max(good, bad);
    return out;
}

Quad conjecture_margin(double a, double b, const MeanOptions& opts)
{
    MeanCache<Quad> c(QuadPair(a, b), opts);
    return c.get(MeanSymbol::P, 0) * c.get(MeanSymbol::X, 0) -
           c.get(MeanSymbol::I, 0) * c.get(MeanSymbol::L, 0);
}

ConjectureReport conjecture_scan(const GridSpec& grid, const MeanOptions& opts)
{
    const std::vector<double> ratios = grid.ratios();
    struct Point {
        double diff = 0;
        double rel = 0;
    };
    std::vector<Point> pts(ratios.size());
    parallel_for(ratios.size(), [&](std::size_t i) {
        MeanCache<Quad> c(QuadPair(grid.scale * ratios[i], grid.scale), opts);
        const Quad px = c.get(MeanSymbol::P, 0) * c.get(MeanSymbol::X, 0);
        const Quad d = px - c.get(MeanSymbol::I, 0) * c.get(MeanSymbol::L, 0);
        pts[i] = {static_cast<double>(d), static_cast<double>(d / px)};
    });

    ConjectureReport rep;
    rep.points = ratios.size();
    rep.r_min = grid.r_min;
    rep.r_max = grid.r_max;
    rep.scale = grid.scale;
    rep.resolution_floor = 64 * static_cast<double>(num::epsilon<Quad>());
    rep.min_margin = rep.min_relative = rep.resolved_min_relative =
        std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < pts.size(); ++i) {
        const Point& p = pts[i];
        if (p.diff < rep.min_margin) {
            rep.min_margin = p.diff;
            rep.argmin_ratio = ratios[i];
        }
        if (p.rel < rep.min_relative) {
            rep.min_relative = p.rel;
            rep.argmin_relative_ratio = ratios[i];
        }
        if (p.diff < 0)
            ++rep.negative_points;
        if (std::fabs(p.rel) <= rep.resolution_floor) {
            ++rep.unresolved_points;
        } else if (p.rel < rep.resolved_min_relative) {
            rep.resolved_min_relative = p.rel;
            rep.resolved_argmin_ratio = ratios[i];
        }
    }
    rep.note = "numerical evidence only; the sign at points within the binary128 resolution "
               "floor is not reliable, and no finite grid settles the statement";
    return rep;
}

}  // namespace meanlab
