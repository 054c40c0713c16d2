#include "meanlab/chains.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "meanlab/errors.hpp"
#include "meanlab/parallel.hpp"

namespace meanlab {

namespace {

struct ChainSource {
    const char* id;
    std::vector<std::string> members;
    const char* citation;
    const char* note;
};

// Members in increasing order.
const std::vector<ChainSource>& sources()
{
    static const std::vector<ChainSource> table = {
        {"T11-1", {"G", "A*G/P", "X", "A*P/(2*P-G)", "P"}, "X between A*G/P and A*P/(2*P-G)", ""},
        {"T11-2", {"H", "L*G/A", "Y", "A*G/(2*A-L)", "G"}, "Y between L*G/A and A*G/(2*A-L)", ""},
        {"T11-3", {"1", "L^2/(I*G)", "L*exp(G/L-1)/G", "P*X/(A*G)"}, "ratio chain above 1", ""},
        {"T11-4", {"H", "G^2/I", "L*G/A", "G*(A+L)/(3*A-L)", "Y"}, "lower bounds of Y", ""},
        {"T12-1", {"(G+H)/e", "Y", "(G+H)/2"}, "Y against G and H", ""},
        {"T12-2", {"G^2", "I*Y", "I*G", "L^2"}, "products with I",
         "first member taken as G^2 so that every member has degree 2"},
        {"T12-3", {"(G-Y)/(A-L)", "(Y+G)/(2*A)", "(3*G+H)/(4*A)", "1"}, "difference quotient of Y",
         "first member is 0/0 at a = b"},
        {"T12-4", {"L", "(2*G+A)/3", "X", "L(X, A)", "P", "(2*A+G)/3", "I"},
         "X against L, P and the nested L(X, A)", ""},
        {"T12-5", {"2*(1-A/P)", "log(X/A)", "(P/A)^2"}, "logarithm of X/A",
         "last link is strict at a = b"},
        {"E11", {"Mp[p_low]", "X", "Mp[q]"}, "X between power means", ""},
        {"E12", {"Hp[h_low]", "X", "Hp[h_high]"}, "X between Heronian means", ""},
        {"T21a", {"alpha*G+(1-alpha)*A", "X", "beta*G+(1-beta)*A"}, "X as a convex combination of G and A", ""},
        {"T21b", {"A+G-alpha1*P", "X", "A+G-beta1*P"}, "X against A + G - P", ""},
        {"R-ine1502a", {"X", "A*(1/e+(1-1/e)*G/P)"}, "X below the tangent bound", ""},
        {"R-ine1502b", {"Y", "G*(1/e+(1-1/e)*L/A)"}, "Y below the tangent bound", ""},
        {"T22", {"(A+G)/e", "X", "Mp[q]", "(L+I)/2", "(A+G)/2"}, "X between (A+G)/e and (A+G)/2", ""},
        {"R-2402c", {"L", "Mp[1/3]", "X", "Mp[q]", "(L+I)/2", "I", "Mp[2/3]"},
         "X inside the L, I, power mean ladder", "last link I < Mp[2/3] fails off the diagonal"},
        {"T23", {"A+G-P", "X", "P^2/A", "(A+G)/2"}, "X below P^2/A", ""},
        {"R-2402e",
         {"L", "(2*G+A)/3", "A+G-P", "X", "sqrt(P*X)", "(A+G)/2", "(P+X)/2", "P", "(2*A+G)/3", "I"},
         "long ladder from L to I", ""},
        {"R-P2", {"A*X", "(A^2*((A+G)/2)^4)^(1/3)", "P^2"}, "A*X below P^2", ""},
        {"T24", {"Mp[m_low]", "(P+X)/2", "Mp[k]"}, "(P+X)/2 between power means", ""},
        {"R-2402g", {"sqrt(A*G)", "sqrt(P*X)", "(A+G)/2"}, "geometric mean of P and X", ""},
        {"T25a", {"Mp[1/3]", "(2*G+A)/3", "X"}, "power mean below (2*G+A)/3", ""},
        {"T25b", {"Hp[1/2]", "(2*G+A)/3", "X"}, "Heronian mean below (2*G+A)/3", ""},
        {"T26", {"(A*X)^(1/alpha2)", "P", "(A*X^beta2)^(1/(1+beta2))"}, "P between weighted means of A and X", ""},
        {"C-AGe", {"(A+G)/e", "X", "(A+G)/2"}, "constants e and 2", ""},
        {"C27-1", {"A*G", "P*L", "P*X"}, "products with P", ""},
        {"C27-2", {"A*G", "P*L", "I*L"}, "products with L", ""},
        {"C-46-1", {"L", "(2*G+A)/3", "A*(P+G)/(3*P-G)", "X"}, "rational lower bound of X", ""},
        {"C-46-2", {"(P+G)/2", "X", "P^2/A"}, "X between (P+G)/2 and P^2/A", ""},
        {"C-2202a", {"I/L", "L/G", "1+G/H-I/G"}, "ratios of I, L, G, H", ""},
        {"R-ineq6", {"sqrt(I*G)", "L"}, "L above sqrt(I*G)", ""},
        {"R-0209f", {"sqrt(A*X)", "P", "A*(X/A)^log(pi/2)"}, "P between powers of X/A", ""},
        {"C-coro89", {"A/e", "pi_2e*P", "X", "P"}, "X against a multiple of P", ""},
        {"R-seiffert", {"(2/pi)*A", "P"}, "P above (2/pi)*A", ""},
        {"R-halfpi", {"((2/pi)*A+G)/2", "X"}, "X above ((2/pi)*A+G)/2", ""},
    };
    return table;
}

constexpr double kCollapseTol = 1e-6;

std::vector<double> log_spaced(double lo, double hi, std::size_t n)
{
    std::vector<double> out(n);
    const double l0 = std::log(lo);
    const double l1 = std::log(hi);
    for (std::size_t i = 0; i < n; ++i)
        out[i] = std::exp(l0 + (l1 - l0) * static_cast<double>(i) / static_cast<double>(n - 1));
    out.front() = lo;
    out.back() = hi;
    return out;
}

template <class Real>
std::vector<Real> member_values(const InequalityChain& chain, MeanCache<Real>& cache,
                                const Environment& env)
{
    std::vector<Real> v;
    v.reserve(chain.members.size());
    for (const auto& m : chain.members)
        v.push_back(evaluate(m, cache, env));
    return v;
}

template <class Real> std::vector<double> margins_of(const std::vector<Real>& v)
{
    std::vector<double> out(v.size() - 1);
    for (std::size_t i = 0; i + 1 < v.size(); ++i) {
        const Real r = v[i + 1];
        const Real l = v[i];
        const Real den = num::abs(r);
        out[i] = den == 0 ? (r > l ? std::numeric_limits<double>::infinity() : -std::numeric_limits<double>::infinity())
                          : static_cast<double>((r - l) / den);
    }
    return out;
}

}  // namespace

std::string InequalityChain::to_string() const
{
    std::string s;
    for (std::size_t i = 0; i < members.size(); ++i) {
        if (i)
            s += " < ";
        s += members[i].to_string();
    }
    return s;
}

InequalityChain make_chain(std::string id, const std::vector<std::string>& members,
                           std::string citation, std::string domain_note)
{
    if (members.size() < 2)
        throw PreconditionError("chain " + id + " needs at least two members");
    InequalityChain c;
    c.id = std::move(id);
    c.citation = std::move(citation);
    c.domain_note = std::move(domain_note);
    for (const auto& m : members)
        c.members.push_back(MeanExpr::parse(m));

    const Environment env;
    std::vector<double> values;
    try {
        MeanCache<double> cache(PositivePair(1, 1));
        values = member_values(c, cache, env);
    } catch (const EvaluationError&) {
        try {
            MeanCache<Quad> cache(QuadPair(1 + static_cast<Quad>(1e-12), 1));
            for (Quad v : member_values(c, cache, env))
                values.push_back(static_cast<double>(v));
        } catch (const EvaluationError& e) {
            throw PreconditionError("chain " + c.id + " cannot be evaluated near a = b: " + e.what());
        }
    }
    c.diagonal_values = values;
    for (std::size_t i = 0; i + 1 < values.size(); ++i) {
        const double l = values[i];
        const double r = values[i + 1];
        const bool equal = std::fabs(r - l) <= kCollapseTol * std::max(1.0, std::fabs(r));
        if (!equal && !(l < r))
            throw PreconditionError("chain " + c.id + " is reversed at a = b in link " +
                                    std::to_string(i));
        c.collapses.push_back(equal);
    }
    return c;
}

const std::vector<InequalityChain>& builtin_suite()
{
    static const std::vector<InequalityChain> suite = [] {
        std::vector<InequalityChain> out;
        for (const auto& s : sources())
            out.push_back(make_chain(s.id, s.members, s.citation, s.note));
        return out;
    }();
    return suite;
}

const InequalityChain& find_chain(std::string_view id)
{
    for (const auto& c : builtin_suite())
        if (c.id == id)
            return c;
    throw UnknownChainError("unknown chain id '" + std::string(id) + "'");
}

void GridSpec::validate() const
{
    if (n < 2)
        throw PreconditionError("grid needs n >= 2");
    if (!(r_min > 0) || !std::isfinite(r_min))
        throw PreconditionError("grid needs r_min > 0");
    if (!(r_max > 1 + r_min) || !std::isfinite(r_max))
        throw PreconditionError("grid needs r_max > 1 + r_min");
    if (!(scale > 0) || !std::isfinite(scale))
        throw PreconditionError("grid needs scale > 0");
}

std::vector<double> GridSpec::ratios() const
{
    validate();
    // Spacing is uniform in log(a/b); the low end keeps its full offset via log1p.
    std::vector<double> out(n);
    const double l0 = std::log1p(r_min);
    const double l1 = std::log(r_max);
    for (std::size_t i = 0; i < n; ++i)
        out[i] = std::exp(l0 + (l1 - l0) * static_cast<double>(i) / static_cast<double>(n - 1));
    out.front() = 1 + r_min;
    out.back() = r_max;
    return out;
}

std::vector<double> GridSpec::refined_ratios() const
{
    std::vector<double> out = ratios();
    for (double d : log_spaced(1e-12, 1e-6, 100))
        out.push_back(1 + d);
    for (double r : log_spaced(1e8, 1e12, 100))
        out.push_back(r);
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

std::vector<double> link_margins(const InequalityChain& chain, double a, double b,
                                 const VerifyOptions& opts, bool* used_quad)
{
    const PositivePair pair(a, b);
    bool quad = pair.t() < opts.quad_t;
    std::vector<double> m;
    if (!quad) {
        try {
            MeanCache<double> cache(pair, opts.means);
            m = margins_of(member_values(chain, cache, opts.env));
            for (double v : m)
                if (std::fabs(v) < opts.quad_margin)
                    quad = true;
        } catch (const EvaluationError&) {
            quad = true;
        }
    }
    if (quad) {
        MeanCache<Quad> cache(QuadPair(a, b), opts.means);
        m = margins_of(member_values(chain, cache, opts.env));
    }
    for (double v : m)
        if (std::isnan(v))
            throw EvaluationError("undefined margin", chain.to_string());
    if (used_quad)
        *used_quad = quad;
    return m;
}

ChainReport verify_chain_at(const InequalityChain& chain, const std::vector<double>& ratios,
                            double scale, const VerifyOptions& opts)
{
    if (ratios.empty())
        throw PreconditionError("empty ratio list");
    struct PointResult {
        std::vector<double> margins;
        bool quad = false;
        std::string error;
    };
    std::vector<PointResult> results(ratios.size());
    parallel_for(ratios.size(), [&](std::size_t i) {
        PointResult& r = results[i];
        try {
            r.margins = link_margins(chain, scale * ratios[i], scale, opts, &r.quad);
        } catch (const std::exception& e) {
            r.error = e.what();
        }
    });

    ChainReport rep;
    rep.chain_id = chain.id;
    rep.citation = chain.citation;
    rep.points = ratios.size();
    rep.r_min = ratios.front() - 1;
    rep.r_max = ratios.back();
    rep.scale = scale;
    const std::size_t nl = chain.link_count();
    rep.links.resize(nl);
    for (std::size_t k = 0; k < nl; ++k) {
        rep.links[k].lhs = chain.members[k].to_string();
        rep.links[k].rhs = chain.members[k + 1].to_string();
        rep.links[k].collapses = chain.collapses[k];
        rep.links[k].min_margin = std::numeric_limits<double>::infinity();
    }
    for (std::size_t i = 0; i < results.size(); ++i) {
        const PointResult& r = results[i];
        if (!r.error.empty()) {
            if (rep.eval_errors++ == 0) {
                rep.first_error = r.error;
                rep.first_error_ratio = ratios[i];
            }
            continue;
        }
        rep.quad_points += r.quad ? 1 : 0;
        for (std::size_t k = 0; k < nl; ++k) {
            LinkReport& l = rep.links[k];
            const double m = r.margins[k];
            if (m < l.min_margin) {
                l.min_margin = m;
                l.argmin_ratio = ratios[i];
                l.argmin_index = i;
            }
            if (!(m > -opts.guard))
                ++l.violations;
            else if (!(m > opts.guard))
                ++l.below_guard;
        }
    }

    rep.pass = rep.eval_errors == 0;
    rep.min_margin = std::numeric_limits<double>::infinity();
    for (std::size_t k = 0; k < nl; ++k) {
        const LinkReport& l = rep.links[k];
        if (l.violations || l.below_guard)
            rep.pass = false;
        if (k == 0 || l.min_margin < rep.min_margin) {
            rep.min_margin = l.min_margin;
            rep.argmin_ratio = l.argmin_ratio;
            rep.worst_link = k;
        }
    }
    return rep;
}

ChainReport verify_chain(const InequalityChain& chain, const GridSpec& grid, const VerifyOptions& opts)
{
    ChainReport rep = verify_chain_at(chain, grid.ratios(), grid.scale, opts);
    rep.r_min = grid.r_min;
    rep.r_max = grid.r_max;
    return rep;
}

}  // namespace meanlab
