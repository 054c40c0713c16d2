// meanlab: command-line front end.
//
// Exit codes: 0 all checks passed, 1 a mathematical check failed, 2 usage or I/O error.

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "meanlab/errors.hpp"
#include "meanlab/report.hpp"

namespace {

using namespace meanlab;

constexpr int kExitPass = 0;
constexpr int kExitFail = 1;
constexpr int kExitUsage = 2;

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::string fmt(double v)
{
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

void write_output(const std::string& path, const std::string& text)
{
    if (path.empty() || path == "-") {
        std::cout << text;
        std::cout.flush();
        return;
    }
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out)
        throw UsageError("cannot open '" + path + "' for writing");
    out << text;
    out.close();
    if (!out)
        throw UsageError("failed writing '" + path + "'");
}

struct GridFlags {
    double grid_min = GridSpec{}.r_min;
    double grid_max = GridSpec{}.r_max;
    std::size_t points = GridSpec{}.n;

    void add(CLI::App* app)
    {
        app->add_option("--grid-min", grid_min, "smallest offset r_min; ratios start at 1 + r_min");
        app->add_option("--grid-max", grid_max, "largest ratio a/b");
        app->add_option("--points", points, "number of log-spaced ratios");
    }

    GridSpec spec() const
    {
        GridSpec g;
        g.r_min = grid_min;
        g.r_max = grid_max;
        g.n = points;
        return g;
    }
};

int cmd_eval(double a, double b, const std::string& what, double series_threshold)
{
    MeanOptions opts;
    opts.series_threshold = series_threshold;
    const MeanExpr e = MeanExpr::parse(what);
    std::cout << fmt(evaluate(e, PositivePair(a, b), Environment{}, opts)) << "\n";
    return kExitPass;
}

int cmd_verify(const RunConfig& cfg, const std::string& out)
{
    const SuiteReport rep = run_suite(cfg);
    const std::string doc = to_json(rep);
    write_output(out, doc);
    if (!out.empty() && out != "-") {
        std::size_t passed = 0;
        for (const auto& c : rep.chains)
            passed += c.pass ? 1 : 0;
        std::size_t cpass = 0;
        for (const auto& c : rep.constants)
            cpass += c.pass ? 1 : 0;
        std::cout << "chains " << passed << "/" << rep.chains.size() << " pass, constants " << cpass
                  << "/" << rep.constants.size() << " pass, overall "
                  << (rep.overall_pass ? "PASS" : "FAIL") << "\n";
    }
    return rep.overall_pass ? kExitPass : kExitFail;
}

int cmd_limit(const std::string& function, const std::string& endpoint)
{
    std::vector<RatioFnId> fns;
    if (function == "all") {
        fns.assign(std::begin(kAllRatioFns), std::end(kAllRatioFns));
    } else if (auto id = ratio_fn_from_name(function)) {
        fns.push_back(*id);
    } else {
        throw UsageError("unknown ratio function '" + function + "'");
    }
    std::vector<Endpoint> ends;
    if (endpoint == "zero" || endpoint == "both")
        ends.push_back(Endpoint::Zero);
    if (endpoint == "half_pi" || endpoint == "both")
        ends.push_back(Endpoint::HalfPi);
    if (ends.empty())
        throw UsageError("endpoint must be zero, half_pi or both");

    bool ok = true;
    for (RatioFnId id : fns) {
        const RatioFnInfo& info = ratio_fn_info(id);
        for (Endpoint e : ends) {
            const LimitEstimate est = endpoint_limit(id, e);
            const double expected = e == Endpoint::Zero ? info.limit_zero : info.limit_half_pi;
            const double err = std::fabs(est.estimate - expected);
            ok = ok && err < kConstantTolerance;
            std::cout << to_string(id) << " " << to_string(e) << " " << fmt(est.estimate)
                      << " expected " << fmt(expected) << " abs_error " << fmt(err) << "\n";
        }
    }
    return ok ? kExitPass : kExitFail;
}

int cmd_emit(const std::string& target, std::size_t samples, const GridFlags& grid,
             const std::string& out)
{
    if (samples < 2)
        throw UsageError("emit needs --samples >= 2");
    std::ostringstream os;
    if (auto id = ratio_fn_from_name(target)) {
        const double lo = kMonotoneInset;
        const double hi = 1.57079632679489661923 - kMonotoneInset;
        os << "x,value\n";
        for (std::size_t i = 0; i < samples; ++i) {
            const double x = lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(samples - 1);
            os << fmt(x) << "," << fmt(ratio_eval(*id, x)) << "\n";
        }
    } else {
        const MeanExpr e = MeanExpr::parse(target);
        GridSpec g = grid.spec();
        g.n = samples;
        os << "ratio,value\n";
        for (double r : g.ratios())
            os << fmt(r) << "," << fmt(evaluate(e, PositivePair(r, 1))) << "\n";
    }
    write_output(out, os.str());
    return kExitPass;
}

int cmd_bracket(const std::string& target, double tolerance, const std::string& side,
                const GridFlags& grid, double guard)
{
    const MeanExpr e = MeanExpr::parse(target);
    if (!(tolerance > 0))
        throw UsageError("--tolerance must be positive");
    BracketOptions opts;
    opts.grid = grid.spec();
    opts.grid.validate();
    opts.verify.guard = guard;
    std::vector<BracketSide> sides;
    if (side == "lower" || side == "both")
        sides.push_back(BracketSide::Lower);
    if (side == "upper" || side == "both")
        sides.push_back(BracketSide::Upper);
    if (sides.empty())
        throw UsageError("--side must be lower, upper or both");
    for (BracketSide s : sides) {
        const BracketResult r = bracket_best_exponent(e, s, tolerance, opts);
        std::cout << to_string(s) << " " << fmt(r.estimate) << " bracket [" << fmt(r.lo) << ", "
                  << fmt(r.hi) << "] width " << fmt(r.hi - r.lo) << "\n";
    }
    return kExitPass;
}

int cmd_conjecture(const GridFlags& grid, const std::string& out)
{
    const ConjectureReport rep = conjecture_scan(grid.spec());
    write_output(out, to_json(rep));
    if (!out.empty() && out != "-")
        std::cout << "min(P*X - I*L) = " << fmt(rep.min_margin) << " at a/b = " << fmt(rep.argmin_ratio)
                  << " (" << rep.status << ")\n";
    return kExitPass;
}

std::vector<std::string> split_ids(const std::string& s)
{
    std::vector<std::string> out;
    std::string cur;
    for (char c : s) {
        if (c == ',') {
            if (!cur.empty())
                out.push_back(cur);
            cur.clear();
        } else if (c != ' ') {
            cur += c;
        }
    }
    if (!cur.empty())
        out.push_back(cur);
    return out;
}

}  // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Numerical laboratory for bivariate means and their inequalities"};
    app.require_subcommand(1);
    app.set_version_flag("--version", std::string(kToolVersion));

    double a = 0, b = 0;
    double series_threshold = MeanOptions{}.series_threshold;
    std::string what;
    auto* eval = app.add_subcommand("eval", "evaluate a mean or an expression at (a, b)");
    eval->add_option("--a", a, "first argument")->required();
    eval->add_option("--b", b, "second argument")->required();
    eval->add_option("--series-threshold", series_threshold, "|t| below which series forms are used");
    eval->add_option("what", what, "mean symbol or expression, e.g. X or \"(P+X)/2\"")->required();

    GridFlags grid;
    double guard = kDefaultGuard;
    std::string out;
    std::string chains;
    bool no_sharpness = false;
    auto* verify = app.add_subcommand("verify", "run the chain suite and write the JSON report");
    grid.add(verify);
    verify->add_option("--guard", guard, "relative margin guard");
    verify->add_option("--series-threshold", series_threshold, "|t| below which series forms are used");
    verify->add_option("--chains", chains, "comma-separated chain ids (default: all)");
    verify->add_option("--out", out, "report path (default: stdout)");
    verify->add_flag("--no-sharpness", no_sharpness, "skip the sharpness probes");

    std::string function;
    std::string endpoint = "both";
    auto* limit = app.add_subcommand("limit", "endpoint limits of the ratio functions");
    limit->add_option("function", function, "ratio function id or 'all'")->required();
    limit->add_option("--endpoint", endpoint, "zero, half_pi or both");

    std::string target;
    std::size_t samples = 1000;
    auto* emit = app.add_subcommand("emit", "write a two-column CSV table");
    emit->add_option("target", target, "ratio function id or expression over the ratio grid")->required();
    emit->add_option("samples_pos", samples, "number of rows");
    emit->add_option("--samples", samples, "number of rows");
    emit->add_option("--out", out, "output path (default: stdout)");
    grid.add(emit);

    double tolerance = 1e-4;
    std::string side = "both";
    auto* bracket = app.add_subcommand("bracket", "best power-mean exponents around a target");
    bracket->add_option("target", target, "expression")->required();
    bracket->add_option("tolerance_pos", tolerance, "bracket width");
    bracket->add_option("--tolerance", tolerance, "bracket width");
    bracket->add_option("--side", side, "lower, upper or both");
    bracket->add_option("--guard", guard, "relative margin guard");
    grid.add(bracket);

    auto* conj = app.add_subcommand("conjecture", "scan P*X - I*L over the grid");
    grid.add(conj);
    conj->add_option("--out", out, "report path (default: stdout)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? kExitPass : kExitUsage;
    }

    try {
        if (*eval)
            return cmd_eval(a, b, what, series_threshold);
        if (*verify) {
            RunConfig cfg;
            cfg.grid = grid.spec();
            cfg.guard = guard;
            cfg.series_threshold = series_threshold;
            cfg.chains = split_ids(chains);
            cfg.sharpness = !no_sharpness;
            return cmd_verify(cfg, out);
        }
        if (*limit)
            return cmd_limit(function, endpoint);
        if (*emit)
            return cmd_emit(target, samples, grid, out);
        if (*bracket)
            return cmd_bracket(target, tolerance, side, grid, guard);
        if (*conj)
            return cmd_conjecture(grid, out);
    } catch (const NonMonotonePredicateError& e) {
        std::cerr << "meanlab: " << e.what() << "\n";
        return kExitFail;
    } catch (const NumericalInstabilityError& e) {
        std::cerr << "meanlab: " << e.what() << "\n";
        return kExitFail;
    } catch (const std::exception& e) {
        std::cerr << "meanlab: " << e.what() << "\n";
        return kExitUsage;
    }
    return kExitUsage;
}
