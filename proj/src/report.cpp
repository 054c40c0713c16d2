#include "meanlab/report.hpp"

#include <cmath>
#include "json.hpp"

#include "meanlab/errors.hpp"

namespace meanlab {

using nlohmann::ordered_json;

void RunConfig::validate() const
{
    grid.validate();
    if (!(guard > 0 && guard < 1e-6))
        throw PreconditionError("margin guard must lie in (0, 1e-6)");
    if (!(series_threshold > 0 && series_threshold <= 0.5))
        throw PreconditionError("series threshold must lie in (0, 0.5]");
    if (!(sharpness_epsilon > 0))
        throw PreconditionError("sharpness epsilon must be positive");
    for (const auto& id : chains)
        find_chain(id);
}

VerifyOptions RunConfig::verify_options() const
{
    VerifyOptions o;
    o.guard = guard;
    o.means.series_threshold = series_threshold;
    return o;
}

const std::vector<SharpnessCase>& standard_sharpness_cases()
{
    static const std::vector<SharpnessCase> cases = {
        {"T21a", "alpha", TightenDirection::TightenLower},
        {"T21a", "beta", TightenDirection::TightenUpper},
        {"T21b", "alpha1", TightenDirection::TightenLower},
        {"T21b", "beta1", TightenDirection::TightenUpper},
        {"T26", "alpha2", TightenDirection::TightenLower},
        {"T26", "beta2", TightenDirection::TightenUpper},
        {"E11", "p_low", TightenDirection::TightenLower},
        {"E11", "q", TightenDirection::TightenUpper},
        {"E12", "h_low", TightenDirection::TightenLower},
        {"E12", "h_high", TightenDirection::TightenUpper},
        {"T24", "m_low", TightenDirection::TightenLower},
        {"T24", "k", TightenDirection::TightenUpper},
        {"C-coro89", "pi_2e", TightenDirection::TightenUpper},
    };
    return cases;
}

std::vector<ConstantRecovery> recover_constants()
{
    std::vector<ConstantRecovery> out;
    for (RatioFnId id : kAllRatioFns) {
        const RatioFnInfo& info = ratio_fn_info(id);
        for (Endpoint e : {Endpoint::Zero, Endpoint::HalfPi}) {
            ConstantRecovery r;
            r.function = id;
            r.endpoint = e;
            r.constant = std::string(e == Endpoint::Zero ? info.limit_zero_name : info.limit_half_pi_name);
            r.expected = e == Endpoint::Zero ? info.limit_zero : info.limit_half_pi;
            try {
                r.estimate = endpoint_limit(id, e).estimate;
                r.abs_error = std::fabs(r.estimate - r.expected);
                r.pass = r.abs_error < kConstantTolerance;
            } catch (const NumericalInstabilityError&) {
                r.estimate = std::nan("");
                r.abs_error = std::nan("");
                r.pass = false;
            }
            out.push_back(r);
        }
    }
    return out;
}

SuiteReport run_suite(const RunConfig& config)
{
    config.validate();
    SuiteReport rep;
    rep.config = config;
    const VerifyOptions opts = config.verify_options();

    std::vector<const InequalityChain*> selected;
    if (config.chains.empty()) {
        for (const auto& c : builtin_suite())
            selected.push_back(&c);
    } else {
        for (const auto& id : config.chains)
            selected.push_back(&find_chain(id));
    }

    bool pass = true;
    for (const InequalityChain* c : selected) {
        rep.chains.push_back(verify_chain(*c, config.grid, opts));
        pass = pass && rep.chains.back().pass;
    }

    rep.constants = recover_constants();
    for (const auto& c : rep.constants)
        pass = pass && c.pass;

    if (config.sharpness) {
        for (const auto& sc : standard_sharpness_cases()) {
            bool wanted = false;
            for (const InequalityChain* c : selected)
                wanted = wanted || c->id == sc.chain;
            if (wanted)
                rep.sharpness.push_back(sharpness_probe(sc.chain, sc.constant, sc.direction,
                                                        config.sharpness_epsilon, config.grid, opts));
        }
    }
    rep.overall_pass = pass;
    return rep;
}

namespace {

ordered_json grid_json(double r_min, double r_max, std::size_t n, double scale)
{
    ordered_json g;
    g["r_min"] = r_min;
    g["r_max"] = r_max;
    g["points"] = n;
    g["scale"] = scale;
    g["b"] = scale;
    g["spacing"] = "log";
    return g;
}

std::string finish(const ordered_json& j) { return j.dump(2) + "\n"; }

}  // namespace

std::string to_json(const SuiteReport& report)
{
    const RunConfig& cfg = report.config;
    ordered_json j;
    j["tool"] = kToolName;
    j["version"] = kToolVersion;

    ordered_json config;
    config["grid"] = grid_json(cfg.grid.r_min, cfg.grid.r_max, cfg.grid.n, cfg.grid.scale);
    config["margin_guard"] = cfg.guard;
    config["series_threshold"] = cfg.series_threshold;
    config["chains"] = cfg.chains.empty() ? ordered_json("all") : ordered_json(cfg.chains);
    config["sharpness_epsilon"] = cfg.sharpness ? ordered_json(cfg.sharpness_epsilon) : ordered_json();
    j["config"] = config;

    ordered_json chains = ordered_json::array();
    std::size_t chains_passed = 0;
    for (const ChainReport& c : report.chains) {
        const InequalityChain& chain = find_chain(c.chain_id);
        ordered_json jc;
        jc["id"] = c.chain_id;
        jc["citation"] = c.citation;
        jc["chain"] = chain.to_string();
        if (!chain.domain_note.empty())
            jc["note"] = chain.domain_note;
        jc["pass"] = c.pass;
        jc["points"] = c.points;
        jc["quad_points"] = c.quad_points;
        jc["min_margin"] = c.min_margin;
        jc["argmin_ratio"] = c.argmin_ratio;
        jc["worst_link"] = c.worst_link;
        jc["eval_errors"] = c.eval_errors;
        if (c.eval_errors) {
            jc["first_error"] = c.first_error;
            jc["first_error_ratio"] = *c.first_error_ratio;
        }
        ordered_json links = ordered_json::array();
        for (const LinkReport& l : c.links) {
            ordered_json jl;
            jl["lhs"] = l.lhs;
            jl["rhs"] = l.rhs;
            jl["collapses_at_diagonal"] = l.collapses;
            jl["min_margin"] = l.min_margin;
            jl["argmin_ratio"] = l.argmin_ratio;
            jl["below_guard"] = l.below_guard;
            jl["violations"] = l.violations;
            links.push_back(jl);
        }
        jc["links"] = links;
        chains.push_back(jc);
        chains_passed += c.pass ? 1 : 0;
    }
    j["chains"] = chains;

    ordered_json constants = ordered_json::array();
    std::size_t constants_passed = 0;
    for (const ConstantRecovery& c : report.constants) {
        ordered_json jc;
        jc["function"] = to_string(c.function);
        jc["endpoint"] = to_string(c.endpoint);
        jc["constant"] = c.constant;
        jc["expected"] = c.expected;
        jc["estimate"] = c.estimate;
        jc["abs_error"] = c.abs_error;
        jc["pass"] = c.pass;
        constants.push_back(jc);
        constants_passed += c.pass ? 1 : 0;
    }
    j["constants"] = constants;

    ordered_json sharp = ordered_json::array();
    for (const SharpnessOutcome& s : report.sharpness) {
        ordered_json js;
        js["chain"] = s.chain_id;
        js["constant"] = s.constant;
        js["direction"] = to_string(s.direction);
        js["epsilon"] = s.epsilon;
        js["delta"] = s.delta;
        js["outcome"] = s.violation_found ? "violation_found" : "still_holds";
        js["link"] = s.link;
        js["ratio"] = s.ratio;
        js["margin"] = s.margin;
        js["points"] = s.points;
        sharp.push_back(js);
    }
    j["sharpness"] = sharp;

    ordered_json summary;
    summary["chains_passed"] = chains_passed;
    summary["chains_total"] = report.chains.size();
    summary["constants_passed"] = constants_passed;
    summary["constants_total"] = report.constants.size();
    j["summary"] = summary;
    j["overall_pass"] = report.overall_pass;
    return finish(j);
}

std::string to_json(const ConjectureReport& r)
{
    ordered_json j;
    j["tool"] = kToolName;
    j["version"] = kToolVersion;
    j["grid"] = grid_json(r.r_min, r.r_max, r.points, r.scale);
    j["statement"] = r.statement;
    j["status"] = r.status;
    j["min_margin"] = r.min_margin;
    j["argmin_ratio"] = r.argmin_ratio;
    j["min_relative_margin"] = r.min_relative;
    j["argmin_relative_ratio"] = r.argmin_relative_ratio;
    j["sign"] = r.min_margin > 0 ? "positive" : (r.min_margin < 0 ? "negative" : "zero");
    j["negative_points"] = r.negative_points;
    j["resolution_floor"] = r.resolution_floor;
    j["unresolved_points"] = r.unresolved_points;
    j["resolved_min_relative_margin"] = r.resolved_min_relative;
    j["resolved_argmin_ratio"] = r.resolved_argmin_ratio;
    j["note"] = r.note;
    return finish(j);
}

}  // namespace meanlab
