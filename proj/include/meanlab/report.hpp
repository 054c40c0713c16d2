#pragma once

#include <string>
#include <vector>

#include "meanlab/ratio_functions.hpp"
#include "meanlab/search.hpp"

namespace meanlab {

inline constexpr const char* kToolName = "meanlab";
inline constexpr const char* kToolVersion = "0.1.0";

struct RunConfig {
    GridSpec grid;
    double guard = kDefaultGuard;
    double series_threshold = MeanOptions{}.series_threshold;
    std::vector<std::string> chains;  ///< empty selects the whole registry
    bool sharpness = true;
    double sharpness_epsilon = 1e-3;

    /// PreconditionError on n < 2, r_min <= 0, r_max <= 1 + r_min, guard outside
    /// (0, 1e-6) or a series threshold outside (0, 0.5]; UnknownChainError for
    /// an unknown selected id.
    void validate() const;
    VerifyOptions verify_options() const;
};

struct ConstantRecovery {
    RatioFnId function;
    Endpoint endpoint;
    std::string constant;
    double expected = 0;
    double estimate = 0;
    double abs_error = 0;
    bool pass = false;
};

inline constexpr double kConstantTolerance = 1e-6;

struct SharpnessCase {
    const char* chain;
    const char* constant;
    TightenDirection direction;
};

/// Probes run by the suite for every selected chain they name.
const std::vector<SharpnessCase>& standard_sharpness_cases();

struct SuiteReport {
    RunConfig config;
    std::vector<ChainReport> chains;
    std::vector<ConstantRecovery> constants;
    std::vector<SharpnessOutcome> sharpness;
    bool overall_pass = false;  ///< every chain passes and every constant error < tolerance
};

std::vector<ConstantRecovery> recover_constants();

SuiteReport run_suite(const RunConfig& config);

/// Stable JSON documents (two-space indent, trailing newline).
std::string to_json(const SuiteReport& report);
std::string to_json(const ConjectureReport& report);

}  // namespace meanlab
