#pragma once

// Reproducible verification runs: configuration, subcommand bodies, and the suite.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "bergman/domain.hpp"
#include "bergman/geometry.hpp"
#include "bergman/holomap.hpp"
#include "bergman/kernel.hpp"

namespace bergman {

struct RunConfig {
    std::vector<std::string> domains{"E_half2"};
    std::uint64_t seed = 1;
    std::int64_t samples = 1000000;
    std::optional<int> cutoff;
    bool weighted = true;
    double floor_ratio = kDefaultFloorRatio;
    std::optional<std::string> tol_tier;
    std::string kernel = "auto";  // auto | model | closed
    std::string map = "identity";
    double theta = 0.7;
    std::optional<double> map_param;  // Möbius a (default 0.3) or Zapałowski zeta angle (default 0)
    std::string out;

    /// Defaults, with the seed taken from BERGMAN_LAB_SEED when set.
    static RunConfig defaults();
    /// Overlays the keys present in `j` onto `base`.
    static RunConfig merge(RunConfig base, const nlohmann::json& j);
    nlohmann::json to_json() const;
    KernelBuildOptions build_options() const;
};

/// A domain with its kernel, the cloud it came from (if any) and radial probes.
struct PreparedDomain {
    DomainSpec spec;
    KernelPtr kernel;
    std::shared_ptr<const KernelModel> model;
    std::optional<SampleCloud> cloud;
    std::vector<ComplexPoint> probes;
    double volume = 0.0;
};

PreparedDomain prepare_domain(const std::string& id, const RunConfig& config, bool closed_form = false);

nlohmann::json cmd_catalog();

/// `sub` is classify | surviving | equivariant.
nlohmann::json cmd_weights(const std::string& sub, std::int64_t m1, std::int64_t m2, int bound = kDefaultEnumerationBound,
                           const std::string& which = "kernel", int component = 0);

nlohmann::json cmd_kernel_build(const RunConfig& config);
nlohmann::json cmd_kernel_eval(const nlohmann::json& model, const ComplexPoint& z, const ComplexPoint& w);

/// kind: minimality | representativity | diagram | unitarity | transformation | linearity.
VerificationReport cmd_verify(const std::string& kind, const RunConfig& config);

std::string cmd_grid(const RunConfig& config, const GridSlice& slice, GridQuantity quantity);

struct SuiteEntry {
    std::string name;
    VerificationReport report;
    std::optional<bool> expected;  // nullopt: recorded, not judged
    bool passed() const { return !expected || report.verdict == *expected; }
};

struct SuiteResult {
    std::vector<SuiteEntry> entries;
    nlohmann::json summary;
    bool all_passed() const;
};

SuiteResult cmd_suite(const RunConfig& config);

/// Writes one JSON file per suite entry plus summary.json into `dir`.
void write_suite(const SuiteResult& result, const std::string& dir);

/// Parses "re,im[,re,im]" into a point.
ComplexPoint parse_point(const std::string& text);

std::string dump(const nlohmann::json& j);

}  // namespace bergman
