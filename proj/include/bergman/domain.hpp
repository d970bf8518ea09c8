#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "bergman/common.hpp"
#include "bergman/weights.hpp"

namespace bergman {

/// A catalog domain. Membership is decided by `id` (plus `params` for the
/// annulus); the bounding box is given per real coordinate, in the order
/// re(z1), im(z1), re(z2), im(z2).
struct DomainSpec {
    std::string id;
    int dimension = 1;
    std::vector<double> params;
    std::optional<Weight> weight;
    std::vector<std::pair<double, double>> bounding_box;
    std::optional<double> known_volume;

    bool contains_origin() const { return id != "annulus"; }
    double box_volume() const;
};

struct SampleCloud {
    std::vector<ComplexPoint> points;
    double volume_estimate = 0.0;
    std::uint64_t seed = 0;
    std::int64_t requested = 0;
    std::int64_t accepted = 0;
};

bool membership(const DomainSpec& spec, const ComplexPoint& z);

/// Roots of lambda^2 - s lambda + p, larger magnitude first, computed without
/// cancellation.
std::pair<cdouble, cdouble> symmetric_roots(cdouble s, cdouble p);

/// Deterministic scrambled-Halton rejection sampling with `count` proposals.
SampleCloud sample(const DomainSpec& spec, std::int64_t count, std::uint64_t seed);

std::vector<DomainSpec> catalog();
DomainSpec find_domain(const std::string& id);
/// Annulus r < |z| < 1.
DomainSpec make_annulus(double inner_radius);

inline constexpr double kProbeFraction = 0.8;

/// Moves the first accepted points along their rays from the origin to
/// `fraction` of the distance to the boundary.
std::vector<ComplexPoint> make_probes(const DomainSpec& spec, const SampleCloud& cloud, std::size_t count = 16,
                                      double fraction = kProbeFraction);

/// Radius at which the ray t * direction (|direction| = 1) first leaves the domain.
double ray_exit_radius(const DomainSpec& spec, const ComplexPoint& direction);

nlohmann::json to_json(const DomainSpec& spec);
DomainSpec domain_from_json(const nlohmann::json& j);

/// re(z1),im(z1),... one row per accepted point.
std::string cloud_to_csv(const SampleCloud& cloud);

/// Scrambled Halton sequence. Each (dimension, digit position) gets a digit
/// permutation drawn from a seed-derived generator; the seed does nothing else.
class ScrambledHalton {
public:
    ScrambledHalton(int dimensions, std::uint64_t seed);

    int dimensions() const { return static_cast<int>(bases_.size()); }
    /// Coordinates in [0, 1) of the point with the given (1-based) index.
    void point(std::uint64_t index, std::vector<double>& out) const;

private:
    std::vector<int> bases_;
    std::vector<int> digits_;
    // perms_[d][pos * base + digit]
    std::vector<std::vector<std::uint8_t>> perms_;
};

}  // namespace bergman
