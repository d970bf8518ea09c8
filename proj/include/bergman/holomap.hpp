#pragma once

#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "bergman/common.hpp"
#include "bergman/domain.hpp"
#include "bergman/kernel.hpp"
#include "bergman/weights.hpp"

namespace bergman {

/// Holomorphic map stored as sparse polynomial components, or the disk Möbius
/// map (z - a)/(1 - conj(a) z), which gets a closed-form evaluator instead.
struct HoloMap {
    std::string name;
    int dim_in = 1;
    int dim_out = 1;
    std::vector<Polynomial> components;
    std::optional<cdouble> mobius_a;
    std::shared_ptr<const HoloMap> inverse;

    bool is_polynomial() const { return !mobius_a.has_value(); }
};

ComplexPoint eval(const HoloMap& map, const ComplexPoint& z);
SmallMatrix jacobian(const HoloMap& map, const ComplexPoint& z);
/// f o g with coefficients expanded exactly; both maps must be polynomial.
HoloMap compose(const HoloMap& f, const HoloMap& g);

HoloMap identity_map(int n);
HoloMap linear_map(const SmallMatrix& a, std::string name = "linear");
/// z -> e^{i theta} z in C^1.
HoloMap rotation(double theta);
/// f_theta(z) = (e^{i m1 theta} z1, e^{i m2 theta} z2), inverse f_{-theta} attached.
HoloMap rotation_weighted(const Weight& m, double theta);
HoloMap mobius_disk(cdouble a);
/// (z1, z2) -> (z2, z1).
HoloMap coordinate_swap();
HoloMap scaling(int n, cdouble factor);
/// (z1, z2) -> (zeta z1, zeta^2 (z1^2/4 - z2)) on E_half2; |zeta| = 1.
HoloMap zapalowski(cdouble zeta);

/// Looks up fixtures by name: identity, rotation, rotation_weighted, mobius,
/// swap, zapalowski, scale2.
HoloMap map_by_name(const std::string& name, int dimension, const std::optional<Weight>& weight, double theta,
                    cdouble parameter);

struct PreservationResult {
    double forward = 0.0;
    std::optional<double> inverse;
};

/// Fraction of cloud points mapped back into the domain (and likewise for the inverse).
PreservationResult preserves_domain(const HoloMap& map, const DomainSpec& spec, const SampleCloud& cloud);

/// Max relative gap between K_D(z,w) and conj(det J(w)) K_D'(f z, f w) det J(z).
double transformation_residual(const Kernel& kernel_d, const Kernel& kernel_d_prime, const HoloMap& map,
                               const std::vector<std::pair<ComplexPoint, ComplexPoint>>& pairs);

struct LinearFit {
    SmallMatrix a;
    double max_residual = 0.0;
    double rms_residual = 0.0;
};

/// Least-squares A minimizing sum |map(z) - A z|^2 over the points.
LinearFit best_linear_fit(const HoloMap& map, const std::vector<ComplexPoint>& points);

nlohmann::json to_json(const HoloMap& map);
HoloMap holomap_from_json(const nlohmann::json& j);

}  // namespace bergman
