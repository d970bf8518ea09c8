#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "bergman/common.hpp"
#include "bergman/domain.hpp"
#include "bergman/holomap.hpp"
#include "bergman/kernel.hpp"

namespace bergman {

inline constexpr double kKernelGuard = 1e-12;

/// T(z,w)_{ij} = d^2 log K / dconj(w_i) dz_j.
struct TMatrix {
    SmallMatrix entries;
    ComplexPoint z;
    ComplexPoint w;
    cdouble kernel_value;
};

TMatrix t_matrix(const Kernel& kernel, const ComplexPoint& z, const ComplexPoint& w, double guard = kKernelGuard);

/// Principal square root of a Hermitian positive definite matrix.
SmallMatrix hermitian_sqrt(const SmallMatrix& m);
SmallMatrix hermitian_inv_sqrt(const SmallMatrix& m);

enum class Tier { exact, qmc };
std::string to_string(Tier t);
Tier parse_tier(const std::string& s);
inline Tier default_tier(const Kernel& k) { return k.source() == GramSource::exact ? Tier::exact : Tier::qmc; }

/// Outcome of one numerical check. Residuals and tolerances are keyed by name;
/// the verdict holds iff every residual is within its tolerance.
struct VerificationReport {
    std::string kind;
    std::string domain;
    std::string map;
    std::map<std::string, double> residuals;
    std::map<std::string, double> tolerances;
    bool verdict = false;
    std::size_t probes = 0;
    Tier tier = Tier::exact;
    nlohmann::json provenance = nlohmann::json::object();
    nlohmann::json details = nlohmann::json::object();

    void finalize();
};

nlohmann::json to_json(const VerificationReport& r);

/// Tolerance for a residual of the given check kind in the given tier.
double tolerance_for(const std::string& kind, Tier tier);

/// |K(z,c) - K(c,c)| / |K(c,c)| over the probes, and |K(c,c) - 1/vol| / |K(c,c)|.
VerificationReport minimality_report(const Kernel& kernel, const std::vector<ComplexPoint>& probes, double volume,
                                     std::optional<ComplexPoint> center = std::nullopt,
                                     std::optional<Tier> tier = std::nullopt);

/// Relative variation of T(z,c) over the probes and its largest off-diagonal entry,
/// both against the diagonal scale of T(c,c).
VerificationReport representativity_report(const Kernel& kernel, const std::vector<ComplexPoint>& probes,
                                           std::optional<ComplexPoint> center = std::nullopt,
                                           std::optional<Tier> tier = std::nullopt);

/// sigma_p(z) = T(p,p)^{-1/2} (grad_wbar log K(z,w) - grad_wbar log K(p,w)) at w = p.
class BergmanMap {
public:
    BergmanMap(KernelPtr kernel, ComplexPoint center, double guard = kKernelGuard);

    ComplexPoint operator()(const ComplexPoint& z) const;
    /// T(p,p)^{-1/2} T(z,p).
    SmallMatrix jacobian(const ComplexPoint& z) const;

    const ComplexPoint& center() const { return p_; }
    const SmallMatrix& t_center() const { return t_pp_; }
    const SmallMatrix& t_center_inv_sqrt() const { return t_inv_sqrt_; }

private:
    KernelPtr kernel_;
    ComplexPoint p_;
    double guard_;
    SmallMatrix t_pp_;
    SmallMatrix t_inv_sqrt_;
    ComplexPoint grad_p_;
};

BergmanMap bergman_map(KernelPtr kernel, const ComplexPoint& p);
inline ComplexPoint eval_sigma(const BergmanMap& sigma, const ComplexPoint& z) { return sigma(z); }

struct LMatrix {
    SmallMatrix entries;
    double unitarity_residual = 0.0;  // max |L^* L - I|
};

/// T_D'(f p, f p)^{-1/2} conj(J(f,p))^{-T} T_D(p,p)^{1/2}.
LMatrix l_matrix(const Kernel& kernel_d, const Kernel& kernel_d_prime, const HoloMap& map, const ComplexPoint& p);

VerificationReport unitarity_report(const Kernel& kernel_d, const Kernel& kernel_d_prime, const HoloMap& map,
                                    const ComplexPoint& p, std::optional<Tier> tier = std::nullopt);

/// max |sigma'_{f(p)}(f(z)) - L sigma_p(z)| over the probes; probes at kernel zeros are skipped.
VerificationReport diagram_report(KernelPtr kernel_d, KernelPtr kernel_d_prime, const HoloMap& map,
                                  const ComplexPoint& p, const std::vector<ComplexPoint>& probes,
                                  std::optional<Tier> tier = std::nullopt);

VerificationReport transformation_report(const Kernel& kernel_d, const Kernel& kernel_d_prime, const HoloMap& map,
                                         const std::vector<std::pair<ComplexPoint, ComplexPoint>>& pairs,
                                         std::optional<Tier> tier = std::nullopt);

struct LinearExtraction {
    SmallMatrix a;
    double residual = 0.0;
};

/// A = T'(0,0)^{-1/2} L(f,0) T(0,0)^{1/2}; residual = max |f(z) - A z| over the probes.
LinearExtraction extract_linear(const Kernel& kernel_d, const Kernel& kernel_d_prime, const HoloMap& map,
                                const std::vector<ComplexPoint>& probes);

VerificationReport linearity_report(const Kernel& kernel_d, const Kernel& kernel_d_prime, const HoloMap& map,
                                    const std::vector<ComplexPoint>& probes, std::optional<Tier> tier = std::nullopt);

/// A rectangular slice through the domain: two real coordinates vary
/// (0 = re z1, 1 = im z1, 2 = re z2, 3 = im z2), the rest come from `base`.
struct GridSlice {
    int axis_x = 0;
    int axis_y = 1;
    double x_lo = -1.0, x_hi = 1.0;
    double y_lo = -1.0, y_hi = 1.0;
    int nx = 41;
    int ny = 41;
    ComplexPoint base;
};

enum class GridQuantity { kernel, t_matrix };

/// CSV of K(z,0) or the entries of T(z,0); points outside the domain get empty cells.
std::string grid_csv(const Kernel& kernel, const DomainSpec& spec, const GridSlice& slice, GridQuantity quantity);

}  // namespace bergman
