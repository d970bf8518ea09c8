#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "bergman/common.hpp"
#include "bergman/domain.hpp"
#include "bergman/weights.hpp"

namespace bergman {

using Matrix = Eigen::MatrixXcd;

enum class CutoffMode { total_degree, weighted_degree };

struct MonomialBasis {
    int dimension = 1;
    std::vector<MultiIndex> exponents;
    CutoffMode mode = CutoffMode::total_degree;
    std::optional<Weight> weight;  // set iff mode == weighted_degree
    int cutoff = 0;
    std::optional<int> laurent_min;

    std::size_t size() const { return exponents.size(); }
    /// Value that the cutoff is compared against.
    std::int64_t cutoff_value(const MultiIndex& k) const;
};

MonomialBasis monomial_basis(int n, CutoffMode mode, int cutoff, std::optional<Weight> weight = std::nullopt,
                             std::optional<int> laurent_min = std::nullopt);

enum class GramSource { exact, qmc };

struct GramMatrix {
    Matrix entries;
    GramSource source = GramSource::exact;
    std::uint64_t seed = 0;
    std::int64_t count = 0;
    double condition = 1.0;  // of the diagonally scaled matrix
};

/// Closed-form monomial moments on disk, annulus, polydisk2 and ball2.
GramMatrix gram_exact_reinhardt(const DomainSpec& spec, const MonomialBasis& basis);

/// Quasi-Monte Carlo Gram from a shared sample cloud.
GramMatrix gram_qmc(const MonomialBasis& basis, const SampleCloud& cloud);

inline constexpr double kDefaultFloorRatio = 1e-10;

struct Orthonormalization {
    Matrix transform;  // rows: coefficients of orthonormal functions in the monomial basis
    int effective_rank = 0;
};

/// Rank-truncated Hermitian eigendecomposition of the (Jacobi-scaled) Gram,
/// giving B with B G B^* = I on the kept subspace.
Orthonormalization orthonormalize(const GramMatrix& gram, double floor_ratio = kDefaultFloorRatio);

/// Monomial values z^a and their first derivatives for a whole basis.
struct MonomialJet {
    Eigen::VectorXcd value;
    std::vector<Eigen::VectorXcd> d;  // d[j] = d/dz_j z^a
};

MonomialJet monomial_jet(const MonomialBasis& basis, const ComplexPoint& z, bool with_derivatives = true);

/// K, dK/dz_j, dK/dconj(w_i) and d^2K/dconj(w_i)dz_j at a pair (z, w).
struct KernelJet {
    cdouble value;
    ComplexPoint dz;
    ComplexPoint dwbar;
    SmallMatrix dwbar_dz;  // (i, j) -> d^2 / dconj(w_i) dz_j
};

/// Anything that can produce a Bergman kernel and its first mixed derivatives.
class Kernel {
public:
    virtual ~Kernel() = default;
    virtual int dimension() const = 0;
    virtual cdouble eval(const ComplexPoint& z, const ComplexPoint& w) const = 0;
    virtual KernelJet jet(const ComplexPoint& z, const ComplexPoint& w) const = 0;
    /// "exact" for closed forms and exact-moment models, "qmc" otherwise.
    virtual GramSource source() const = 0;
    virtual std::string name() const = 0;
    virtual nlohmann::json provenance() const = 0;
};

using KernelPtr = std::shared_ptr<const Kernel>;

struct Provenance {
    std::string domain;
    GramSource source = GramSource::exact;
    std::uint64_t seed = 0;
    std::int64_t count = 0;
    double floor_ratio = kDefaultFloorRatio;
    double condition = 1.0;
};

/// Truncated kernel K_N(z,w) = sum_{a,b} C[a][b] z^a conj(w)^b.
class KernelModel final : public Kernel {
public:
    KernelModel(MonomialBasis basis, Matrix coefficients, int effective_rank, double volume_estimate,
                Provenance provenance);

    int dimension() const override { return basis_.dimension; }
    cdouble eval(const ComplexPoint& z, const ComplexPoint& w) const override;
    KernelJet jet(const ComplexPoint& z, const ComplexPoint& w) const override;
    GramSource source() const override { return prov_.source; }
    std::string name() const override { return prov_.domain; }
    nlohmann::json provenance() const override;

    const MonomialBasis& basis() const { return basis_; }
    const Matrix& coefficients() const { return c_; }
    int effective_rank() const { return rank_; }
    double volume_estimate() const { return volume_; }
    const Provenance& provenance_info() const { return prov_; }

private:
    MonomialBasis basis_;
    Matrix c_;
    int rank_;
    double volume_;
    Provenance prov_;
};

/// C = B^T conj(B), so that K(z,w) = sum_j e_j(z) conj(e_j(w)).
KernelModel kernel_model(const MonomialBasis& basis, const Orthonormalization& on, double volume_estimate,
                         Provenance provenance);

cdouble eval_kernel(const Kernel& kernel, const ComplexPoint& z, const ComplexPoint& w);

/// Known kernels: disk, polydisk2, ball2 and the annulus Laurent series.
class ClosedFormKernel final : public Kernel {
public:
    /// `inner_radius` is only used for the annulus.
    explicit ClosedFormKernel(std::string id, double inner_radius = 0.5);

    int dimension() const override;
    cdouble eval(const ComplexPoint& z, const ComplexPoint& w) const override;
    KernelJet jet(const ComplexPoint& z, const ComplexPoint& w) const override;
    GramSource source() const override { return GramSource::exact; }
    std::string name() const override { return id_; }
    nlohmann::json provenance() const override;

private:
    std::string id_;
    double r_;
};

cdouble eval_kernel_closed(const std::string& id, const ComplexPoint& z, const ComplexPoint& w,
                           double inner_radius = 0.5);

/// Annulus kernel as a function of u = z conj(w): returns f(u), f'(u), f''(u).
std::array<cdouble, 3> annulus_series(double inner_radius, cdouble u);

/// Sparse polynomial in the basis variables.
struct Term {
    MultiIndex k;
    cdouble c;
};
using Polynomial = std::vector<Term>;

cdouble eval_polynomial(const Polynomial& f, const ComplexPoint& z);

/// Max over the probes of |int f(w) K(z,w) dV(w) - f(z)|, the integral taken over the cloud.
double reproducing_residual(const Kernel& kernel, const Polynomial& f, const SampleCloud& cloud,
                            const std::vector<ComplexPoint>& probes);

struct KernelBuildOptions {
    std::optional<int> cutoff;            // default: 40 total (C^1) or 12 weighted (C^2)
    bool weighted = true;                 // only used in C^2 with a weighted domain
    std::int64_t samples = 1000000;
    std::uint64_t seed = 1;
    double floor_ratio = kDefaultFloorRatio;
    bool force_qmc = false;               // use QMC even where exact moments exist
};

struct BuiltKernel {
    std::shared_ptr<const KernelModel> model;
    std::optional<SampleCloud> cloud;  // present for QMC builds
};

/// Catalog-aware end-to-end construction.
BuiltKernel build_kernel(const DomainSpec& spec, const KernelBuildOptions& options);

nlohmann::json to_json(const MonomialBasis& basis);
MonomialBasis basis_from_json(const nlohmann::json& j);
nlohmann::json to_json(const KernelModel& model);
KernelModel kernel_from_json(const nlohmann::json& j);

std::string to_string(GramSource s);

}  // namespace bergman
