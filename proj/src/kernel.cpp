#include "bergman/kernel.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace bergman {

std::string to_string(GramSource s) { return s == GramSource::exact ? "exact" : "qmc"; }

// ---------------------------------------------------------------------------
// Basis

std::int64_t MonomialBasis::cutoff_value(const MultiIndex& k) const {
    if (mode == CutoffMode::weighted_degree) return weighted_degree(k, *weight);
    return k.total();
}

MonomialBasis monomial_basis(int n, CutoffMode mode, int cutoff, std::optional<Weight> weight,
                             std::optional<int> laurent_min) {
    if (n != 1 && n != 2) throw DimensionMismatch("bases exist in C^1 and C^2 only");
    if (cutoff < 0) throw Error("cutoff must be nonnegative");
    if (laurent_min && (n != 1 || *laurent_min >= 0)) throw Error("Laurent exponents need n = 1 and a negative minimum");
    if (mode == CutoffMode::weighted_degree) {
        if (!weight) throw Error("weighted cutoff needs a weight");
        if (weight->n != n) throw DimensionMismatch("weight length differs from dimension");
    }

    MonomialBasis b;
    b.dimension = n;
    b.mode = mode;
    b.weight = mode == CutoffMode::weighted_degree ? weight : std::nullopt;
    b.cutoff = cutoff;
    b.laurent_min = laurent_min;

    if (n == 1) {
        for (int k = laurent_min.value_or(0); k <= cutoff; ++k) {
            const MultiIndex idx(k);
            if (b.cutoff_value(idx) <= cutoff) b.exponents.push_back(idx);
        }
    } else {
        for (int k1 = 0; k1 <= cutoff; ++k1)
            for (int k2 = 0; k2 <= cutoff; ++k2) {
                const MultiIndex idx(k1, k2);
                if (b.cutoff_value(idx) <= cutoff) b.exponents.push_back(idx);
            }
    }
    std::sort(b.exponents.begin(), b.exponents.end(), [&](const MultiIndex& x, const MultiIndex& y) {
        const auto vx = b.cutoff_value(x);
        const auto vy = b.cutoff_value(y);
        if (vx != vy) return vx < vy;
        return x < y;
    });
    if (b.exponents.empty()) throw Error("empty monomial basis");
    return b;
}

// ---------------------------------------------------------------------------
// Gram matrices

namespace {

double disk_moment(int k) { return kPi / (k + 1.0); }

double annulus_moment(double r, int k) {
    if (k == -1) return 2.0 * kPi * std::log(1.0 / r);
    return kPi * (1.0 - std::pow(r, 2.0 * k + 2.0)) / (k + 1.0);
}

double ball_moment(int k1, int k2) {
    return kPi * kPi * std::exp(std::lgamma(k1 + 1.0) + std::lgamma(k2 + 1.0) - std::lgamma(k1 + k2 + 3.0));
}

double scaled_condition(const Matrix& g) {
    const Eigen::VectorXd d = g.diagonal().real();
    Eigen::VectorXd s(d.size());
    for (Eigen::Index i = 0; i < d.size(); ++i) s(i) = d(i) > 0 ? 1.0 / std::sqrt(d(i)) : 0.0;
    const Matrix scaled = s.asDiagonal() * g * s.asDiagonal();
    Eigen::SelfAdjointEigenSolver<Matrix> es(scaled, Eigen::EigenvaluesOnly);
    const double lo = es.eigenvalues().minCoeff();
    const double hi = es.eigenvalues().maxCoeff();
    return lo > 0 ? hi / lo : std::numeric_limits<double>::infinity();
}

}  // namespace

GramMatrix gram_exact_reinhardt(const DomainSpec& spec, const MonomialBasis& basis) {
    if (basis.dimension != spec.dimension) throw DimensionMismatch("basis and domain dimensions differ");
    const auto n = static_cast<Eigen::Index>(basis.size());
    GramMatrix g;
    g.entries = Matrix::Zero(n, n);
    g.source = GramSource::exact;
    for (Eigen::Index a = 0; a < n; ++a) {
        const MultiIndex& k = basis.exponents[static_cast<std::size_t>(a)];
        if (spec.id != "annulus" && (k[0] < 0 || (k.n == 2 && k[1] < 0)))
            throw Error("negative exponents are not square-integrable on " + spec.id);
        double m = 0.0;
        if (spec.id == "disk") m = disk_moment(k[0]);
        else if (spec.id == "annulus") m = annulus_moment(spec.params.at(0), k[0]);
        else if (spec.id == "polydisk2") m = disk_moment(k[0]) * disk_moment(k[1]);
        else if (spec.id == "ball2") m = ball_moment(k[0], k[1]);
        else throw Error("no closed-form moments for domain " + spec.id);
        g.entries(a, a) = m;
    }
    g.condition = scaled_condition(g.entries);
    return g;
}

MonomialJet monomial_jet(const MonomialBasis& basis, const ComplexPoint& z, bool with_derivatives) {
    if (z.size() != basis.dimension) throw DimensionMismatch("point dimension differs from basis dimension");
    const int n = basis.dimension;
    int lo = 0;
    int hi = 0;
    for (const auto& k : basis.exponents)
        for (int j = 0; j < n; ++j) {
            lo = std::min(lo, k[j]);
            hi = std::max(hi, k[j]);
        }
    lo -= 1;  // derivatives lower the exponent by one
    // powers[j][e - lo] = z_j^e
    std::array<std::vector<cdouble>, 2> powers;
    for (int j = 0; j < n; ++j) {
        auto& p = powers[static_cast<std::size_t>(j)];
        p.assign(static_cast<std::size_t>(hi - lo + 1), cdouble(0.0));
        p[static_cast<std::size_t>(-lo)] = 1.0;
        for (int e = 1; e <= hi; ++e) p[static_cast<std::size_t>(e - lo)] = p[static_cast<std::size_t>(e - 1 - lo)] * z(j);
        if (lo < 0 && basis.laurent_min) {
            if (z(j) == cdouble(0.0)) throw Error("Laurent monomial evaluated at zero");
            const cdouble inv = 1.0 / z(j);
            for (int e = -1; e >= lo; --e) p[static_cast<std::size_t>(e - lo)] = p[static_cast<std::size_t>(e + 1 - lo)] * inv;
        }
    }
    auto pw = [&](int j, int e) { return powers[static_cast<std::size_t>(j)][static_cast<std::size_t>(e - lo)]; };

    const auto size = static_cast<Eigen::Index>(basis.size());
    MonomialJet out;
    out.value.resize(size);
    if (with_derivatives) out.d.assign(static_cast<std::size_t>(n), Eigen::VectorXcd::Zero(size));
    for (Eigen::Index a = 0; a < size; ++a) {
        const MultiIndex& k = basis.exponents[static_cast<std::size_t>(a)];
        if (n == 1) {
            out.value(a) = pw(0, k[0]);
            if (with_derivatives && k[0] != 0) out.d[0](a) = static_cast<double>(k[0]) * pw(0, k[0] - 1);
        } else {
            const cdouble p1 = pw(0, k[0]);
            const cdouble p2 = pw(1, k[1]);
            out.value(a) = p1 * p2;
            if (with_derivatives) {
                if (k[0] != 0) out.d[0](a) = static_cast<double>(k[0]) * pw(0, k[0] - 1) * p2;
                if (k[1] != 0) out.d[1](a) = static_cast<double>(k[1]) * p1 * pw(1, k[1] - 1);
            }
        }
    }
    return out;
}

GramMatrix gram_qmc(const MonomialBasis& basis, const SampleCloud& cloud) {
    if (cloud.points.empty()) throw Error("empty sample cloud");
    constexpr std::size_t kChunk = 4096;
    const auto size = static_cast<Eigen::Index>(basis.size());
    Matrix acc = Matrix::Zero(size, size);
    Matrix v(static_cast<Eigen::Index>(kChunk), size);
    for (std::size_t start = 0; start < cloud.points.size(); start += kChunk) {
        const std::size_t len = std::min(kChunk, cloud.points.size() - start);
        for (std::size_t i = 0; i < len; ++i)
            v.row(static_cast<Eigen::Index>(i)) = monomial_jet(basis, cloud.points[start + i], false).value.transpose();
        const auto rows = v.topRows(static_cast<Eigen::Index>(len));
        acc.noalias() += rows.transpose() * rows.conjugate();
    }
    acc *= cloud.volume_estimate / static_cast<double>(cloud.points.size());
    GramMatrix g;
    g.entries = 0.5 * (acc + acc.adjoint());
    if (!g.entries.allFinite()) throw Error("non-finite Gram entries");
    g.source = GramSource::qmc;
    g.seed = cloud.seed;
    g.count = cloud.requested;
    g.condition = scaled_condition(g.entries);
    return g;
}

Orthonormalization orthonormalize(const GramMatrix& gram, double floor_ratio) {
    const Matrix& g = gram.entries;
    if (g.rows() != g.cols() || g.rows() == 0) throw Error("Gram matrix must be square and nonempty");
    if (max_abs_entry(g - g.adjoint()) > 1e-12 * std::max(1.0, max_abs_entry(g)))
        throw Error("Gram matrix is not Hermitian");
    const Eigen::Index n = g.rows();

    // Jacobi scaling: the floor then acts on correlations, not on raw monomial norms.
    Eigen::VectorXd s(n);
    for (Eigen::Index i = 0; i < n; ++i) {
        const double d = g(i, i).real();
        s(i) = d > 0 ? 1.0 / std::sqrt(d) : 0.0;
    }
    const Matrix scaled = s.asDiagonal() * g * s.asDiagonal();
    Eigen::SelfAdjointEigenSolver<Matrix> es(scaled);
    if (es.info() != Eigen::Success) throw Error("eigendecomposition failed");
    const Eigen::VectorXd& lambda = es.eigenvalues();
    const double lmax = lambda.maxCoeff();
    if (!(lmax > 0)) throw Error("degenerate Gram matrix (no positive eigenvalue)");

    std::vector<Eigen::Index> kept;
    for (Eigen::Index i = 0; i < n; ++i)
        if (lambda(i) >= floor_ratio * lmax) kept.push_back(i);

    Orthonormalization out;
    out.effective_rank = static_cast<int>(kept.size());
    out.transform.resize(static_cast<Eigen::Index>(kept.size()), n);
    for (std::size_t r = 0; r < kept.size(); ++r) {
        const Eigen::Index i = kept[r];
        out.transform.row(static_cast<Eigen::Index>(r)) =
            (es.eigenvectors().col(i).adjoint() / std::sqrt(lambda(i))) * s.asDiagonal();
    }
    return out;
}

// ---------------------------------------------------------------------------
// Polynomial kernel model

KernelModel::KernelModel(MonomialBasis basis, Matrix coefficients, int effective_rank, double volume_estimate,
                         Provenance provenance)
    : basis_(std::move(basis)), c_(std::move(coefficients)), rank_(effective_rank), volume_(volume_estimate),
      prov_(std::move(provenance)) {
    const auto n = static_cast<Eigen::Index>(basis_.size());
    if (c_.rows() != n || c_.cols() != n) throw DimensionMismatch("coefficient tensor does not match basis");
}

cdouble KernelModel::eval(const ComplexPoint& z, const ComplexPoint& w) const {
    if (z.size() != dimension() || w.size() != dimension()) throw DimensionMismatch("kernel argument dimension");
    const auto vz = monomial_jet(basis_, z, false);
    const auto vw = monomial_jet(basis_, w, false);
    return vz.value.transpose() * c_ * vw.value.conjugate();
}

KernelJet KernelModel::jet(const ComplexPoint& z, const ComplexPoint& w) const {
    if (z.size() != dimension() || w.size() != dimension()) throw DimensionMismatch("kernel argument dimension");
    const int n = dimension();
    const auto jz = monomial_jet(basis_, z);
    const auto jw = monomial_jet(basis_, w);
    // rows of C contracted with z-side vectors once
    const Eigen::RowVectorXcd left = jz.value.transpose() * c_;
    KernelJet out;
    out.value = left * jw.value.conjugate();
    out.dz.resize(n);
    out.dwbar.resize(n);
    out.dwbar_dz.resize(n, n);
    std::vector<Eigen::RowVectorXcd> dleft;
    for (int j = 0; j < n; ++j) {
        dleft.push_back(jz.d[static_cast<std::size_t>(j)].transpose() * c_);
        out.dz(j) = dleft.back() * jw.value.conjugate();
    }
    for (int i = 0; i < n; ++i) {
        const Eigen::VectorXcd dw = jw.d[static_cast<std::size_t>(i)].conjugate();
        out.dwbar(i) = left * dw;
        for (int j = 0; j < n; ++j) out.dwbar_dz(i, j) = dleft[static_cast<std::size_t>(j)] * dw;
    }
    return out;
}

nlohmann::json KernelModel::provenance() const {
    return {{"domain", prov_.domain},
            {"source", to_string(prov_.source)},
            {"seed", prov_.seed},
            {"count", prov_.count},
            {"floor_ratio", prov_.floor_ratio},
            {"condition", prov_.condition},
            {"cutoff", basis_.cutoff},
            {"cutoff_mode", basis_.mode == CutoffMode::weighted_degree ? "weighted" : "total"},
            {"basis_size", basis_.size()},
            {"effective_rank", rank_}};
}

KernelModel kernel_model(const MonomialBasis& basis, const Orthonormalization& on, double volume_estimate,
                         Provenance provenance) {
    if (on.transform.cols() != static_cast<Eigen::Index>(basis.size()))
        throw DimensionMismatch("transform width differs from basis size");
    Matrix c = on.transform.transpose() * on.transform.conjugate();
    c = 0.5 * (c + c.adjoint()).eval();
    return KernelModel(basis, std::move(c), on.effective_rank, volume_estimate, std::move(provenance));
}

cdouble eval_kernel(const Kernel& kernel, const ComplexPoint& z, const ComplexPoint& w) { return kernel.eval(z, w); }

// ---------------------------------------------------------------------------
// Closed forms

std::array<cdouble, 3> annulus_series(double r, cdouble u) {
    const double au = std::abs(u);
    if (!(au < 1.0) || !(au > r * r)) throw Error("annulus kernel series diverges at |z conj(w)| = " + std::to_string(au));
    std::array<cdouble, 3> sum{0.0, 0.0, 0.0};
    constexpr int kMaxTerms = 1000000;
    constexpr double kTol = 1e-17;

    auto run = [&](int k0, int step) {
        double peak = 0.0;
        double prev = std::numeric_limits<double>::infinity();
        for (int it = 0, k = k0; it < kMaxTerms; ++it, k += step) {
            const double m = annulus_moment(r, k);
            const cdouble t0 = std::pow(u, k) / m;
            const cdouble t1 = static_cast<double>(k) * std::pow(u, k - 1) / m;
            const cdouble t2 = static_cast<double>(k) * (k - 1.0) * std::pow(u, k - 2) / m;
            sum[0] += t0;
            sum[1] += t1;
            sum[2] += t2;
            const double mag = std::max({std::abs(t0), std::abs(t1), std::abs(t2)});
            peak = std::max(peak, mag);
            if (mag < kTol * peak && mag < prev) return;
            prev = mag;
        }
        throw Error("annulus kernel series did not converge");
    };
    run(0, 1);
    run(-1, -1);
    return sum;
}

ClosedFormKernel::ClosedFormKernel(std::string id, double inner_radius) : id_(std::move(id)), r_(inner_radius) {
    if (id_ != "disk" && id_ != "polydisk2" && id_ != "ball2" && id_ != "annulus")
        throw Error("no closed-form kernel for domain " + id_);
    if (id_ == "annulus" && !(r_ > 0.0 && r_ < 1.0)) throw Error("annulus needs 0 < r < 1");
}

int ClosedFormKernel::dimension() const { return (id_ == "disk" || id_ == "annulus") ? 1 : 2; }

nlohmann::json ClosedFormKernel::provenance() const {
    nlohmann::json j{{"domain", id_}, {"source", "closed_form"}};
    if (id_ == "annulus") j["inner_radius"] = r_;
    return j;
}

namespace {

struct DiskJet {
    cdouble k, kz, kw, kwz;
};

// K = 1/(pi (1-u)^2), u = z conj(w)
DiskJet disk_jet(cdouble z, cdouble w) {
    const cdouble wb = std::conj(w);
    const cdouble u = z * wb;
    const cdouble q = 1.0 - u;
    if (std::abs(q) == 0.0) throw Error("disk kernel evaluated on the boundary diagonal");
    const cdouble q3 = q * q * q;
    return {1.0 / (kPi * q * q), 2.0 * wb / (kPi * q3), 2.0 * z / (kPi * q3), (2.0 + 4.0 * u) / (kPi * q3 * q)};
}

}  // namespace

KernelJet ClosedFormKernel::jet(const ComplexPoint& z, const ComplexPoint& w) const {
    const int n = dimension();
    if (z.size() != n || w.size() != n) throw DimensionMismatch("kernel argument dimension");
    KernelJet out;
    out.dz.resize(n);
    out.dwbar.resize(n);
    out.dwbar_dz.resize(n, n);
    if (id_ == "disk") {
        const auto d = disk_jet(z(0), w(0));
        out.value = d.k;
        out.dz(0) = d.kz;
        out.dwbar(0) = d.kw;
        out.dwbar_dz(0, 0) = d.kwz;
    } else if (id_ == "annulus") {
        const cdouble u = z(0) * std::conj(w(0));
        const auto f = annulus_series(r_, u);
        out.value = f[0];
        out.dz(0) = std::conj(w(0)) * f[1];
        out.dwbar(0) = z(0) * f[1];
        out.dwbar_dz(0, 0) = f[1] + u * f[2];
    } else if (id_ == "polydisk2") {
        const auto a = disk_jet(z(0), w(0));
        const auto b = disk_jet(z(1), w(1));
        out.value = a.k * b.k;
        out.dz << a.kz * b.k, a.k * b.kz;
        out.dwbar << a.kw * b.k, a.k * b.kw;
        out.dwbar_dz << a.kwz * b.k, a.kw * b.kz, a.kz * b.kw, a.k * b.kwz;
    } else {
        // ball2: K = 2/(pi^2 (1-u)^3), u = <z, w>
        const cdouble u = z(0) * std::conj(w(0)) + z(1) * std::conj(w(1));
        const cdouble q = 1.0 - u;
        if (std::abs(q) == 0.0) throw Error("ball kernel evaluated on the boundary diagonal");
        const double c = 2.0 / (kPi * kPi);
        const cdouble q3 = q * q * q;
        const cdouble q4 = q3 * q;
        out.value = c / q3;
        for (int j = 0; j < 2; ++j) {
            out.dz(j) = 3.0 * c * std::conj(w(j)) / q4;
            out.dwbar(j) = 3.0 * c * z(j) / q4;
        }
        for (int i = 0; i < 2; ++i)
            for (int j = 0; j < 2; ++j)
                out.dwbar_dz(i, j) = 3.0 * c * ((i == j ? 1.0 : 0.0) / q4 + 4.0 * z(i) * std::conj(w(j)) / (q4 * q));
    }
    return out;
}

cdouble ClosedFormKernel::eval(const ComplexPoint& z, const ComplexPoint& w) const { return jet(z, w).value; }

cdouble eval_kernel_closed(const std::string& id, const ComplexPoint& z, const ComplexPoint& w, double inner_radius) {
    return ClosedFormKernel(id, inner_radius).eval(z, w);
}

// ---------------------------------------------------------------------------

cdouble eval_polynomial(const Polynomial& f, const ComplexPoint& z) {
    cdouble s = 0.0;
    for (const auto& t : f) {
        if (t.k.n != z.size()) throw DimensionMismatch("polynomial term dimension");
        cdouble m = t.c;
        for (int j = 0; j < t.k.n; ++j) m *= std::pow(z(j), t.k[j]);
        s += m;
    }
    return s;
}

double reproducing_residual(const Kernel& kernel, const Polynomial& f, const SampleCloud& cloud,
                            const std::vector<ComplexPoint>& probes) {
    if (cloud.points.empty()) throw Error("empty sample cloud");
    std::vector<cdouble> fw;
    fw.reserve(cloud.points.size());
    for (const auto& w : cloud.points) fw.push_back(eval_polynomial(f, w));
    const double weight = cloud.volume_estimate / static_cast<double>(cloud.points.size());

    const auto* model = dynamic_cast<const KernelModel*>(&kernel);
    // K(z,w) = (C^T v(z)) . conj(v(w)), so the cloud sum collapses to one vector
    Eigen::VectorXcd moments;
    if (model) {
        moments = Eigen::VectorXcd::Zero(static_cast<Eigen::Index>(model->basis().size()));
        for (std::size_t i = 0; i < cloud.points.size(); ++i)
            moments += fw[i] * monomial_jet(model->basis(), cloud.points[i], false).value.conjugate();
    }
    double worst = 0.0;
    for (const auto& z : probes) {
        cdouble integral = 0.0;
        if (model) {
            const Eigen::VectorXcd a =
                model->coefficients().transpose() * monomial_jet(model->basis(), z, false).value;
            integral = a.transpose() * moments;
        } else {
            for (std::size_t i = 0; i < cloud.points.size(); ++i) integral += fw[i] * kernel.eval(z, cloud.points[i]);
        }
        worst = std::max(worst, std::abs(integral * weight - eval_polynomial(f, z)));
    }
    return worst;
}

// ---------------------------------------------------------------------------

BuiltKernel build_kernel(const DomainSpec& spec, const KernelBuildOptions& options) {
    const bool reinhardt =
        spec.id == "disk" || spec.id == "annulus" || spec.id == "polydisk2" || spec.id == "ball2";
    const bool exact = reinhardt && !options.force_qmc;
    const int n = spec.dimension;
    const int cutoff = options.cutoff.value_or(n == 1 ? 40 : 12);

    MonomialBasis basis;
    if (spec.id == "annulus") {
        basis = monomial_basis(1, CutoffMode::total_degree, cutoff, std::nullopt, -cutoff);
    } else if (options.weighted && spec.weight && n == 2) {
        basis = monomial_basis(n, CutoffMode::weighted_degree, cutoff, spec.weight);
    } else {
        basis = monomial_basis(n, CutoffMode::total_degree, cutoff);
    }

    BuiltKernel out;
    GramMatrix gram;
    double volume = 0.0;
    if (exact) {
        gram = gram_exact_reinhardt(spec, basis);
        volume = *spec.known_volume;
    } else {
        out.cloud = sample(spec, options.samples, options.seed);
        gram = gram_qmc(basis, *out.cloud);
        volume = out.cloud->volume_estimate;
    }
    const auto on = orthonormalize(gram, options.floor_ratio);
    Provenance prov{spec.id, gram.source, exact ? 0 : options.seed, exact ? 0 : options.samples,
                    options.floor_ratio, gram.condition};
    out.model = std::make_shared<const KernelModel>(kernel_model(basis, on, volume, prov));
    return out;
}

// ---------------------------------------------------------------------------
// Serialization

nlohmann::json to_json(const MonomialBasis& basis) {
    nlohmann::json ex = nlohmann::json::array();
    for (const auto& k : basis.exponents) {
        if (k.n == 1) ex.push_back({k[0]});
        else ex.push_back({k[0], k[1]});
    }
    nlohmann::json j{{"dimension", basis.dimension},
                     {"cutoff_mode", basis.mode == CutoffMode::weighted_degree ? "weighted" : "total"},
                     {"cutoff", basis.cutoff},
                     {"exponents", ex}};
    if (basis.weight) j["weight"] = std::vector<std::int64_t>(basis.weight->m.begin(), basis.weight->m.begin() + basis.weight->n);
    if (basis.laurent_min) j["laurent_min"] = *basis.laurent_min;
    return j;
}

MonomialBasis basis_from_json(const nlohmann::json& j) {
    const int n = j.at("dimension").get<int>();
    const auto mode = j.at("cutoff_mode").get<std::string>() == "weighted" ? CutoffMode::weighted_degree
                                                                           : CutoffMode::total_degree;
    std::optional<Weight> w;
    if (j.contains("weight")) {
        const auto m = j.at("weight").get<std::vector<std::int64_t>>();
        w = m.size() == 1 ? Weight(m[0]) : Weight(m[0], m[1]);
    }
    std::optional<int> lmin;
    if (j.contains("laurent_min")) lmin = j.at("laurent_min").get<int>();
    MonomialBasis b = monomial_basis(n, mode, j.at("cutoff").get<int>(), w, lmin);
    if (j.contains("exponents") && j.at("exponents").size() != b.size())
        throw Error("stored exponents disagree with the regenerated basis");
    return b;
}

nlohmann::json to_json(const KernelModel& model) {
    const Matrix& c = model.coefficients();
    nlohmann::json cj = nlohmann::json::array();
    for (Eigen::Index a = 0; a < c.rows(); ++a)
        for (Eigen::Index b = 0; b < c.cols(); ++b) cj.push_back({c(a, b).real(), c(a, b).imag()});
    return {{"basis", to_json(model.basis())},
            {"C", cj},
            {"effective_rank", model.effective_rank()},
            {"volume_estimate", model.volume_estimate()},
            {"provenance", model.provenance()}};
}

KernelModel kernel_from_json(const nlohmann::json& j) {
    MonomialBasis basis = basis_from_json(j.at("basis"));
    const auto n = static_cast<Eigen::Index>(basis.size());
    const auto& cj = j.at("C");
    if (static_cast<Eigen::Index>(cj.size()) != n * n) throw Error("coefficient tensor size mismatch");
    Matrix c(n, n);
    for (Eigen::Index a = 0; a < n; ++a)
        for (Eigen::Index b = 0; b < n; ++b) {
            const auto& e = cj.at(static_cast<std::size_t>(a * n + b));
            c(a, b) = cdouble(e.at(0).get<double>(), e.at(1).get<double>());
        }
    const auto& p = j.at("provenance");
    Provenance prov;
    prov.domain = p.at("domain").get<std::string>();
    prov.source = p.at("source").get<std::string>() == "qmc" ? GramSource::qmc : GramSource::exact;
    prov.seed = p.value("seed", std::uint64_t{0});
    prov.count = p.value("count", std::int64_t{0});
    prov.floor_ratio = p.value("floor_ratio", kDefaultFloorRatio);
    prov.condition = p.value("condition", 1.0);
    return KernelModel(std::move(basis), std::move(c), j.at("effective_rank").get<int>(),
                       j.at("volume_estimate").get<double>(), std::move(prov));
}

}  // namespace bergman
