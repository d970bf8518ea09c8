#include "bergman/geometry.hpp"

#include <cmath>
#include <limits>
#include <sstream>

namespace bergman {

TMatrix t_matrix(const Kernel& kernel, const ComplexPoint& z, const ComplexPoint& w, double guard) {
    const KernelJet j = kernel.jet(z, w);
    const double mag = std::abs(j.value);
    if (!(mag > guard)) throw KernelNearZero(mag);
    const int n = kernel.dimension();
    TMatrix t;
    t.z = z;
    t.w = w;
    t.kernel_value = j.value;
    t.entries.resize(n, n);
    const cdouble k2 = j.value * j.value;
    for (int i = 0; i < n; ++i)
        for (int c = 0; c < n; ++c) t.entries(i, c) = (j.value * j.dwbar_dz(i, c) - j.dwbar(i) * j.dz(c)) / k2;
    return t;
}

namespace {

Eigen::SelfAdjointEigenSolver<SmallMatrix> hermitian_eigen(const SmallMatrix& m) {
    if (m.rows() != m.cols() || m.rows() == 0) throw Error("matrix must be square");
    if (max_abs_entry(m - m.adjoint()) > 1e-9 * std::max(1.0, max_abs_entry(m)))
        throw Error("matrix is not Hermitian");
    const SmallMatrix h = 0.5 * (m + m.adjoint());
    Eigen::SelfAdjointEigenSolver<SmallMatrix> es(h);
    if (es.info() != Eigen::Success) throw Error("eigendecomposition failed");
    if (!(es.eigenvalues().minCoeff() > 0)) throw Error("matrix is not positive definite");
    return es;
}

}  // namespace

SmallMatrix hermitian_sqrt(const SmallMatrix& m) {
    const auto es = hermitian_eigen(m);
    const SmallMatrix& u = es.eigenvectors();
    return u * es.eigenvalues().cwiseSqrt().cast<cdouble>().asDiagonal() * u.adjoint();
}

SmallMatrix hermitian_inv_sqrt(const SmallMatrix& m) {
    const auto es = hermitian_eigen(m);
    const SmallMatrix& u = es.eigenvectors();
    return u * es.eigenvalues().cwiseSqrt().cwiseInverse().cast<cdouble>().asDiagonal() * u.adjoint();
}

std::string to_string(Tier t) { return t == Tier::exact ? "exact" : "qmc"; }

Tier parse_tier(const std::string& s) {
    if (s == "exact") return Tier::exact;
    if (s == "qmc") return Tier::qmc;
    throw Error("unknown tolerance tier '" + s + "'");
}

double tolerance_for(const std::string& kind, Tier tier) {
    const bool exact = tier == Tier::exact;
    if (kind == "minimality") return exact ? 1e-8 : 0.05;
    if (kind == "representativity") return exact ? 1e-8 : 0.1;
    if (kind == "unitarity") return exact ? 1e-8 : 0.05;
    if (kind == "diagram") return exact ? 1e-6 : 0.1;
    if (kind == "transformation") return exact ? 1e-10 : 0.05;
    if (kind == "linearity") return exact ? 1e-8 : 0.1;
    throw Error("unknown report kind '" + kind + "'");
}

void VerificationReport::finalize() {
    verdict = true;
    for (const auto& [name, value] : residuals) {
        const auto it = tolerances.find(name);
        if (it == tolerances.end()) throw Error("residual '" + name + "' has no tolerance");
        if (!(value <= it->second)) verdict = false;
    }
}

nlohmann::json to_json(const VerificationReport& r) {
    nlohmann::json res = nlohmann::json::object();
    for (const auto& [k, v] : r.residuals) res[k] = v;
    nlohmann::json tol = nlohmann::json::object();
    for (const auto& [k, v] : r.tolerances) tol[k] = v;
    return {{"kind", r.kind},       {"domain", r.domain},   {"map", r.map},
            {"residuals", res},     {"tolerances", tol},    {"verdict", r.verdict},
            {"tier", to_string(r.tier)}, {"probes", r.probes}, {"provenance", r.provenance},
            {"details", r.details}};
}

namespace {

VerificationReport start_report(std::string kind, const Kernel& kernel, std::string map, std::optional<Tier> tier) {
    VerificationReport r;
    r.kind = std::move(kind);
    r.domain = kernel.name();
    r.map = std::move(map);
    r.tier = tier.value_or(default_tier(kernel));
    r.provenance = kernel.provenance();
    return r;
}

void set_residual(VerificationReport& r, const std::string& name, double value) {
    r.residuals[name] = value;
    r.tolerances[name] = tolerance_for(r.kind, r.tier);
}

nlohmann::json matrix_json(const SmallMatrix& m) {
    nlohmann::json rows = nlohmann::json::array();
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        nlohmann::json row = nlohmann::json::array();
        for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back({m(i, j).real(), m(i, j).imag()});
        rows.push_back(row);
    }
    return rows;
}

ComplexPoint origin(int n) { return ComplexPoint::Zero(n); }

}  // namespace

VerificationReport minimality_report(const Kernel& kernel, const std::vector<ComplexPoint>& probes, double volume,
                                     std::optional<ComplexPoint> center, std::optional<Tier> tier) {
    if (!(volume > 0)) throw Error("volume must be positive");
    const ComplexPoint c = center.value_or(origin(kernel.dimension()));
    auto r = start_report("minimality", kernel, "", tier);
    const cdouble k0 = kernel.eval(c, c);
    double variation = 0.0;
    for (const auto& z : probes) variation = std::max(variation, std::abs(kernel.eval(z, c) - k0) / std::abs(k0));
    set_residual(r, "kernel_variation", variation);
    set_residual(r, "volume_constant", std::abs(k0 - 1.0 / volume) / std::abs(k0));
    r.probes = probes.size();
    r.details = {{"K_center", {k0.real(), k0.imag()}}, {"volume", volume}};
    r.finalize();
    return r;
}

VerificationReport representativity_report(const Kernel& kernel, const std::vector<ComplexPoint>& probes,
                                           std::optional<ComplexPoint> center, std::optional<Tier> tier) {
    const int n = kernel.dimension();
    const ComplexPoint c = center.value_or(origin(n));
    auto r = start_report("representativity", kernel, "", tier);
    const SmallMatrix t0 = t_matrix(kernel, c, c).entries;
    const double scale = max_abs_entry(t0);
    const double diag_scale = t0.diagonal().cwiseAbs().maxCoeff();

    auto off_diag = [n](const SmallMatrix& t) {
        double m = 0.0;
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                if (i != j) m = std::max(m, std::abs(t(i, j)));
        return m;
    };
    double variation = 0.0;
    double off = off_diag(t0);
    for (const auto& z : probes) {
        const SmallMatrix t = t_matrix(kernel, z, c).entries;
        variation = std::max(variation, max_abs_entry(t - t0) / scale);
        off = std::max(off, off_diag(t));
    }
    set_residual(r, "t_variation", variation);
    set_residual(r, "off_diagonal", off / diag_scale);
    r.probes = probes.size();
    r.details = {{"T_center", matrix_json(t0)}};
    r.finalize();
    return r;
}

// ---------------------------------------------------------------------------

BergmanMap::BergmanMap(KernelPtr kernel, ComplexPoint center, double guard)
    : kernel_(std::move(kernel)), p_(std::move(center)), guard_(guard) {
    if (!kernel_) throw Error("null kernel");
    const TMatrix t = t_matrix(*kernel_, p_, p_, guard_);
    t_pp_ = 0.5 * (t.entries + t.entries.adjoint());
    t_inv_sqrt_ = hermitian_inv_sqrt(t_pp_);
    const KernelJet j = kernel_->jet(p_, p_);
    grad_p_ = j.dwbar / j.value;
}

ComplexPoint BergmanMap::operator()(const ComplexPoint& z) const {
    const KernelJet j = kernel_->jet(z, p_);
    const double mag = std::abs(j.value);
    if (!(mag > guard_)) throw KernelNearZero(mag);
    const ComplexPoint g = j.dwbar / j.value;
    return t_inv_sqrt_ * (g - grad_p_);
}

SmallMatrix BergmanMap::jacobian(const ComplexPoint& z) const {
    return t_inv_sqrt_ * t_matrix(*kernel_, z, p_, guard_).entries;
}

BergmanMap bergman_map(KernelPtr kernel, const ComplexPoint& p) { return BergmanMap(std::move(kernel), p); }

LMatrix l_matrix(const Kernel& kd, const Kernel& kdp, const HoloMap& map, const ComplexPoint& p) {
    const SmallMatrix j = jacobian(map, p);
    if (j.rows() != j.cols() || std::abs(j.determinant()) < 1e-14) throw Error("singular Jacobian at p");
    const ComplexPoint fp = eval(map, p);
    const SmallMatrix t = t_matrix(kd, p, p).entries;
    const SmallMatrix tp = t_matrix(kdp, fp, fp).entries;
    LMatrix out;
    out.entries = hermitian_inv_sqrt(tp) * j.inverse().adjoint() * hermitian_sqrt(t);
    const auto n = out.entries.rows();
    out.unitarity_residual = max_abs_entry(out.entries.adjoint() * out.entries - SmallMatrix::Identity(n, n));
    return out;
}

VerificationReport unitarity_report(const Kernel& kd, const Kernel& kdp, const HoloMap& map, const ComplexPoint& p,
                                    std::optional<Tier> tier) {
    auto r = start_report("unitarity", kd, map.name, tier);
    const LMatrix l = l_matrix(kd, kdp, map, p);
    set_residual(r, "unitarity", l.unitarity_residual);
    r.probes = 1;
    r.details = {{"L", matrix_json(l.entries)}};
    r.finalize();
    return r;
}

VerificationReport diagram_report(KernelPtr kd, KernelPtr kdp, const HoloMap& map, const ComplexPoint& p,
                                  const std::vector<ComplexPoint>& probes, std::optional<Tier> tier) {
    auto r = start_report("diagram", *kd, map.name, tier);
    const LMatrix l = l_matrix(*kd, *kdp, map, p);
    const BergmanMap sigma(kd, p);
    const BergmanMap sigma_image(kdp, eval(map, p));
    double worst = 0.0;
    std::size_t used = 0;
    std::size_t skipped = 0;
    for (const auto& z : probes) {
        try {
            const ComplexPoint lhs = sigma_image(eval(map, z));
            const ComplexPoint rhs = l.entries * sigma(z);
            worst = std::max(worst, max_abs(lhs - rhs));
            ++used;
        } catch (const KernelNearZero&) {
            ++skipped;
        }
    }
    set_residual(r, "diagram", worst);
    r.probes = used;
    r.details = {{"skipped_probes", skipped}, {"L", matrix_json(l.entries)}};
    r.finalize();
    return r;
}

VerificationReport transformation_report(const Kernel& kd, const Kernel& kdp, const HoloMap& map,
                                         const std::vector<std::pair<ComplexPoint, ComplexPoint>>& pairs,
                                         std::optional<Tier> tier) {
    auto r = start_report("transformation", kd, map.name, tier);
    set_residual(r, "transformation", transformation_residual(kd, kdp, map, pairs));
    r.probes = pairs.size();
    r.finalize();
    return r;
}

LinearExtraction extract_linear(const Kernel& kd, const Kernel& kdp, const HoloMap& map,
                                const std::vector<ComplexPoint>& probes) {
    const int n = kd.dimension();
    const ComplexPoint zero = origin(n);
    if (max_abs(eval(map, zero)) > 1e-12) throw Error("map does not preserve the origin");
    const LMatrix l = l_matrix(kd, kdp, map, zero);
    const SmallMatrix t = t_matrix(kd, zero, zero).entries;
    const SmallMatrix tp = t_matrix(kdp, zero, zero).entries;
    LinearExtraction out;
    out.a = hermitian_inv_sqrt(tp) * l.entries * hermitian_sqrt(t);
    for (const auto& z : probes) out.residual = std::max(out.residual, max_abs(eval(map, z) - out.a * z));
    return out;
}

VerificationReport linearity_report(const Kernel& kd, const Kernel& kdp, const HoloMap& map,
                                    const std::vector<ComplexPoint>& probes, std::optional<Tier> tier) {
    auto r = start_report("linearity", kd, map.name, tier);
    const LinearExtraction ex = extract_linear(kd, kdp, map, probes);
    set_residual(r, "linearity", ex.residual);
    r.probes = probes.size();
    r.details = {{"A", matrix_json(ex.a)}, {"jacobian_at_origin", matrix_json(jacobian(map, origin(kd.dimension())))}};
    r.finalize();
    return r;
}

// ---------------------------------------------------------------------------

std::string grid_csv(const Kernel& kernel, const DomainSpec& spec, const GridSlice& slice, GridQuantity quantity) {
    const int n = spec.dimension;
    if (kernel.dimension() != n) throw DimensionMismatch("kernel and domain dimensions differ");
    if (slice.axis_x < 0 || slice.axis_x >= 2 * n || slice.axis_y < 0 || slice.axis_y >= 2 * n ||
        slice.axis_x == slice.axis_y)
        throw Error("grid axes must be two distinct real coordinates");
    if (slice.nx < 2 || slice.ny < 2) throw Error("grid needs at least 2 points per axis");
    ComplexPoint base = slice.base.size() == n ? slice.base : ComplexPoint::Zero(n);
    const ComplexPoint zero = origin(n);

    std::ostringstream os;
    os.precision(17);
    os << "x,y,inside";
    if (quantity == GridQuantity::kernel) {
        os << ",re(K),im(K)";
    } else {
        for (int i = 1; i <= n; ++i)
            for (int j = 1; j <= n; ++j) os << ",re(T" << i << j << "),im(T" << i << j << ")";
    }
    os << "\n";
    auto set_axis = [](ComplexPoint& z, int axis, double v) {
        cdouble& c = z(axis / 2);
        c = axis % 2 == 0 ? cdouble(v, c.imag()) : cdouble(c.real(), v);
    };
    for (int iy = 0; iy < slice.ny; ++iy) {
        const double y = slice.y_lo + (slice.y_hi - slice.y_lo) * iy / (slice.ny - 1);
        for (int ix = 0; ix < slice.nx; ++ix) {
            const double x = slice.x_lo + (slice.x_hi - slice.x_lo) * ix / (slice.nx - 1);
            ComplexPoint z = base;
            set_axis(z, slice.axis_x, x);
            set_axis(z, slice.axis_y, y);
            const bool inside = membership(spec, z);
            os << x << "," << y << "," << (inside ? 1 : 0);
            const int cells = quantity == GridQuantity::kernel ? 2 : 2 * n * n;
            if (!inside) {
                for (int c = 0; c < cells; ++c) os << ",";
            } else if (quantity == GridQuantity::kernel) {
                const cdouble k = kernel.eval(z, zero);
                os << "," << k.real() << "," << k.imag();
            } else {
                try {
                    const SmallMatrix t = t_matrix(kernel, z, zero).entries;
                    for (int i = 0; i < n; ++i)
                        for (int j = 0; j < n; ++j) os << "," << t(i, j).real() << "," << t(i, j).imag();
                } catch (const KernelNearZero&) {
                    for (int c = 0; c < cells; ++c) os << ",";
                }
            }
            os << "\n";
        }
    }
    return os.str();
}

}  // namespace bergman
