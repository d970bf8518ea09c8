#include "bergman/holomap.hpp"

#include <cmath>
#include <map>

namespace bergman {

namespace {

using TermMap = std::map<MultiIndex, cdouble>;

Polynomial to_poly(const TermMap& t) {
    Polynomial p;
    for (const auto& [k, c] : t)
        if (c != cdouble(0.0)) p.push_back({k, c});
    return p;
}

TermMap to_map(const Polynomial& p) {
    TermMap t;
    for (const auto& term : p) t[term.k] += term.c;
    return t;
}

TermMap multiply(const TermMap& a, const TermMap& b) {
    TermMap out;
    for (const auto& [ka, ca] : a)
        for (const auto& [kb, cb] : b) {
            MultiIndex k = ka;
            for (int j = 0; j < k.n; ++j) k[j] += kb[j];
            out[k] += ca * cb;
        }
    return out;
}

TermMap constant(int n, cdouble c) { return {{MultiIndex::zero(n), c}}; }

void check_in(const HoloMap& map, const ComplexPoint& z) {
    if (z.size() != map.dim_in) throw DimensionMismatch("map " + map.name + " expects dimension " + std::to_string(map.dim_in));
}

HoloMap polynomial_map(std::string name, int n, std::vector<Polynomial> comps) {
    HoloMap m;
    m.name = std::move(name);
    m.dim_in = n;
    m.dim_out = static_cast<int>(comps.size());
    m.components = std::move(comps);
    return m;
}

}  // namespace

ComplexPoint eval(const HoloMap& map, const ComplexPoint& z) {
    check_in(map, z);
    ComplexPoint out(map.dim_out);
    if (map.mobius_a) {
        const cdouble a = *map.mobius_a;
        out(0) = (z(0) - a) / (1.0 - std::conj(a) * z(0));
        return out;
    }
    for (int i = 0; i < map.dim_out; ++i) out(i) = eval_polynomial(map.components[static_cast<std::size_t>(i)], z);
    return out;
}

SmallMatrix jacobian(const HoloMap& map, const ComplexPoint& z) {
    check_in(map, z);
    SmallMatrix j = SmallMatrix::Zero(map.dim_out, map.dim_in);
    if (map.mobius_a) {
        const cdouble a = *map.mobius_a;
        const cdouble q = 1.0 - std::conj(a) * z(0);
        j(0, 0) = (1.0 - std::norm(a)) / (q * q);
        return j;
    }
    for (int i = 0; i < map.dim_out; ++i)
        for (const auto& t : map.components[static_cast<std::size_t>(i)])
            for (int c = 0; c < map.dim_in; ++c) {
                if (t.k[c] == 0) continue;
                cdouble v = t.c * static_cast<double>(t.k[c]);
                for (int l = 0; l < map.dim_in; ++l) v *= std::pow(z(l), l == c ? t.k[l] - 1 : t.k[l]);
                j(i, c) += v;
            }
    return j;
}

HoloMap compose(const HoloMap& f, const HoloMap& g) {
    if (!f.is_polynomial() || !g.is_polynomial()) throw Error("compose needs polynomial maps");
    if (f.dim_in != g.dim_out) throw DimensionMismatch("cannot compose " + f.name + " after " + g.name);
    std::vector<TermMap> gcomp;
    for (const auto& p : g.components) gcomp.push_back(to_map(p));

    std::vector<Polynomial> comps;
    for (const auto& fc : f.components) {
        TermMap acc;
        for (const auto& t : fc) {
            TermMap prod = constant(g.dim_in, t.c);
            for (int j = 0; j < f.dim_in; ++j) {
                if (t.k[j] < 0) throw Error("negative exponent in map component");
                for (int e = 0; e < t.k[j]; ++e) prod = multiply(prod, gcomp[static_cast<std::size_t>(j)]);
            }
            for (const auto& [k, c] : prod) acc[k] += c;
        }
        comps.push_back(to_poly(acc));
    }
    HoloMap out = polynomial_map(f.name + "∘" + g.name, g.dim_in, std::move(comps));
    if (f.inverse && g.inverse && f.inverse->is_polynomial() && g.inverse->is_polynomial()) {
        HoloMap inv = compose(*g.inverse, *f.inverse);
        out.inverse = std::make_shared<const HoloMap>(std::move(inv));
    }
    return out;
}

HoloMap identity_map(int n) {
    std::vector<Polynomial> comps;
    for (int j = 0; j < n; ++j) comps.push_back({{MultiIndex::unit(n, j), 1.0}});
    HoloMap m = polynomial_map("identity", n, comps);
    m.inverse = std::make_shared<const HoloMap>(polynomial_map("identity", n, comps));
    return m;
}

HoloMap linear_map(const SmallMatrix& a, std::string name) {
    const int n = static_cast<int>(a.cols());
    std::vector<Polynomial> comps;
    for (int i = 0; i < a.rows(); ++i) {
        Polynomial p;
        for (int j = 0; j < n; ++j)
            if (a(i, j) != cdouble(0.0)) p.push_back({MultiIndex::unit(n, j), a(i, j)});
        comps.push_back(p);
    }
    HoloMap m = polynomial_map(std::move(name), n, comps);
    if (a.rows() == a.cols() && std::abs(a.determinant()) > 1e-300) {
        const SmallMatrix inv = a.inverse();
        std::vector<Polynomial> icomps;
        for (int i = 0; i < n; ++i) {
            Polynomial p;
            for (int j = 0; j < n; ++j)
                if (inv(i, j) != cdouble(0.0)) p.push_back({MultiIndex::unit(n, j), inv(i, j)});
            icomps.push_back(p);
        }
        m.inverse = std::make_shared<const HoloMap>(polynomial_map(m.name + "^-1", n, icomps));
    }
    return m;
}

HoloMap rotation(double theta) {
    HoloMap m = polynomial_map("rotation", 1, {{{MultiIndex(1), std::polar(1.0, theta)}}});
    m.inverse = std::make_shared<const HoloMap>(polynomial_map("rotation^-1", 1, {{{MultiIndex(1), std::polar(1.0, -theta)}}}));
    return m;
}

HoloMap rotation_weighted(const Weight& w, double theta) {
    auto build = [&](double t, std::string name) {
        std::vector<Polynomial> comps;
        for (int j = 0; j < w.n; ++j)
            comps.push_back({{MultiIndex::unit(w.n, j), std::polar(1.0, static_cast<double>(w[j]) * t)}});
        return polynomial_map(std::move(name), w.n, comps);
    };
    HoloMap m = build(theta, "rotation_weighted");
    m.inverse = std::make_shared<const HoloMap>(build(-theta, "rotation_weighted^-1"));
    return m;
}

HoloMap mobius_disk(cdouble a) {
    if (!(std::abs(a) < 1.0)) throw Error("Möbius parameter must lie in the unit disk");
    HoloMap m;
    m.name = "mobius";
    m.mobius_a = a;
    HoloMap inv;
    inv.name = "mobius^-1";
    inv.mobius_a = -a;
    m.inverse = std::make_shared<const HoloMap>(std::move(inv));
    return m;
}

HoloMap coordinate_swap() {
    HoloMap m = polynomial_map("swap", 2, {{{MultiIndex(0, 1), 1.0}}, {{MultiIndex(1, 0), 1.0}}});
    m.inverse = std::make_shared<const HoloMap>(m);
    return m;
}

HoloMap scaling(int n, cdouble factor) {
    std::vector<Polynomial> comps;
    for (int j = 0; j < n; ++j) comps.push_back({{MultiIndex::unit(n, j), factor}});
    return polynomial_map("scale", n, comps);
}

HoloMap zapalowski(cdouble zeta) {
    if (std::abs(std::abs(zeta) - 1.0) > 1e-12) throw Error("zapalowski map needs |zeta| = 1");
    auto build = [](cdouble z, std::string name) {
        const cdouble z2 = z * z;
        return polynomial_map(std::move(name), 2,
                              {{{MultiIndex(1, 0), z}}, {{MultiIndex(2, 0), 0.25 * z2}, {MultiIndex(0, 1), -z2}}});
    };
    // the inverse is the same map with conj(zeta)
    HoloMap m = build(zeta, "zapalowski");
    m.inverse = std::make_shared<const HoloMap>(build(std::conj(zeta), "zapalowski^-1"));
    return m;
}

HoloMap map_by_name(const std::string& name, int dimension, const std::optional<Weight>& weight, double theta,
                    cdouble parameter) {
    if (name == "identity") return identity_map(dimension);
    if (name == "rotation") {
        if (dimension == 1) return rotation(theta);
        return rotation_weighted(Weight(1, 1), theta);
    }
    if (name == "rotation_weighted") {
        if (!weight) throw Error("rotation_weighted needs a weighted domain");
        return rotation_weighted(*weight, theta);
    }
    if (name == "mobius") {
        if (dimension != 1) throw DimensionMismatch("mobius map lives on the disk");
        return mobius_disk(parameter);
    }
    if (name == "swap") return coordinate_swap();
    if (name == "zapalowski") {
        if (dimension != 2) throw DimensionMismatch("zapalowski map lives in C^2");
        return zapalowski(parameter);
    }
    if (name == "scale2") return scaling(dimension, 2.0);
    throw Error("unknown map '" + name + "'");
}

PreservationResult preserves_domain(const HoloMap& map, const DomainSpec& spec, const SampleCloud& cloud) {
    if (cloud.points.empty()) throw Error("empty sample cloud");
    auto fraction = [&](const HoloMap& f) {
        std::size_t inside = 0;
        for (const auto& z : cloud.points)
            if (membership(spec, eval(f, z))) ++inside;
        return static_cast<double>(inside) / static_cast<double>(cloud.points.size());
    };
    PreservationResult r;
    r.forward = fraction(map);
    if (map.inverse) r.inverse = fraction(*map.inverse);
    return r;
}

double transformation_residual(const Kernel& kd, const Kernel& kdp, const HoloMap& map,
                               const std::vector<std::pair<ComplexPoint, ComplexPoint>>& pairs) {
    double worst = 0.0;
    for (const auto& [z, w] : pairs) {
        const cdouble lhs = kd.eval(z, w);
        const cdouble rhs = std::conj(jacobian(map, w).determinant()) * kdp.eval(eval(map, z), eval(map, w)) *
                            jacobian(map, z).determinant();
        worst = std::max(worst, std::abs(lhs - rhs) / std::abs(lhs));
    }
    return worst;
}

LinearFit best_linear_fit(const HoloMap& map, const std::vector<ComplexPoint>& points) {
    if (points.empty()) throw Error("no points to fit");
    const auto n = static_cast<Eigen::Index>(map.dim_in);
    const auto m = static_cast<Eigen::Index>(map.dim_out);
    const auto count = static_cast<Eigen::Index>(points.size());
    Eigen::MatrixXcd x(count, n);
    Eigen::MatrixXcd y(count, m);
    for (Eigen::Index i = 0; i < count; ++i) {
        const auto& z = points[static_cast<std::size_t>(i)];
        x.row(i) = z.transpose();
        y.row(i) = eval(map, z).transpose();
    }
    // rows satisfy y_i^T ~ x_i^T A^T
    const Eigen::MatrixXcd at = x.colPivHouseholderQr().solve(y);
    LinearFit fit;
    fit.a = at.transpose();
    const Eigen::MatrixXcd r = y - x * at;
    fit.max_residual = r.cwiseAbs().maxCoeff();
    fit.rms_residual = std::sqrt(r.squaredNorm() / static_cast<double>(count));
    return fit;
}

// ---------------------------------------------------------------------------

nlohmann::json to_json(const HoloMap& map) {
    nlohmann::json j{{"name", map.name}, {"dim_in", map.dim_in}, {"dim_out", map.dim_out}};
    if (map.mobius_a) {
        j["mobius_a"] = {map.mobius_a->real(), map.mobius_a->imag()};
    } else {
        nlohmann::json comps = nlohmann::json::array();
        for (const auto& p : map.components) {
            nlohmann::json terms = nlohmann::json::array();
            for (const auto& t : p) {
                nlohmann::json k = nlohmann::json::array();
                for (int i = 0; i < t.k.n; ++i) k.push_back(t.k[i]);
                terms.push_back({{"k", k}, {"c", {t.c.real(), t.c.imag()}}});
            }
            comps.push_back(terms);
        }
        j["components"] = comps;
    }
    j["inverse"] = map.inverse ? to_json(*map.inverse) : nlohmann::json(nullptr);
    return j;
}

HoloMap holomap_from_json(const nlohmann::json& j) {
    HoloMap m;
    m.name = j.at("name").get<std::string>();
    m.dim_in = j.at("dim_in").get<int>();
    m.dim_out = j.at("dim_out").get<int>();
    if (j.contains("mobius_a")) {
        m.mobius_a = cdouble(j.at("mobius_a").at(0).get<double>(), j.at("mobius_a").at(1).get<double>());
    } else {
        for (const auto& comp : j.at("components")) {
            Polynomial p;
            for (const auto& t : comp) {
                const auto k = t.at("k").get<std::vector<int>>();
                if (static_cast<int>(k.size()) != m.dim_in) throw DimensionMismatch("term exponent length");
                p.push_back({k.size() == 1 ? MultiIndex(k[0]) : MultiIndex(k[0], k[1]),
                             cdouble(t.at("c").at(0).get<double>(), t.at("c").at(1).get<double>())});
            }
            m.components.push_back(std::move(p));
        }
        if (static_cast<int>(m.components.size()) != m.dim_out) throw DimensionMismatch("component count");
    }
    if (j.contains("inverse") && !j.at("inverse").is_null())
        m.inverse = std::make_shared<const HoloMap>(holomap_from_json(j.at("inverse")));
    return m;
}

}  // namespace bergman
