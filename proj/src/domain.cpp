#include "bergman/domain.hpp"

#include <cmath>
#include <random>
#include <sstream>

namespace bergman {

double DomainSpec::box_volume() const {
    double v = 1.0;
    for (const auto& [lo, hi] : bounding_box) v *= hi - lo;
    return v;
}

std::pair<cdouble, cdouble> symmetric_roots(cdouble s, cdouble p) {
    const cdouble d = std::sqrt(s * s - 4.0 * p);
    const cdouble plus = s + d;
    const cdouble minus = s - d;
    const cdouble l1 = (std::abs(plus) >= std::abs(minus) ? plus : minus) / 2.0;
    if (l1 == cdouble(0.0)) return {l1, cdouble(0.0)};
    return {l1, p / l1};
}

namespace {

void require_dimension(const DomainSpec& spec, const ComplexPoint& z) {
    if (z.size() != spec.dimension)
        throw DimensionMismatch("point of dimension " + std::to_string(z.size()) + " for domain " + spec.id);
}

bool in_ball(const ComplexPoint& z) { return std::norm(z(0)) + std::norm(z(1)) < 1.0; }

}  // namespace

bool membership(const DomainSpec& spec, const ComplexPoint& z) {
    require_dimension(spec, z);
    const std::string& id = spec.id;
    if (id == "disk") return std::norm(z(0)) < 1.0;
    if (id == "annulus") {
        const double r = spec.params.at(0);
        const double a = std::abs(z(0));
        return r < a && a < 1.0;
    }
    if (id == "polydisk2") return std::norm(z(0)) < 1.0 && std::norm(z(1)) < 1.0;
    if (id == "ball2") return in_ball(z);
    if (id == "D1") return in_ball(z) && std::abs(z(0) * z(0) * z(0) + z(1) * z(1)) < 1.0;
    if (id == "D2") return in_ball(z) && std::abs(z(0) * z(0) + z(1)) < 1.0;
    if (id == "D1f")
        return std::norm(z(0)) + std::norm(z(1)) + std::abs(z(0) * z(0) * z(0) + z(1) * z(1)) < 1.0;
    if (id == "G2") {
        const auto [l1, l2] = symmetric_roots(z(0), z(1));
        return std::abs(l1) < 1.0 && std::abs(l2) < 1.0;
    }
    if (id == "E_half2") {
        const auto [l1, l2] = symmetric_roots(z(0), z(1));
        return std::abs(l1) + std::abs(l2) < 1.0;
    }
    throw Error("unknown domain id '" + id + "'");
}

// ---------------------------------------------------------------------------

ScrambledHalton::ScrambledHalton(int dimensions, std::uint64_t seed) {
    static constexpr int kPrimes[] = {2, 3, 5, 7};
    if (dimensions < 1 || dimensions > 4) throw Error("Halton sampler supports 1..4 dimensions");
    std::mt19937_64 rng(seed ^ 0x9E3779B97F4A7C15ULL);
    for (int d = 0; d < dimensions; ++d) {
        const int b = kPrimes[d];
        // enough digits to resolve a double mantissa
        const int ndig = static_cast<int>(std::ceil(53.0 / std::log2(static_cast<double>(b))));
        bases_.push_back(b);
        digits_.push_back(ndig);
        std::vector<std::uint8_t> perm(static_cast<std::size_t>(ndig * b));
        for (int pos = 0; pos < ndig; ++pos) {
            std::uint8_t* row = perm.data() + pos * b;
            for (int i = 0; i < b; ++i) row[i] = static_cast<std::uint8_t>(i);
            // Fisher-Yates on raw engine output; mt19937_64 is fully specified.
            for (int i = b - 1; i > 0; --i) {
                const auto j = static_cast<int>(rng() % static_cast<std::uint64_t>(i + 1));
                std::swap(row[i], row[j]);
            }
        }
        perms_.push_back(std::move(perm));
    }
}

void ScrambledHalton::point(std::uint64_t index, std::vector<double>& out) const {
    out.resize(bases_.size());
    for (std::size_t d = 0; d < bases_.size(); ++d) {
        const auto b = static_cast<std::uint64_t>(bases_[d]);
        const std::uint8_t* perm = perms_[d].data();
        const double inv_b = 1.0 / static_cast<double>(b);
        double scale = inv_b;
        double x = 0.0;
        std::uint64_t i = index;
        for (int pos = 0; pos < digits_[d]; ++pos) {
            const auto digit = static_cast<int>(i % b);
            i /= b;
            x += perm[pos * static_cast<int>(b) + digit] * scale;
            scale *= inv_b;
        }
        out[d] = x;
    }
}

SampleCloud sample(const DomainSpec& spec, std::int64_t count, std::uint64_t seed) {
    if (count < 1) throw Error("sample count must be positive");
    const int real_dims = 2 * spec.dimension;
    if (static_cast<int>(spec.bounding_box.size()) != real_dims) throw Error("bounding box has wrong length");
    ScrambledHalton halton(real_dims, seed);

    SampleCloud cloud;
    cloud.seed = seed;
    cloud.requested = count;
    std::vector<double> u;
    ComplexPoint z(spec.dimension);
    for (std::int64_t i = 1; i <= count; ++i) {
        halton.point(static_cast<std::uint64_t>(i), u);
        for (int j = 0; j < spec.dimension; ++j) {
            const auto& [rlo, rhi] = spec.bounding_box[2 * j];
            const auto& [ilo, ihi] = spec.bounding_box[2 * j + 1];
            z(j) = cdouble(rlo + (rhi - rlo) * u[2 * j], ilo + (ihi - ilo) * u[2 * j + 1]);
        }
        if (membership(spec, z)) cloud.points.push_back(z);
    }
    cloud.accepted = static_cast<std::int64_t>(cloud.points.size());
    if (cloud.accepted == 0)
        throw Error("no accepted points for domain " + spec.id + " after " + std::to_string(count) + " proposals");
    cloud.volume_estimate =
        spec.box_volume() * static_cast<double>(cloud.accepted) / static_cast<double>(cloud.requested);
    return cloud;
}

// ---------------------------------------------------------------------------

namespace {

using Box = std::vector<std::pair<double, double>>;

Box box4(double a, double b) { return {{-a, a}, {-a, a}, {-b, b}, {-b, b}}; }

DomainSpec make(std::string id, int dim, std::optional<Weight> w, Box box, std::optional<double> vol) {
    DomainSpec s;
    s.id = std::move(id);
    s.dimension = dim;
    s.weight = w;
    s.bounding_box = std::move(box);
    s.known_volume = vol;
    return s;
}

}  // namespace

DomainSpec make_annulus(double inner_radius) {
    if (!(inner_radius > 0.0 && inner_radius < 1.0)) throw Error("annulus needs 0 < r < 1");
    DomainSpec s = make("annulus", 1, std::nullopt, {{-1, 1}, {-1, 1}},
                        kPi * (1.0 - inner_radius * inner_radius));
    s.params = {inner_radius};
    return s;
}

std::vector<DomainSpec> catalog() {
    const double ball_vol = kPi * kPi / 2.0;
    return {
        make("disk", 1, Weight(1), {{-1, 1}, {-1, 1}}, kPi),
        make_annulus(0.5),
        make("polydisk2", 2, Weight(1, 1), box4(1, 1), kPi * kPi),
        make("ball2", 2, Weight(1, 1), box4(1, 1), ball_vol),
        // |z1|^3 + |z2|^2 < |z1|^2 + |z2|^2 < 1 inside the ball, so D1 is the ball.
        make("D1", 2, Weight(2, 3), box4(1, 1), ball_vol),
        make("D2", 2, Weight(1, 2), box4(1, 1), std::nullopt),
        make("D1f", 2, Weight(2, 3), box4(1, 1), std::nullopt),
        // Vol(G2) = (1/2) * int_{bidisk} |z1 - z2|^2 = pi^2 / 2
        make("G2", 2, Weight(1, 2), box4(2, 1), ball_vol),
        // Vol(E_half2) = int_{|z1|+|z2|<1} |z1|^2 = pi^2 / 30
        make("E_half2", 2, Weight(1, 2), box4(1, 0.25), kPi * kPi / 30.0),
    };
}

DomainSpec find_domain(const std::string& id) {
    if (id.rfind("annulus", 0) == 0 && id.size() > 7 && id[7] == ':') return make_annulus(std::stod(id.substr(8)));
    for (auto& d : catalog())
        if (d.id == id) return d;
    throw Error("unknown domain id '" + id + "'");
}

double ray_exit_radius(const DomainSpec& spec, const ComplexPoint& direction) {
    double diag = 0.0;
    for (const auto& [lo, hi] : spec.bounding_box) diag += (hi - lo) * (hi - lo);
    diag = std::sqrt(diag);
    const double step = diag / 2048.0;
    double inside = 0.0;
    double outside = step;
    while (membership(spec, outside * direction)) {
        inside = outside;
        outside += step;
        if (outside > 2.0 * diag) throw Error("ray never leaves domain " + spec.id);
    }
    for (int it = 0; it < 60; ++it) {
        const double mid = 0.5 * (inside + outside);
        (membership(spec, mid * direction) ? inside : outside) = mid;
    }
    return inside;
}

std::vector<ComplexPoint> make_probes(const DomainSpec& spec, const SampleCloud& cloud, std::size_t count,
                                      double fraction) {
    if (!spec.contains_origin()) throw Error("radial probes need a domain containing the origin");
    if (!(fraction > 0.0 && fraction < 1.0)) throw Error("probe fraction must lie in (0, 1)");
    std::vector<ComplexPoint> probes;
    for (const auto& z : cloud.points) {
        if (probes.size() == count) break;
        const double r = z.norm();
        if (r == 0.0) continue;
        const ComplexPoint dir = z / r;
        probes.push_back(fraction * ray_exit_radius(spec, dir) * dir);
    }
    if (probes.size() < count) throw Error("cloud too small for requested probe count");
    return probes;
}

// ---------------------------------------------------------------------------

nlohmann::json to_json(const DomainSpec& spec) {
    nlohmann::json j;
    j["id"] = spec.id;
    j["dimension"] = spec.dimension;
    j["params"] = spec.params;
    if (spec.weight) {
        std::vector<std::int64_t> w(spec.weight->m.begin(), spec.weight->m.begin() + spec.weight->n);
        j["weight"] = w;
    } else {
        j["weight"] = nullptr;
    }
    nlohmann::json box = nlohmann::json::array();
    for (const auto& [lo, hi] : spec.bounding_box) box.push_back({lo, hi});
    j["bounding_box"] = box;
    if (spec.known_volume) j["known_volume"] = *spec.known_volume;
    return j;
}

DomainSpec domain_from_json(const nlohmann::json& j) {
    DomainSpec s;
    s.id = j.at("id").get<std::string>();
    s.dimension = j.at("dimension").get<int>();
    if (s.dimension != 1 && s.dimension != 2) throw Error("dimension must be 1 or 2");
    if (j.contains("params")) s.params = j.at("params").get<std::vector<double>>();
    if (j.contains("weight") && !j.at("weight").is_null()) {
        const auto w = j.at("weight").get<std::vector<std::int64_t>>();
        if (static_cast<int>(w.size()) != s.dimension) throw Error("weight length differs from dimension");
        s.weight = w.size() == 1 ? Weight(w[0]) : Weight(w[0], w[1]);
    }
    for (const auto& iv : j.at("bounding_box")) s.bounding_box.emplace_back(iv.at(0).get<double>(), iv.at(1).get<double>());
    if (static_cast<int>(s.bounding_box.size()) != 2 * s.dimension) throw Error("bounding box has wrong length");
    if (j.contains("known_volume")) s.known_volume = j.at("known_volume").get<double>();
    if (s.id == "annulus" && s.params.size() != 1) throw Error("annulus needs its inner radius in params");
    // reject ids the membership predicate does not know
    membership(s, ComplexPoint::Zero(s.dimension));
    return s;
}

std::string cloud_to_csv(const SampleCloud& cloud) {
    std::ostringstream os;
    os.precision(17);
    const int n = cloud.points.empty() ? 0 : static_cast<int>(cloud.points.front().size());
    for (int j = 0; j < n; ++j) os << (j ? "," : "") << "re(z" << j + 1 << "),im(z" << j + 1 << ")";
    os << "\n";
    for (const auto& z : cloud.points) {
        for (int j = 0; j < n; ++j) os << (j ? "," : "") << z(j).real() << "," << z(j).imag();
        os << "\n";
    }
    return os.str();
}

}  // namespace bergman
