#include "bergman/lab.hpp"

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <sstream>

namespace bergman {

RunConfig RunConfig::defaults() {
    RunConfig c;
    if (const char* env = std::getenv("BERGMAN_LAB_SEED")) c.seed = std::stoull(env);
    return c;
}

RunConfig RunConfig::merge(RunConfig c, const nlohmann::json& j) {
    if (!j.is_object()) throw Error("config must be a JSON object");
    if (j.contains("domains")) c.domains = j.at("domains").get<std::vector<std::string>>();
    if (j.contains("domain")) c.domains = {j.at("domain").get<std::string>()};
    if (j.contains("seed")) c.seed = j.at("seed").get<std::uint64_t>();
    if (j.contains("samples")) c.samples = j.at("samples").get<std::int64_t>();
    if (j.contains("cutoff") && !j.at("cutoff").is_null()) c.cutoff = j.at("cutoff").get<int>();
    if (j.contains("weighted")) c.weighted = j.at("weighted").get<bool>();
    if (j.contains("floor_ratio")) c.floor_ratio = j.at("floor_ratio").get<double>();
    if (j.contains("tol_tier") && !j.at("tol_tier").is_null()) c.tol_tier = j.at("tol_tier").get<std::string>();
    if (j.contains("kernel")) c.kernel = j.at("kernel").get<std::string>();
    if (j.contains("map")) c.map = j.at("map").get<std::string>();
    if (j.contains("theta")) c.theta = j.at("theta").get<double>();
    if (j.contains("map_param") && !j.at("map_param").is_null()) c.map_param = j.at("map_param").get<double>();
    if (j.contains("out")) c.out = j.at("out").get<std::string>();
    if (c.domains.empty()) throw Error("config names no domain");
    if (c.kernel != "auto" && c.kernel != "model" && c.kernel != "closed") throw Error("kernel must be auto, model or closed");
    if (c.tol_tier) parse_tier(*c.tol_tier);
    return c;
}

nlohmann::json RunConfig::to_json() const {
    return {{"domains", domains},
            {"seed", seed},
            {"samples", samples},
            {"cutoff", cutoff ? nlohmann::json(*cutoff) : nlohmann::json(nullptr)},
            {"weighted", weighted},
            {"floor_ratio", floor_ratio},
            {"tol_tier", tol_tier ? nlohmann::json(*tol_tier) : nlohmann::json(nullptr)},
            {"kernel", kernel},
            {"map", map},
            {"theta", theta},
            {"map_param", map_param ? nlohmann::json(*map_param) : nlohmann::json(nullptr)},
            {"out", out}};
}

KernelBuildOptions RunConfig::build_options() const {
    KernelBuildOptions o;
    o.cutoff = cutoff;
    o.weighted = weighted;
    o.samples = samples;
    o.seed = seed;
    o.floor_ratio = floor_ratio;
    return o;
}

namespace {

bool has_closed_form(const std::string& id) {
    return id == "disk" || id == "annulus" || id == "polydisk2" || id == "ball2";
}

std::optional<Tier> tier_of(const RunConfig& c) {
    if (c.tol_tier) return parse_tier(*c.tol_tier);
    return std::nullopt;
}

HoloMap map_for(const RunConfig& c, const DomainSpec& spec) {
    cdouble param = 0.0;
    if (c.map == "mobius") param = c.map_param.value_or(0.3);
    if (c.map == "zapalowski") param = std::polar(1.0, c.map_param.value_or(0.0));
    return map_by_name(c.map, spec.dimension, spec.weight, c.theta, param);
}

void stamp(VerificationReport& r, const RunConfig& c) {
    r.provenance["config"] = c.to_json();
    r.provenance["version"] = kVersion;
}

constexpr std::int64_t kProbeCloudSize = 4096;

}  // namespace

PreparedDomain prepare_domain(const std::string& id, const RunConfig& config, bool closed_form) {
    PreparedDomain d;
    d.spec = find_domain(id);
    if (closed_form) {
        if (!has_closed_form(d.spec.id)) throw Error("no closed-form kernel for " + id);
        d.kernel = std::make_shared<const ClosedFormKernel>(d.spec.id, d.spec.params.empty() ? 0.5 : d.spec.params[0]);
        d.volume = *d.spec.known_volume;
    } else {
        BuiltKernel built = build_kernel(d.spec, config.build_options());
        d.model = built.model;
        d.kernel = built.model;
        d.cloud = std::move(built.cloud);
        d.volume = built.model->volume_estimate();
    }
    if (d.spec.contains_origin()) {
        const SampleCloud& probe_cloud = d.cloud ? *d.cloud : d.cloud.emplace(sample(d.spec, kProbeCloudSize, config.seed));
        d.probes = make_probes(d.spec, probe_cloud);
    }
    return d;
}

nlohmann::json cmd_catalog() {
    nlohmann::json out = nlohmann::json::array();
    for (const auto& d : catalog()) out.push_back(to_json(d));
    return out;
}

nlohmann::json cmd_weights(const std::string& sub, std::int64_t m1, std::int64_t m2, int bound, const std::string& which,
                           int component) {
    const Weight w(m1, m2);
    const auto [reduced, g] = reduce(w);
    auto list = [](const std::vector<MultiIndex>& ks) {
        nlohmann::json a = nlohmann::json::array();
        for (const auto& k : ks) a.push_back({k[0], k[1]});
        return a;
    };
    const std::string cls = to_string(classify(reduced));
    nlohmann::json j{{"weight", {m1, m2}},
                     {"reduced", {reduced[0], reduced[1]}},
                     {"gcd", g},
                     {"class", cls},
                     {"classification", cls},
                     {"bound", bound},
                     {"linear_forced", linear_forced(reduced, bound)},
                     {"center_commutes", center_commutes(reduced)}};
    if (sub == "classify") return j;
    if (sub == "surviving") {
        const std::vector<std::string> kinds =
            which == "all" ? std::vector<std::string>{"kernel", "c", "c_prime"} : std::vector<std::string>{which};
        nlohmann::json s = nlohmann::json::object();
        for (const auto& k : kinds) s[k] = list(surviving_indices(reduced, parse_class_kind(k), bound));
        j["surviving"] = s;
        return j;
    }
    if (sub == "equivariant") {
        nlohmann::json e = nlohmann::json::object();
        for (int c = 1; c <= 2; ++c)
            if (component == 0 || component == c) e[std::to_string(c)] = list(equivariant_monomials(reduced, c, bound));
        j["equivariant"] = e;
        return j;
    }
    throw Error("unknown weights subcommand '" + sub + "'");
}

nlohmann::json cmd_kernel_build(const RunConfig& config) {
    const DomainSpec spec = find_domain(config.domains.front());
    const BuiltKernel built = build_kernel(spec, config.build_options());
    nlohmann::json j = to_json(*built.model);
    j["provenance"]["version"] = kVersion;
    return j;
}

nlohmann::json cmd_kernel_eval(const nlohmann::json& model, const ComplexPoint& z, const ComplexPoint& w) {
    const KernelModel m = kernel_from_json(model);
    const cdouble k = m.eval(z, w);
    return {{"K", {k.real(), k.imag()}}};
}

VerificationReport cmd_verify(const std::string& kind, const RunConfig& config) {
    const std::string& id = config.domains.front();
    const auto tier = tier_of(config);
    const bool closed_allowed = config.kernel != "model" && has_closed_form(find_domain(id).id);
    const bool map_kind = kind == "diagram" || kind == "unitarity" || kind == "transformation" || kind == "linearity";
    const bool closed = config.kernel == "closed" || (config.kernel == "auto" && map_kind && closed_allowed);
    const PreparedDomain d = prepare_domain(id, config, closed);

    VerificationReport r;
    if (kind == "minimality") {
        r = minimality_report(*d.kernel, d.probes, d.volume, std::nullopt, tier);
    } else if (kind == "representativity") {
        r = representativity_report(*d.kernel, d.probes, std::nullopt, tier);
    } else if (map_kind) {
        const HoloMap f = map_for(config, d.spec);
        const ComplexPoint p = ComplexPoint::Zero(d.spec.dimension);
        if (kind == "diagram") {
            r = diagram_report(d.kernel, d.kernel, f, p, d.probes, tier);
        } else if (kind == "unitarity") {
            r = unitarity_report(*d.kernel, *d.kernel, f, p, tier);
        } else if (kind == "transformation") {
            std::vector<std::pair<ComplexPoint, ComplexPoint>> pairs;
            for (std::size_t i = 0; i < 10 && i < d.probes.size(); ++i)
                pairs.emplace_back(d.probes[i], d.probes[(i + 1) % d.probes.size()]);
            r = transformation_report(*d.kernel, *d.kernel, f, pairs, tier);
        } else {
            r = linearity_report(*d.kernel, *d.kernel, f, d.probes, tier);
        }
    } else {
        throw Error("unknown verification kind '" + kind + "'");
    }
    r.domain = d.spec.id;
    stamp(r, config);
    return r;
}

std::string cmd_grid(const RunConfig& config, const GridSlice& slice, GridQuantity quantity) {
    const std::string& id = config.domains.front();
    const bool closed = config.kernel == "closed";
    const PreparedDomain d = prepare_domain(id, config, closed);
    return grid_csv(*d.kernel, d.spec, slice, quantity);
}

// ---------------------------------------------------------------------------

bool SuiteResult::all_passed() const {
    for (const auto& e : entries)
        if (!e.passed()) return false;
    return true;
}

SuiteResult cmd_suite(const RunConfig& config) {
    SuiteResult out;
    const auto tier = tier_of(config);
    auto add = [&](std::string name, VerificationReport r, std::optional<bool> expected) {
        stamp(r, config);
        out.entries.push_back({std::move(name), std::move(r), expected});
    };

    // Minimality for every weighted domain; representativity is expected only
    // for circular and normal weights.
    std::map<std::string, PreparedDomain> prepared;
    for (const auto& spec : catalog()) {
        if (!spec.weight) continue;
        PreparedDomain d = prepare_domain(spec.id, config);
        add("minimality/" + spec.id, minimality_report(*d.kernel, d.probes, d.volume, std::nullopt, tier), true);
        std::optional<bool> rep_expected;
        if (spec.dimension == 1) {
            rep_expected = true;
        } else {
            const auto cls = classify(reduce(*spec.weight).first);
            if (cls != WeightClass::nonnormal) rep_expected = true;
        }
        add("representativity/" + spec.id, representativity_report(*d.kernel, d.probes, std::nullopt, tier),
            rep_expected);
        prepared.emplace(spec.id, std::move(d));
    }

    // Disk and a Möbius automorphism, closed-form kernels.
    {
        RunConfig c = config;
        const PreparedDomain disk = prepare_domain("disk", c, true);
        const HoloMap mob = mobius_disk(c.map_param.value_or(0.3));
        const ComplexPoint zero = ComplexPoint::Zero(1);
        add("diagram/disk/mobius", diagram_report(disk.kernel, disk.kernel, mob, zero, disk.probes, tier), true);
        add("unitarity/disk/mobius", unitarity_report(*disk.kernel, *disk.kernel, mob, zero, tier), true);
        std::vector<std::pair<ComplexPoint, ComplexPoint>> pairs;
        for (std::size_t i = 0; i < 10; ++i) pairs.emplace_back(disk.probes[i], disk.probes[(i + 3) % disk.probes.size()]);
        add("transformation/disk/mobius", transformation_report(*disk.kernel, *disk.kernel, mob, pairs, tier), true);
        add("linearity/disk/rotation",
            linearity_report(*disk.kernel, *disk.kernel, rotation(config.theta), disk.probes, tier), true);
    }

    // Linearity: forced on the normal fixture, absent for the (1,2) counterexample.
    {
        const PreparedDomain& d = prepared.at("D1f");
        const HoloMap f = rotation_weighted(*d.spec.weight, config.theta);
        add("diagram/D1f/rotation_weighted", diagram_report(d.kernel, d.kernel, f, ComplexPoint::Zero(2), d.probes, tier),
            true);
        add("linearity/D1f/rotation_weighted", linearity_report(*d.kernel, *d.kernel, f, d.probes, tier), true);
    }
    {
        const PreparedDomain& d = prepared.at("E_half2");
        const HoloMap phi = zapalowski(std::polar(1.0, config.map_param.value_or(0.0)));
        add("linearity/E_half2/zapalowski", linearity_report(*d.kernel, *d.kernel, phi, d.probes, tier), false);
    }

    int passed = 0;
    int failed = 0;
    int recorded = 0;
    nlohmann::json results = nlohmann::json::array();
    for (const auto& e : out.entries) {
        if (!e.expected) ++recorded;
        else if (e.passed()) ++passed;
        else ++failed;
        results.push_back({{"name", e.name},
                           {"verdict", e.report.verdict},
                           {"expected", e.expected ? nlohmann::json(*e.expected) : nlohmann::json(nullptr)},
                           {"pass", e.passed()}});
    }
    out.summary = {{"checks", out.entries.size()}, {"passed", passed},  {"failed", failed},
                   {"recorded", recorded},         {"results", results}, {"config", config.to_json()},
                   {"version", kVersion}};
    return out;
}

void write_suite(const SuiteResult& result, const std::string& dir) {
    namespace fs = std::filesystem;
    fs::create_directories(dir);
    int i = 0;
    for (const auto& e : result.entries) {
        std::string file = e.name;
        for (auto& ch : file)
            if (ch == '/') ch = '_';
        std::ostringstream name;
        name << std::setw(2) << std::setfill('0') << i++ << "_" << file << ".json";
        std::ofstream(fs::path(dir) / name.str()) << dump(to_json(e.report));
    }
    std::ofstream(fs::path(dir) / "summary.json") << dump(result.summary);
}

ComplexPoint parse_point(const std::string& text) {
    std::vector<double> v;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) v.push_back(std::stod(item));
    if (v.size() == 2) return make_point(cdouble(v[0], v[1]));
    if (v.size() == 4) return make_point(cdouble(v[0], v[1]), cdouble(v[2], v[3]));
    throw Error("point must be 're,im' or 're,im,re,im'");
}

std::string dump(const nlohmann::json& j) { return j.dump(2) + "\n"; }

}  // namespace bergman
