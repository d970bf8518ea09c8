// Acceptance run: one PASS/FAIL line per criterion, nonzero exit if any
// attainable criterion fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>

#include "bergman/geometry.hpp"
#include "bergman/lab.hpp"
#include "oracles.hpp"

using namespace bergman;

namespace {

struct Outcome {
    bool pass = false;
    std::string detail;
    bool counted = true;  // false only for criteria known to be unattainable as stated
};

int failures = 0;

void run(int id, const std::string& title, const std::function<Outcome()>& body) {
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
        o = body();
    } catch (const std::exception& e) {
        o.pass = false;
        o.detail = std::string("exception: ") + e.what();
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (!o.pass && o.counted) ++failures;
    std::printf("%s %2d %s (%.2fs): %s%s\n", o.pass ? "PASS" : "FAIL", id, title.c_str(), secs, o.detail.c_str(),
                o.counted ? "" : " [not counted: unattainable as stated]");
    std::fflush(stdout);
}

std::string fmt(double v) {
    std::ostringstream os;
    os.precision(3);
    os << v;
    return os.str();
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

KernelPtr closed(const std::string& id, double r = 0.5) { return std::make_shared<ClosedFormKernel>(id, r); }

BuiltKernel qmc_kernel(const std::string& id) {
    KernelBuildOptions o;
    o.samples = 1000000;
    o.seed = 1;
    o.cutoff = 12;
    o.weighted = true;
    return build_kernel(find_domain(id), o);
}

}  // namespace

int main() {
    std::map<std::string, BuiltKernel> qmc;

    run(1, "disk kernel from exact Gram (cutoff 40)", [] {
        const auto t0 = std::chrono::steady_clock::now();
        KernelBuildOptions o;
        o.cutoff = 40;
        const auto m = build_kernel(find_domain("disk"), o).model;
        auto g = oracle::rng(2024);
        double worst = 0.0;
        for (int i = 0; i < 20; ++i) {
            const cdouble z = oracle::random_in_disk(g, std::sqrt(0.5)), w = oracle::random_in_disk(g, std::sqrt(0.5));
            const cdouble truth = oracle::disk_kernel(z, w);
            worst = std::max(worst, std::abs(m->eval(make_point(z), make_point(w)) - truth) / std::abs(truth));
        }
        const double secs = seconds_since(t0);
        return Outcome{worst < 1e-6 && secs < 1.0, "max rel err " + fmt(worst) + " at 20 pairs, runtime " + fmt(secs) + "s"};
    });

    run(2, "disk geometry K(z,0)=1/pi, T(z,0)=2", [] {
        KernelBuildOptions o;
        o.cutoff = 40;
        const auto spec = find_domain("disk");
        const auto m = build_kernel(spec, o).model;
        const auto probes = make_probes(spec, sample(spec, 4096, 1), 16);
        double k_err = 0.0, t_err = 0.0;
        const ComplexPoint zero = make_point(0.0);
        for (const auto& z : probes) {
            k_err = std::max(k_err, std::abs(m->eval(z, zero) - 1.0 / oracle::pi));
            t_err = std::max(t_err, std::abs(t_matrix(*m, z, zero).entries(0, 0) - 2.0));
        }
        return Outcome{k_err < 1e-8 && t_err < 1e-8, "|K-1/pi| " + fmt(k_err) + ", |T-2| " + fmt(t_err) + " at 16 probes"};
    });

    run(3, "minimality of D1f, G2, E_half2 (1e6 QMC, weighted cutoff 12)", [&] {
        bool ok = true;
        std::string detail;
        for (const std::string id : {"D1f", "G2", "E_half2"}) {
            const auto t0 = std::chrono::steady_clock::now();
            qmc[id] = qmc_kernel(id);
            const auto& b = qmc[id];
            const auto spec = find_domain(id);
            const auto probes = make_probes(spec, *b.cloud, 16);
            const auto rep = minimality_report(*b.model, probes, b.cloud->volume_estimate, std::nullopt, Tier::qmc);
            const double vol = spec.known_volume.value_or(b.cloud->volume_estimate);
            const cdouble k0 = b.model->eval(ComplexPoint::Zero(2), ComplexPoint::Zero(2));
            const double vol_err = std::abs(k0 * vol - 1.0);
            const double var = rep.residuals.at("kernel_variation");
            const double secs = seconds_since(t0);
            ok = ok && var < 0.05 && vol_err < 0.05 && secs < 120;
            detail += id + ": variation " + fmt(var) + ", |K(0,0)Vol-1| " + fmt(vol_err) +
                      (spec.known_volume ? " (exact Vol)" : " (QMC Vol)") + ", " + fmt(secs) + "s; ";
        }
        return Outcome{ok, detail};
    });

    run(4, "representativity of D1f", [&] {
        const auto& b = qmc.count("D1f") ? qmc.at("D1f") : (qmc["D1f"] = qmc_kernel("D1f"));
        const auto probes = make_probes(find_domain("D1f"), *b.cloud, 16);
        const auto r = representativity_report(*b.model, probes, std::nullopt, Tier::qmc);
        const double v = r.residuals.at("t_variation"), off = r.residuals.at("off_diagonal");
        return Outcome{v < 0.1 && off < 0.1, "T variation " + fmt(v) + ", off-diagonal " + fmt(off)};
    });

    run(5, "weight arithmetic, exhaustive", [] {
        const auto t0 = std::chrono::steady_clock::now();
        int checked = 0;
        bool ok = true;
        const std::vector<MultiIndex> constant{MultiIndex(0, 0)};
        for (std::int64_t m1 = 2; m1 <= 50; ++m1)
            for (std::int64_t m2 = m1 + 1; m2 <= 50; ++m2) {
                if (oracle::gcd(m1, m2) != 1) continue;
                const Weight w(m1, m2);
                ok = ok && linear_forced(w) && surviving_indices(w, ClassKind::kernel, 64) == constant;
                ++checked;
            }
        for (std::int64_t m2 = 2; m2 <= 50; ++m2) {
            const Weight w(1, m2);
            ok = ok && !linear_forced(w, 200) && surviving_indices(w, ClassKind::kernel, 64) == constant;
            ++checked;
        }
        const double secs = seconds_since(t0);
        return Outcome{ok && secs < 1.0, std::to_string(checked) + " weights, runtime " + fmt(secs) + "s"};
    });

    const auto disk = closed("disk");
    const auto disk_spec = find_domain("disk");
    const auto disk_probes = make_probes(disk_spec, sample(disk_spec, 4096, 1), 16);
    const auto mob = mobius_disk(0.3);

    run(6, "unitarity and diagram, disk + Mobius(0.3)", [&] {
        const ComplexPoint p = make_point(0.0);
        const auto u = unitarity_report(*disk, *disk, mob, p, Tier::exact);
        const auto d = diagram_report(disk, disk, mob, p, disk_probes, Tier::exact);
        const double lu = u.residuals.at("unitarity"), dr = d.residuals.at("diagram");
        return Outcome{lu < 1e-8 && dr < 1e-6 && d.probes == 16,
                       "|L*L-I| " + fmt(lu) + ", diagram " + fmt(dr) + " at " + std::to_string(d.probes) + " probes"};
    });

    run(7, "transformation formula, disk + Mobius(0.3)", [&] {
        std::vector<std::pair<ComplexPoint, ComplexPoint>> pairs;
        for (std::size_t i = 0; i < 10; ++i) pairs.emplace_back(disk_probes[i], disk_probes[(i + 3) % 16]);
        const double r = transformation_residual(*disk, *disk, mob, pairs);
        return Outcome{r < 1e-10, "max rel gap " + fmt(r) + " at 10 pairs"};
    });

    run(8, "linearity extraction", [&] {
        const auto& b = qmc.count("D1f") ? qmc.at("D1f") : (qmc["D1f"] = qmc_kernel("D1f"));
        const auto spec = find_domain("D1f");
        const auto probes = make_probes(spec, *b.cloud, 16);
        const auto f = rotation_weighted(*spec.weight, 0.7);
        const double r1 = extract_linear(*b.model, *b.model, f, probes).residual;
        const double r2 = extract_linear(*disk, *disk, rotation(0.7), disk_probes).residual;
        return Outcome{r1 < 0.1 && r2 < 1e-8, "D1f f_theta " + fmt(r1) + ", disk rotation " + fmt(r2)};
    });

    run(9, "counterexample: Zapalowski map on E_half2", [] {
        const auto spec = find_domain("E_half2");
        // enough proposals for at least 1e5 accepted points (acceptance ~ pi^2/30)
        SampleCloud cloud = sample(spec, 320000, 1);
        if (cloud.points.size() < 100000) throw Error("fewer than 1e5 accepted points");
        cloud.points.resize(100000);
        const auto phi = zapalowski(1.0);
        const auto pres = preserves_domain(phi, spec, cloud);
        const double origin = max_abs(eval(phi, ComplexPoint::Zero(2)));
        const auto fit = best_linear_fit(phi, cloud.points);
        const bool ok = pres.forward == 1.0 && pres.inverse && *pres.inverse == 1.0 && origin == 0.0 &&
                        fit.max_residual > 0.01;
        return Outcome{ok, "preserved " + fmt(pres.forward) + " / inverse " + fmt(pres.inverse.value_or(-1)) +
                               ", |phi(0)| " + fmt(origin) + ", LSQ residual max " + fmt(fit.max_residual) + " rms " +
                               fmt(fit.rms_residual)};
    });

    run(10, "block orthogonality of QMC Gram across weighted-degree classes", [] {
        bool ok = true;
        double worst_ratio = 0.0;
        std::string worst_id;
        for (const auto& spec : catalog()) {
            if (!spec.weight) continue;
            const auto basis = spec.dimension == 1 ? monomial_basis(1, CutoffMode::total_degree, 20)
                                                   : monomial_basis(2, CutoffMode::weighted_degree, 12, spec.weight);
            const auto cloud = sample(spec, 1000000, 1);
            const auto g = gram_qmc(basis, cloud);
            // per-entry noise scale: Vol * rms(z^a conj(z^b)) / sqrt(N)
            const auto n = static_cast<Eigen::Index>(basis.size());
            Eigen::MatrixXd second = Eigen::MatrixXd::Zero(n, n);
            Eigen::VectorXd mod2(n);
            for (const auto& z : cloud.points) {
                mod2 = monomial_jet(basis, z, false).value.cwiseAbs2();
                second.noalias() += mod2 * mod2.transpose();
            }
            const double count = static_cast<double>(cloud.points.size());
            second /= count;
            for (Eigen::Index a = 0; a < n; ++a)
                for (Eigen::Index b = 0; b < n; ++b) {
                    if (weighted_degree(basis.exponents[a], *spec.weight) ==
                        weighted_degree(basis.exponents[b], *spec.weight))
                        continue;
                    const double noise = cloud.volume_estimate * std::sqrt(second(a, b)) / std::sqrt(count);
                    const double ratio = std::abs(g.entries(a, b)) / noise;
                    if (ratio > worst_ratio) {
                        worst_ratio = ratio;
                        worst_id = spec.id;
                    }
                    ok = ok && ratio <= 5.0;
                }
        }
        return Outcome{ok, "worst |G_ab| / noise = " + fmt(worst_ratio) + " (" + worst_id + "), bound 5"};
    });

    run(11, "annulus kernel zero, r = 0.05, K(z, 0.3) on real grid (stretch)", [] {
        const ClosedFormKernel k("annulus", 0.05);
        const ComplexPoint w = make_point(0.3);
        // 200 interior points of (0.05, 1)
        auto scan = [&](double sign) {
            double best = 1e300, at = 0.0;
            for (int i = 1; i <= 200; ++i) {
                const double x = 0.05 + (1.0 - 0.05) * i / 201.0;
                const double v = std::abs(k.eval(make_point(sign * x), w));
                if (v < best) {
                    best = v;
                    at = sign * x;
                }
            }
            return std::pair{best, at};
        };
        const auto [pos, pos_at] = scan(1.0);
        const auto [neg, neg_at] = scan(-1.0);
        Outcome o;
        o.pass = pos < 1e-3;
        o.counted = false;
        o.detail = "min |K| on z in (0.05,1) is " + fmt(pos) + " at z=" + fmt(pos_at) +
                   " (every Laurent term is positive there); on the mirrored grid z in (-1,-0.05) min |K| = " +
                   fmt(neg) + " at z=" + fmt(neg_at);
        return o;
    });

    std::printf("%s: %d counted failure(s)\n", failures == 0 ? "ACCEPTANCE PASS" : "ACCEPTANCE FAIL", failures);
    return failures == 0 ? 0 : 1;
}
