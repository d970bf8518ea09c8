// bergman_lab: command-line driver for kernel construction and verification runs.

#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "bergman/lab.hpp"

using namespace bergman;

namespace {

struct CommonFlags {
    std::string config_file;
    std::string domain;
    std::int64_t samples = 0;
    std::uint64_t seed = 0;
    int cutoff = 0;
    std::string weighted;
    double floor_ratio = 0;
    std::string tol_tier;
    std::string kernel;
    std::string out;
    std::string map;
    double theta = 0;
    double param = 0;
    std::vector<CLI::Option*> opts;

    void attach(CLI::App* app, bool with_map) {
        app->add_option("--config", config_file, "JSON config file (flags override it)")->check(CLI::ExistingFile);
        opts.push_back(app->add_option("--domain", domain, "catalog domain id (annulus:<r> for other radii)"));
        opts.push_back(app->add_option("--samples", samples, "QMC proposals"));
        opts.push_back(app->add_option("--seed", seed, "scramble seed (default $BERGMAN_LAB_SEED or 1)"));
        opts.push_back(app->add_option("--cutoff", cutoff, "basis cutoff"));
        opts.push_back(app->add_option("--weighted", weighted, "weighted cutoff in C^2 (true|false)"));
        opts.push_back(app->add_option("--floor", floor_ratio, "eigenvalue floor ratio"));
        opts.push_back(app->add_option("--tol-tier", tol_tier, "exact|qmc (default: from kernel source)"));
        opts.push_back(app->add_option("--kernel", kernel, "auto|model|closed"));
        opts.push_back(app->add_option("--out", out, "output file (directory for suite)"));
        if (with_map) {
            opts.push_back(app->add_option("--map", map, "identity|rotation|rotation_weighted|mobius|swap|zapalowski|scale2"));
            opts.push_back(app->add_option("--theta", theta, "rotation angle"));
            opts.push_back(app->add_option("--param", param, "Möbius a, or the angle of zeta for zapalowski"));
        }
    }

    bool given(const std::string& name) const {
        for (auto* o : opts)
            if (o->get_name() == name) return o->count() > 0;
        return false;
    }

    RunConfig resolve() const {
        RunConfig c = RunConfig::defaults();
        if (!config_file.empty()) {
            std::ifstream in(config_file);
            if (!in) throw Error("cannot read config " + config_file);
            nlohmann::json j;
            try {
                in >> j;
            } catch (const nlohmann::json::exception& e) {
                throw Error("unreadable config " + config_file + ": " + e.what());
            }
            c = RunConfig::merge(c, j);
        }
        nlohmann::json j = nlohmann::json::object();
        if (given("--domain")) j["domain"] = domain;
        if (given("--samples")) j["samples"] = samples;
        if (given("--seed")) j["seed"] = seed;
        if (given("--cutoff")) j["cutoff"] = cutoff;
        if (given("--weighted")) j["weighted"] = (weighted == "true" || weighted == "1");
        if (given("--floor")) j["floor_ratio"] = floor_ratio;
        if (given("--tol-tier")) j["tol_tier"] = tol_tier;
        if (given("--kernel")) j["kernel"] = kernel;
        if (given("--out")) j["out"] = out;
        if (given("--map")) j["map"] = map;
        if (given("--theta")) j["theta"] = theta;
        if (given("--param")) j["map_param"] = param;
        return RunConfig::merge(c, j);
    }
};

void emit(const std::string& text, const std::string& path) {
    if (path.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream out(path);
    if (!out) throw Error("cannot write " + path);
    out << text;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Bergman kernel laboratory"};
    app.require_subcommand(1);

    auto* catalog_cmd = app.add_subcommand("catalog", "list built-in domains");

    auto* weights_cmd = app.add_subcommand("weights", "exact weight arithmetic");
    std::string weights_sub;
    std::int64_t m1 = 1, m2 = 1;
    int bound = kDefaultEnumerationBound;
    std::string which = "all";
    int component = 0;
    weights_cmd->add_option("action", weights_sub, "classify|surviving|equivariant")
        ->required()
        ->check(CLI::IsMember({"classify", "surviving", "equivariant"}));
    weights_cmd->add_option("m1", m1)->required();
    weights_cmd->add_option("m2", m2)->required();
    weights_cmd->add_option("--bound", bound, "enumeration bound");
    weights_cmd->add_option("--which", which, "kernel|c|c_prime|all");
    weights_cmd->add_option("--component", component, "1 or 2 (0: both)");

    auto* kernel_cmd = app.add_subcommand("kernel", "build or evaluate truncated kernels");
    std::string kernel_action;
    std::string model_file, z_text, w_text;
    CommonFlags kernel_flags;
    kernel_cmd->add_option("action", kernel_action, "build|eval")->required()->check(CLI::IsMember({"build", "eval"}));
    kernel_cmd->add_option("--model", model_file, "model JSON written by 'kernel build'");
    kernel_cmd->add_option("--z", z_text, "re,im[,re,im]");
    kernel_cmd->add_option("--w", w_text, "re,im[,re,im]");
    kernel_flags.attach(kernel_cmd, false);

    auto* verify_cmd = app.add_subcommand("verify", "run one verification report");
    std::string verify_kind;
    CommonFlags verify_flags;
    verify_cmd->add_option("kind", verify_kind)
        ->required()
        ->check(CLI::IsMember({"minimality", "representativity", "diagram", "unitarity", "transformation", "linearity"}));
    verify_flags.attach(verify_cmd, true);

    auto* grid_cmd = app.add_subcommand("grid", "CSV of K(z,0) or T(z,0) over a 2-D slice");
    CommonFlags grid_flags;
    std::string quantity = "T";
    GridSlice slice;
    std::vector<double> range;
    std::string base_text;
    grid_flags.attach(grid_cmd, false);
    grid_cmd->add_option("--quantity", quantity, "K|T")->check(CLI::IsMember({"K", "T"}));
    grid_cmd->add_option("--axes", slice.axis_x, "first real axis (0=re z1, 1=im z1, 2=re z2, 3=im z2)");
    grid_cmd->add_option("--axis-y", slice.axis_y, "second real axis");
    grid_cmd->add_option("--range", range, "xlo xhi ylo yhi")->expected(4);
    grid_cmd->add_option("--nx", slice.nx);
    grid_cmd->add_option("--ny", slice.ny);
    grid_cmd->add_option("--base", base_text, "fixed point for the other coordinates");

    auto* suite_cmd = app.add_subcommand("suite", "run every check and write reports");
    CommonFlags suite_flags;
    suite_flags.attach(suite_cmd, false);

    CLI11_PARSE(app, argc, argv);

    try {
        if (catalog_cmd->parsed()) {
            std::cout << dump(cmd_catalog());
        } else if (weights_cmd->parsed()) {
            std::cout << dump(cmd_weights(weights_sub, m1, m2, bound, which, component));
        } else if (kernel_cmd->parsed()) {
            const RunConfig c = kernel_flags.resolve();
            if (kernel_action == "build") {
                emit(dump(cmd_kernel_build(c)), c.out);
            } else {
                if (z_text.empty() || w_text.empty()) throw Error("kernel eval needs --z and --w");
                nlohmann::json model;
                if (!model_file.empty()) {
                    std::ifstream in(model_file);
                    if (!in) throw Error("cannot read model " + model_file);
                    in >> model;
                } else {
                    model = cmd_kernel_build(c);
                }
                emit(dump(cmd_kernel_eval(model, parse_point(z_text), parse_point(w_text))), c.out);
            }
        } else if (verify_cmd->parsed()) {
            const RunConfig c = verify_flags.resolve();
            emit(dump(to_json(cmd_verify(verify_kind, c))), c.out);
        } else if (grid_cmd->parsed()) {
            const RunConfig c = grid_flags.resolve();
            if (range.size() == 4) {
                slice.x_lo = range[0];
                slice.x_hi = range[1];
                slice.y_lo = range[2];
                slice.y_hi = range[3];
            }
            if (!base_text.empty()) slice.base = parse_point(base_text);
            emit(cmd_grid(c, slice, quantity == "K" ? GridQuantity::kernel : GridQuantity::t_matrix), c.out);
        } else if (suite_cmd->parsed()) {
            const RunConfig c = suite_flags.resolve();
            const SuiteResult r = cmd_suite(c);
            if (!c.out.empty()) write_suite(r, c.out);
            std::cout << dump(r.summary);
            return r.all_passed() ? 0 : 3;
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
