#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>

#include "bergman/lab.hpp"

using namespace bergman;

TEST_CASE("config defaults, merge and environment seed") {
    unsetenv("BERGMAN_LAB_SEED");
    CHECK(RunConfig::defaults().seed == 1);
    setenv("BERGMAN_LAB_SEED", "42", 1);
    CHECK(RunConfig::defaults().seed == 42);
    unsetenv("BERGMAN_LAB_SEED");

    const auto c = RunConfig::merge(RunConfig::defaults(), {{"domain", "D1f"}, {"samples", 5000}, {"tol_tier", "qmc"}});
    CHECK(c.domains == std::vector<std::string>{"D1f"});
    CHECK(c.samples == 5000);
    CHECK(c.tol_tier == "qmc");
    CHECK(c.weighted);
    const auto back = RunConfig::merge(RunConfig::defaults(), c.to_json());
    CHECK(back.to_json() == c.to_json());
    CHECK_THROWS(RunConfig::merge(c, {{"tol_tier", "loose"}}));
    CHECK_THROWS(RunConfig::merge(c, {{"kernel", "magic"}}));
    CHECK_THROWS(RunConfig::merge(c, nlohmann::json::array()));
}

TEST_CASE("weights command") {
    const auto j = cmd_weights("classify", 1, 2);
    CHECK(j.at("classification") == "nonnormal");
    CHECK(j.at("linear_forced") == false);
    const auto r = cmd_weights("classify", 4, 6);
    CHECK(r.at("reduced") == nlohmann::json{2, 3});
    CHECK(r.at("gcd") == 2);
    CHECK(r.at("classification") == "normal");
    const auto s = cmd_weights("surviving", 1, 2, 10, "c_prime");
    CHECK(s.at("surviving").at("c_prime") == nlohmann::json{{1, 0}});
    const auto e = cmd_weights("equivariant", 1, 2, 64, "kernel", 2);
    CHECK(e.at("equivariant").at("2") == nlohmann::json{{0, 1}, {2, 0}});
    CHECK_THROWS(cmd_weights("what", 1, 2));
}

TEST_CASE("points parse") {
    CHECK(parse_point("0.5,-0.25") == make_point(cdouble(0.5, -0.25)));
    CHECK(parse_point("1,2,3,4") == make_point(cdouble(1, 2), cdouble(3, 4)));
    CHECK_THROWS(parse_point("1,2,3"));
    CHECK(dump(nlohmann::json{{"a", 1}}) == "{\n  \"a\": 1\n}\n");
}

TEST_CASE("kernel build and eval commands") {
    auto c = RunConfig::defaults();
    c.domains = {"disk"};
    c.cutoff = 20;
    const auto model = cmd_kernel_build(c);
    CHECK(model.at("provenance").at("source") == "exact");
    const auto k = cmd_kernel_eval(model, make_point(0.0), make_point(0.0));
    CHECK(std::abs(k.at("K")[0].get<double>() - 1 / kPi) < 1e-14);
}

TEST_CASE("verify is reproducible and judges E_half2") {
    auto c = RunConfig::defaults();
    c.domains = {"E_half2"};
    c.samples = 200000;
    const auto a = cmd_verify("minimality", c);
    CHECK(a.verdict);
    CHECK(a.tier == Tier::qmc);
    CHECK(dump(to_json(a)) == dump(to_json(cmd_verify("minimality", c))));

    c.map = "zapalowski";
    const auto lin = cmd_verify("linearity", c);
    CHECK_FALSE(lin.verdict);
    CHECK(lin.residuals.at("linearity") > 0.01);

    c.domains = {"disk"};
    c.map = "mobius";
    CHECK(cmd_verify("unitarity", c).verdict);
    CHECK(cmd_verify("diagram", c).verdict);
    CHECK(cmd_verify("transformation", c).verdict);
    CHECK_THROWS(cmd_verify("gossip", c));
}

TEST_CASE("grid command") {
    auto c = RunConfig::defaults();
    c.domains = {"disk"};
    c.kernel = "closed";
    GridSlice s;
    s.nx = 3;
    s.ny = 3;
    const auto csv = cmd_grid(c, s, GridQuantity::t_matrix);
    CHECK(csv.rfind("x,y,inside", 0) == 0);
}

TEST_CASE("suite at the default sample count") {
    const auto c = RunConfig::defaults();
    const auto r = cmd_suite(c);
    CHECK(r.all_passed());
    CHECK(r.summary.at("failed") == 0);
    CHECK(r.summary.at("checks").get<std::size_t>() == r.entries.size());
    // the nonnormal representativity checks are recorded, not judged
    int recorded = 0;
    for (const auto& e : r.entries) recorded += !e.expected;
    CHECK(recorded == r.summary.at("recorded").get<int>());
    CHECK(recorded >= 1);

    const auto dir = std::filesystem::temp_directory_path() / "bergman_suite_test";
    std::filesystem::remove_all(dir);
    write_suite(r, dir.string());
    CHECK(std::filesystem::exists(dir / "summary.json"));
    std::size_t files = 0;
    for (const auto& f : std::filesystem::directory_iterator(dir)) files += f.path().extension() == ".json";
    CHECK(files == r.entries.size() + 1);
    std::filesystem::remove_all(dir);
}
