#include <doctest.h>

#include <cmath>

#include "bergman/holomap.hpp"
#include "oracles.hpp"

using namespace bergman;

namespace {

// Jacobian column j by central differences in the holomorphic direction.
SmallMatrix fd_jacobian(const HoloMap& f, const ComplexPoint& z, double h = 1e-6) {
    SmallMatrix j(f.dim_out, f.dim_in);
    for (int c = 0; c < f.dim_in; ++c) {
        ComplexPoint zp = z, zm = z;
        zp(c) += h;
        zm(c) -= h;
        j.col(c) = (eval(f, zp) - eval(f, zm)) / (2 * h);
    }
    return j;
}

}  // namespace

TEST_CASE("fixture maps evaluate as written") {
    const auto z = make_point(cdouble(0.3, 0.1), cdouble(-0.2, 0.05));
    const auto f = rotation_weighted(Weight(2, 3), 0.4);
    const auto fz = eval(f, z);
    CHECK(std::abs(fz(0) - std::polar(1.0, 0.8) * z(0)) < 1e-15);
    CHECK(std::abs(fz(1) - std::polar(1.0, 1.2) * z(1)) < 1e-15);

    const auto m = mobius_disk(0.3);
    CHECK(std::abs(eval(m, make_point(0.3))(0)) < 1e-15);
    CHECK(std::abs(jacobian(m, make_point(0.0))(0, 0) - 0.91) < 1e-15);
    CHECK(std::abs(eval(*m.inverse, eval(m, make_point(cdouble(0.5, -0.4))))(0) - cdouble(0.5, -0.4)) < 1e-15);
    CHECK_THROWS(mobius_disk(1.0));

    const auto s = eval(coordinate_swap(), z);
    CHECK(s(0) == z(1));
    CHECK(s(1) == z(0));

    const cdouble zeta = std::polar(1.0, 0.3);
    const auto zp = eval(zapalowski(zeta), z);
    CHECK(std::abs(zp(0) - zeta * z(0)) < 1e-15);
    CHECK(std::abs(zp(1) - zeta * zeta * (z(0) * z(0) / 4.0 - z(1))) < 1e-15);
    CHECK_THROWS(zapalowski(1.1));

    CHECK_THROWS_AS(eval(rotation(0.1), z), DimensionMismatch);
    CHECK_THROWS(map_by_name("nope", 1, std::nullopt, 0, 0));
    CHECK_THROWS(map_by_name("rotation_weighted", 2, std::nullopt, 0.1, 0));
}

TEST_CASE("jacobians against finite differences") {
    const auto z = make_point(cdouble(0.3, 0.1), cdouble(-0.2, 0.05));
    for (const auto& f : {rotation_weighted(Weight(1, 2), 0.9), zapalowski(std::polar(1.0, 1.1)), coordinate_swap(),
                          scaling(2, cdouble(0.5, 0.2))}) {
        CHECK_MESSAGE(max_abs_entry(jacobian(f, z) - fd_jacobian(f, z)) < 1e-8, f.name);
    }
    const auto m = mobius_disk(cdouble(0.2, -0.5));
    const auto p = make_point(cdouble(0.1, 0.3));
    CHECK(max_abs_entry(jacobian(m, p) - fd_jacobian(m, p)) < 1e-8);
}

TEST_CASE("composition and inverses") {
    const auto z = make_point(cdouble(0.3, 0.1), cdouble(-0.2, 0.05));
    const auto zap = zapalowski(std::polar(1.0, 0.7));
    REQUIRE(zap.inverse);
    const auto id = compose(*zap.inverse, zap);
    // every coefficient collapses onto z1, z2
    CHECK(max_abs(ComplexPoint(eval(id, z) - z)) < 1e-14);
    for (const auto& comp : id.components) {
        int live = 0;
        for (const auto& t : comp) live += std::abs(t.c) > 1e-14;
        CHECK(live == 1);
    }

    // chain rule: J(f o g)(z) = J(f)(g z) J(g)(z)
    const auto g = rotation_weighted(Weight(1, 2), 0.3);
    const auto fg = compose(zap, g);
    CHECK(max_abs_entry(jacobian(fg, z) - jacobian(zap, eval(g, z)) * jacobian(g, z)) < 1e-14);
    REQUIRE(fg.inverse);
    CHECK(max_abs(ComplexPoint(eval(*fg.inverse, eval(fg, z)) - z)) < 1e-14);
    CHECK_THROWS(compose(mobius_disk(0.3), rotation(0.2)));
    CHECK_THROWS_AS(compose(rotation(0.2), zap), DimensionMismatch);
}

TEST_CASE("weighted rotations: determinant and commutation") {
    for (const auto& w : {Weight(1, 1), Weight(1, 2), Weight(2, 3)}) {
        const double t = 0.37;
        const auto f = rotation_weighted(w, t);
        const auto z = make_point(cdouble(0.2, 0.1), cdouble(0.1, -0.3));
        CHECK(std::abs(jacobian(f, z).determinant() - std::polar(1.0, static_cast<double>(w[0] + w[1]) * t)) < 1e-14);
        // f_t commutes with every linear map iff it is a scalar rotation
        SmallMatrix a(2, 2);
        a << 1.0, 0.5, cdouble(0, 0.2), 2.0;
        const auto la = linear_map(a);
        const double gap = max_abs(ComplexPoint(eval(la, eval(f, z)) - eval(f, eval(la, z))));
        CHECK((gap < 1e-14) == center_commutes(w));
    }
}

TEST_CASE("domain preservation") {
    const auto e = find_domain("E_half2");
    const auto cloud = sample(e, 20000, 1);
    const auto zp = preserves_domain(zapalowski(std::polar(1.0, 0.5)), e, cloud);
    CHECK(zp.forward == 1.0);
    REQUIRE(zp.inverse);
    CHECK(*zp.inverse == 1.0);
    CHECK(preserves_domain(rotation_weighted(Weight(1, 2), 1.3), e, cloud).forward == 1.0);
    CHECK(preserves_domain(scaling(2, 2.0), e, cloud).forward < 0.5);
    const auto d = find_domain("disk");
    CHECK(preserves_domain(mobius_disk(0.6), d, sample(d, 20000, 1)).forward == 1.0);
    // the swap does not preserve E_half2 (|z2| < 1/4 but |z1| up to 1)
    CHECK(preserves_domain(coordinate_swap(), e, cloud).forward < 1.0);
}

TEST_CASE("kernel transformation rule") {
    const ClosedFormKernel disk("disk"), poly("polydisk2"), ball("ball2");
    auto g = oracle::rng(4);
    std::vector<std::pair<ComplexPoint, ComplexPoint>> pairs1, pairs2;
    for (int i = 0; i < 10; ++i) {
        pairs1.emplace_back(make_point(oracle::random_in_disk(g, 0.9)), make_point(oracle::random_in_disk(g, 0.9)));
        pairs2.emplace_back(make_point(oracle::random_in_disk(g, 0.6), oracle::random_in_disk(g, 0.6)),
                            make_point(oracle::random_in_disk(g, 0.6), oracle::random_in_disk(g, 0.6)));
    }
    CHECK(transformation_residual(disk, disk, mobius_disk(cdouble(0.3, 0.4)), pairs1) < 1e-10);
    CHECK(transformation_residual(disk, disk, identity_map(1), pairs1) == 0.0);
    CHECK(transformation_residual(poly, poly, coordinate_swap(), pairs2) < 1e-12);
    SmallMatrix u(2, 2);
    const double c = std::cos(0.4), s = std::sin(0.4);
    u << c, -s, s, c;
    CHECK(transformation_residual(ball, ball, linear_map(u), pairs2) < 1e-12);
    // a dilation is not an automorphism of the disk
    CHECK(transformation_residual(disk, disk, scaling(1, 0.5), pairs1) > 0.1);
}

TEST_CASE("least-squares linear fit") {
    const auto e = find_domain("E_half2");
    const auto cloud = sample(e, 5000, 1);
    const auto lin = best_linear_fit(rotation_weighted(Weight(1, 2), 0.3), cloud.points);
    CHECK(lin.max_residual < 1e-14);
    CHECK(std::abs(lin.a(1, 1) - std::polar(1.0, 0.6)) < 1e-14);
    const auto nl = best_linear_fit(zapalowski(1.0), cloud.points);
    CHECK(nl.max_residual > 0.01);
    CHECK(nl.rms_residual <= nl.max_residual);
}

TEST_CASE("map JSON round trip") {
    const auto z = make_point(cdouble(0.3, 0.1), cdouble(-0.2, 0.05));
    for (const auto& f : {zapalowski(std::polar(1.0, 0.2)), coordinate_swap(), rotation_weighted(Weight(2, 3), 0.1)}) {
        const auto back = holomap_from_json(to_json(f));
        CHECK(back.name == f.name);
        CHECK(max_abs(ComplexPoint(eval(back, z) - eval(f, z))) == 0.0);
    }
    const auto m = holomap_from_json(to_json(mobius_disk(0.25)));
    CHECK(std::abs(eval(m, make_point(0.25))(0)) < 1e-15);
}
