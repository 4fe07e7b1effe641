#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "holo/geometry.hpp"

using namespace holo;

TEST_CASE("blackening factor of the built-in families") {
    const auto vac = BulkGeometry::pure_ads(2);
    CHECK(blackening_factor(vac, 0.7) == 1.0);

    const auto brane = BulkGeometry::black_brane(1.0, 2);
    CHECK(blackening_factor(brane, 0.5) == Catch::Approx(0.75).epsilon(1e-14));
    CHECK(blackening_factor(brane, 1.0) == Catch::Approx(0.0).margin(1e-15));

    const auto wall = BulkGeometry::hard_wall(0.5, 2);
    CHECK(blackening_factor(wall, 0.25) == 1.0);
    CHECK_THROWS_AS(blackening_factor(wall, 0.75), DomainError);
    CHECK_THROWS_AS(blackening_factor(brane, 1.5), DomainError);
    CHECK_THROWS_AS(blackening_factor(vac, 0.0), DomainError);
    CHECK_THROWS_AS(blackening_factor(vac, -1.0), DomainError);
}

TEST_CASE("horizon depth") {
    CHECK(!horizon_depth(BulkGeometry::pure_ads(2)).has_value());
    CHECK(horizon_depth(BulkGeometry::black_brane(1.0, 2)).value() == 1.0);
    // a wall is not a horizon
    CHECK(!horizon_depth(BulkGeometry::hard_wall(0.5, 2)).has_value());

    const auto open_tab = BulkGeometry::tabulated({{0.1, 1.0}, {0.5, 0.9}, {1.0, 0.7}}, 2);
    CHECK(!horizon_depth(open_tab).has_value());
    const auto capped_tab = BulkGeometry::tabulated({{0.1, 1.0}, {0.5, 0.5}, {1.0, 0.0}}, 2);
    CHECK(horizon_depth(capped_tab).value() == 1.0);
}

TEST_CASE("geometry validation") {
    CHECK_NOTHROW(validate_geometry(BulkGeometry::pure_ads(2, 1.0)));

    BulkGeometry bad_brane;
    bad_brane.kind = GeometryKind::BlackBrane;
    bad_brane.z_h = -1.0;
    try {
        validate_geometry(bad_brane);
        FAIL("expected GeometryError");
    } catch (const GeometryError& e) {
        CHECK(e.kind() == GeometryError::Kind::NonPositiveParameter);
    }

    BulkGeometry bad_uv;
    bad_uv.kind = GeometryKind::Tabulated;
    bad_uv.profile = {{0.1, 0.5}, {1.0, 0.4}};
    try {
        validate_geometry(bad_uv);
        FAIL("expected GeometryError");
    } catch (const GeometryError& e) {
        CHECK(e.kind() == GeometryError::Kind::NonAsymptoticallyAdS);
    }

    BulkGeometry bad_order;
    bad_order.kind = GeometryKind::Tabulated;
    bad_order.profile = {{0.5, 1.0}, {0.1, 0.9}};
    try {
        validate_geometry(bad_order);
        FAIL("expected GeometryError");
    } catch (const GeometryError& e) {
        CHECK(e.kind() == GeometryError::Kind::NonMonotoneProfile);
    }

    BulkGeometry bad_L;
    bad_L.L = 0.0;
    CHECK_THROWS_AS(validate_geometry(bad_L), GeometryError);
}

TEST_CASE("energy scale map") {
    CHECK(energy_scale_of_depth(0.5) == 2.0);
    CHECK(energy_scale_of_depth(1.0) == 1.0);
    CHECK_THROWS_AS(energy_scale_of_depth(0.0), DomainError);

    // strictly decreasing with mu(z) * z = 1
    double prev = energy_scale_of_depth(1e-3);
    for (int i = 1; i <= 100; ++i) {
        const double z = 1e-3 + i * 0.05;
        const double mu = energy_scale_of_depth(z);
        CHECK(mu < prev);
        CHECK(mu * z == Catch::Approx(1.0).epsilon(1e-15));
        prev = mu;
    }
}

TEST_CASE("blackening stays in (0, 1] away from the horizon") {
    const auto vac = BulkGeometry::pure_ads(2);
    const auto brane = BulkGeometry::black_brane(1.0, 2);
    const auto brane3 = BulkGeometry::black_brane(2.0, 3);
    const auto wall = BulkGeometry::hard_wall(0.5, 2);
    auto check_range = [](const BulkGeometry& g, double z_max) {
        for (int i = 0; i <= 1000; ++i) {
            const double z = 1e-6 + (0.999 * z_max - 1e-6) * i / 1000.0;
            const double f = blackening_factor(g, z);
            CHECK(f > 0.0);
            CHECK(f <= 1.0);
        }
    };
    check_range(vac, 1.0);
    check_range(brane, brane.z_h);
    check_range(brane3, brane3.z_h);
    check_range(wall, wall.z_w);
}

TEST_CASE("black brane blackening decreases strictly") {
    const auto brane = BulkGeometry::black_brane(1.0, 2);
    double prev = blackening_factor(brane, 1e-6);
    for (int i = 1; i <= 1000; ++i) {
        const double z = 1e-6 + (0.999 - 1e-6) * i / 1000.0;
        const double f = blackening_factor(brane, z);
        CHECK(f < prev);
        prev = f;
    }
}

TEST_CASE("tabulated interpolation is monotone and exact at the samples") {
    // sample the d = 2 brane profile and interpolate it
    const auto brane = BulkGeometry::black_brane(1.0, 2);
    std::vector<ProfileSample> samples;
    for (int i = 0; i <= 40; ++i) {
        const double z = 0.01 + (0.99 - 0.01) * i / 40.0;
        samples.push_back({z, blackening_factor(brane, z)});
    }
    samples.front().f = 1.0;  // exact boundary value at the first sample
    const auto tab = BulkGeometry::tabulated(samples, 2);

    for (const auto& s : samples)
        CHECK(blackening_factor(tab, s.z) == Catch::Approx(s.f).margin(1e-14));

    double prev = blackening_factor(tab, samples.front().z);
    for (int i = 1; i <= 500; ++i) {
        const double z = 0.01 + (0.99 - 0.01) * i / 500.0;
        const double f = blackening_factor(tab, z);
        CHECK(f <= prev + 1e-12);  // monotone, no overshoot
        CHECK(f == Catch::Approx(blackening_factor(brane, z)).margin(2e-4));
        prev = f;
    }

    CHECK_THROWS_AS(blackening_factor(tab, 0.005), DomainError);  // no extrapolation
    CHECK_THROWS_AS(blackening_factor(tab, 0.995), DomainError);
}

TEST_CASE("units convention") {
    const UnitsConvention units;
    CHECK(units.four_G_N == 1.0);
    CHECK(units.central_charge(1.0) == Catch::Approx(6.0));
    const UnitsConvention heavy{2.0};
    CHECK(heavy.central_charge(1.0) == Catch::Approx(3.0));
}

TEST_CASE("geometry hashes separate distinct members") {
    const auto a = BulkGeometry::black_brane(1.0, 2);
    const auto b = BulkGeometry::black_brane(1.5, 2);
    const auto c = BulkGeometry::hard_wall(1.0, 2);
    CHECK(a.id_hash() != b.id_hash());
    CHECK(a.id_hash() != c.id_hash());
    CHECK(a.id_hash() == BulkGeometry::black_brane(1.0, 2).id_hash());
}
