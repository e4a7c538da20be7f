#include <doctest.h>

#include <cmath>

#include "matterwave/analytic.hpp"
#include "matterwave/oracle.hpp"
#include "matterwave/spectral.hpp"
#include "test_helpers.hpp"

using namespace matterwave;

namespace {

const PhysConsts kNatural = natural_units();

// Centered packet in the unit well used throughout.
const PacketParams kPacket{0.05, 1.0, 0.0, kNatural};
const GaussianTerm kBase{-0.5, kPacket};
const Well kWell{1.0};

WaveField initial_well_field(const SpatialGrid& grid) {
    return sample_field(grid, 0.0, [&](double x) {
        return well_image_wavefunction(kBase, kWell, x, 0.0, 1e-12);
    });
}

} // namespace

TEST_SUITE_BEGIN("spectral");

TEST_CASE("well eigenvalues") {
    CHECK(eigen_energy(1, M_PI, kNatural) == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(eigen_energy(2, 1.0, kNatural) ==
          doctest::Approx(4.0 * eigen_energy(1, 1.0, kNatural)).epsilon(1e-15));
    CHECK_THROWS_AS(eigen_energy(0, 1.0, kNatural), DomainError);
    CHECK_THROWS_AS(eigen_energy(1, 0.0, kNatural), DomainError);

    // The quadratic spectrum closes all phases after T_rev = 4 m d^2 / (hbar pi).
    const double t_rev = 4.0 / M_PI;
    for (int n = 1; n <= 50; ++n) {
        const double phase = eigen_energy(n, 1.0, kNatural) * t_rev;
        const double wraps = phase / (2.0 * M_PI);
        CHECK(wraps == doctest::Approx(std::round(wraps)).epsilon(1e-12));
    }
}

TEST_CASE("projecting an eigenstate returns a unit coefficient") {
    const SpatialGrid grid = test::make_grid(-1.0, 0.0, 2048);
    const WaveField phi1 = sample_field(
        grid, 0.0, [&](double x) { return Complex{std::sqrt(2.0) * std::sin(M_PI * (x + 1.0)), 0.0}; });
    const EigenExpansion expansion = project_packet(phi1, kWell, 8);
    CHECK(std::abs(expansion.coeffs[0]) == doctest::Approx(1.0).epsilon(1e-10));
    for (int n = 2; n <= 8; ++n) CHECK(std::abs(expansion.coeffs[n - 1]) < 1e-10);
}

TEST_CASE("centered packets populate only center-symmetric eigenstates") {
    const SpatialGrid grid = test::make_grid(-1.0, 0.0, 4096);
    const EigenExpansion expansion = project_packet(initial_well_field(grid), kWell, 200);
    CHECK(expansion.captured_probability() == doctest::Approx(1.0).epsilon(1e-8));
    // Even-index eigenstates are antisymmetric about the well center and
    // drop out for a packet released exactly there.
    for (int n = 2; n <= 200; n += 2) CHECK(std::abs(expansion.coeffs[n - 1]) < 1e-10);
}

TEST_CASE("too small a basis is rejected") {
    const SpatialGrid grid = test::make_grid(-1.0, 0.0, 2048);
    CHECK_THROWS_AS(project_packet(initial_well_field(grid), kWell, 3), InsufficientBasisError);
}

TEST_CASE("projection rejects fields that touch the walls or wrong grids") {
    const SpatialGrid grid = test::make_grid(-1.0, 0.0, 1024);
    WaveField touching = sample_field(grid, 0.0, [&](double x) { return Complex{1.0 + x, 0.0}; });
    CHECK_THROWS_AS(project_packet(touching, kWell, 16), DomainError);

    const SpatialGrid off_grid = test::make_grid(-2.0, 0.0, 1024);
    const WaveField wrong = sample_field(off_grid, 0.0, [](double) { return Complex{0.0, 0.0}; });
    CHECK_THROWS_AS(project_packet(wrong, kWell, 16), DomainError);
}

TEST_CASE("projection completeness never decreases with the basis size") {
    const SpatialGrid grid = test::make_grid(-1.0, 0.0, 4096);
    const WaveField field = initial_well_field(grid);
    double previous = 0.0;
    for (const int n_max : {40, 80, 120, 200}) {
        const double captured = project_packet(field, kWell, n_max).captured_probability();
        CHECK(captured >= previous - 1e-15);
        previous = captured;
    }
}

TEST_CASE("eigenbasis evolution reproduces the input and conserves the norm") {
    const SpatialGrid grid = test::make_grid(-1.0, 0.0, 4096);
    const WaveField initial = initial_well_field(grid);
    const EigenExpansion expansion = project_packet(initial, kWell, 200);

    const WaveField reconstructed = evolve_eigenbasis(expansion, 0.0, grid);
    CHECK(l2_error(reconstructed, initial) < 1e-9);

    const double t_rev = timescales(kPacket).T_rev;
    for (const double t : {0.1 * t_rev, 0.4 * t_rev, t_rev}) {
        const WaveField evolved = evolve_eigenbasis(expansion, t, grid);
        CHECK(norm(evolved) == doctest::Approx(expansion.captured_probability()).epsilon(1e-8));
    }
}

TEST_CASE("full revival after T_rev") {
    const SpatialGrid grid = test::make_grid(-1.0, 0.0, 4096);
    const WaveField initial = initial_well_field(grid);
    const EigenExpansion expansion = project_packet(initial, kWell, 200);
    const double t_rev = timescales(kPacket).T_rev;

    WaveField revived = evolve_eigenbasis(expansion, t_rev, grid);
    revived.time = 0.0; // compare the spatial profile, global phase removed
    CHECK(l2_error(revived, initial) < 1e-6);
}

TEST_CASE("cross-oracle: eigenbasis evolution equals the image sum") {
    const SpatialGrid grid = test::make_grid(-1.0, 0.0, 4096);
    const EigenExpansion expansion = project_packet(initial_well_field(grid), kWell, 200);
    const double t_rev = timescales(kPacket).T_rev;
    for (int i = 0; i <= 9; ++i) {
        const double t = t_rev * i / 9.0;
        const WaveField via_basis = evolve_eigenbasis(expansion, t, grid);
        const WaveField via_images = sample_field(grid, t, [&](double x) {
            return well_image_wavefunction(kBase, kWell, x, t, 1e-9);
        });
        CHECK(l2_error(via_basis, via_images) < 1e-6);
    }
}

TEST_CASE("autocorrelation magnitude, closure and the T_rev/8 revival") {
    const SpatialGrid grid = test::make_grid(-1.0, 0.0, 4096);
    const EigenExpansion expansion = project_packet(initial_well_field(grid), kWell, 200);
    const double captured = expansion.captured_probability();
    const double t_rev = timescales(kPacket).T_rev;

    const Complex a0 = autocorrelation(expansion, 0.0);
    CHECK(a0.imag() == doctest::Approx(0.0).epsilon(1e-14));
    CHECK(a0.real() == doctest::Approx(captured).epsilon(1e-12));

    CHECK(std::abs(autocorrelation(expansion, t_rev)) == doctest::Approx(captured).epsilon(1e-6));
    CHECK(std::abs(autocorrelation(expansion, t_rev / 8.0)) > 0.999);

    // Revival closure: |A(t + T_rev)| = |A(t)| for sampled t.
    for (const double t : {0.01, 0.1, 0.37 * t_rev}) {
        const double a = std::abs(autocorrelation(expansion, t));
        const double b = std::abs(autocorrelation(expansion, t + t_rev));
        CHECK(a == doctest::Approx(b).epsilon(1e-9));
    }
}

TEST_CASE("characteristic times and their exact ratios") {
    const PacketParams params{0.1, 2.0, 0.0, kNatural};
    const TimeScales ts = timescales(params);
    CHECK(ts.t0 == doctest::Approx(0.01).epsilon(1e-14));
    CHECK(ts.T_overlap == doctest::Approx(std::sqrt(2.0) * 0.2).epsilon(1e-14));
    CHECK(ts.T_rev == doctest::Approx(16.0 / M_PI).epsilon(1e-14));
    CHECK(ts.ratio_rev_overlap ==
          doctest::Approx(4.0 / (M_PI * 0.1 / std::sqrt(2.0))).epsilon(1e-14));
    CHECK(ts.ratio_overlap_t0_sq == doctest::Approx(800.0).epsilon(1e-14));

    // The quoted ratios are the exact quotients of the times.
    CHECK(ts.T_rev / ts.T_overlap == doctest::Approx(ts.ratio_rev_overlap).epsilon(1e-12));
    const double overlap_ratio = ts.T_overlap / ts.t0;
    CHECK(overlap_ratio * overlap_ratio ==
          doctest::Approx(ts.ratio_overlap_t0_sq).epsilon(1e-12));

    CHECK_THROWS_AS(timescales(PacketParams{0.1, 0.0, 0.0, kNatural}), DomainError);
}

TEST_SUITE_END();
