// test_analysis.cpp - spacing statistics and the geometric phase sweep
#include <doctest.h>

#include <rabiq/analysis.hpp>
#include <rabiq/model.hpp>

#include <cmath>
#include <numeric>

using namespace rabiq;

TEST_CASE("uncoupled-qubit chain has a rigid unit spacing ladder") {
    const auto h = spacing_histogram(rabi_params(0.0, 0.5), +1, 64, 0.02, 2.0);
    REQUIRE(h.spacings.size() == 63);
    for (double s : h.spacings) CHECK(std::abs(s - 1.0) < 1e-10);
    const auto pk = two_peak(h);
    CHECK(!pk.two_peaks);  // everything sits in the central bins
    CHECK(pk.center_mass > 0.99);
}

TEST_CASE("histogram conserves counts and clamps out-of-range spacings") {
    const auto h = spacing_histogram(rabi_params(1.5, 0.5), +1, 201, 0.02, 2.0);
    CHECK(h.spacings.size() == 200);
    CHECK(std::accumulate(h.counts.begin(), h.counts.end(), 0) == 200);
    REQUIRE(h.centers.size() == h.counts.size());
    CHECK(h.centers.front() == doctest::Approx(0.01));
    CHECK(h.centers.back() == doctest::Approx(1.99));
    CHECK_THROWS_AS(spacing_histogram(rabi_params(0.4, 0.5), +1, 1, 0.02, 2.0),
                    std::domain_error);
    CHECK_THROWS_AS(spacing_histogram(rabi_params(0.4, 0.5), 0, 64, 0.02, 2.0),
                    std::domain_error);
    CHECK_THROWS_AS(spacing_histogram(rabi_params(0.4, 0.5), +1, 64, -0.1, 2.0),
                    std::domain_error);
}

TEST_CASE("spacing spectrum splits into two peaks around one quantum") {
    const auto h = spacing_histogram(rabi_params(1.5, 0.5), +1, 501, 0.02, 2.0);
    const auto pk = two_peak(h);
    CHECK(pk.two_peaks);
    CHECK(pk.peak_lo < 0.9);
    CHECK(pk.peak_hi > 1.1);
    CHECK(pk.frac_below >= 0.30);
    CHECK(pk.frac_above >= 0.30);
    CHECK(pk.center_mass <= 0.10);
}

TEST_CASE("geometric phase vanishes level-wise at zero photon dressing") {
    // at g ~ 0 the tracked chain state is a bare Fock level: gamma/2pi = n.
    // Delta < omega/2 keeps the chain ladder monotone in the photon number,
    // so the level index equals the occupied slot.
    for (int level : {0, 1, 2, 3}) {
        for (int parity : {+1, -1}) {
            const auto r = berry_phase(rabi_params(0.4, 1e-12), level, parity);
            CHECK(std::abs(r.gamma - double(level)) < 1e-9);
            CHECK(r.stability < 1e-8);
        }
    }
}

TEST_CASE("displaced-oscillator limit shifts the phase by g^2") {
    for (double g : {0.3, 0.8}) {
        for (int level : {0, 2}) {
            const auto r = berry_phase(rabi_params(0.0, g), level, +1);
            CHECK(std::abs(r.gamma - (level + g * g)) < 1e-6);
            CHECK(r.sweep_points > 0);
        }
    }
}

TEST_CASE("geometric phase rejects other variants and bad input") {
    CHECK_THROWS_AS(berry_phase(aniso_params(0.4, 0.5, 0.5), 0, +1), std::domain_error);
    CHECK_THROWS_AS(berry_phase(rabi_params(0.4, 0.5), -1, +1), std::domain_error);
    CHECK_THROWS_AS(berry_phase(rabi_params(0.4, 0.5), 0, +1, -0.1), std::domain_error);
}

TEST_CASE("rotating-wave doublet phases complement to 2N - 1") {
    for (int N : {1, 2, 3}) {
        const auto [lo, hi] = jc_berry(N, 0.7, 0.4);
        CHECK(lo + hi == doctest::Approx(2.0 * N - 1).epsilon(1e-12));
        CHECK(lo >= N - 1.0);
        CHECK(lo <= double(N));
        CHECK(hi >= N - 1.0);
        CHECK(hi <= double(N));
    }
    // g -> 0 below resonance: the lower branch is the bare |dn,N>, the upper |up,N-1>
    const auto [l0, h0] = jc_berry(2, 0.7, 1e-8);
    CHECK(l0 == doctest::Approx(2.0).epsilon(1e-6));
    CHECK(h0 == doctest::Approx(1.0).epsilon(1e-6));
    CHECK_THROWS_AS(jc_berry(0, 0.7, 0.4), std::domain_error);
}
