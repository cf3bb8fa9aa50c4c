#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "battdispatch/electrochem.hpp"
#include "battdispatch/testcase.hpp"
#include "oracles.hpp"

using namespace battd;
namespace ec = battd::electrochem;

namespace {
const BatteryParams kRef = testcase::synthetic_battery_params();
}

TEST_CASE("molar fractions at the printed coefficients") {
    auto m0 = ec::molar_fractions(0.0);
    CHECK(m0.chi_and == doctest::Approx(0.083).epsilon(1e-15));
    CHECK(m0.chi_ctd == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(m0.on_boundary);

    auto mh = ec::molar_fractions(0.5);
    CHECK(mh.chi_and == doctest::Approx(0.5415).epsilon(1e-15));
    CHECK(mh.chi_ctd == doctest::Approx(0.65).epsilon(1e-15));
    CHECK_FALSE(mh.on_boundary);

    auto m1 = ec::molar_fractions(1.0);
    CHECK(m1.chi_and == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(m1.chi_ctd == doctest::Approx(0.3).epsilon(1e-15));
    CHECK(m1.on_boundary);

    CHECK_THROWS_AS(ec::molar_fractions(-0.01), ec::DomainError);
    CHECK_THROWS_AS(ec::molar_fractions(1.01), ec::DomainError);
}

TEST_CASE("interaction sum: zero coefficients give zero volts") {
    std::array<double, 7> zeros{};
    for (double chi : {0.05, 0.3, 0.5, 0.9})
        CHECK(ec::redlich_kister(chi, std::span<const double, 7>(zeros)) == 0.0);
}

TEST_CASE("interaction sum: analytic limit at chi = 1/2") {
    // Only the second-order term survives: -2 * 0.5 * 0.5 * A2 / F.
    std::array<double, 7> a{};
    a[1] = kFaraday;
    CHECK(ec::redlich_kister(0.5, std::span<const double, 7>(a)) ==
          doctest::Approx(-0.5).epsilon(1e-14));
}

TEST_CASE("interaction sum matches the literal series away from 1/2") {
    const double chi = 0.6;
    std::array<double, 7> a{1234.0, -321.5, 88.0, -12.25, 5.5, -0.75, 2.0};
    const double got = ec::redlich_kister(chi, std::span<const double, 7>(a));
    const double want = static_cast<double>(oracle::rk_literal(chi, a));
    CHECK(got == doctest::Approx(want).epsilon(1e-12));
}

TEST_CASE("interaction sum is continuous at chi = 1/2") {
    std::mt19937 rng(7);
    std::uniform_real_distribution<double> coef(-1e5, 1e5);
    for (int trial = 0; trial < 50; ++trial) {
        std::array<double, 7> a{};
        for (auto& v : a) v = coef(rng);
        const auto span = std::span<const double, 7>(a);
        const double mid = ec::redlich_kister(0.5, span);
        const double lo = ec::redlich_kister(0.5 - 1e-7, span);
        const double hi = ec::redlich_kister(0.5 + 1e-7, span);
        const double scale = std::max(1.0, std::abs(mid));
        CHECK(std::abs(lo - mid) <= 1e-6 * scale);
        CHECK(std::abs(hi - mid) <= 1e-6 * scale);
    }
}

TEST_CASE("equilibrium voltage reduces to the reference potential where the log term vanishes") {
    // chi_and == chi_ctd at soc = 0.917 / 1.617.
    const double soc_star = 0.917 / 1.617;
    BatteryParams p = kRef;
    p.A_and = {};
    p.A_ctd = {};
    CHECK(ec::equilibrium_voltage(soc_star, p.T_ref, p) ==
          doctest::Approx(p.U_bat0).epsilon(1e-12));

    // With interactions restored the same point adds exactly v_INT.
    const double v_int =
        ec::redlich_kister(ec::clamp_chi(ec::molar_fractions(soc_star).chi_ctd),
                           std::span<const double, 7>(kRef.A_ctd)) -
        ec::redlich_kister(ec::clamp_chi(ec::molar_fractions(soc_star).chi_and),
                           std::span<const double, 7>(kRef.A_and));
    CHECK(ec::equilibrium_voltage(soc_star, kRef.T_ref, kRef) ==
          doctest::Approx(kRef.U_bat0 + v_int).epsilon(1e-12));
}

TEST_CASE("equilibrium voltage matches a compositional long-double oracle") {
    std::mt19937 rng(11);
    std::uniform_real_distribution<double> soc(0.01, 0.99), temp(288.15, 308.15);
    for (int i = 0; i < 500; ++i) {
        const double s = soc(rng), T = temp(rng);
        const double got = ec::equilibrium_voltage(s, T, kRef);
        const double want = static_cast<double>(oracle::veq_literal(s, T, kRef));
        CHECK(std::abs(got - want) <= 1e-10 * std::max(1.0, std::abs(want)));
    }
}

TEST_CASE("equilibrium voltage is strictly increasing in soc on the reference set") {
    double prev = -1e300;
    for (int i = 0; i <= 200; ++i) {
        const double v = ec::equilibrium_voltage(i / 200.0, kRef.T_ref, kRef);
        CHECK(v > prev);
        prev = v;
    }
}

TEST_CASE("ohmic resistance: constant and affine behavior") {
    BatteryParams p = kRef;
    p.R_ohm_T = 0.0;
    p.R_ohm_SOC = 0.0;
    for (double s : {0.0, 0.4, 1.0})
        CHECK(ec::ohmic_resistance(s, 300.0, p) == p.R_ohm_0);

    // soc term vanishes at zero
    CHECK(ec::ohmic_resistance(0.0, 298.15, kRef) ==
          doctest::Approx(kRef.R_ohm_0 + kRef.R_ohm_T * 298.15).epsilon(1e-15));

    // affine identity: midpoint value is the average of the endpoints
    const double a = 0.2, b = 0.8, T = kRef.T_ref;
    CHECK(ec::ohmic_resistance(0.5 * (a + b), T, kRef) ==
          doctest::Approx(0.5 * (ec::ohmic_resistance(a, T, kRef) +
                                 ec::ohmic_resistance(b, T, kRef)))
              .epsilon(1e-14));
}

TEST_CASE("charge-transfer resistance: shape and scaling") {
    const double T = kRef.T_ref;
    // minimum sits where chi_and * chi_ctd is maximal (dense grid)
    double best_r = 1e300, best_soc = -1, best_prod = -1, best_prod_soc = -1;
    for (int i = 1; i < 200; ++i) {
        const double s = i / 200.0;
        const double r = ec::charge_transfer_resistance(s, T, kRef);
        const auto chi = ec::molar_fractions(s);
        const double prod = chi.chi_and * chi.chi_ctd;
        if (r < best_r) {
            best_r = r;
            best_soc = s;
        }
        if (prod > best_prod) {
            best_prod = prod;
            best_prod_soc = s;
        }
    }
    CHECK(best_soc == doctest::Approx(best_prod_soc).epsilon(1e-12));

    // doubling the interface area halves the resistance
    BatteryParams p = kRef;
    p.A_SEI *= 2.0;
    CHECK(ec::charge_transfer_resistance(0.37, T, p) ==
          doctest::Approx(0.5 * ec::charge_transfer_resistance(0.37, T, kRef)).epsilon(1e-14));

    // spot value against the literal formula
    CHECK(ec::charge_transfer_resistance(0.5, 298.15, kRef) ==
          doctest::Approx(static_cast<double>(oracle::rct_literal(0.5L, 298.15L, kRef)))
              .epsilon(1e-12));
}

TEST_CASE("diffusion resistance: exponent edge cases and the singular pole") {
    BatteryParams p = kRef;
    p.b_dif_mem = 0.0;
    CHECK(ec::diffusion_resistance(250.0, ec::DiffusionPath::membrane, p) == p.K_dif_mem);
    CHECK(ec::diffusion_resistance(1e9, ec::DiffusionPath::membrane, kRef) ==
          doctest::Approx(kRef.K_dif_mem).epsilon(1e-6));
    CHECK(ec::diffusion_resistance(kRef.T_ref, ec::DiffusionPath::electrode, kRef) ==
          doctest::Approx(static_cast<double>(oracle::rdif_literal(kRef.T_ref, false, kRef)))
              .epsilon(1e-14));
    CHECK_THROWS_AS(
        ec::diffusion_resistance(kRef.T0_dif_mem, ec::DiffusionPath::membrane, kRef),
        ec::SingularityError);
}

TEST_CASE("total resistance: definition, positivity grid, low-soc growth") {
    const double T = kRef.T_ref;
    for (double s : {0.05, 0.33, 0.71, 0.98}) {
        const double sum = ec::ohmic_resistance(s, T, kRef) +
                           ec::charge_transfer_resistance(s, T, kRef) +
                           ec::diffusion_resistance(T, ec::DiffusionPath::membrane, kRef);
        CHECK(ec::total_resistance(s, T, kRef) == doctest::Approx(sum).epsilon(1e-15));
    }
    for (double dT : {-10.0, 0.0, 10.0})
        for (int i = 1; i <= 99; ++i)
            CHECK(ec::total_resistance(i / 100.0, T + dT, kRef) > 0.0);

    // resistance rises considerably toward empty
    CHECK(ec::total_resistance(0.02, T, kRef) > 1.2 * ec::total_resistance(0.5, T, kRef));
}

TEST_CASE("coulombic efficiency: affine structure") {
    CHECK(ec::coulombic_efficiency(0.0, 298.15, kRef) ==
          doctest::Approx(kRef.eta_c0 + kRef.eta_cT * 298.15).epsilon(1e-15));
    BatteryParams p = kRef;
    p.eta_cT = 0.0;
    p.eta_ci = 0.0;
    for (double i : {0.0, 10.0, 150.0})
        CHECK(ec::coulombic_efficiency(i, 300.0, p) == p.eta_c0);
    const double a = 10.0, b = 120.0;
    CHECK(ec::coulombic_efficiency(0.5 * (a + b), 298.15, kRef) ==
          doctest::Approx(0.5 * (ec::coulombic_efficiency(a, 298.15, kRef) +
                                 ec::coulombic_efficiency(b, 298.15, kRef)))
              .epsilon(1e-14));
    CHECK_THROWS_AS(ec::coulombic_efficiency(-1.0, 298.15, kRef), ec::DomainError);
}

TEST_CASE("surface soc: identity at rest and monotone drop with signed current") {
    CHECK(ec::surface_soc(0.42, 0.0, kRef.T_ref, kRef) == 0.42);
    double prev = 2.0;
    for (double i = -200.0; i <= 200.0; i += 10.0) {
        const double s = ec::surface_soc(0.5, i, kRef.T_ref, kRef);
        CHECK(s < prev);
        prev = s;
    }
}

TEST_CASE("full literal-oracle sweep over random operating points") {
    std::mt19937 rng(23);
    std::uniform_real_distribution<double> soc(0.01, 0.99), temp(278.15, 318.15),
        cur(0.0, 200.0);
    for (int k = 0; k < 1000; ++k) {
        const double s = soc(rng), T = temp(rng), i = cur(rng);
        auto close = [](double got, long double want) {
            return std::abs(got - (double)want) <=
                   1e-10 * std::max(1.0L, std::abs(want));
        };
        CHECK(close(ec::ohmic_resistance(s, T, kRef), oracle::rohm_literal(s, T, kRef)));
        CHECK(close(ec::charge_transfer_resistance(s, T, kRef), oracle::rct_literal(s, T, kRef)));
        CHECK(close(ec::coulombic_efficiency(i, T, kRef), oracle::etac_literal(i, T, kRef)));
        CHECK(close(ec::surface_soc(s, i, T, kRef), oracle::surface_soc_literal(s, i, T, kRef)));
        CHECK(close(ec::equilibrium_voltage(s, T, kRef), oracle::veq_literal(s, T, kRef)));
    }
}
