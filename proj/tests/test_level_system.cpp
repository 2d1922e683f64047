#include <catch2/catch_amalgamated.hpp>

#include "ramansim/level_system.hpp"

using namespace ramansim;

namespace {
LevelSystem paper_system() {
    return build_level_system(-0.05, 0.41, 2.8, 4.2, 1.0 / 0.33, 1.0 / 75.0, 0.15);
}
} // namespace

TEST_CASE("zeeman arithmetic of the four-level system") {
    const LevelSystem ls = paper_system();

    // spin-preserving transitions 1 and 4 separated by (|g_h|+|g_e|)·μB·B
    const double split = ls.transition(4).frequency_ghz - ls.transition(1).frequency_ghz;
    CHECK_THAT(split, Catch::Matchers::WithinAbs(18.0, 0.1));
    // hand computation: 0.41·13.996·2.8
    CHECK_THAT(ls.ground_splitting(), Catch::Matchers::WithinAbs(16.0674, 5e-4));

    SECTION("zero field degenerates all four transitions") {
        const LevelSystem z = build_level_system(-0.05, 0.41, 0.0, 4.2, 3.0, 0.01);
        for (int l = 1; l <= 4; ++l) CHECK(z.transition(l).frequency_ghz == 0.0);
        CHECK(z.ground_splitting() == 0.0);
    }
}

TEST_CASE("transition table structure") {
    const LevelSystem ls = paper_system();
    CHECK(ls.transition(1).lower == hole_up);
    CHECK(ls.transition(1).upper == trion_up);
    CHECK(ls.transition(2).lower == hole_up);
    CHECK(ls.transition(2).upper == trion_down);
    CHECK(ls.transition(3).lower == hole_down);
    CHECK(ls.transition(3).upper == trion_up);
    CHECK(ls.transition(4).lower == hole_down);
    CHECK(ls.transition(4).upper == trion_down);
    CHECK(ls.transition(1).kind == TransitionKind::spin_preserving);
    CHECK(ls.transition(4).kind == TransitionKind::spin_preserving);
    CHECK(ls.transition(2).kind == TransitionKind::spin_flipping);
    CHECK(ls.transition(3).kind == TransitionKind::spin_flipping);
}

TEST_CASE("transition frequency identities hold for any g-factors") {
    const double mu = PhysicalConstants::mu_b_over_h_ghz_per_t;
    const double ges[] = {-0.05, 0.12, -0.31};
    const double ghs[] = {0.41, -0.2, 0.07};
    const double bs[] = {0.5, 2.8, 6.0};
    for (double ge : ges)
        for (double gh : ghs)
            for (double b : bs) {
                const LevelSystem ls = build_level_system(ge, gh, b, 4.2, 3.0, 0.02);
                const double z = mu * b;
                CHECK_THAT(ls.transition(4).frequency_ghz - ls.transition(1).frequency_ghz,
                           Catch::Matchers::WithinAbs((gh - ge) * z, 1e-9));
                CHECK_THAT(ls.transition(3).frequency_ghz - ls.transition(2).frequency_ghz,
                           Catch::Matchers::WithinAbs((gh + ge) * z, 1e-9));
                CHECK_THAT(ls.transition(1).frequency_ghz - ls.transition(2).frequency_ghz,
                           Catch::Matchers::WithinAbs(ge * z, 1e-9));
                CHECK_THAT(ls.ground_splitting(), Catch::Matchers::WithinAbs(gh * z, 1e-9));
            }
}

TEST_CASE("decay channels") {
    const LevelSystem ls = paper_system();
    const auto channels = decay_channels(ls);
    REQUIRE(channels.size() == 4);

    // γ = Γ·b/(1-b) = Γ/74 for the 1:75 branching
    CHECK_THAT(ls.weak_rate(), Catch::Matchers::WithinAbs(0.040947, 5e-5));
    CHECK_THAT(1.0 / ls.weak_rate(), Catch::Matchers::WithinAbs(24.4, 0.05));

    // each trion decays through one fast and one slow channel, Γ+γ total
    for (int upper : {int(trion_down), int(trion_up)}) {
        double sum = 0.0;
        for (const auto& c : channels)
            if (c.from == upper) sum += c.rate;
        CHECK_THAT(sum, Catch::Matchers::WithinAbs(3.071, 5e-4));
        CHECK_THAT(sum, Catch::Matchers::WithinRel(ls.total_decay_rate(), 1e-12));
    }

    SECTION("branching reconstructs to machine precision") {
        for (double b : {1.0 / 75.0, 0.2, 0.5, 1e-6}) {
            const LevelSystem s = build_level_system(-0.05, 0.41, 2.8, 4.2, 3.0303, b);
            const double gamma_weak = s.weak_rate();
            CHECK_THAT(gamma_weak / (gamma_weak + s.gamma_rad),
                       Catch::Matchers::WithinRel(b, 1e-12));
        }
    }

    SECTION("branching -> 0 limit removes the weak channels") {
        const LevelSystem s = build_level_system(-0.05, 0.41, 2.8, 4.2, 3.0303, 1e-200);
        CHECK(s.transition(2).decay_rate < 1e-150);
        CHECK(s.transition(3).decay_rate < 1e-150);
    }
}

TEST_CASE("boltzmann ratio") {
    const LevelSystem ls = paper_system();
    CHECK_THAT(boltzmann_ratio(ls), Catch::Matchers::WithinAbs(0.832, 0.005));

    const LevelSystem b0 = build_level_system(-0.05, 0.41, 0.0, 4.2, 3.0, 0.01);
    CHECK(boltzmann_ratio(b0) == 1.0);

    const LevelSystem hot = build_level_system(-0.05, 0.41, 2.8, 1e12, 3.0, 0.01);
    CHECK_THAT(boltzmann_ratio(hot), Catch::Matchers::WithinAbs(1.0, 1e-9));

    SECTION("strictly decreasing in B, increasing in T for g_h > 0") {
        double prev = 1.0;
        for (double b : {0.5, 1.0, 2.0, 4.0, 8.0}) {
            const double r = boltzmann_ratio(build_level_system(-0.05, 0.41, b, 4.2, 3.0, 0.01));
            CHECK(r < prev);
            prev = r;
        }
        prev = 0.0;
        for (double t : {1.0, 2.0, 4.0, 10.0, 40.0}) {
            const double r = boltzmann_ratio(build_level_system(-0.05, 0.41, 2.8, t, 3.0, 0.01));
            CHECK(r > prev);
            prev = r;
        }
    }
}

TEST_CASE("charge noise saturation law") {
    NoiseParams noise;
    noise.sigma_charge_max = 0.8;
    noise.sigma_spin_max = 0.6;
    noise.i_sat_nr = 0.2;

    CHECK(charge_noise_sigma(0.0, noise) == 0.0);
    CHECK_THAT(charge_noise_sigma(noise.i_sat_nr, noise),
               Catch::Matchers::WithinRel(0.5 * noise.sigma_charge_max, 1e-12));
    CHECK(spin_noise_sigma(0.0, noise) == 0.0);
    CHECK_THAT(spin_noise_sigma(noise.i_sat_nr, noise),
               Catch::Matchers::WithinRel(0.5 * noise.sigma_spin_max, 1e-12));

    double prev = -1.0;
    for (double i : {0.0, 0.01, 0.05, 0.2, 1.0, 30.0}) {
        const double s = charge_noise_sigma(i, noise);
        CHECK(s >= prev);
        prev = s;
    }
}

TEST_CASE("derived down-up flip rate obeys detailed balance") {
    const LevelSystem ls = paper_system();
    NoiseParams noise;
    noise.gamma_flip_up_down = 1.0 / 1750.0;
    CHECK_THAT(noise.gamma_flip_down_up(ls) / noise.gamma_flip_up_down,
               Catch::Matchers::WithinRel(boltzmann_ratio(ls), 1e-12));
}

TEST_CASE("validation errors name the offending field") {
    CHECK_THROWS_WITH(build_level_system(-0.05, 0.41, -1.0, 4.2, 3.0, 0.01),
                      Catch::Matchers::ContainsSubstring("b_field"));
    CHECK_THROWS_WITH(build_level_system(-0.05, 0.41, 2.8, 0.0, 3.0, 0.01),
                      Catch::Matchers::ContainsSubstring("temperature"));
    CHECK_THROWS_WITH(build_level_system(-0.05, 0.41, 2.8, 4.2, -3.0, 0.01),
                      Catch::Matchers::ContainsSubstring("gamma_rad"));
    CHECK_THROWS_WITH(build_level_system(-0.05, 0.41, 2.8, 4.2, 3.0, 1.5),
                      Catch::Matchers::ContainsSubstring("branching"));
}
