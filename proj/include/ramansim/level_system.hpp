#pragma once

#include <array>
#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

#include "ramansim/constants.hpp"

namespace ramansim {

// Basis order used everywhere: |down>, |up> hole ground states, then the
// trion states labelled by their electron spin.
enum Level : int {
    hole_down = 0,  // |⇓>
    hole_up = 1,    // |⇑>
    trion_down = 2, // |⇓⇑↓>
    trion_up = 3,   // |⇑⇓↑>
};

enum class TransitionKind { spin_preserving, spin_flipping };

struct Transition {
    int label = 0;     // 1..4, the conventional circled numbering
    int lower = 0;     // ground-state index
    int upper = 0;     // trion index
    double frequency_ghz = 0.0;
    double decay_rate = 0.0; // ns^-1
    TransitionKind kind = TransitionKind::spin_preserving;
    double dipole_weight = 1.0; // relative to a spin-preserving transition
};

struct CollapseChannel {
    int label = 0; // transition label 1..4
    double rate = 0.0;
    int from = 0; // trion index
    int to = 0;   // ground index
};

namespace detail {
inline void require(bool ok, const std::string& field, const std::string& what) {
    if (!ok) throw std::invalid_argument("level_system: field '" + field + "' " + what);
}
} // namespace detail

// Four-level hole/trion system: energies, transition table, decay channels.
// Immutable after construction.
struct LevelSystem {
    double g_e = 0.0;       // electron g-factor, signed
    double g_h = 0.0;       // hole g-factor, signed
    double b_field = 0.0;   // T
    double temperature = 0.0; // K
    double gamma_rad = 0.0; // strong radiative rate Γ, ns^-1
    double branching = 0.0; // γ/(γ+Γ)
    double nonres_intensity = 0.0; // nW/um^2

    // Energies (GHz) relative to the zero-field transition, basis order
    // |⇓>, |⇑>, |⇓⇑↓>, |⇑⇓↑>.
    std::array<double, 4> level_energies{};
    std::array<Transition, 4> transitions{};

    // Weak (spin-flipping) radiative rate γ, ns^-1.
    double weak_rate() const { return gamma_rad * branching / (1.0 - branching); }
    double total_decay_rate() const { return gamma_rad + weak_rate(); }

    double ground_splitting() const { return level_energies[hole_up] - level_energies[hole_down]; }
    double trion_splitting() const { return level_energies[trion_down] - level_energies[trion_up]; }

    const Transition& transition(int label) const {
        if (label < 1 || label > 4) throw std::invalid_argument("transition label must be 1..4");
        return transitions[static_cast<size_t>(label - 1)];
    }
};

inline LevelSystem build_level_system(double g_e, double g_h, double b_field,
                                      double temperature, double gamma_rad,
                                      double branching, double nonres_intensity = 0.0) {
    detail::require(std::isfinite(g_e), "g_e", "must be finite");
    detail::require(std::isfinite(g_h), "g_h", "must be finite");
    detail::require(b_field >= 0.0, "b_field", "must be >= 0");
    detail::require(temperature > 0.0, "temperature", "must be > 0");
    detail::require(gamma_rad > 0.0, "gamma_rad", "must be > 0");
    detail::require(branching > 0.0 && branching < 1.0, "branching", "must be in (0,1)");
    detail::require(nonres_intensity >= 0.0, "nonres_intensity", "must be >= 0");

    LevelSystem ls;
    ls.g_e = g_e;
    ls.g_h = g_h;
    ls.b_field = b_field;
    ls.temperature = temperature;
    ls.gamma_rad = gamma_rad;
    ls.branching = branching;
    ls.nonres_intensity = nonres_intensity;

    const double zeeman = PhysicalConstants::mu_b_over_h_ghz_per_t * b_field;
    // Sign convention: E(|⇑>) = +g_h·μB·B/2, E(|⇓>) = −g_h·μB·B/2; trions
    // analogous with the signed electron g-factor and the electron spin
    // carried by the trion label.
    ls.level_energies[hole_down] = -0.5 * g_h * zeeman;
    ls.level_energies[hole_up] = +0.5 * g_h * zeeman;
    ls.level_energies[trion_down] = -0.5 * g_e * zeeman; // electron spin -1/2
    ls.level_energies[trion_up] = +0.5 * g_e * zeeman;   // electron spin +1/2

    const double gamma_weak = ls.weak_rate();
    const double weak_dipole = std::sqrt(branching / (1.0 - branching));

    auto make = [&](int label, int lower, int upper, double rate, TransitionKind kind) {
        Transition t;
        t.label = label;
        t.lower = lower;
        t.upper = upper;
        t.frequency_ghz = ls.level_energies[static_cast<size_t>(upper)] -
                          ls.level_energies[static_cast<size_t>(lower)];
        t.decay_rate = rate;
        t.kind = kind;
        t.dipole_weight = (kind == TransitionKind::spin_preserving) ? 1.0 : weak_dipole;
        return t;
    };

    ls.transitions[0] = make(1, hole_up, trion_up, gamma_rad, TransitionKind::spin_preserving);
    ls.transitions[1] = make(2, hole_up, trion_down, gamma_weak, TransitionKind::spin_flipping);
    ls.transitions[2] = make(3, hole_down, trion_up, gamma_weak, TransitionKind::spin_flipping);
    ls.transitions[3] = make(4, hole_down, trion_down, gamma_rad, TransitionKind::spin_preserving);
    return ls;
}

// The four radiative collapse channels. Each trion has one fast and one
// slow channel; the two rates from a trion sum to Γ+γ.
inline std::vector<CollapseChannel> decay_channels(const LevelSystem& ls) {
    std::vector<CollapseChannel> out;
    out.reserve(4);
    for (const Transition& t : ls.transitions)
        out.push_back(CollapseChannel{t.label, t.decay_rate, t.upper, t.lower});
    return out;
}

// Thermal ground-state population ratio N⇑/N⇓ = exp(−g_h·μB·B / k_B·T).
inline double boltzmann_ratio(const LevelSystem& ls) {
    const double num = ls.g_h * PhysicalConstants::mu_b_over_h_ghz_per_t * ls.b_field;
    const double den = PhysicalConstants::k_b_over_h_ghz_per_k * ls.temperature;
    return std::exp(-num / den);
}

// Noise and environment parameterization. gamma_flip_down_up is derived,
// never stored: detailed balance against the Boltzmann ratio.
struct NoiseParams {
    double sigma_charge_max = 0.0;   // GHz, saturating optical charge-noise amplitude
    double sigma_spin_max = 0.0;     // GHz, correlated ground-splitting noise amplitude
    double i_sat_nr = 1.0;           // nW/um^2, nonresonant saturation scale
    double kappa_nr_coeff = 0.0;     // ns^-1 per nW/um^2, nonresonant spin randomization
    double gamma_flip_up_down = 0.0; // ns^-1, intrinsic ⇑→⇓ flip rate
    double t2_star_hole = 0.0;       // ns, hole pure dephasing time (0 disables)

    void validate() const {
        detail::require(sigma_charge_max >= 0.0, "sigma_charge_max", "must be >= 0");
        detail::require(sigma_spin_max >= 0.0, "sigma_spin_max", "must be >= 0");
        detail::require(i_sat_nr > 0.0, "i_sat_nr", "must be > 0");
        detail::require(kappa_nr_coeff >= 0.0, "kappa_nr_coeff", "must be >= 0");
        detail::require(gamma_flip_up_down >= 0.0, "gamma_flip_up_down", "must be >= 0");
        detail::require(t2_star_hole >= 0.0, "t2_star_hole", "must be >= 0");
    }

    double gamma_flip_down_up(const LevelSystem& ls) const {
        return gamma_flip_up_down * boltzmann_ratio(ls);
    }
    double kappa_nr(double nonres_intensity) const { return kappa_nr_coeff * nonres_intensity; }
    double dephasing_rate() const { return t2_star_hole > 0.0 ? 1.0 / t2_star_hole : 0.0; }
};

// Saturating charge-noise amplitude σ(I) = σ_max·I/(I+I_sat).
inline double charge_noise_sigma(double nonres_intensity, const NoiseParams& noise) {
    if (nonres_intensity < 0.0)
        throw std::invalid_argument("level_system: field 'nonres_intensity' must be >= 0");
    return noise.sigma_charge_max * nonres_intensity / (nonres_intensity + noise.i_sat_nr);
}

// Same saturating law for the correlated ground-splitting component.
inline double spin_noise_sigma(double nonres_intensity, const NoiseParams& noise) {
    if (nonres_intensity < 0.0)
        throw std::invalid_argument("level_system: field 'nonres_intensity' must be >= 0");
    return noise.sigma_spin_max * nonres_intensity / (nonres_intensity + noise.i_sat_nr);
}

// One per-shot noise realization: a single unit normal scaled into an
// optical offset (all transitions) and a correlated spin-splitting offset.
struct NoiseDraw {
    double eps_optical = 0.0; // GHz added to both trion energies
    double eps_spin = 0.0;    // GHz added to the ground splitting

    static NoiseDraw from_unit_normal(double u, double nonres_intensity, const NoiseParams& noise) {
        return NoiseDraw{charge_noise_sigma(nonres_intensity, noise) * u,
                         spin_noise_sigma(nonres_intensity, noise) * u};
    }
};

} // namespace ramansim
