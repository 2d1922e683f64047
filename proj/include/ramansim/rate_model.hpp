#pragma once

#include <optional>

#include "ramansim/level_system.hpp"

namespace ramansim {

// Reduced two-level description of the hole spin: both populations relax
// to the Boltzmann equilibrium at γ_eff = γ⇑⇓ + γ⇓⇑ (+ κ_nr), and an
// optical drive adds a pumping rate R = (s/(1+s))·γ/2 out of the driven
// ground state. Closed form; used both as a fast model and as the
// analytic oracle for the master equation.
struct RateModelDrive {
    int target_label = 4;       // which strong transition is pumped
    double saturation = 0.0;    // saturation parameter s
};

struct RateModel {
    double gamma_up_down = 0.0; // ⇑→⇓ total (intrinsic + κ/2), ns^-1
    double gamma_down_up = 0.0; // ⇓→⇑ total, ns^-1
    double pump_out_of_up = 0.0;   // optical pumping rate acting on N⇑
    double pump_out_of_down = 0.0; // optical pumping rate acting on N⇓

    double gamma_eff() const {
        return gamma_up_down + gamma_down_up + pump_out_of_up + pump_out_of_down;
    }
    double n_up_stationary() const {
        const double in = gamma_down_up + pump_out_of_down;
        const double g = gamma_eff();
        return g > 0.0 ? in / g : 0.5;
    }
    // N⇑(t) for the closed two-level system
    double n_up(double t, double n_up0) const {
        const double eq = n_up_stationary();
        return eq + (n_up0 - eq) * std::exp(-gamma_eff() * t);
    }
    double n_down(double t, double n_up0) const { return 1.0 - n_up(t, n_up0); }
};

inline RateModel rate_model(const LevelSystem& ls, const NoiseParams& noise,
                            std::optional<RateModelDrive> drive = std::nullopt) {
    RateModel m;
    const double kappa = noise.kappa_nr(ls.nonres_intensity);
    m.gamma_up_down = noise.gamma_flip_up_down + 0.5 * kappa;
    m.gamma_down_up = noise.gamma_flip_down_up(ls) + 0.5 * kappa;
    if (drive) {
        const double s = drive->saturation;
        const double r = (s / (1.0 + s)) * 0.5 * ls.weak_rate();
        const Transition& tr = ls.transition(drive->target_label);
        if (tr.lower == hole_up)
            m.pump_out_of_up = r;
        else
            m.pump_out_of_down = r;
    }
    return m;
}

} // namespace ramansim
